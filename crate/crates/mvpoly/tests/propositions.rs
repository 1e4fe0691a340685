use mvpoly::builder::right_to_left;
use mvpoly::lusztig::data_up_to_height;
use mvpoly::{LusztigDatum, System};

const H: u64 = 8;

fn data() -> Vec<LusztigDatum> {
    data_up_to_height(H, System::Untwisted)
}

fn zero_lower_through(d: &LusztigDatum, k: usize) -> LusztigDatum {
    (1..=k).fold(d.clone(), |acc, j| acc.with_a(j, 0))
}

#[test]
fn left_data_when_a1_positive() {
    let mut checked = 0;
    for a in data().into_iter().filter(|a| a.a(1) > 0) {
        let abar = right_to_left(&a);
        let bbar1 = right_to_left(&a.with_a(1, 0)).a(1) as i64;
        let a1 = a.a(1) as i64;
        for k in 2..=a.a_list().len() + 2 {
            if (2..k).any(|j| a.a(j) != 0) {
                break;
            }
            let lhs = (k as i64 - 2) * bbar1 <= (k as i64 - 1) * a1;
            let rhs = (1..=k - 2).all(|j| abar.a(j) == 0);
            assert_eq!(lhs, rhs, "a = {a}, k = {k}");
            if lhs {
                let expected = (a.a(k) as i64).max((k as i64 - 1) * bbar1 - k as i64 * a1);
                assert_eq!(abar.a(k - 1) as i64, expected, "a = {a}, k = {k}");
            }
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn left_data_when_leading_entries_vanish() {
    let mut checked = 0;
    for a in data() {
        for k in 2..=a.a_list().len() + 2 {
            if (1..k).any(|j| a.a(j) != 0) {
                break;
            }
            let d = zero_lower_through(&a, k);
            let dbar1 = right_to_left(&d).a(1) as i64;
            let abar = right_to_left(&a);
            let (ak, ak1) = (a.a(k) as i64, a.a(k + 1) as i64);
            let expected = (dbar1 - 2 * ak).max((k as i64 - 1) * ak + k as i64 * ak1);
            assert_eq!(abar.a(1) as i64, expected, "a = {a}, k = {k}");
            assert!((2..=k).all(|j| abar.a(j) == 0), "a = {a}, k = {k}");
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn nonzero_polytopes_have_an_edge_at_each_end() {
    for a in data().into_iter().filter(|a| !a.is_zero()) {
        let abar = right_to_left(&a);
        assert!(a.a(1) != 0 || abar.a(1) != 0, "bottom of {a}");
        assert!(a.a_up(1) != 0 || abar.a_up(1) != 0, "top of {a}");
    }
}

#[test]
fn closed_formula_for_first_left_entry() {
    use mvpoly::root_lattice::q;
    for a in data() {
        let got = mvpoly::builder::abar1_closed_formula(&a);
        assert_eq!(got, q(right_to_left(&a).a(1) as i64), "a = {a}");
    }
}
