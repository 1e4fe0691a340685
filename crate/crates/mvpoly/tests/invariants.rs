use mvpoly::builder::{abar1_closed_formula, left_to_right, right_to_left};
use mvpoly::crystal::{self, CrystalElement};
use mvpoly::lusztig::{self, height, left_weight, weight};
use mvpoly::polytope::DecoratedPolytope;
use mvpoly::root_lattice::{pair_coroot, q, weyl_reflect, AffineWeight};
use mvpoly::{LusztigDatum, RootVector, System};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn datum() -> impl Strategy<Value = LusztigDatum> {
    (
        prop::collection::vec(0u64..4, 0..4),
        prop::collection::vec(1u64..4, 0..3),
        prop::collection::vec(0u64..4, 0..4),
    )
        .prop_map(|(a, l, up)| LusztigDatum::untwisted(a, l, up))
}

fn small_datum() -> impl Strategy<Value = LusztigDatum> {
    (
        prop::collection::vec(0u64..3, 0..3),
        prop::collection::vec(1u64..3, 0..2),
        prop::collection::vec(0u64..3, 0..3),
    )
        .prop_map(|(a, l, up)| LusztigDatum::untwisted(a, l, up))
}

fn simple(i: usize) -> RootVector {
    if i == 0 {
        RootVector::alpha0(System::Untwisted)
    } else {
        RootVector::alpha1(System::Untwisted)
    }
}

fn pairing(v: &RootVector, i: usize) -> i64 {
    v.coroot_pairing(i).to_i64().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transfer_is_weight_preserving_involution(a in datum()) {
        let abar = right_to_left(&a);
        prop_assert_eq!(left_weight(&abar), weight(&a));
        prop_assert_eq!(right_to_left(&abar), a.clone());
        prop_assert_eq!(left_to_right(&abar), a.clone());
        prop_assert_eq!(abar1_closed_formula(&a), q(abar.a(1) as i64));
        let p = DecoratedPolytope::from_data_pair(&a, &abar).unwrap();
        prop_assert!(p.is_mv());
        prop_assert_eq!(p.right_data(), Some(a));
    }

    #[test]
    fn crystal_axioms(a in small_datum(), i in 0usize..2) {
        let b = CrystalElement::new(a);
        let wt = crystal::wt(&b);
        prop_assert_eq!(crystal::phi(i, &b) - crystal::eps(i, &b), pairing(&wt, i));
        let up = crystal::e(i, &b);
        prop_assert_eq!(crystal::phi(i, &up), crystal::phi(i, &b) + 1);
        prop_assert_eq!(crystal::eps(i, &up), crystal::eps(i, &b) - 1);
        prop_assert_eq!(crystal::wt(&up), &wt + &simple(i));
        prop_assert_eq!(crystal::f(i, &up), Some(b.clone()));
        if let Some(down) = crystal::f(i, &b) {
            prop_assert_eq!(crystal::e(i, &down), b.clone());
        }
        // String length.
        let mut n = 0;
        let mut cur = b.clone();
        while let Some(c) = crystal::f(i, &cur) {
            n += 1;
            cur = c;
        }
        prop_assert_eq!(n, crystal::phi(i, &b));
    }

    #[test]
    fn star_properties(a in small_datum(), i in 0usize..2) {
        let b = CrystalElement::new(a);
        let s = crystal::star(&b);
        prop_assert_eq!(crystal::star(&s), b.clone());
        prop_assert_eq!(crystal::wt(&s), crystal::wt(&b));
        prop_assert_eq!(crystal::phi_star(0, &b), b.left().a(1) as i64);
        prop_assert_eq!(crystal::phi_star(1, &b), b.right().a(1) as i64);
        prop_assert_eq!(crystal::e_star(i, &b), crystal::e_star_direct(i, &b));
        prop_assert_eq!(crystal::f_star(i, &b), crystal::f_star_direct(i, &b));
    }

    #[test]
    fn reaches_lowest_element(a in small_datum()) {
        let mut cur = CrystalElement::new(a);
        let start = cur.height();
        for _ in 0..start {
            cur = crystal::f(0, &cur).or_else(|| crystal::f(1, &cur)).expect("nonzero element lowers");
        }
        prop_assert!(cur.is_lowest());
    }

    #[test]
    fn datum_arithmetic(x in datum(), y in datum()) {
        prop_assert_eq!(weight(&lusztig::add(&x, &y)), &weight(&x) + &weight(&y));
        prop_assert_eq!(weight(&lusztig::reverse(&x)), weight(&x).swap());
        prop_assert_eq!(height(&x) == 0, x.is_zero());
        prop_assert_eq!(LusztigDatum::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn reflections_and_delta(m0 in -3i64..4, m1 in -3i64..4, c0 in -4i64..5, c1 in -4i64..5, i in 0usize..2) {
        for s in [System::Untwisted, System::Twisted] {
            let w = AffineWeight::new(m0, m1, RootVector::from_ints(c0, c1, s));
            prop_assert_eq!(weyl_reflect(&weyl_reflect(&w, i), i), w.clone());
            let shifted = w.plus_root(&RootVector::delta(s));
            prop_assert_eq!(pair_coroot(&shifted, i), pair_coroot(&w, i));
            prop_assert_eq!(RootVector::delta(s).form_with_simple(i), q(0));
        }
    }
}

#[test]
fn at_least_one_diagonal_active_per_level() {
    for b in mvpoly::verify::enumerate(6) {
        let p = b.polytope();
        prop_assert_active(&p);
    }
}

fn prop_assert_active(p: &DecoratedPolytope) {
    use mvpoly::polytope::{DiagType, Diagonal, Level};
    for k in 2..=p.stabilization() + 2 {
        for level in [Level::Lower(k), Level::Upper(k)] {
            let any = [DiagType::Alpha0, DiagType::Alpha1]
                .iter()
                .any(|&t| p.is_active(&Diagonal::new(level, t)));
            assert!(any, "no active diagonal at {level:?}");
        }
    }
}

#[test]
fn cut_halves_reglue() {
    for b in mvpoly::verify::enumerate(5) {
        let p = b.polytope();
        for d in p.active_diagonals().unwrap() {
            let (lo, hi) = p.cut_along(&d).unwrap();
            assert!(lo.is_mv() && hi.is_mv(), "cut along {d} of {b}");
            // Both pieces contain the diagonal.
            let (x, y) = p.diagonal_endpoints(&d);
            let span = &lo.weight() + &hi.weight();
            let extra = &span - &p.weight();
            assert!(extra == x - y || extra == y - x, "cut along {d} of {b}");
        }
    }
}
