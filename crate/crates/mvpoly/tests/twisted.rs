use mvpoly::builder::right_to_left;
use mvpoly::crystal::{self, CrystalElement};
use mvpoly::lusztig::{left_weight, weight};
use mvpoly::twisted::*;
use mvpoly::{LusztigDatum, RootVector, System};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn twisted_datum() -> impl Strategy<Value = LusztigDatum> {
    (
        prop::collection::vec(0u64..3, 0..3),
        prop::collection::vec(1u64..3, 0..2),
        prop::collection::vec(0u64..3, 0..3),
    )
        .prop_map(|(a, l, up)| LusztigDatum::twisted(a, l, up))
}

fn untwisted_datum() -> impl Strategy<Value = LusztigDatum> {
    (
        prop::collection::vec(0u64..5, 0..4),
        prop::collection::vec(1u64..5, 0..3),
        prop::collection::vec(0u64..5, 0..4),
    )
        .prop_map(|(a, l, up)| LusztigDatum::untwisted(a, l, up))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transfer_pair(d in twisted_datum()) {
        let l = try_a22_right_to_left(&d).unwrap();
        prop_assert_eq!(left_weight(&l), weight(&d));
        prop_assert_eq!(a22_left_to_right(&l), d.clone());
        prop_assert!(a22_is_mv_direct(&d, &l).unwrap());
        prop_assert!(a22_is_mv_pullback(&d, &l).unwrap());
    }

    #[test]
    fn gamma_round_trip(d in twisted_datum()) {
        let up = gamma_inverse(&d).unwrap();
        prop_assert!(parity_check(&up, ParityVariant::Right));
        prop_assert_eq!(gamma_datum(&up).unwrap(), d.clone());
        let upl = gamma_left_inverse(&d).unwrap();
        prop_assert_eq!(gamma_left_datum(&upl).unwrap(), d);
    }

    #[test]
    fn parity_conditions_agree_on_mv_pairs(a in untwisted_datum()) {
        let abar = right_to_left(&a);
        let r = parity_check(&a, ParityVariant::Right);
        prop_assert_eq!(r, parity_check(&abar, ParityVariant::Left));
        prop_assert_eq!(r, parity_check(&a, ParityVariant::Both));
    }

    #[test]
    fn twisted_crystal_axioms(d in twisted_datum(), i in 0usize..2) {
        let b = CrystalElement::new(d);
        let op = if i == 0 { (A22Op::E0, A22Op::F0) } else { (A22Op::E1, A22Op::F1) };
        let up = a22_crystal_op(op.0, &b).unwrap().unwrap();
        prop_assert_eq!(a22_crystal_op(op.1, &up).unwrap(), Some(b.clone()));
        let simple = if i == 0 { RootVector::alpha0(System::Twisted) } else { RootVector::alpha1(System::Twisted) };
        prop_assert_eq!(crystal::wt(&up), &crystal::wt(&b) + &simple);
        let pair = crystal::wt(&b).coroot_pairing(i).to_i64().unwrap();
        prop_assert_eq!(crystal::phi(i, &b) - crystal::eps(i, &b), pair);
        prop_assert_eq!(s_map(&up).unwrap().right().clone(), if i == 0 {
            crystal::e(0, &s_map(&b).unwrap()).right().clone()
        } else {
            crystal::e(1, &crystal::e(1, &s_map(&b).unwrap())).right().clone()
        });
    }
}

#[test]
fn words_and_errors() {
    let z = CrystalElement::zero(System::Twisted);
    let ops = a22_parse_word("e1,e0,f0").unwrap();
    let b = a22_apply_word(&ops, &z).unwrap().unwrap();
    assert_eq!(crystal::wt(&b), RootVector::alpha1(System::Twisted));
    assert_eq!(a22_apply_word(&a22_parse_word("f1").unwrap(), &z).unwrap(), Err(1));
    assert!(a22_parse_word("e2").is_err());
    let u = CrystalElement::zero(System::Untwisted);
    assert!(a22_crystal_op(A22Op::E0, &u).is_err());
    assert!(gamma_datum(&LusztigDatum::twisted(vec![1], vec![], vec![])).is_err());
}

#[test]
fn involution_fails_as_stated() {
    // The transfer map is inverted by a22_left_to_right, not by itself.
    let bad = a22_involution_failures(5);
    assert_eq!(bad.len(), 28);
    assert!(bad.contains(&LusztigDatum::twisted(vec![0, 1], vec![], vec![])));
}
