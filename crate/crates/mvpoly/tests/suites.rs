use std::collections::BTreeMap;

use mvpoly::crystal::CrystalElement;
use mvpoly::root_lattice::AffineWeight;
use mvpoly::verify::{self, Crystal, ElementaryCrystalElement, TensorElement};
use mvpoly::{LusztigDatum, MvError, RootVector, System};
use proptest::prelude::*;

/// Weight multiplicities of the product over k >= 0 of
/// 1/((1 - u q^k)(1 - v q^k)) times the partition generating function,
/// where `u` marks alpha1, `v` alpha0 and `q` delta.  Weights are
/// (c0, c1) with c0 + c1 <= h.
fn product_series(h: u64) -> BTreeMap<(u64, u64), u64> {
    let mut series = BTreeMap::new();
    series.insert((0, 0), 1u64);
    let mut factors = Vec::new();
    for k in 0..=h {
        factors.push((k, k + 1));
        factors.push((k + 1, k));
        if k >= 1 {
            factors.push((k, k));
        }
    }
    for (s0, s1) in factors {
        if s0 + s1 == 0 || s0 + s1 > h {
            continue;
        }
        // Multiply by 1/(1 - x) for x of weight (s0, s1): in increasing
        // degree, next[w] = series[w] + next[w - s].
        let mut next = series.clone();
        let mut order: Vec<(u64, u64)> = (0..=h).flat_map(|a| (0..=h - a).map(move |b| (a, b))).collect();
        order.sort_by_key(|&(a, b)| a + b);
        for (a, b) in order {
            if a >= s0 && b >= s1 {
                let prev = next.get(&(a - s0, b - s1)).copied().unwrap_or(0);
                if prev > 0 {
                    *next.entry((a, b)).or_insert(0) += prev;
                }
            }
        }
        series = next;
    }
    series
}

#[test]
fn enumeration_matches_independent_series() {
    for h in [0, 1, 2, 5, 8] {
        let mut counts: BTreeMap<(u64, u64), u64> = BTreeMap::new();
        for b in verify::enumerate(h) {
            let w = verify::Crystal::wt(&b);
            let key = (w.c0.to_integer().try_into().unwrap(), w.c1.to_integer().try_into().unwrap());
            *counts.entry(key).or_insert(0) += 1;
        }
        assert_eq!(counts, product_series(h), "height {h}");
    }
}

#[test]
fn frozen_counts() {
    // Values from product_series.
    assert_eq!(product_series(8).values().sum::<u64>(), 257);
    assert_eq!(product_series(12).values().sum::<u64>(), 1491);
    assert_eq!(verify::enumerate(8).len(), 257);
    assert_eq!(verify::enumerate(12).len(), 1491);
}

#[test]
fn weyl_kac_is_cutoff_stable() {
    for lambda in verify::standard_lambdas() {
        for c0 in 0..=4i64 {
            for c1 in 0..=4i64 {
                let mu = lambda.plus_root(&-RootVector::from_ints(c0, c1, System::Untwisted));
                let mut seen = None;
                for cutoff in [8, 12, 16, 24, 32] {
                    match verify::weyl_kac_multiplicity(&lambda, &mu, cutoff) {
                        Ok(m) => {
                            if let Some(prev) = seen {
                                assert_eq!(prev, m, "{lambda} at ({c0},{c1}), cutoff {cutoff}");
                            }
                            seen = Some(m);
                        }
                        Err(MvError::NotStabilized(_)) => assert!(seen.is_none(), "lost stability at {cutoff}"),
                        Err(e) => panic!("{e}"),
                    }
                }
                assert!(seen.is_some(), "{lambda} at ({c0},{c1}) never stabilized");
            }
        }
    }
    let not_dominant = AffineWeight::fundamental(-1, 0, System::Untwisted);
    assert!(verify::weyl_kac_multiplicity(&not_dominant, &not_dominant, 8).is_err());
}

#[test]
fn level_one_conditions_hold_in_practice() {
    assert!(verify::level_one_diagnostic(10).is_empty());
}

#[test]
fn crystal_graph_has_labeled_edges() {
    let dot = verify::crystal_graph_dot(3);
    let nodes = dot.lines().filter(|l| l.contains("[label=\"{")).count();
    assert_eq!(nodes, verify::enumerate(3).len());
    // Every nonzero node has an outgoing edge.
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    assert!(edges >= nodes - 1);
}

fn element() -> impl Strategy<Value = CrystalElement> {
    (
        prop::collection::vec(0u64..3, 0..3),
        prop::collection::vec(1u64..3, 0..2),
        prop::collection::vec(0u64..3, 0..3),
    )
        .prop_map(|(a, l, up)| CrystalElement::new(LusztigDatum::untwisted(a, l, up)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tensor_operators_are_inverse(b in element(), j in 0usize..2, k in -3i64..4, i in 0usize..2) {
        let t = TensorElement::new(b, ElementaryCrystalElement::new(j, k));
        if let Some(down) = t.f(i) {
            prop_assert_eq!(down.e(i), Some(t.clone()));
        }
        if let Some(up) = t.e(i) {
            prop_assert_eq!(up.f(i), Some(t.clone()));
        }
        let wt = t.wt();
        let pair = wt.coroot_pairing(i);
        let (phi, eps) = (t.phi(i), t.eps(i));
        if let (verify::ExtInt::Fin(p), verify::ExtInt::Fin(e)) = (phi, eps) {
            prop_assert_eq!(mvpoly::root_lattice::q(p - e), pair);
        }
    }
}
