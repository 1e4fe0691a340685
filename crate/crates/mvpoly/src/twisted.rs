//! A2(2) MV polytopes through the similarity map
//! `gamma: alpha0 -> alpha0~, alpha1 -> alpha1~/2`.
//!
//! Untwisted edges map to multiples `1` or `1/2` of twisted roots, so a
//! datum transports by halving the entries whose root gets halved.  The
//! parity conditions say exactly when the result is integral.

use std::collections::BTreeSet;

use crate::builder::right_to_left;
use crate::crystal::{self, CrystalElement};
use crate::error::{MvError, Result};
use crate::lusztig::{self, data_up_to_height, LusztigDatum, Partition};
use crate::polytope::DecoratedPolytope;
use crate::root_lattice::System;
use crate::verify::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityVariant {
    /// Conditions on both sides of the polytope.
    Both,
    /// Conditions on the right data only.
    Right,
    /// Conditions on the left data only; the datum is read as left data.
    Left,
}

fn even(x: u64) -> bool {
    x % 2 == 0
}

fn right_parity(d: &LusztigDatum) -> bool {
    let a = d.a_list().iter().enumerate().all(|(i, &x)| (i + 1) % 2 == 0 || even(x));
    let up = d.a_up_list().iter().enumerate().all(|(i, &x)| (i + 1) % 2 == 1 || even(x));
    a && up && d.lambda().parts().iter().all(|&x| even(x))
}

fn left_parity(d: &LusztigDatum) -> bool {
    right_parity(&lusztig::reverse(d))
}

/// Parity conditions for `gamma` to send the polytope to an A2(2) polytope.
/// `Both` takes the right data and computes the left side.
pub fn parity_check(d: &LusztigDatum, variant: ParityVariant) -> bool {
    match variant {
        ParityVariant::Right => right_parity(d),
        ParityVariant::Left => left_parity(d),
        ParityVariant::Both => right_parity(d) && left_parity(&right_to_left(d)),
    }
}

fn expect_system(d: &LusztigDatum, s: System) -> Result<()> {
    if d.system() == s {
        Ok(())
    } else {
        Err(MvError::WrongSystem {
            expected: s.to_string(),
            got: d.system().to_string(),
        })
    }
}

/// Entry `k` of the lower list is halved when `halve_lower(k)`; upper list
/// entries are halved when `!halve_lower(k)`.
fn rescale(d: &LusztigDatum, lower_odd: bool, to: System, down: bool) -> LusztigDatum {
    let halve_lower = |k: usize| (k % 2 == 1) == lower_odd;
    let f = |x: u64, h: bool| if !h { x } else if down { x / 2 } else { x * 2 };
    let a = d.a_list().iter().enumerate().map(|(i, &x)| f(x, halve_lower(i + 1))).collect();
    let up = d.a_up_list().iter().enumerate().map(|(i, &x)| f(x, !halve_lower(i + 1))).collect();
    let lam = d.lambda().parts().iter().map(|&x| f(x, true)).collect();
    LusztigDatum::new(a, Partition::new(lam), up, to)
}

/// Right data of `gamma(P)` from right data of `P`.
pub fn gamma_datum(d: &LusztigDatum) -> Result<LusztigDatum> {
    expect_system(d, System::Untwisted)?;
    if !right_parity(d) {
        return Err(MvError::Parity(d.to_string()));
    }
    Ok(rescale(d, true, System::Twisted, true))
}

pub fn gamma_inverse(d: &LusztigDatum) -> Result<LusztigDatum> {
    expect_system(d, System::Twisted)?;
    Ok(rescale(d, true, System::Untwisted, false))
}

/// Left data of `gamma(P)` from left data of `P`.
pub fn gamma_left_datum(d: &LusztigDatum) -> Result<LusztigDatum> {
    expect_system(d, System::Untwisted)?;
    if !left_parity(d) {
        return Err(MvError::Parity(d.to_string()));
    }
    Ok(rescale(d, false, System::Twisted, true))
}

pub fn gamma_left_inverse(d: &LusztigDatum) -> Result<LusztigDatum> {
    expect_system(d, System::Twisted)?;
    Ok(rescale(d, false, System::Untwisted, false))
}

/// Left data of the A2(2) MV polytope with right data `d`.
///
/// Left and right data are rescaled with opposite parities, so unlike the
/// untwisted map this is not its own inverse; see [`a22_left_to_right`].
/// Panics if `d` is untwisted; use [`try_a22_right_to_left`] for a checked
/// version.
pub fn a22_right_to_left(d: &LusztigDatum) -> LusztigDatum {
    try_a22_right_to_left(d).expect("twisted datum with integral left side")
}

pub fn try_a22_right_to_left(d: &LusztigDatum) -> Result<LusztigDatum> {
    let up = gamma_inverse(d)?;
    gamma_left_datum(&right_to_left(&up))
}

/// Right data of the A2(2) MV polytope with left data `d`.
pub fn a22_left_to_right(d: &LusztigDatum) -> LusztigDatum {
    try_a22_left_to_right(d).expect("twisted datum with integral right side")
}

pub fn try_a22_left_to_right(d: &LusztigDatum) -> Result<LusztigDatum> {
    let up = gamma_left_inverse(d)?;
    gamma_datum(&right_to_left(&up))
}

/// The A2(2) conditions evaluated on the twisted polytope itself.
pub fn a22_is_mv_direct(a: &LusztigDatum, abar: &LusztigDatum) -> Result<bool> {
    expect_system(a, System::Twisted)?;
    expect_system(abar, System::Twisted)?;
    Ok(DecoratedPolytope::from_data_pair(a, abar)?.is_mv())
}

/// The same question answered on the untwisted pullback.
pub fn a22_is_mv_pullback(a: &LusztigDatum, abar: &LusztigDatum) -> Result<bool> {
    let pa = gamma_inverse(a)?;
    let pb = gamma_left_inverse(abar)?;
    Ok(DecoratedPolytope::from_data_pair(&pa, &pb)?.is_mv())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A22Op {
    E0,
    E1,
    F0,
    F1,
}

impl std::str::FromStr for A22Op {
    type Err = MvError;

    fn from_str(s: &str) -> Result<A22Op> {
        match s.trim() {
            "e0" => Ok(A22Op::E0),
            "e1" => Ok(A22Op::E1),
            "f0" => Ok(A22Op::F0),
            "f1" => Ok(A22Op::F1),
            other => Err(MvError::UnknownOp(other.to_string())),
        }
    }
}

pub fn a22_crystal_op(op: A22Op, b: &CrystalElement) -> Result<Option<CrystalElement>> {
    expect_system(b.right(), System::Twisted)?;
    Ok(match op {
        A22Op::E0 => Some(crystal::e(0, b)),
        A22Op::E1 => Some(crystal::e(1, b)),
        A22Op::F0 => crystal::f(0, b),
        A22Op::F1 => crystal::f(1, b),
    })
}

pub fn a22_parse_word(word: &str) -> Result<Vec<A22Op>> {
    if word.trim().is_empty() {
        return Ok(Vec::new());
    }
    word.split(',').map(str::parse).collect()
}

/// Letters applied left to right; `Ok(Err(pos))` names the 1-based letter
/// that returned none.
pub fn a22_apply_word(ops: &[A22Op], b: &CrystalElement) -> Result<std::result::Result<CrystalElement, usize>> {
    let mut cur = b.clone();
    for (pos, &op) in ops.iter().enumerate() {
        match a22_crystal_op(op, &cur)? {
            Some(next) => cur = next,
            None => return Ok(Err(pos + 1)),
        }
    }
    Ok(Ok(cur))
}

/// The embedding of the A2(2) crystal into the untwisted one.
pub fn s_map(b: &CrystalElement) -> Result<CrystalElement> {
    Ok(CrystalElement::new(gamma_inverse(b.right())?))
}

fn e1_twice(b: &CrystalElement) -> CrystalElement {
    crystal::e(1, &crystal::e(1, b))
}

fn f1_twice(b: &CrystalElement) -> Option<CrystalElement> {
    crystal::f(1, b).and_then(|c| crystal::f(1, &c))
}

/// Checks on all twisted elements of height `<= h`:
/// `S(e0 b) = e0 S(b)`, `S(e1 b) = e1^2 S(b)`, the left side of `S(b)`
/// is the pullback of the left side of `b`, and the image of `S` is the
/// set of untwisted data passing the parity conditions, which agree with
/// each other and are closed under `e0, f0, e1^2, f1^2`.
pub fn similarity_embed_check(h: u64) -> Report {
    let suite = "a22";
    let fail = |msg: String| Report::fail(suite, h, msg);
    let twisted = data_up_to_height(h, System::Twisted);
    let mut image = BTreeSet::new();
    for d in &twisted {
        let b = CrystalElement::new(d.clone());
        let Ok(sb) = s_map(&b) else {
            return fail(format!("no pullback for {d}"));
        };
        match gamma_left_inverse(b.left()) {
            Ok(l) if &l == sb.left() => {}
            _ => return fail(format!("left side of S({d}) is not the pullback")),
        }
        if s_map(&crystal::e(0, &b)).ok().as_ref() != Some(&crystal::e(0, &sb)) {
            return fail(format!("S(e0 b) != e0 S(b) at {d}"));
        }
        if s_map(&crystal::e(1, &b)).ok().as_ref() != Some(&e1_twice(&sb)) {
            return fail(format!("S(e1 b) != e1^2 S(b) at {d}"));
        }
        let f0 = crystal::f(0, &b).map(|c| s_map(&c).expect("twisted"));
        if f0 != crystal::f(0, &sb) {
            return fail(format!("S(f0 b) != f0 S(b) at {d}"));
        }
        let f1 = crystal::f(1, &b).map(|c| s_map(&c).expect("twisted"));
        if f1 != f1_twice(&sb) {
            return fail(format!("S(f1 b) != f1^2 S(b) at {d}"));
        }
        match (a22_is_mv_direct(b.right(), b.left()), a22_is_mv_pullback(b.right(), b.left())) {
            (Ok(true), Ok(true)) => {}
            other => return fail(format!("MV check disagrees at {d}: {other:?}")),
        }
        image.insert(sb.right().clone());
    }
    // Untwisted data whose twisted image has height <= h: c0 + c1/2 <= h.
    let mut expected = BTreeSet::new();
    for a in data_up_to_height(2 * h, System::Untwisted) {
        let w = lusztig::weight(&a);
        let tw_height = &w.c0 + &w.c1 / crate::root_lattice::q(2);
        let fits = tw_height <= crate::root_lattice::q(h as i64);
        let r = parity_check(&a, ParityVariant::Right);
        let l = parity_check(&right_to_left(&a), ParityVariant::Left);
        let both = parity_check(&a, ParityVariant::Both);
        if r != l || r != both {
            return fail(format!("parity conditions disagree at {a}"));
        }
        if r {
            let b = CrystalElement::new(a.clone());
            let moved = [
                Some(crystal::e(0, &b)),
                crystal::f(0, &b),
                Some(e1_twice(&b)),
                f1_twice(&b),
            ];
            for c in moved.into_iter().flatten() {
                if !parity_check(c.right(), ParityVariant::Right) {
                    return fail(format!("parity subset not closed at {a}"));
                }
            }
            if fits {
                expected.insert(a);
            }
        }
    }
    if image != expected {
        let diff = expected.symmetric_difference(&image).next().map(|d| d.to_string());
        return fail(format!("image differs from parity subset at {}", diff.unwrap_or_default()));
    }
    Report::pass(suite, h)
}

/// Untwisted data whose twisted image would have height `<= h`.
fn untwisted_within(h: u64) -> Vec<LusztigDatum> {
    let bound = crate::root_lattice::q(h as i64);
    data_up_to_height(2 * h, System::Untwisted)
        .into_iter()
        .filter(|a| {
            let w = lusztig::weight(a);
            &w.c0 + &w.c1 / crate::root_lattice::q(2) <= bound
        })
        .collect()
}

/// Checks on twisted data of height `<= h`: `gamma` and its left variant
/// are bijections onto twisted data with exact inverses, the two transfer
/// maps are mutually inverse, they preserve weight, and the pushforward is
/// integral.
pub fn a22_transfer_check(h: u64) -> Report {
    let suite = "a22-transfer";
    let fail = |msg: String| Report::fail(suite, h, msg);
    let twisted = data_up_to_height(h, System::Twisted);
    for d in &twisted {
        for (down, up) in [
            (gamma_datum as fn(&LusztigDatum) -> Result<LusztigDatum>, gamma_inverse as fn(&LusztigDatum) -> Result<LusztigDatum>),
            (gamma_left_datum, gamma_left_inverse),
        ] {
            match up(d).and_then(|u| down(&u)) {
                Ok(back) if &back == d => {}
                _ => return fail(format!("gamma does not invert at {d}")),
            }
        }
        let l = match try_a22_right_to_left(d) {
            Ok(l) => l,
            Err(e) => return fail(format!("pushforward not integral at {d}: {e}")),
        };
        if lusztig::weight(d) != lusztig::left_weight(&l) {
            return fail(format!("weight not preserved at {d}"));
        }
        match try_a22_left_to_right(&l) {
            Ok(r) if &r == d => {}
            _ => return fail(format!("left_to_right does not invert right_to_left at {d}")),
        }
        match try_a22_left_to_right(d) {
            Ok(r) if a22_right_to_left(&r) == *d => {}
            _ => return fail(format!("right_to_left does not invert left_to_right at {d}")),
        }
    }
    let mut image = BTreeSet::new();
    for a in untwisted_within(h) {
        if !right_parity(&a) {
            continue;
        }
        let t = gamma_datum(&a).expect("parity holds");
        if gamma_inverse(&t).ok().as_ref() != Some(&a) {
            return fail(format!("gamma_inverse does not invert at {a}"));
        }
        image.insert(t);
    }
    if image.len() != twisted.len() || image.iter().ne(twisted.iter().collect::<BTreeSet<_>>()) {
        return fail("gamma is not onto twisted data".to_string());
    }
    Report::pass(suite, h)
}

/// Twisted data of height `<= h` on which applying `a22_right_to_left`
/// twice does not return the input.
pub fn a22_involution_failures(h: u64) -> Vec<LusztigDatum> {
    data_up_to_height(h, System::Twisted)
        .into_iter()
        .filter(|d| try_a22_right_to_left(d).and_then(|l| try_a22_right_to_left(&l)).ok().as_ref() != Some(d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_examples() {
        let u = |a: Vec<u64>, l: Vec<u64>, up: Vec<u64>| LusztigDatum::untwisted(a, l, up);
        let t = |a: Vec<u64>, l: Vec<u64>, up: Vec<u64>| LusztigDatum::twisted(a, l, up);
        assert_eq!(gamma_datum(&u(vec![2], vec![], vec![])).unwrap(), t(vec![1], vec![], vec![]));
        assert_eq!(gamma_datum(&u(vec![0, 1], vec![], vec![])).unwrap(), t(vec![0, 1], vec![], vec![]));
        assert_eq!(gamma_datum(&u(vec![], vec![2], vec![])).unwrap(), t(vec![], vec![1], vec![]));
        assert!(matches!(gamma_datum(&u(vec![1], vec![], vec![])), Err(MvError::Parity(_))));
        assert!(parity_check(&u(vec![2], vec![], vec![]), ParityVariant::Right));
        assert!(!parity_check(&u(vec![1], vec![], vec![]), ParityVariant::Right));
        let z = LusztigDatum::zero(System::Untwisted);
        for v in [ParityVariant::Both, ParityVariant::Right, ParityVariant::Left] {
            assert!(parity_check(&z, v));
        }
    }

    #[test]
    fn twisted_transfer_small() {
        let z = LusztigDatum::zero(System::Twisted);
        assert_eq!(a22_right_to_left(&z), z);
        let d = LusztigDatum::twisted(vec![1], vec![], vec![]);
        let l = a22_right_to_left(&d);
        let expected = gamma_left_datum(&right_to_left(&LusztigDatum::untwisted(vec![2], vec![], vec![]))).unwrap();
        assert_eq!(l, expected);
        assert_eq!(lusztig::weight(&d), lusztig::left_weight(&l));
        assert!(a22_is_mv_direct(&d, &l).unwrap());
    }

    #[test]
    fn small_similarity() {
        assert!(similarity_embed_check(0).passed());
        assert!(similarity_embed_check(2).passed());
        assert!(a22_transfer_check(3).passed());
    }

    #[test]
    fn transfer_is_not_self_inverse() {
        let bad = a22_involution_failures(3);
        assert!(!bad.is_empty());
        assert!(bad.iter().all(|d| a22_left_to_right(&a22_right_to_left(d)) == *d));
    }
}
