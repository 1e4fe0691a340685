//! Crystal operators on MV polytopes.
//!
//! An element is stored through its right Lusztig data; the left data is
//! computed once at construction.  `f0`/`e0` act on `a^1`, `f1`/`e1` on the
//! left `abar^1`, and the starred operators on `abar_1` and `a_1`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::builder::right_to_left;
use crate::error::{MvError, Result};
use crate::lusztig::{self, LusztigDatum, RatDatum};
use crate::polytope::{DecoratedPolytope, DiagType, Diagonal, Level};
use crate::root_lattice::{q, q_to_string, weyl_orbit_chains, AffineWeight, RootVector, System, Q};
use crate::twisted::{a22_left_to_right, a22_right_to_left};

/// Right data to left data in the datum's own root system.
pub fn transfer(d: &LusztigDatum) -> LusztigDatum {
    match d.system() {
        System::Untwisted => right_to_left(d),
        System::Twisted => a22_right_to_left(d),
    }
}

/// Left data to right data.  Untwisted this is [`transfer`] again.
pub fn transfer_back(d: &LusztigDatum) -> LusztigDatum {
    match d.system() {
        System::Untwisted => right_to_left(d),
        System::Twisted => a22_left_to_right(d),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrystalElement {
    right: LusztigDatum,
    left: LusztigDatum,
}

impl CrystalElement {
    pub fn new(right: LusztigDatum) -> Self {
        let left = transfer(&right);
        CrystalElement { right, left }
    }

    pub fn from_left(left: LusztigDatum) -> Self {
        let right = transfer_back(&left);
        CrystalElement { right, left }
    }

    /// Checked [`CrystalElement::new`]: a twisted datum whose left side is
    /// not integral is an error rather than a panic.
    pub fn try_new(right: LusztigDatum) -> Result<Self> {
        let left = match right.system() {
            System::Untwisted => right_to_left(&right),
            System::Twisted => crate::twisted::try_a22_right_to_left(&right)?,
        };
        Ok(CrystalElement { right, left })
    }

    pub fn try_from_left(left: LusztigDatum) -> Result<Self> {
        let right = match left.system() {
            System::Untwisted => right_to_left(&left),
            System::Twisted => crate::twisted::try_a22_left_to_right(&left)?,
        };
        Ok(CrystalElement { right, left })
    }

    /// An element given by both sides.  The pair must form an MV polytope.
    pub fn from_data_pair(right: LusztigDatum, left: LusztigDatum) -> Result<Self> {
        let p = DecoratedPolytope::from_data_pair(&right, &left)?;
        if let Some(v) = p.mv_violation() {
            return Err(MvError::NotMv(v.to_string()));
        }
        Ok(CrystalElement { right, left })
    }

    pub fn zero(system: System) -> Self {
        CrystalElement::new(LusztigDatum::zero(system))
    }

    pub fn system(&self) -> System {
        self.right.system()
    }

    pub fn right(&self) -> &LusztigDatum {
        &self.right
    }

    pub fn left(&self) -> &LusztigDatum {
        &self.left
    }

    pub fn polytope(&self) -> DecoratedPolytope {
        DecoratedPolytope::from_data_pair(&self.right, &self.left).expect("element sides close")
    }

    pub fn is_lowest(&self) -> bool {
        self.right.is_zero()
    }

    pub fn height(&self) -> u64 {
        lusztig::height(&self.right)
    }
}

/// Both sides of an element with its statistics, as printed by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub right: LusztigDatum,
    pub left: LusztigDatum,
    pub weight: RootVector,
    pub height: u64,
    pub phi: [i64; 2],
    pub eps: [i64; 2],
    pub active_diagonals: Vec<String>,
    pub is_mv: bool,
}

pub fn summarize(b: &CrystalElement) -> Summary {
    let p = b.polytope();
    let active = p
        .active_diagonals()
        .map(|ds| ds.iter().map(|d| d.to_string()).collect())
        .unwrap_or_default();
    Summary {
        right: b.right.clone(),
        left: b.left.clone(),
        weight: wt(b),
        height: b.height(),
        phi: [phi(0, b), phi(1, b)],
        eps: [eps(0, b), eps(1, b)],
        active_diagonals: active,
        is_mv: p.is_mv(),
    }
}

impl fmt::Display for CrystalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.right)
    }
}

fn check_index(i: usize) {
    assert!(i <= 1, "crystal index must be 0 or 1, got {i}");
}

pub fn wt(b: &CrystalElement) -> RootVector {
    lusztig::weight(&b.right)
}

pub fn phi(i: usize, b: &CrystalElement) -> i64 {
    check_index(i);
    let v = if i == 0 { b.right.a_up(1) } else { b.left.a_up(1) };
    v as i64
}

/// `phi_i - <wt, alpha_i^vee>`; the coroot pairing agrees with the form
/// in the untwisted system.
pub fn eps(i: usize, b: &CrystalElement) -> i64 {
    let p = wt(b).coroot_pairing(i);
    phi(i, b) - p.to_integer().to_i64().expect("pairing fits in i64")
}

pub fn e(i: usize, b: &CrystalElement) -> CrystalElement {
    check_index(i);
    if i == 0 {
        CrystalElement::new(b.right.with_a_up(1, b.right.a_up(1) + 1))
    } else {
        CrystalElement::from_left(b.left.with_a_up(1, b.left.a_up(1) + 1))
    }
}

pub fn f(i: usize, b: &CrystalElement) -> Option<CrystalElement> {
    check_index(i);
    if i == 0 {
        let n = b.right.a_up(1);
        (n > 0).then(|| CrystalElement::new(b.right.with_a_up(1, n - 1)))
    } else {
        let n = b.left.a_up(1);
        (n > 0).then(|| CrystalElement::from_left(b.left.with_a_up(1, n - 1)))
    }
}

/// The Kashiwara involution: negation of the polytope.  In the untwisted
/// system this is `left_to_right(reverse(a))`.
pub fn star(b: &CrystalElement) -> CrystalElement {
    match b.system() {
        System::Untwisted => {
            let right = transfer(&lusztig::reverse(&b.right));
            CrystalElement::new(right)
        }
        System::Twisted => CrystalElement::new(lusztig::reverse(&b.left)),
    }
}

pub fn e_star(i: usize, b: &CrystalElement) -> CrystalElement {
    star(&e(i, &star(b)))
}

pub fn f_star(i: usize, b: &CrystalElement) -> Option<CrystalElement> {
    f(i, &star(b)).map(|c| star(&c))
}

pub fn phi_star(i: usize, b: &CrystalElement) -> i64 {
    phi(i, &star(b))
}

pub fn eps_star(i: usize, b: &CrystalElement) -> i64 {
    eps(i, &star(b))
}

/// Starred raising operator read off directly: `e0*` raises `abar_1`,
/// `e1*` raises `a_1`.
pub fn e_star_direct(i: usize, b: &CrystalElement) -> CrystalElement {
    check_index(i);
    if i == 0 {
        CrystalElement::from_left(b.left.with_a(1, b.left.a(1) + 1))
    } else {
        CrystalElement::new(b.right.with_a(1, b.right.a(1) + 1))
    }
}

pub fn f_star_direct(i: usize, b: &CrystalElement) -> Option<CrystalElement> {
    check_index(i);
    if i == 0 {
        let n = b.left.a(1);
        (n > 0).then(|| CrystalElement::from_left(b.left.with_a(1, n - 1)))
    } else {
        let n = b.right.a(1);
        (n > 0).then(|| CrystalElement::new(b.right.with_a(1, n - 1)))
    }
}

/// One letter of an operator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    E(usize),
    F(usize),
    EStar(usize),
    FStar(usize),
    Star,
}

impl FromStr for Op {
    type Err = MvError;

    fn from_str(s: &str) -> Result<Op> {
        Ok(match s.trim() {
            "e0" => Op::E(0),
            "e1" => Op::E(1),
            "f0" => Op::F(0),
            "f1" => Op::F(1),
            "e0*" => Op::EStar(0),
            "e1*" => Op::EStar(1),
            "f0*" => Op::FStar(0),
            "f1*" => Op::FStar(1),
            "star" => Op::Star,
            other => return Err(MvError::UnknownOp(other.to_string())),
        })
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::E(i) => write!(f, "e{i}"),
            Op::F(i) => write!(f, "f{i}"),
            Op::EStar(i) => write!(f, "e{i}*"),
            Op::FStar(i) => write!(f, "f{i}*"),
            Op::Star => write!(f, "star"),
        }
    }
}

pub fn parse_word(word: &str) -> Result<Vec<Op>> {
    if word.trim().is_empty() {
        return Ok(Vec::new());
    }
    word.split(',').map(str::parse).collect()
}

pub fn apply_op(op: Op, b: &CrystalElement) -> Option<CrystalElement> {
    match op {
        Op::E(i) => Some(e(i, b)),
        Op::F(i) => f(i, b),
        Op::EStar(i) => Some(e_star(i, b)),
        Op::FStar(i) => f_star(i, b),
        Op::Star => Some(star(b)),
    }
}

/// Apply the letters left to right.  On `None` the error carries the
/// 1-based position of the letter that failed.
pub fn apply_word(ops: &[Op], b: &CrystalElement) -> std::result::Result<CrystalElement, usize> {
    let mut cur = b.clone();
    for (pos, op) in ops.iter().enumerate() {
        cur = apply_op(*op, &cur).ok_or(pos + 1)?;
    }
    Ok(cur)
}

// ---------------------------------------------------------------------
// Geometric f0.

/// One stretch of the time-stepping: on `[start, end]` everything at and
/// below `pivot` is frozen.  `pivot` is `None` when there is no active
/// alpha1 diagonal and only the bottom vertex stays fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub start: Q,
    pub end: Q,
    pub pivot: Option<Diagonal>,
    pub left_at_end: RatDatum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricRun {
    pub stages: Vec<Stage>,
    pub left: RatDatum,
}

impl GeometricRun {
    /// Interior times at which the pivot diagonal changed.
    pub fn breakpoints(&self) -> Vec<Q> {
        self.stages.iter().filter(|s| s.end < q(1)).map(|s| s.end.clone()).collect()
    }
}

/// A part of either decoration equals the width, so condition (4) holds
/// with equality.
fn width_is_tight(p: &DecoratedPolytope) -> bool {
    let w = p.width();
    w.is_positive() && (p.lambda().first() == Some(&w) || p.lambdabar().first() == Some(&w))
}

/// Whether `p` has an active alpha1 diagonal, counting the diagonal at
/// infinity as active when the width bound is tight.  Without that case
/// `f0 = f0*` fails on e.g. `a^1 = 1, lambda = (1)`.
pub fn has_active_alpha1(p: &DecoratedPolytope) -> bool {
    highest_active_alpha1(p).is_some()
}

fn highest_active_alpha1(p: &DecoratedPolytope) -> Option<Diagonal> {
    let n = p.stabilization() + 1;
    let a1 = DiagType::Alpha1;
    for k in 2..=n {
        let d = Diagonal::new(Level::Upper(k), a1);
        if p.is_active(&d) {
            return Some(d);
        }
    }
    let d = Diagonal::new(Level::LowerInf, a1);
    if p.is_active(&d) || width_is_tight(p) {
        return Some(d);
    }
    (2..=n).rev().map(|k| Diagonal::new(Level::Lower(k), a1)).find(|d| p.is_active(d))
}

/// Quantities that are `>= 0` exactly on valid MV polytopes near the path:
/// left edge lengths, signed diagonal pairings and the width bounds.
fn slacks(p: &DecoratedPolytope, levels: usize, left_len: usize) -> Vec<Q> {
    let l = p.left_rat();
    let mut out = Vec::new();
    for j in 1..=left_len {
        out.push(l.a(j));
        out.push(l.a_up(j));
    }
    let mut lower = vec![Level::LowerInf];
    let mut upper = vec![Level::UpperInf];
    for k in 2..=levels {
        lower.push(Level::Lower(k));
        upper.push(Level::Upper(k));
    }
    for t in [DiagType::Alpha0, DiagType::Alpha1] {
        for lv in &lower {
            out.push(-p.diagonal_value(&Diagonal::new(*lv, t)));
        }
        for lv in &upper {
            out.push(p.diagonal_value(&Diagonal::new(*lv, t)));
        }
    }
    let w = p.width();
    out.push(&w - p.right_rat().lambda_largest());
    out.push(&w - l.lambda_largest());
    out
}

fn add_scaled(base: &RatDatum, dir: &[(bool, usize, i64)], s: &Q) -> RatDatum {
    let mut out = base.clone();
    for &(upper, k, rate) in dir {
        if upper {
            out = out.with_a_up(k, out.a_up(k) + s * q(rate));
        } else {
            out = out.with_a(k, out.a(k) + s * q(rate));
        }
    }
    out
}

/// `f0` computed by moving the top vertex down along `alpha0` and tracking
/// the polytope through the breakpoints where a new alpha1 diagonal
/// becomes active.  Returns `None` when `a^1 = 0`.
pub fn f0_geometric_run(b: &CrystalElement) -> Result<Option<GeometricRun>> {
    if b.system() != System::Untwisted {
        return Err(MvError::WrongSystem {
            expected: System::Untwisted.to_string(),
            got: b.system().to_string(),
        });
    }
    let top = q(b.right.a_up(1) as i64);
    if top.is_zero() {
        return Ok(None);
    }
    let right0 = b.right.to_rational();
    let mut left = b.left.to_rational();
    let mut t = Q::zero();
    let one = q(1);
    let mut stages = Vec::new();
    while t < one {
        let right_t = right0.with_a_up(1, &top - &t);
        let p = DecoratedPolytope::from_rational_pair(&right_t, &left)?;
        let pivot = highest_active_alpha1(&p);
        let remaining = &one - &t;
        let (s, next_left) = match pivot.map(|d| d.level) {
            Some(Level::LowerInf) => infinite_stage(&p, &left, &remaining)?,
            other if in_tail(b, &left, other) => {
                let k = match other {
                    Some(Level::Lower(k)) => k,
                    _ => 1,
                };
                let probe_right = right0.with_a_up(1, &top - &one);
                cascade_stage(&p, &probe_right, &left, k, &remaining, &t)?
            }
            other => {
                let dir: Vec<(bool, usize, i64)> = match other {
                    Some(Level::Upper(k)) => vec![(true, k, -(k as i64 - 1)), (true, k - 1, k as i64)],
                    Some(Level::Lower(k)) => vec![(false, k, -(k as i64)), (false, k + 1, k as i64 - 1)],
                    None => vec![(false, 1, -1)],
                    Some(_) => unreachable!("upper infinite level is never the highest alpha1 diagonal"),
                };
                let probe_left = add_scaled(&left, &dir, &remaining);
                let probe_right = right0.with_a_up(1, &top - &one);
                let probe = DecoratedPolytope::from_signed_pair(&probe_right, &probe_left)?;
                let levels = p.stabilization().max(probe.stabilization()) + 2;
                let width = left.a_len().max(left.a_up_len()).max(probe_left.a_len()).max(probe_left.a_up_len());
                let s0 = slacks(&p, levels, width);
                let s1 = slacks(&probe, levels, width);
                let mut s = remaining.clone();
                for (x0, x1) in s0.iter().zip(&s1) {
                    if x1.is_negative() {
                        if !x0.is_positive() {
                            return Err(MvError::Stalled(q_to_string(&t)));
                        }
                        let root = &remaining * x0 / (x0 - x1);
                        if root < s {
                            s = root;
                        }
                    }
                }
                (s.clone(), add_scaled(&left, &dir, &s))
            }
        };
        if !s.is_positive() {
            return Err(MvError::Stalled(q_to_string(&t)));
        }
        t += &s;
        left = next_left;
        stages.push(Stage {
            start: &t - &s,
            end: t.clone(),
            pivot,
            left_at_end: left.clone(),
        });
    }
    Ok(Some(GeometricRun { stages, left }))
}

/// Whether a lower pivot at level `k` (`None` is the bottom, `k = 1`) sits
/// above every nonzero right entry `a_j`, with at most the two left entries
/// `abar_k`, `abar_{k+1}` nonzero from level `k` on.
fn in_tail(b: &CrystalElement, left: &RatDatum, pivot: Option<Level>) -> bool {
    let k = match pivot {
        Some(Level::Lower(k)) => k,
        None => 1,
        Some(_) => return false,
    };
    let right_clear = (k + 1..=b.right.a_list().len()).all(|j| b.right.a(j) == 0);
    let left_clear = (k + 2..=left.a_len()).all(|j| left.a(j).is_zero());
    let y = q(k as i64 - 1) * left.a(k) + q(k as i64) * left.a(k + 1);
    right_clear && left_clear && y.is_positive()
}

/// Left lower entries from level `k` on that add up to `(x, y)` with
/// `x >= y > 0`: two consecutive entries, or a vertical part `y` once
/// `x = y`.
fn floating_pair(left: &RatDatum, k: usize, x: &Q, y: &Q) -> RatDatum {
    let mut out = left.clone();
    for j in k..=left.a_len() {
        out = out.with_a(j, Q::zero());
    }
    if x == y {
        let mut parts = out.lambda().to_vec();
        parts.push(y.clone());
        parts.sort_by(|a, b| b.cmp(a));
        return out.with_lambda(parts);
    }
    let m = y / (x - y);
    let j = (m.ceil().to_integer().to_usize().expect("small index")).max(k);
    let jq = q(j as i64);
    out = out.with_a(j, &jq * x - (&jq + q(1)) * y);
    out.with_a(j + 1, &jq * y - (&jq - q(1)) * x)
}

/// A lower pivot above all right entries.  The left chain above the pivot
/// vertex spans `(x - s, y)` and is carried by a floating pair of entries;
/// the pair moves up one level every time its lower entry vanishes, so the
/// breakpoints accumulate at `s = x - y`, where the pair turns into a part
/// `y` of the left decoration.  Everything else moves linearly.
fn cascade_stage(
    p: &DecoratedPolytope,
    probe_right: &RatDatum,
    left: &RatDatum,
    k: usize,
    remaining: &Q,
    t: &Q,
) -> Result<(Q, RatDatum)> {
    let kq = q(k as i64);
    let x = &kq * left.a(k) + (&kq + q(1)) * left.a(k + 1);
    let y = (&kq - q(1)) * left.a(k) + &kq * left.a(k + 1);
    let excess = &x - &y;
    let cap = if &excess < remaining { excess.clone() } else { remaining.clone() };
    let x_cap = &x - &cap;
    let probe_left = floating_pair(left, k, &x_cap, &y);
    let probe = DecoratedPolytope::from_signed_pair(probe_right, &probe_left)?;
    let levels = p.stabilization().max(probe.stabilization()) + 2;
    // The new part only appears at the end, so the width bound is taken
    // against the current left decoration on both ends.
    let largest = left.lambda_largest();
    let s0 = linear_slacks(p, levels, &largest);
    let s1 = linear_slacks(&probe, levels, &largest);
    let mut s = cap.clone();
    for (x0, x1) in s0.iter().zip(&s1) {
        if x1.is_negative() {
            if !x0.is_positive() {
                return Err(MvError::Stalled(q_to_string(t)));
            }
            let root = &cap * x0 / (x0 - x1);
            if root < s {
                s = root;
            }
        }
    }
    let x_end = &x - &s;
    Ok((s, floating_pair(left, k, &x_end, &y)))
}

/// The slacks that move linearly while only the region above a lower pivot
/// shifts: upper diagonals, the diagonals at infinity and the width bounds.
fn linear_slacks(p: &DecoratedPolytope, levels: usize, left_largest: &Q) -> Vec<Q> {
    let mut out = Vec::new();
    for t in [DiagType::Alpha0, DiagType::Alpha1] {
        out.push(-p.diagonal_value(&Diagonal::new(Level::LowerInf, t)));
        out.push(p.diagonal_value(&Diagonal::new(Level::UpperInf, t)));
        for k in 2..=levels {
            out.push(p.diagonal_value(&Diagonal::new(Level::Upper(k), t)));
        }
    }
    let w = p.width();
    out.push(&w - p.right_rat().lambda_largest());
    out.push(&w - left_largest);
    out
}

/// The stage starting with an active alpha1 diagonal at infinity, of
/// width `w > 0`.  For small `s` the left decoration drops a part `w`,
/// `mubar^inf` moves to `mu^inf - w alpha1`, and the two left edges
/// `abar^r`, `abar^{r+1}` with `r = floor(w / s)` absorb the slope.  All
/// the new alpha1 diagonals at upper levels above `r` pass through `mu^inf`
/// and do not end the stage.
fn infinite_stage(p: &DecoratedPolytope, left: &RatDatum, remaining: &Q) -> Result<(Q, RatDatum)> {
    let w = p.width();
    let m0 = (1..).find(|&j| p.mu_up(j) == p.mu_up_inf()).expect("chains stabilize");
    let mut s = remaining.clone();
    let cap = &w / q(m0 as i64);
    if cap < s {
        s = cap;
    }
    for j in 2..=m0 {
        let v = p.diagonal_value(&Diagonal::new(Level::Upper(j), DiagType::Alpha1));
        if v.is_positive() && v < s {
            s = v;
        }
    }
    let r = (&w / &s).floor().to_integer().to_usize().expect("small index");
    let rq = q(r as i64);
    let mut parts = left.lambda().to_vec();
    let Some(pos) = parts.iter().position(|x| *x == w) else {
        return Err(MvError::Stalled("left decoration has no part equal to the width".into()));
    };
    parts.remove(pos);
    let mut out = left.with_lambda(parts);
    for j in r..=r + 1 {
        if !out.a_up(j).is_zero() {
            return Err(MvError::Stalled("nonzero edge past the infinite diagonal".into()));
        }
    }
    out = out.with_a_up(r, (&rq + q(1)) * &s - &w);
    out = out.with_a_up(r + 1, &w - &rq * &s);
    Ok((s, out))
}

/// `f0` by the geometric procedure, as an element built from both sides.
pub fn f0_geometric(b: &CrystalElement) -> Result<Option<CrystalElement>> {
    let Some(run) = f0_geometric_run(b)? else {
        return Ok(None);
    };
    let right = b.right.with_a_up(1, b.right.a_up(1) - 1);
    let left = run
        .left
        .to_integral()
        .ok_or_else(|| MvError::InvalidDatum(format!("non-integral result {}", run.left)))?;
    CrystalElement::from_data_pair(right, left).map(Some)
}

// ---------------------------------------------------------------------
// B(-Lambda).

fn check_dominant(lambda: &AffineWeight) -> Result<()> {
    if lambda.is_dominant_integral() {
        Ok(())
    } else {
        Err(MvError::NotDominant(lambda.to_string()))
    }
}

/// `a_1 <= c_1` and `abar_1 <= c_0` for `Lambda = c_0 Lambda_0 + c_1 Lambda_1`.
pub fn in_b_lambda(b: &CrystalElement, lambda: &AffineWeight) -> Result<bool> {
    check_dominant(lambda)?;
    Ok(b.right.a(1) as i64 <= lambda.m1 && b.left.a(1) as i64 <= lambda.m0)
}

/// `v - mu` lies in the cone spanned by `s` and `s + (k-1) delta` where
/// `s` is the simple root `i`.
fn in_cone(v: &RootVector, i: usize, k: usize) -> bool {
    let (along, across) = if i == 1 { (&v.c1, &v.c0) } else { (&v.c0, &v.c1) };
    if k == 1 {
        return across.is_zero() && !along.is_negative();
    }
    let y = across / q(k as i64 - 1);
    let x = along - &y * q(k as i64);
    !y.is_negative() && !x.is_negative()
}

/// Whether the representative with `mu_0 = -Lambda` lies in the convex
/// hull of the Weyl orbit of `-Lambda`, tested vertex by vertex on the
/// lower chains against the orbit points with the same number of
/// reflections.
pub fn contained_in_hull(b: &CrystalElement, lambda: &AffineWeight) -> Result<bool> {
    check_dominant(lambda)?;
    if b.system() != System::Untwisted {
        return Err(MvError::WrongSystem {
            expected: System::Untwisted.to_string(),
            got: b.system().to_string(),
        });
    }
    let p = b.polytope();
    let depth = p.stabilization() + 2;
    let (v, vbar) = weyl_orbit_chains(lambda, depth)?;
    let anchor = &lambda.neg().root_part;
    for k in 1..=depth {
        let mu = anchor + p.mu(k);
        let mubar = anchor + p.mubar(k);
        if !in_cone(&(&v[k].root_part - &mu), 1, k) || !in_cone(&(&vbar[k].root_part - &mubar), 0, k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Crystal operators of `B(-Lambda)`: `None` outside the subset.
pub fn f_lambda(i: usize, b: &CrystalElement, lambda: &AffineWeight) -> Result<Option<CrystalElement>> {
    match f(i, b) {
        Some(c) if in_b_lambda(&c, lambda)? => Ok(Some(c)),
        _ => Ok(None),
    }
}

pub fn e_lambda(i: usize, b: &CrystalElement, lambda: &AffineWeight) -> Result<Option<CrystalElement>> {
    let c = e(i, b);
    Ok(in_b_lambda(&c, lambda)?.then_some(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_lattice::q_ratio;

    fn sample() -> CrystalElement {
        CrystalElement::new(LusztigDatum::untwisted(vec![2, 1, 1], vec![9, 2, 1, 1], vec![1, 0, 1]))
    }

    #[test]
    fn sample_statistics() {
        let b = sample();
        assert_eq!(phi(0, &b), 1);
        assert_eq!(phi(1, &b), 5);
        assert_eq!(eps(0, &b), 5);
        let f0 = f(0, &b).unwrap();
        assert_eq!(f0.right().a_up(1), 0);
        let f1 = f(1, &b).unwrap();
        assert_eq!(f1.left().a_up(1), 4);
    }

    #[test]
    fn lowest_element() {
        let z = CrystalElement::zero(System::Untwisted);
        assert!(f(0, &z).is_none() && f(1, &z).is_none());
        assert_eq!(e(0, &z).right(), &LusztigDatum::untwisted(vec![], vec![], vec![1]));
        assert_eq!(e(1, &z).right(), &LusztigDatum::untwisted(vec![1], vec![], vec![]));
        assert_eq!(star(&z), z);
        for i in 0..2 {
            assert_eq!(phi(i, &z), 0);
            assert_eq!(eps(i, &z), 0);
        }
    }

    #[test]
    fn words() {
        let z = CrystalElement::zero(System::Untwisted);
        let w = parse_word("e1,e1,e0").unwrap();
        let b = apply_word(&w, &z).unwrap();
        assert_eq!(wt(&b), RootVector::from_ints(1, 2, System::Untwisted));
        assert_eq!(apply_word(&parse_word("f0").unwrap(), &z), Err(1));
        assert!(parse_word("g0").is_err());
    }

    #[test]
    fn geometric_small_cases() {
        let b = CrystalElement::new(LusztigDatum::untwisted(vec![], vec![], vec![1]));
        assert_eq!(f0_geometric(&b).unwrap().unwrap(), CrystalElement::zero(System::Untwisted));
        let b = CrystalElement::new(LusztigDatum::untwisted(vec![0, 1], vec![], vec![1]));
        assert_eq!(f0_geometric(&b).unwrap(), f(0, &b));
    }

    #[test]
    fn geometric_breakpoints() {
        let b = CrystalElement::new(LusztigDatum::untwisted(vec![8], vec![], vec![2, 1, 1]));
        assert_eq!(b.left(), &LusztigDatum::untwisted(vec![], vec![], vec![1, 1, 0, 2]));
        let run = f0_geometric_run(&b).unwrap().unwrap();
        assert_eq!(run.breakpoints(), vec![q_ratio(1, 3), q_ratio(1, 2)]);
        let third = &run.stages[0].left_at_end;
        assert_eq!(third.a_up(3), q_ratio(4, 3));
        assert_eq!(third.a_up(4), q(1));
        assert_eq!(run.stages[1].left_at_end.a_up(2), q_ratio(3, 2));
        assert_eq!(f0_geometric(&b).unwrap(), f(0, &b));
    }

    #[test]
    fn b_lambda_membership() {
        let l0 = AffineWeight::fundamental(1, 0, System::Untwisted);
        let z = CrystalElement::zero(System::Untwisted);
        assert!(in_b_lambda(&z, &l0).unwrap() && contained_in_hull(&z, &l0).unwrap());
        let b = CrystalElement::new(LusztigDatum::untwisted(vec![], vec![], vec![1]));
        assert!(in_b_lambda(&b, &l0).unwrap());
        let c = CrystalElement::new(LusztigDatum::untwisted(vec![1], vec![], vec![]));
        assert!(!in_b_lambda(&c, &l0).unwrap());
        assert!(!contained_in_hull(&c, &l0).unwrap());
        let bad = AffineWeight::fundamental(-1, 0, System::Untwisted);
        assert!(in_b_lambda(&z, &bad).is_err());
    }
}
