//! Decorated GGMS polytopes built from a pair of Lusztig data.
//!
//! Vertices live in the root plane.  The right boundary is the chain
//! `mu_0, mu_1, ..., mu_inf` followed by `mu^inf, ..., mu^1, mu^0`, the left
//! boundary is the barred chain.  Chains are stored up to their last
//! distinct vertex and clamp beyond it.

use std::fmt;
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::builder::right_to_left_rat;
use crate::error::{MvError, Result};
use crate::lusztig::{LusztigDatum, RatDatum};
use crate::root_lattice::{q, q_to_string, root, RootVector, Side, System, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DiagType {
    #[serde(rename = "alpha0")]
    Alpha0,
    #[serde(rename = "alpha1")]
    Alpha1,
}

impl DiagType {
    pub fn flip(self) -> DiagType {
        match self {
            DiagType::Alpha0 => DiagType::Alpha1,
            DiagType::Alpha1 => DiagType::Alpha0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    Lower(usize),
    LowerInf,
    UpperInf,
    Upper(usize),
}

impl Level {
    /// Key for the bottom-to-top order: lower levels upward, then the two
    /// infinite levels, then upper levels with decreasing index.
    pub fn order_key(self) -> (u8, usize) {
        match self {
            Level::Lower(k) => (0, k),
            Level::LowerInf => (1, 0),
            Level::UpperInf => (2, 0),
            Level::Upper(k) => (3, usize::MAX - k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Diagonal {
    pub level: Level,
    pub kind: DiagType,
}

impl Diagonal {
    pub fn new(level: Level, kind: DiagType) -> Self {
        Diagonal { level, kind }
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DiagType::*;
        match (self.level, self.kind) {
            (Level::Lower(k), Alpha0) => write!(f, "(mubar_{k}, mu_{})", k - 1),
            (Level::Lower(k), Alpha1) => write!(f, "(mu_{k}, mubar_{})", k - 1),
            (Level::Upper(k), Alpha1) => write!(f, "(mubar^{k}, mu^{})", k - 1),
            (Level::Upper(k), Alpha0) => write!(f, "(mu^{k}, mubar^{})", k - 1),
            (Level::LowerInf, Alpha0) => write!(f, "(mubar_inf, mu_inf)"),
            (Level::LowerInf, Alpha1) => write!(f, "(mu_inf, mubar_inf)"),
            (Level::UpperInf, Alpha1) => write!(f, "(mubar^inf, mu^inf)"),
            (Level::UpperInf, Alpha0) => write!(f, "(mu^inf, mubar^inf)"),
        }
    }
}

/// The first failed condition of the MV characterization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvViolation {
    pub condition: u8,
    pub level: Option<usize>,
    pub detail: String,
}

impl fmt::Display for MvViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            Some(k) => write!(f, "condition ({}) at level {}: {}", self.condition, k, self.detail),
            None => write!(f, "condition ({}): {}", self.condition, self.detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedPolytope {
    right: RatDatum,
    left: RatDatum,
    mu: Vec<RootVector>,
    mu_up: Vec<RootVector>,
    mubar: Vec<RootVector>,
    mubar_up: Vec<RootVector>,
    system: System,
}

fn at(chain: &[RootVector], k: usize) -> &RootVector {
    &chain[k.min(chain.len() - 1)]
}

impl DecoratedPolytope {
    /// Build the polytope with right data `a` and left data `abar`,
    /// anchored at `mu_0 = 0`.
    pub fn from_data_pair(a: &LusztigDatum, abar: &LusztigDatum) -> Result<Self> {
        if a.system() != abar.system() {
            return Err(MvError::WrongSystem {
                expected: a.system().to_string(),
                got: abar.system().to_string(),
            });
        }
        Self::from_rational_pair(&a.to_rational(), &abar.to_rational())
    }

    pub fn from_rational_pair(a: &RatDatum, abar: &RatDatum) -> Result<Self> {
        if a.has_negative() || abar.has_negative() {
            return Err(MvError::Negative(format!("right {a} / left {abar}")));
        }
        Self::from_signed_pair(a, abar)
    }

    /// Same as `from_rational_pair` but allows negative edge lengths, so
    /// that a path of candidate polytopes can be probed past its end.
    pub(crate) fn from_signed_pair(a: &RatDatum, abar: &RatDatum) -> Result<Self> {
        let s = a.system();
        let wr = a.weight();
        let wl = abar.with_system(s).left_weight();
        if wr != wl {
            return Err(MvError::SidesDoNotClose {
                right: wr.to_string(),
                left: wl.to_string(),
            });
        }
        let origin = RootVector::zero(s);
        let mut mu = vec![origin.clone()];
        for k in 1..=a.a_len() {
            let next = at(&mu, k - 1) + &root(Side::Lower, k, s).scale(&a.a(k));
            mu.push(next);
        }
        let mut mu_up = vec![wr.clone()];
        for k in 1..=a.a_up_len() {
            let next = at(&mu_up, k - 1) - &root(Side::Upper, k, s).scale(&a.a_up(k));
            mu_up.push(next);
        }
        let mut mubar = vec![origin];
        for k in 1..=abar.a_len() {
            let next = at(&mubar, k - 1) + &root(Side::Upper, k, s).scale(&abar.a(k));
            mubar.push(next);
        }
        let mut mubar_up = vec![wr];
        for k in 1..=abar.a_up_len() {
            let next = at(&mubar_up, k - 1) - &root(Side::Lower, k, s).scale(&abar.a_up(k));
            mubar_up.push(next);
        }
        Ok(DecoratedPolytope {
            right: a.clone(),
            left: abar.with_system(s),
            mu,
            mu_up,
            mubar,
            mubar_up,
            system: s,
        })
    }

    /// The MV polytope with right data `a`.
    pub fn from_right(a: &LusztigDatum) -> Self {
        let left = right_to_left_rat(&a.to_rational()).with_system(a.system());
        Self::from_rational_pair(&a.to_rational(), &left).expect("builder output closes")
    }

    pub fn system(&self) -> System {
        self.system
    }

    pub fn right_rat(&self) -> &RatDatum {
        &self.right
    }

    pub fn left_rat(&self) -> &RatDatum {
        &self.left
    }

    pub fn right_data(&self) -> Option<LusztigDatum> {
        self.right.to_integral()
    }

    pub fn left_data(&self) -> Option<LusztigDatum> {
        self.left.to_integral()
    }

    pub fn mu(&self, k: usize) -> &RootVector {
        at(&self.mu, k)
    }

    pub fn mu_up(&self, k: usize) -> &RootVector {
        at(&self.mu_up, k)
    }

    pub fn mubar(&self, k: usize) -> &RootVector {
        at(&self.mubar, k)
    }

    pub fn mubar_up(&self, k: usize) -> &RootVector {
        at(&self.mubar_up, k)
    }

    pub fn mu_inf(&self) -> &RootVector {
        self.mu.last().expect("nonempty chain")
    }

    pub fn mu_up_inf(&self) -> &RootVector {
        self.mu_up.last().expect("nonempty chain")
    }

    pub fn mubar_inf(&self) -> &RootVector {
        self.mubar.last().expect("nonempty chain")
    }

    pub fn mubar_up_inf(&self) -> &RootVector {
        self.mubar_up.last().expect("nonempty chain")
    }

    pub fn lambda(&self) -> &[Q] {
        self.right.lambda()
    }

    pub fn lambdabar(&self) -> &[Q] {
        self.left.lambda()
    }

    /// Weight `mu^0 - mu_0`.
    pub fn weight(&self) -> RootVector {
        self.mu_up(0) - self.mu(0)
    }

    /// Largest chain index past which every chain is constant.
    pub fn stabilization(&self) -> usize {
        [&self.mu, &self.mu_up, &self.mubar, &self.mubar_up]
            .iter()
            .map(|c| c.len() - 1)
            .max()
            .unwrap_or(0)
    }

    /// `(mu_inf - mubar_inf, alpha1)` divided by the norm of `alpha1`.
    pub fn width(&self) -> Q {
        let v = self.mu_inf() - self.mubar_inf();
        let norm = RootVector::alpha1(self.system).form_with_simple(1);
        v.form_with_simple(1) / norm
    }

    fn first_level(&self) -> usize {
        match self.system {
            System::Untwisted => 2,
            System::Twisted => 1,
        }
    }

    /// Finite levels that can differ from the infinite ones.
    pub fn finite_levels(&self) -> std::ops::RangeInclusive<usize> {
        self.first_level()..=self.stabilization() + 1
    }

    /// The pairing that vanishes exactly when `d` is active.  Lower values
    /// are `<= 0` and upper values `>= 0` on MV polytopes.
    pub fn diagonal_value(&self, d: &Diagonal) -> Q {
        use DiagType::*;
        match (d.level, d.kind) {
            (Level::Lower(k), Alpha0) => (self.mubar(k) - self.mu(k - 1)).c1,
            (Level::Lower(k), Alpha1) => (self.mu(k) - self.mubar(k - 1)).c0,
            (Level::Upper(k), Alpha1) => (self.mubar_up(k) - self.mu_up(k - 1)).c0,
            (Level::Upper(k), Alpha0) => (self.mu_up(k) - self.mubar_up(k - 1)).c1,
            (Level::LowerInf, Alpha0) => (self.mubar_inf() - self.mu_inf()).c1,
            (Level::LowerInf, Alpha1) => (self.mu_inf() - self.mubar_inf()).c0,
            (Level::UpperInf, Alpha1) => (self.mubar_up_inf() - self.mu_up_inf()).c0,
            (Level::UpperInf, Alpha0) => (self.mu_up_inf() - self.mubar_up_inf()).c1,
        }
    }

    /// Endpoints `(right, left)` of a diagonal.
    pub fn diagonal_endpoints(&self, d: &Diagonal) -> (&RootVector, &RootVector) {
        use DiagType::*;
        match (d.level, d.kind) {
            (Level::Lower(k), Alpha0) => (self.mu(k - 1), self.mubar(k)),
            (Level::Lower(k), Alpha1) => (self.mu(k), self.mubar(k - 1)),
            (Level::Upper(k), Alpha1) => (self.mu_up(k - 1), self.mubar_up(k)),
            (Level::Upper(k), Alpha0) => (self.mu_up(k), self.mubar_up(k - 1)),
            (Level::LowerInf, _) => (self.mu_inf(), self.mubar_inf()),
            (Level::UpperInf, _) => (self.mu_up_inf(), self.mubar_up_inf()),
        }
    }

    /// Length of an active diagonal in units of its simple root.
    pub fn diagonal_length(&self, d: &Diagonal) -> Q {
        let (r, l) = self.diagonal_endpoints(d);
        let v = r - l;
        match d.kind {
            DiagType::Alpha0 => v.c0.abs(),
            DiagType::Alpha1 => v.c1.abs(),
        }
    }

    pub fn is_active(&self, d: &Diagonal) -> bool {
        self.diagonal_value(d).is_zero()
    }

    /// First violated condition, or `None` for an MV polytope.
    pub fn mv_violation(&self) -> Option<MvViolation> {
        for k in self.finite_levels() {
            let x = self.diagonal_value(&Diagonal::new(Level::Lower(k), DiagType::Alpha0));
            let y = self.diagonal_value(&Diagonal::new(Level::Lower(k), DiagType::Alpha1));
            if x.is_positive() || y.is_positive() || !(x.is_zero() || y.is_zero()) {
                return Some(MvViolation {
                    condition: 1,
                    level: Some(k),
                    detail: format!("pairings {} and {}", q_to_string(&x), q_to_string(&y)),
                });
            }
            let x = self.diagonal_value(&Diagonal::new(Level::Upper(k), DiagType::Alpha1));
            let y = self.diagonal_value(&Diagonal::new(Level::Upper(k), DiagType::Alpha0));
            if x.is_negative() || y.is_negative() || !(x.is_zero() || y.is_zero()) {
                return Some(MvViolation {
                    condition: 2,
                    level: Some(k),
                    detail: format!("pairings {} and {}", q_to_string(&x), q_to_string(&y)),
                });
            }
        }
        let w = self.width();
        let lam = self.lambda();
        let lamb = self.lambdabar();
        let lower = self.mu_inf() - self.mubar_inf();
        let upper = self.mu_up_inf() - self.mubar_up_inf();
        let ok3 = if lower.is_parallel(&upper) {
            lam == lamb
        } else {
            removes_part(lam, lamb, &w) || removes_part(lamb, lam, &w)
        };
        if !ok3 {
            return Some(MvViolation {
                condition: 3,
                level: None,
                detail: format!("decorations {} and {} with width {}", show(lam), show(lamb), q_to_string(&w)),
            });
        }
        let l1 = lam.first().cloned().unwrap_or_else(Q::zero);
        let lb1 = lamb.first().cloned().unwrap_or_else(Q::zero);
        if l1 > w || lb1 > w {
            return Some(MvViolation {
                condition: 4,
                level: None,
                detail: format!("largest parts {} and {} exceed width {}", q_to_string(&l1), q_to_string(&lb1), q_to_string(&w)),
            });
        }
        None
    }

    pub fn is_mv(&self) -> bool {
        self.mv_violation().is_none()
    }

    /// Whether conditions (1) and (2) also hold at level 1.
    pub fn level_one_conditions_hold(&self) -> bool {
        let lo = [DiagType::Alpha0, DiagType::Alpha1].map(|t| self.diagonal_value(&Diagonal::new(Level::Lower(1), t)));
        let up = [DiagType::Alpha1, DiagType::Alpha0].map(|t| self.diagonal_value(&Diagonal::new(Level::Upper(1), t)));
        let lo_ok = !lo[0].is_positive() && !lo[1].is_positive() && (lo[0].is_zero() || lo[1].is_zero());
        let up_ok = !up[0].is_negative() && !up[1].is_negative() && (up[0].is_zero() || up[1].is_zero());
        lo_ok && up_ok
    }

    /// All active diagonals: finite levels up to stabilization, then the
    /// two infinite levels.
    pub fn active_diagonals(&self) -> Result<Vec<Diagonal>> {
        if let Some(v) = self.mv_violation() {
            return Err(MvError::NotMv(v.to_string()));
        }
        let mut out = Vec::new();
        let mut levels: Vec<Level> = self.finite_levels().map(Level::Lower).collect();
        levels.push(Level::LowerInf);
        levels.push(Level::UpperInf);
        levels.extend(self.finite_levels().rev().map(Level::Upper));
        for level in levels {
            for kind in [DiagType::Alpha0, DiagType::Alpha1] {
                let d = Diagonal::new(level, kind);
                if self.is_active(&d) {
                    out.push(d);
                }
            }
        }
        Ok(out)
    }

    /// The complete system of active diagonals, when it is unique.
    pub fn active_system(&self) -> Result<Option<DiagonalSystem>> {
        let act = self.active_diagonals()?;
        let pick = |level: Level| -> Option<DiagType> {
            let kinds: Vec<DiagType> = act.iter().filter(|d| d.level == level).map(|d| d.kind).collect();
            if kinds.len() == 1 {
                Some(kinds[0])
            } else {
                None
            }
        };
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for k in self.finite_levels() {
            match (pick(Level::Lower(k)), pick(Level::Upper(k))) {
                (Some(l), Some(u)) => {
                    lower.push(l);
                    upper.push(u);
                }
                _ => return Ok(None),
            }
        }
        let (Some(lt), Some(ut)) = (pick(Level::LowerInf), pick(Level::UpperInf)) else {
            return Ok(None);
        };
        if self.system == System::Twisted {
            // Systems are indexed from level 2; level 1 is always degenerate.
            lower.remove(0);
            upper.remove(0);
        }
        Ok(Some(DiagonalSystem::new(lower, lt, upper, ut)))
    }

    /// Cut along an active diagonal into the part below and the part above.
    pub fn cut_along(&self, d: &Diagonal) -> Result<(DecoratedPolytope, DecoratedPolytope)> {
        if self.system != System::Untwisted {
            return Err(MvError::WrongSystem {
                expected: System::Untwisted.to_string(),
                got: self.system.to_string(),
            });
        }
        if !self.is_active(d) {
            return Err(MvError::InactiveDiagonal(d.to_string()));
        }
        let l = self.diagonal_length(d);
        let (a, ab) = (&self.right, &self.left);
        let s = self.system;
        let lower_list = |x: &RatDatum, range: std::ops::Range<usize>| -> Vec<Q> {
            (1..range.end.max(1)).map(|j| if range.contains(&j) { x.a(j) } else { Q::zero() }).collect()
        };
        let upper_list = |x: &RatDatum, range: std::ops::Range<usize>| -> Vec<Q> {
            (1..range.end.max(1)).map(|j| if range.contains(&j) { x.a_up(j) } else { Q::zero() }).collect()
        };
        let na = a.a_len().max(ab.a_len()) + 2;
        let nu = a.a_up_len().max(ab.a_up_len()) + 2;
        let mk = |lo: Vec<Q>, lam: Vec<Q>, up: Vec<Q>| RatDatum::new(lo, lam, up, s);
        let none: Vec<Q> = Vec::new();
        use DiagType::*;
        let (lr, ll, ur, ul) = match (d.level, d.kind) {
            (Level::Lower(k), Alpha0) => (
                mk(lower_list(a, 1..k), none.clone(), vec![l.clone()]),
                mk(lower_list(ab, 1..k + 1), none.clone(), none.clone()),
                mk(lower_list(a, k..na), a.lambda().to_vec(), upper_list(a, 1..nu)),
                mk(lower_list(ab, k + 1..na), ab.lambda().to_vec(), upper_list(ab, 1..nu)).with_a(1, l.clone()),
            ),
            (Level::Lower(k), Alpha1) => (
                mk(lower_list(a, 1..k + 1), none.clone(), none.clone()),
                mk(lower_list(ab, 1..k), none.clone(), vec![l.clone()]),
                mk(lower_list(a, k + 1..na), a.lambda().to_vec(), upper_list(a, 1..nu)).with_a(1, l.clone()),
                mk(lower_list(ab, k..na), ab.lambda().to_vec(), upper_list(ab, 1..nu)),
            ),
            (Level::Upper(k), Alpha1) => (
                mk(lower_list(a, 1..na), a.lambda().to_vec(), upper_list(a, k..nu)),
                mk(lower_list(ab, 1..na), ab.lambda().to_vec(), upper_list(ab, k + 1..nu)).with_a_up(1, l.clone()),
                mk(vec![l.clone()], none.clone(), upper_list(a, 1..k)),
                mk(none.clone(), none.clone(), upper_list(ab, 1..k + 1)),
            ),
            (Level::Upper(k), Alpha0) => (
                mk(lower_list(a, 1..na), a.lambda().to_vec(), upper_list(a, k + 1..nu)).with_a_up(1, l.clone()),
                mk(lower_list(ab, 1..na), ab.lambda().to_vec(), upper_list(ab, k..nu)),
                mk(none.clone(), none.clone(), upper_list(a, 1..k + 1)),
                mk(vec![l.clone()], none.clone(), upper_list(ab, 1..k)),
            ),
            (Level::LowerInf, Alpha0) => (
                mk(lower_list(a, 1..na), none.clone(), vec![l.clone()]),
                mk(lower_list(ab, 1..na), none.clone(), none.clone()),
                mk(none.clone(), a.lambda().to_vec(), upper_list(a, 1..nu)),
                mk(vec![l.clone()], ab.lambda().to_vec(), upper_list(ab, 1..nu)),
            ),
            (Level::LowerInf, Alpha1) => (
                mk(lower_list(a, 1..na), none.clone(), none.clone()),
                mk(lower_list(ab, 1..na), none.clone(), vec![l.clone()]),
                mk(vec![l.clone()], a.lambda().to_vec(), upper_list(a, 1..nu)),
                mk(none.clone(), ab.lambda().to_vec(), upper_list(ab, 1..nu)),
            ),
            (Level::UpperInf, Alpha1) => (
                mk(lower_list(a, 1..na), a.lambda().to_vec(), none.clone()),
                mk(lower_list(ab, 1..na), ab.lambda().to_vec(), vec![l.clone()]),
                mk(vec![l.clone()], none.clone(), upper_list(a, 1..nu)),
                mk(none.clone(), none.clone(), upper_list(ab, 1..nu)),
            ),
            (Level::UpperInf, Alpha0) => (
                mk(lower_list(a, 1..na), a.lambda().to_vec(), vec![l.clone()]),
                mk(lower_list(ab, 1..na), ab.lambda().to_vec(), none.clone()),
                mk(none.clone(), none.clone(), upper_list(a, 1..nu)),
                mk(vec![l.clone()], none.clone(), upper_list(ab, 1..nu)),
            ),
        };
        Ok((
            DecoratedPolytope::from_rational_pair(&lr, &ll)?,
            DecoratedPolytope::from_rational_pair(&ur, &ul)?,
        ))
    }

    /// Exchange alpha0 and alpha1: right and left data swap.
    pub fn reflect_h(&self) -> DecoratedPolytope {
        self.untwisted_only();
        DecoratedPolytope::from_rational_pair(&self.left, &self.right).expect("reflection closes")
    }

    /// alpha1 -> -alpha0, alpha0 -> -alpha1: each side is read top-down.
    pub fn reflect_v(&self) -> DecoratedPolytope {
        self.untwisted_only();
        DecoratedPolytope::from_rational_pair(&self.right.reverse(), &self.left.reverse()).expect("reflection closes")
    }

    pub fn negate(&self) -> DecoratedPolytope {
        self.reflect_h().reflect_v()
    }

    fn untwisted_only(&self) {
        assert_eq!(self.system, System::Untwisted, "reflections are defined for the untwisted system");
    }

    /// Boundary vertices counterclockwise from `mu_0`, without repeats.
    pub fn boundary(&self) -> Vec<RootVector> {
        let mut pts: Vec<RootVector> = Vec::new();
        let mut push = |v: &RootVector| {
            if pts.last() != Some(v) && pts.first() != Some(v) || pts.is_empty() {
                pts.push(v.clone());
            }
        };
        for v in &self.mu {
            push(v);
        }
        for v in self.mu_up.iter().rev() {
            push(v);
        }
        for v in self.mubar_up.iter() {
            push(v);
        }
        for v in self.mubar.iter().rev() {
            push(v);
        }
        pts
    }

    /// Deterministic SVG or TikZ picture.  Decorations are drawn as ticks
    /// on the vertical edges, one per part boundary.
    pub fn render(&self, format: RenderFormat) -> String {
        let xy = |v: &RootVector| -> (f64, f64) {
            let (c0, c1) = (v.c0.to_f64().unwrap_or(0.0), v.c1.to_f64().unwrap_or(0.0));
            match self.system {
                System::Untwisted => (c1 - c0, c0 + c1),
                System::Twisted => (2.0 * c1 - c0, c0 + c1),
            }
        };
        let pts: Vec<(f64, f64)> = self.boundary().iter().map(xy).collect();
        let delta = RootVector::delta(self.system);
        let ticks = |base: &RootVector, parts: &[Q]| -> Vec<(f64, f64)> {
            let mut acc = Q::zero();
            let mut out = Vec::new();
            for p in parts.iter().take(parts.len().saturating_sub(1)) {
                acc += p;
                out.push(xy(&(base + &delta.scale(&acc))));
            }
            out
        };
        let mut tick_pts = ticks(self.mu_inf(), self.lambda());
        tick_pts.extend(ticks(self.mubar_inf(), self.lambdabar()));
        match format {
            RenderFormat::Svg => svg(&pts, &tick_pts),
            RenderFormat::Tikz => tikz(&pts, &tick_pts),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Tikz,
}

fn svg(pts: &[(f64, f64)], ticks: &[(f64, f64)]) -> String {
    let scale = 20.0;
    let all: Vec<&(f64, f64)> = pts.iter().chain(ticks).collect();
    let minx = all.iter().map(|p| p.0).fold(0.0, f64::min);
    let maxx = all.iter().map(|p| p.0).fold(0.0, f64::max);
    let maxy = all.iter().map(|p| p.1).fold(0.0, f64::max);
    let pad = 1.0;
    let w = (maxx - minx + 2.0 * pad) * scale;
    let h = (maxy + 2.0 * pad) * scale;
    let tx = |x: f64| (x - minx + pad) * scale;
    let ty = |y: f64| (maxy - y + pad) * scale;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
    );
    if pts.len() > 1 {
        let path: Vec<String> = pts.iter().map(|p| format!("{:.2},{:.2}", tx(p.0), ty(p.1))).collect();
        let _ = writeln!(s, r#"  <polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#, path.join(" "));
    }
    for p in pts {
        let _ = writeln!(s, r#"  <circle cx="{:.2}" cy="{:.2}" r="4" fill="black"/>"#, tx(p.0), ty(p.1));
    }
    for p in ticks {
        let _ = writeln!(s, r#"  <circle cx="{:.2}" cy="{:.2}" r="2" fill="gray"/>"#, tx(p.0), ty(p.1));
    }
    s.push_str("</svg>\n");
    s
}

fn tikz(pts: &[(f64, f64)], ticks: &[(f64, f64)]) -> String {
    let mut s = String::from("\\begin{tikzpicture}[yscale=0.2, xscale=0.6]\n");
    if pts.len() > 1 {
        let path: Vec<String> = pts.iter().map(|p| format!("({:.4},{:.4})", p.0, p.1)).collect();
        let _ = writeln!(s, "\\draw [line width = 0.04cm] {} -- cycle;", path.join(" -- "));
    }
    for p in pts {
        let _ = writeln!(s, "\\draw ({:.4},{:.4}) node {{$\\bullet$}};", p.0, p.1);
    }
    for p in ticks {
        let _ = writeln!(s, "\\draw ({:.4},{:.4}) node {{\\tiny $\\bullet$}};", p.0, p.1);
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}

fn show(p: &[Q]) -> String {
    format!("({})", p.iter().map(q_to_string).collect::<Vec<_>>().join(","))
}

/// Does `big` equal `small` with one extra part of size `w`?
fn removes_part(big: &[Q], small: &[Q], w: &Q) -> bool {
    if big.len() != small.len() + 1 {
        return false;
    }
    let Some(pos) = big.iter().position(|x| x == w) else {
        return false;
    };
    let mut rest = big.to_vec();
    rest.remove(pos);
    rest == small
}

/// A choice of one diagonal type at every lower and upper level `k >= 2`,
/// constant from some level on.  `lower[i]` is the choice at level `i + 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DiagonalSystem {
    lower: Vec<DiagType>,
    lower_tail: DiagType,
    upper: Vec<DiagType>,
    upper_tail: DiagType,
}

impl DiagonalSystem {
    pub fn new(mut lower: Vec<DiagType>, lower_tail: DiagType, mut upper: Vec<DiagType>, upper_tail: DiagType) -> Self {
        while lower.last() == Some(&lower_tail) {
            lower.pop();
        }
        while upper.last() == Some(&upper_tail) {
            upper.pop();
        }
        DiagonalSystem { lower, lower_tail, upper, upper_tail }
    }

    pub fn constant(t: DiagType) -> Self {
        DiagonalSystem::new(vec![], t, vec![], t)
    }

    pub fn lower_at(&self, k: usize) -> DiagType {
        self.lower.get(k - 2).copied().unwrap_or(self.lower_tail)
    }

    pub fn upper_at(&self, k: usize) -> DiagType {
        self.upper.get(k - 2).copied().unwrap_or(self.upper_tail)
    }

    pub fn lower_tail(&self) -> DiagType {
        self.lower_tail
    }

    pub fn upper_tail(&self) -> DiagType {
        self.upper_tail
    }

    /// Highest level at which a choice differs from its tail.
    pub fn prefix_len(&self) -> usize {
        self.lower.len().max(self.upper.len()) + 1
    }

    /// The choices in bottom-to-top order: finite levels up to one past
    /// the prefix, then the two tails.
    pub fn sequence(&self) -> Vec<(Level, DiagType)> {
        let n = self.prefix_len() + 1;
        let mut out: Vec<(Level, DiagType)> = (2..=n).map(|k| (Level::Lower(k), self.lower_at(k))).collect();
        out.push((Level::LowerInf, self.lower_tail));
        out.push((Level::UpperInf, self.upper_tail));
        out.extend((2..=n).rev().map(|k| (Level::Upper(k), self.upper_at(k))));
        out
    }

    /// Number of type changes moving from the bottom to the top.
    pub fn changes(&self) -> usize {
        let seq = self.sequence();
        seq.windows(2).filter(|w| w[0].1 != w[1].1).count()
    }

    pub fn flip(&self) -> DiagonalSystem {
        let f = |v: &[DiagType]| v.iter().map(|t| t.flip()).collect();
        DiagonalSystem::new(f(&self.lower), self.lower_tail.flip(), f(&self.upper), self.upper_tail.flip())
    }

    /// Every system whose choices differ from the tails only at levels
    /// `2..=max_level`, with at most `max_changes` type changes.
    pub fn enumerate(max_level: usize, max_changes: usize) -> Vec<DiagonalSystem> {
        let n = max_level.saturating_sub(1);
        let types = [DiagType::Alpha0, DiagType::Alpha1];
        let mut out = Vec::new();
        let total = 1usize << (2 * n + 2);
        for mask in 0..total {
            let bit = |i: usize| types[(mask >> i) & 1];
            let lower: Vec<DiagType> = (0..n).map(bit).collect();
            let upper: Vec<DiagType> = (0..n).map(|i| bit(n + i)).collect();
            let s = DiagonalSystem::new(lower, bit(2 * n), upper, bit(2 * n + 1));
            if s.changes() <= max_changes && !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }
}

impl fmt::Display for DiagonalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |d: &DiagType| match d {
            DiagType::Alpha0 => "0",
            DiagType::Alpha1 => "1",
        };
        let seq: Vec<String> = self
            .sequence()
            .iter()
            .map(|(l, d)| match l {
                Level::Lower(k) => format!("L{k}:{}", t(d)),
                Level::LowerInf => format!("Linf:{}", t(d)),
                Level::UpperInf => format!("Uinf:{}", t(d)),
                Level::Upper(k) => format!("U{k}:{}", t(d)),
            })
            .collect();
        write!(f, "[{}]", seq.join(" "))
    }
}

/// An integral MV polytope whose active diagonals are exactly `s`.
///
/// Induction on the number of type changes: with the lowest choice of
/// type alpha1, let `d` be the lowest alpha0 choice, realize the system
/// with every alpha1 choice below `d` switched to alpha0, and glue a
/// quadrilateral or a triangle underneath `d`.
pub fn realize_diagonal_system(s: &DiagonalSystem) -> DecoratedPolytope {
    let (right, left) = realize_rat(s);
    let m = {
        use num_integer::Integer;
        Q::from_integer(right.denominator_lcm().lcm(&left.denominator_lcm()))
    };
    DecoratedPolytope::from_rational_pair(&right.scale(&m), &left.scale(&m)).expect("realization closes")
}

fn realize_rat(s: &DiagonalSystem) -> (RatDatum, RatDatum) {
    let u = System::Untwisted;
    let one = q(1);
    if s.changes() == 0 {
        return match s.lower_tail {
            DiagType::Alpha1 => (RatDatum::single_a(1, one.clone(), u), RatDatum::single_a_up(1, one, u)),
            DiagType::Alpha0 => (RatDatum::single_a_up(1, one.clone(), u), RatDatum::single_a(1, one, u)),
        };
    }
    if s.lower_at(2) == DiagType::Alpha0 {
        let (r, l) = realize_rat(&s.flip());
        return (l, r);
    }
    let seq = s.sequence();
    let (pos, (level, _)) = seq
        .iter()
        .enumerate()
        .find(|(_, (_, t))| *t == DiagType::Alpha0)
        .map(|(i, x)| (i, *x))
        .expect("a system with changes has both types");
    // Switch every alpha1 choice below d to alpha0.
    let n = s.prefix_len() + 1;
    let mut lower: Vec<DiagType> = (2..=n).map(|k| s.lower_at(k)).collect();
    let mut upper: Vec<DiagType> = (2..=n).map(|k| s.upper_at(k)).collect();
    let mut lower_tail = s.lower_tail;
    let mut upper_tail = s.upper_tail;
    for (l, _) in &seq[..pos] {
        match *l {
            Level::Lower(k) => lower[k - 2] = DiagType::Alpha0,
            Level::LowerInf => lower_tail = DiagType::Alpha0,
            Level::UpperInf => upper_tail = DiagType::Alpha0,
            Level::Upper(k) => upper[k - 2] = DiagType::Alpha0,
        }
    }
    let sp = DiagonalSystem::new(lower, lower_tail, upper, upper_tail);
    let (r, l) = realize_rat(&sp);
    // The bottom edge of P' is the alpha0 edge of length `len` and is d.
    let len = l.a(1);
    let base = l.with_a(1, Q::zero());
    match level {
        Level::Lower(k) => {
            let p = DecoratedPolytope::from_rational_pair(&r, &l).expect("closes");
            let gap = -p.diagonal_value(&Diagonal::new(Level::Lower(k), DiagType::Alpha1));
            let kq = q(k as i64);
            let small = if gap < len { gap } else { len.clone() };
            let ak = small / (q(2) * &kq);
            let ak1 = (&len - &kq * &ak) / (&kq - q(1));
            let a1 = &ak1 * (&kq - q(2)) + &ak * (&kq - q(1));
            (r.with_a(1, a1), base.with_a(k - 1, ak1).with_a(k, ak))
        }
        Level::LowerInf | Level::UpperInf => (r.with_a(1, len.clone()), base.with_lambda(vec![len])),
        Level::Upper(k1) => {
            let k = q(k1 as i64 - 1);
            let eps = &len / (q(2) * &k);
            let far = (&len - &k * &eps) / (&k + q(1));
            let a1 = &far * (&k + q(2)) + &eps * (&k + q(1));
            (r.with_a(1, a1), base.with_a_up(k1, eps).with_a_up(k1 + 1, far))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::right_to_left;

    fn sample() -> LusztigDatum {
        LusztigDatum::untwisted(vec![2, 1, 1], vec![9, 2, 1, 1], vec![1, 0, 1])
    }

    fn sample_poly() -> DecoratedPolytope {
        DecoratedPolytope::from_data_pair(&sample(), &right_to_left(&sample())).unwrap()
    }

    #[test]
    fn sample_vertices() {
        let p = sample_poly();
        let u = System::Untwisted;
        assert_eq!(*p.mu(1), RootVector::from_ints(0, 2, u));
        assert_eq!(*p.mubar(1), RootVector::from_ints(1, 0, u));
        assert_eq!(*p.mu_up(0), RootVector::from_ints(20, 22, u));
        assert!(p.is_mv());
        assert_eq!(p.width(), q(9));
        assert_eq!(p.boundary().len(), 14);
    }

    #[test]
    fn point_and_mismatch() {
        let z = LusztigDatum::zero(System::Untwisted);
        let p = DecoratedPolytope::from_data_pair(&z, &z).unwrap();
        assert_eq!(p.boundary().len(), 1);
        assert!(p.is_mv());
        let a = LusztigDatum::untwisted(vec![1], vec![], vec![]);
        assert!(matches!(
            DecoratedPolytope::from_data_pair(&a, &a),
            Err(MvError::SidesDoNotClose { .. })
        ));
    }

    #[test]
    fn vertical_segment_fails_width() {
        let d = LusztigDatum::untwisted(vec![], vec![1], vec![]);
        let p = DecoratedPolytope::from_data_pair(&d, &d).unwrap();
        let v = p.mv_violation().unwrap();
        assert_eq!(v.condition, 4);
    }

    #[test]
    fn sample_active_level_two() {
        let p = sample_poly();
        let act = p.active_diagonals().unwrap();
        assert!(act.contains(&Diagonal::new(Level::Lower(2), DiagType::Alpha0)));
        assert!(act.contains(&Diagonal::new(Level::Lower(2), DiagType::Alpha1)));
    }

    #[test]
    fn segment_along_alpha0() {
        let d = LusztigDatum::untwisted(vec![], vec![], vec![1]);
        let p = DecoratedPolytope::from_right(&d);
        let act = p.active_diagonals().unwrap();
        for k in p.finite_levels() {
            assert!(act.contains(&Diagonal::new(Level::Lower(k), DiagType::Alpha0)));
            assert!(!act.contains(&Diagonal::new(Level::Lower(k), DiagType::Alpha1)));
        }
    }

    #[test]
    fn cut_sample() {
        let p = sample_poly();
        let d = Diagonal::new(Level::Lower(2), DiagType::Alpha1);
        let (lo, hi) = p.cut_along(&d).unwrap();
        assert_eq!(lo.right_data().unwrap(), LusztigDatum::untwisted(vec![2, 1], vec![], vec![]));
        assert!(lo.is_mv() && hi.is_mv());
        let bad = Diagonal::new(Level::Lower(3), DiagType::Alpha1);
        assert!(!p.is_active(&bad));
        assert!(p.cut_along(&bad).is_err());
    }

    #[test]
    fn symmetries() {
        let p = sample_poly();
        let n = p.negate();
        assert_eq!(n.right_data().unwrap(), crate::lusztig::reverse(&p.left_data().unwrap()));
        assert!(n.is_mv() && p.reflect_h().is_mv() && p.reflect_v().is_mv());
        let z = LusztigDatum::zero(System::Untwisted);
        let pt = DecoratedPolytope::from_data_pair(&z, &z).unwrap();
        assert_eq!(pt.negate(), pt);
    }

    #[test]
    fn render_is_deterministic() {
        let p = sample_poly();
        let a = p.render(RenderFormat::Svg);
        assert_eq!(a, p.render(RenderFormat::Svg));
        assert_eq!(a.matches("r=\"4\"").count(), 14);
        // Parts 9,2,1,1 and 2,1,1 give three and two interior ticks.
        assert_eq!(a.matches("r=\"2\"").count(), 5);
        let t = p.render(RenderFormat::Tikz);
        assert!(t.starts_with("\\begin{tikzpicture}"));
        let z = LusztigDatum::zero(System::Untwisted);
        let pt = DecoratedPolytope::from_data_pair(&z, &z).unwrap();
        assert_eq!(pt.render(RenderFormat::Svg).matches("<circle").count(), 1);
    }

    #[test]
    fn realize_small_systems() {
        let s = DiagonalSystem::constant(DiagType::Alpha1);
        let p = realize_diagonal_system(&s);
        assert_eq!(p.right_data().unwrap(), LusztigDatum::untwisted(vec![1], vec![], vec![]));
        for s in DiagonalSystem::enumerate(3, 2) {
            let p = realize_diagonal_system(&s);
            assert!(p.is_mv(), "{s}");
            assert_eq!(p.active_system().unwrap(), Some(s.clone()), "{s}");
        }
    }
}
