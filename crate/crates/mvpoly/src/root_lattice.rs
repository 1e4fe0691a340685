//! Root data for affine sl2 and A2(2).
//!
//! Vectors are written in the simple-root basis: `(c0, c1)` means
//! `c0*alpha0 + c1*alpha1`.  For the twisted system the basis is the
//! twisted simple roots.  Coefficients are exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{MvError, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum System {
    #[default]
    Untwisted,
    Twisted,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::Untwisted => write!(f, "untwisted"),
            System::Twisted => write!(f, "twisted"),
        }
    }
}

/// Lower roots run along the right side going up, upper roots along the
/// right side coming down from the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVector {
    pub c0: Q,
    pub c1: Q,
    pub system: System,
}

impl RootVector {
    pub fn new(c0: Q, c1: Q, system: System) -> Self {
        RootVector { c0, c1, system }
    }

    pub fn from_ints(c0: i64, c1: i64, system: System) -> Self {
        RootVector::new(q(c0), q(c1), system)
    }

    pub fn zero(system: System) -> Self {
        RootVector::from_ints(0, 0, system)
    }

    pub fn alpha0(system: System) -> Self {
        RootVector::from_ints(1, 0, system)
    }

    pub fn alpha1(system: System) -> Self {
        RootVector::from_ints(0, 1, system)
    }

    /// The minimal imaginary root: (1,1) untwisted, (2,1) twisted.
    pub fn delta(system: System) -> Self {
        match system {
            System::Untwisted => RootVector::from_ints(1, 1, system),
            System::Twisted => RootVector::from_ints(2, 1, system),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn coeff(&self, i: usize) -> &Q {
        if i == 0 {
            &self.c0
        } else {
            &self.c1
        }
    }

    pub fn height(&self) -> Q {
        &self.c0 + &self.c1
    }

    /// Symmetric bilinear form `(self, alpha_i)`.
    pub fn form_with_simple(&self, i: usize) -> Q {
        let (g00, g01, g11) = gram(self.system);
        if i == 0 {
            &self.c0 * &g00 + &self.c1 * &g01
        } else {
            &self.c0 * &g01 + &self.c1 * &g11
        }
    }

    /// Symmetric bilinear form `(self, other)`.
    pub fn form(&self, other: &RootVector) -> Q {
        &other.c0 * self.form_with_simple(0) + &other.c1 * self.form_with_simple(1)
    }

    /// `<self, alpha_i^vee>` for a root-lattice vector.
    pub fn coroot_pairing(&self, i: usize) -> Q {
        let (g00, _, g11) = gram(self.system);
        let norm = if i == 0 { g00 } else { g11 };
        q(2) * self.form_with_simple(i) / norm
    }

    pub fn swap(&self) -> RootVector {
        RootVector::new(self.c1.clone(), self.c0.clone(), self.system)
    }

    pub fn scale(&self, s: &Q) -> RootVector {
        RootVector::new(&self.c0 * s, &self.c1 * s, self.system)
    }

    pub fn is_integral(&self) -> bool {
        self.c0.is_integer() && self.c1.is_integer()
    }

    /// Exact parallel test; the zero vector is parallel to everything.
    pub fn is_parallel(&self, other: &RootVector) -> bool {
        (&self.c0 * &other.c1 - &self.c1 * &other.c0).is_zero()
    }
}

fn gram(system: System) -> (Q, Q, Q) {
    match system {
        System::Untwisted => (q(2), q(-2), q(2)),
        System::Twisted => (q(2), q(-4), q(8)),
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", q_to_string(&self.c0), q_to_string(&self.c1))
    }
}

impl Serialize for RootVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootVector", 3)?;
        st.serialize_field("c0", &q_to_string(&self.c0))?;
        st.serialize_field("c1", &q_to_string(&self.c1))?;
        st.serialize_field("system", &self.system)?;
        st.end()
    }
}

impl<'a> Add<&'a RootVector> for &'a RootVector {
    type Output = RootVector;
    fn add(self, o: &RootVector) -> RootVector {
        RootVector::new(&self.c0 + &o.c0, &self.c1 + &o.c1, self.system)
    }
}

impl Add for RootVector {
    type Output = RootVector;
    fn add(self, o: RootVector) -> RootVector {
        &self + &o
    }
}

impl<'a> Sub<&'a RootVector> for &'a RootVector {
    type Output = RootVector;
    fn sub(self, o: &RootVector) -> RootVector {
        RootVector::new(&self.c0 - &o.c0, &self.c1 - &o.c1, self.system)
    }
}

impl Sub for RootVector {
    type Output = RootVector;
    fn sub(self, o: RootVector) -> RootVector {
        &self - &o
    }
}

impl Neg for RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        RootVector::new(-self.c0, -self.c1, self.system)
    }
}

impl<'a> Mul<&'a Q> for &'a RootVector {
    type Output = RootVector;
    fn mul(self, s: &Q) -> RootVector {
        self.scale(s)
    }
}

/// `m0*Lambda0 + m1*Lambda1 + root_part`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineWeight {
    pub m0: i64,
    pub m1: i64,
    pub root_part: RootVector,
}

impl AffineWeight {
    pub fn new(m0: i64, m1: i64, root_part: RootVector) -> Self {
        AffineWeight { m0, m1, root_part }
    }

    /// `c0*Lambda0 + c1*Lambda1` with zero root part.
    pub fn fundamental(c0: i64, c1: i64, system: System) -> Self {
        AffineWeight::new(c0, c1, RootVector::zero(system))
    }

    pub fn system(&self) -> System {
        self.root_part.system
    }

    pub fn neg(&self) -> AffineWeight {
        AffineWeight::new(-self.m0, -self.m1, -self.root_part.clone())
    }

    pub fn plus_root(&self, v: &RootVector) -> AffineWeight {
        AffineWeight::new(self.m0, self.m1, &self.root_part + v)
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.m0 >= 0 && self.m1 >= 0 && self.root_part.is_integral() && {
            // A root part along delta does not change dominance.
            let r = &self.root_part;
            r.coroot_pairing(0).is_zero() && r.coroot_pairing(1).is_zero()
        }
    }

    pub fn level_part(&self, i: usize) -> i64 {
        if i == 0 {
            self.m0
        } else {
            self.m1
        }
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}L0 + {}L1 + {}", self.m0, self.m1, self.root_part)
    }
}

/// The real root labelling edge `k` of the lower or upper right chain.
pub fn real_root(side: Side, k: usize, system: System) -> Result<RootVector> {
    if k == 0 {
        return Err(MvError::ZeroIndex);
    }
    let km = (k - 1) as i64;
    let v = match (system, side) {
        (System::Untwisted, Side::Lower) => RootVector::from_ints(km, km + 1, system),
        (System::Untwisted, Side::Upper) => RootVector::from_ints(km + 1, km, system),
        (System::Twisted, Side::Lower) => {
            if k % 2 == 1 {
                RootVector::from_ints(2 * km, km + 1, system)
            } else {
                let h = (k as i64 - 2) / 2;
                RootVector::from_ints(1 + 2 * h, 1 + h, system)
            }
        }
        (System::Twisted, Side::Upper) => {
            if k % 2 == 1 {
                let h = km / 2;
                RootVector::from_ints(1 + 2 * h, h, system)
            } else {
                RootVector::from_ints(2 + 2 * km, km, system)
            }
        }
    };
    Ok(v)
}

/// Infallible variant used internally where `k >= 1` is structural.
pub(crate) fn root(side: Side, k: usize, system: System) -> RootVector {
    real_root(side, k, system).expect("root index starts at 1")
}

/// `<w, alpha_i^vee>`.
pub fn pair_coroot(w: &AffineWeight, i: usize) -> Q {
    q(w.level_part(i)) + w.root_part.coroot_pairing(i)
}

pub fn weyl_reflect(w: &AffineWeight, i: usize) -> AffineWeight {
    let p = pair_coroot(w, i);
    let simple = if i == 0 {
        RootVector::alpha0(w.system())
    } else {
        RootVector::alpha1(w.system())
    };
    w.plus_root(&(-(simple.scale(&p))))
}

/// `v_k = s1 s0 s1 ... (-Lambda)` and `vbar_k = s0 s1 s0 ... (-Lambda)`,
/// each with exactly `k` reflections, for `k = 0..=depth`.
pub fn weyl_orbit_chains(lambda: &AffineWeight, depth: usize) -> Result<(Vec<AffineWeight>, Vec<AffineWeight>)> {
    if !lambda.is_dominant_integral() {
        return Err(MvError::NotDominant(lambda.to_string()));
    }
    let start = lambda.neg();
    let mut v = vec![start.clone()];
    let mut vbar = vec![start];
    for k in 1..=depth {
        // The leftmost letter of v_k is s1 and the rest spells vbar_{k-1}.
        let next_v = weyl_reflect(&vbar[k - 1], 1);
        let next_vbar = weyl_reflect(&v[k - 1], 0);
        v.push(next_v);
        vbar.push(next_vbar);
    }
    Ok((v, vbar))
}

pub(crate) fn q_max(a: &Q, b: &Q) -> Q {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_match_expansions() {
        let u = System::Untwisted;
        let t = System::Twisted;
        assert_eq!(real_root(Side::Lower, 2, u).unwrap(), RootVector::from_ints(1, 2, u));
        assert_eq!(real_root(Side::Upper, 1, u).unwrap(), RootVector::from_ints(1, 0, u));
        assert_eq!(real_root(Side::Upper, 2, t).unwrap(), RootVector::from_ints(4, 1, t));
        assert_eq!(real_root(Side::Lower, 1, t).unwrap(), RootVector::alpha1(t));
        assert_eq!(real_root(Side::Lower, 2, t).unwrap(), RootVector::from_ints(1, 1, t));
        assert_eq!(real_root(Side::Lower, 3, t).unwrap(), RootVector::from_ints(4, 3, t));
        assert_eq!(real_root(Side::Upper, 3, t).unwrap(), RootVector::from_ints(3, 1, t));
        assert_eq!(real_root(Side::Lower, 0, u), Err(MvError::ZeroIndex));
    }

    #[test]
    fn twisted_roots_are_real() {
        // Real roots have positive norm and are not multiples of delta.
        let t = System::Twisted;
        for k in 1..12 {
            for side in [Side::Lower, Side::Upper] {
                let r = real_root(side, k, t).unwrap();
                assert!(r.form(&r) > q(0), "{side:?} {k}");
            }
        }
    }

    #[test]
    fn pairings() {
        let u = System::Untwisted;
        let t = System::Twisted;
        let w = |v: RootVector| AffineWeight::new(0, 0, v);
        assert_eq!(pair_coroot(&w(RootVector::delta(u)), 0), q(0));
        assert_eq!(pair_coroot(&w(RootVector::alpha1(u)), 0), q(-2));
        assert_eq!(pair_coroot(&w(RootVector::alpha1(t)), 0), q(-4));
        assert_eq!(pair_coroot(&w(RootVector::alpha0(t)), 1), q(-1));
        for s in [u, t] {
            for i in 0..2 {
                assert!(RootVector::delta(s).form_with_simple(i).is_zero());
            }
        }
    }

    #[test]
    fn reflections() {
        let u = System::Untwisted;
        let l0 = AffineWeight::fundamental(1, 0, u).neg();
        assert_eq!(weyl_reflect(&l0, 1), l0);
        assert_eq!(weyl_reflect(&l0, 0), l0.plus_root(&RootVector::alpha0(u)));
        let rho = AffineWeight::fundamental(1, 1, u).neg();
        assert_eq!(weyl_reflect(&rho, 1), rho.plus_root(&RootVector::alpha1(u)));
    }

    #[test]
    fn orbit_chains() {
        let u = System::Untwisted;
        let l0 = AffineWeight::fundamental(1, 0, u);
        let (v, vb) = weyl_orbit_chains(&l0, 0).unwrap();
        assert_eq!(v, vec![l0.neg()]);
        assert_eq!(vb, vec![l0.neg()]);
        let (v, vb) = weyl_orbit_chains(&l0, 1).unwrap();
        assert_eq!(v[1], l0.neg());
        assert_eq!(vb[1], l0.neg().plus_root(&RootVector::alpha0(u)));
        let rho = AffineWeight::fundamental(1, 1, u);
        let (v, _) = weyl_orbit_chains(&rho, 2).unwrap();
        let direct = weyl_reflect(&weyl_reflect(&rho.neg(), 0), 1);
        assert_eq!(v[2], direct);
        let bad = AffineWeight::fundamental(-1, 0, u);
        assert!(weyl_orbit_chains(&bad, 1).is_err());
    }

    #[test]
    fn chain_steps_follow_lower_roots() {
        // v_k - v_{k-1} is a multiple of alpha1 + (k-1) delta.
        let u = System::Untwisted;
        let lam = AffineWeight::fundamental(2, 1, u);
        let (v, vb) = weyl_orbit_chains(&lam, 6).unwrap();
        for k in 1..=6 {
            let d = &v[k].root_part - &v[k - 1].root_part;
            assert!(d.is_parallel(&root(Side::Lower, k, u)));
            let d = &vb[k].root_part - &vb[k - 1].root_part;
            assert!(d.is_parallel(&root(Side::Upper, k, u)));
        }
    }
}
