//! Left Lusztig data from right Lusztig data.
//!
//! `right_to_left` runs the inductive construction of the unique MV
//! polytope with given right data: it peels off one real-root edge at a
//! time, decides which diagonal is active from an explicit inequality and
//! glues the left data of the two pieces.  The small building blocks
//! (quadrilaterals, triangles, the trapezoid base cases) are exposed.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{Signed, Zero};

use crate::error::{MvError, Result};
use crate::lusztig::{LusztigDatum, RatDatum};
use crate::root_lattice::{q, q_max, System, Q};

const U: System = System::Untwisted;

fn check_nonneg(name: &str, x: &Q) -> Result<()> {
    if x.is_negative() {
        Err(MvError::Negative(format!("{name} = {x}")))
    } else {
        Ok(())
    }
}

fn quad_with_r(a1: &Q, a1_up: &Q, r: usize) -> RatDatum {
    let rq = q(r as i64);
    let ar = &rq * a1_up - (&rq + q(1)) * a1;
    let ar1 = -(&rq - q(1)) * a1_up + &rq * a1;
    RatDatum::zero(U).with_a(r, ar).with_a(r + 1, ar1)
}

/// Left data of the MV polytope with right data `a_1 = a1`, `a^1 = a1_up`.
pub fn left_data_quadrilateral(a1: &Q, a1_up: &Q) -> Result<RatDatum> {
    check_nonneg("a1", a1)?;
    check_nonneg("a1_up", a1_up)?;
    Ok(quad(a1, a1_up))
}

fn quad(a1: &Q, a1_up: &Q) -> RatDatum {
    if a1 == a1_up {
        return RatDatum::zero(U).with_lambda(vec![a1.clone()]);
    }
    if a1 > a1_up {
        return quad(a1_up, a1).reverse();
    }
    // (r-1)/r <= a1/a1_up <= r/(r+1) with r >= 1 minimal.
    let gap = a1_up - a1;
    let ratio = a1 / &gap;
    let r = ratio.ceil().to_integer().try_into().unwrap_or(usize::MAX).max(1);
    let out = quad_with_r(a1, a1_up, r);
    if ratio.is_integer() && !ratio.is_zero() {
        debug_assert_eq!(out, quad_with_r(a1, a1_up, r + 1), "both admissible r agree");
    }
    out
}

/// Left data for right data `a_1 = a1`, `a_k = ak` (k >= 2) and nothing else.
pub fn left_data_a1_ak(a1: &Q, k: usize, ak: &Q) -> Result<RatDatum> {
    if k < 2 {
        return Err(MvError::LevelTooSmall { min: 2, got: k });
    }
    check_nonneg("a1", a1)?;
    check_nonneg("ak", ak)?;
    Ok(a1_ak(a1, k, ak))
}

fn a1_ak(a1: &Q, k: usize, ak: &Q) -> RatDatum {
    let kq = q(k as i64);
    if *a1 >= (&kq - q(2)) * ak {
        RatDatum::zero(U).with_a(k - 1, ak.clone()).with_a_up(1, a1 + q(2) * ak)
    } else {
        // The triangle on a_k is stacked under the quadrilateral (a1, (k-1)a_k).
        quad(a1, &((&kq - q(1)) * ak)).add(&RatDatum::single_a_up(1, &kq * ak, U))
    }
}

/// Left data for right data `a_k = ak` (k >= 2), `a^1 = a1_up` and nothing else.
pub fn left_data_ak_a1up(k: usize, ak: &Q, a1_up: &Q) -> Result<RatDatum> {
    if k < 2 {
        return Err(MvError::LevelTooSmall { min: 2, got: k });
    }
    check_nonneg("ak", ak)?;
    check_nonneg("a1_up", a1_up)?;
    Ok(ak_a1up(k, ak, a1_up))
}

fn ak_a1up(k: usize, ak: &Q, a1_up: &Q) -> RatDatum {
    let kq = q(k as i64);
    if *a1_up >= (&kq + q(1)) * ak {
        RatDatum::zero(U).with_a(1, a1_up - q(2) * ak).with_a(k + 1, ak.clone())
    } else {
        RatDatum::single_a(1, (&kq - q(1)) * ak, U).add(&quad(&(&kq * ak), a1_up))
    }
}

/// Left data of the quadrilateral with right data `a_k`, `a_{k+1}` only.
pub fn left_data_ak_ak1(k: usize, ak: &Q, ak1: &Q) -> Result<RatDatum> {
    if k < 2 {
        return Err(MvError::LevelTooSmall { min: 2, got: k });
    }
    check_nonneg("ak", ak)?;
    check_nonneg("ak1", ak1)?;
    Ok(ak_ak1(k, ak, ak1))
}

fn ak_ak1(k: usize, ak: &Q, ak1: &Q) -> RatDatum {
    let kq = q(k as i64);
    RatDatum::zero(U)
        .with_a(1, (&kq - q(1)) * ak + &kq * ak1)
        .with_a_up(1, &kq * ak + (&kq + q(1)) * ak1)
}

/// Left data when the only right data are `a_1`, `lambda` and `a^1`.
pub fn left_data_base(a1: &Q, lambda: &[Q], a1_up: &Q) -> Result<RatDatum> {
    check_nonneg("a1", a1)?;
    check_nonneg("a1_up", a1_up)?;
    for p in lambda {
        check_nonneg("lambda part", p)?;
    }
    let mut parts: Vec<Q> = lambda.iter().filter(|x| !x.is_zero()).cloned().collect();
    parts.sort_by(|x, y| y.cmp(x));
    Ok(base(a1, &parts, a1_up))
}

fn base(a1: &Q, lambda: &[Q], a1_up: &Q) -> RatDatum {
    let l1 = lambda.first().cloned().unwrap_or_else(Q::zero);
    if a1 == a1_up && *a1 >= l1 {
        // Trapezoid: the left decoration gains a part of size a1.
        let mut parts = lambda.to_vec();
        parts.push(a1.clone());
        return RatDatum::zero(U).with_lambda(parts);
    }
    if l1 > q_max(a1, a1_up) {
        let rest = lambda[1..].to_vec();
        return quad(a1, &l1)
            .add(&RatDatum::zero(U).with_lambda(rest))
            .add(&quad(&l1, a1_up));
    }
    if a1_up > a1 {
        return quad(a1, a1_up).add(&RatDatum::zero(U).with_lambda(lambda.to_vec()));
    }
    base(a1_up, lambda, a1).reverse()
}

fn cache() -> &'static Mutex<HashMap<RatDatum, RatDatum>> {
    static CACHE: OnceLock<Mutex<HashMap<RatDatum, RatDatum>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

const CACHE_LIMIT: usize = 1 << 20;

/// Left data of the MV polytope whose right data is `a` (rational entries).
pub fn right_to_left_rat(a: &RatDatum) -> RatDatum {
    let a = a.with_system(U);
    if let Some(hit) = cache().lock().expect("cache lock").get(&a) {
        return hit.clone();
    }
    let out = compute(&a);
    let mut c = cache().lock().expect("cache lock");
    if c.len() >= CACHE_LIMIT {
        c.clear();
    }
    c.insert(a, out.clone());
    out
}

fn first_positive_from(a: &RatDatum, start: usize) -> Option<usize> {
    (start..=a.a_len()).find(|&k| a.a(k).is_positive())
}

fn compute(a: &RatDatum) -> RatDatum {
    let a1 = a.a(1);
    if a1.is_positive() {
        if let Some(k) = first_positive_from(a, 2) {
            let ak = a.a(k);
            let b = a.with_a(1, Q::zero());
            let bbar = right_to_left_rat(&b);
            let b1 = bbar.a(1);
            let kq = q(k as i64);
            if (&kq - q(1)) * &b1 >= &kq * &a1 + &ak {
                return quad(&a1, &b1).add(&bbar.with_a(1, Q::zero()));
            }
            let lower = a1_ak(&a1, k, &ak);
            let c = a.with_a(k, Q::zero()).with_a(1, lower.a_up(1));
            return lower.with_a_up(1, Q::zero()).add(&right_to_left_rat(&c));
        }
    } else if let Some(k) = first_positive_from(a, 2) {
        let ak = a.a(k);
        let ak1 = a.a(k + 1);
        let b = a.with_a(k, Q::zero());
        let bbar = right_to_left_rat(&b);
        let b1 = bbar.a(1);
        let kq = q(k as i64);
        if b1 > (&kq + q(1)) * &ak + &kq * &ak1 {
            return ak_a1up(k, &ak, &b1).add(&bbar.with_a(1, Q::zero()));
        }
        let quadr = ak_ak1(k, &ak, &ak1);
        let c = a
            .with_a(k, Q::zero())
            .with_a(k + 1, Q::zero())
            .with_a(1, quadr.a_up(1));
        return quadr.with_a_up(1, Q::zero()).add(&right_to_left_rat(&c));
    }
    // Only a_1 may be nonzero among the lower entries.
    if (2..=a.a_up_len()).any(|k| a.a_up(k).is_positive()) {
        return right_to_left_rat(&a.reverse()).reverse();
    }
    base(&a1, a.lambda(), &a.a_up(1))
}

/// Left Lusztig data of the MV polytope with right data `a`.
///
/// The same map sends left data back to right data, so it is an involution.
pub fn right_to_left(a: &LusztigDatum) -> LusztigDatum {
    right_to_left_rat(&a.to_rational())
        .to_integral()
        .expect("integral right data give integral left data")
        .with_system(a.system())
}

/// Right data from left data; identical to [`right_to_left`].
pub fn left_to_right(abar: &LusztigDatum) -> LusztigDatum {
    right_to_left(abar)
}

/// Closed formula for the first left entry as a maximum over three
/// families of linear expressions, clamped below at zero.
///
/// The decoration and upper families subtract twice the sum of every
/// lower entry `a_j`.
pub fn abar1_closed_formula(a: &LusztigDatum) -> Q {
    let av = |k: usize| q(a.a(k) as i64);
    let uv = |k: usize| q(a.a_up(k) as i64);
    let lower_sum = (1..=a.a_list().len()).fold(Q::zero(), |s, j| s + av(j));
    let mut best = Q::zero();
    for k in 2..=a.a_list().len() + 1 {
        let mut v = q(k as i64 - 1) * av(k) + q(k as i64 - 2) * av(k - 1);
        for j in 1..k.saturating_sub(1) {
            v -= q(2) * av(j);
        }
        best = q_max(&best, &v);
    }
    let lam = q(a.lambda().largest() as i64) - q(2) * &lower_sum;
    best = q_max(&best, &lam);
    let n = a.a_up_list().len();
    for k in 1..=n {
        let mut v = q(k as i64) * uv(k) + q(k as i64 + 1) * uv(k + 1);
        for j in k + 2..=n {
            v += q(2) * uv(j);
        }
        v -= q(2) * &lower_sum;
        best = q_max(&best, &v);
    }
    best
}
