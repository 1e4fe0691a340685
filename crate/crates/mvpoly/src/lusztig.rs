//! Lusztig data and partitions.
//!
//! A datum `(a_k, lambda, a^k)` records edge multiplicities along one side
//! of a polytope.  Read as right data the edges are `a_k` lower roots,
//! `|lambda|` copies of delta and `a^k` upper roots.  Read as left data the
//! roles of lower and upper roots are exchanged.  Lists are 1-indexed in
//! the public API (`a(1)` is the first entry).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MvError, Result};
use crate::root_lattice::{q, q_to_string, root, RootVector, Side, System, Q};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(mut parts: Vec<u64>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> u64 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn union(&self, other: &Partition) -> Partition {
        let mut p = self.parts.clone();
        p.extend_from_slice(&other.parts);
        Partition::new(p)
    }

    /// All partitions of `n`, largest parts first, in reverse lexicographic order.
    pub fn all_of(n: u64) -> Vec<Partition> {
        fn go(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max.min(n)).rev() {
                cur.push(p);
                go(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn get(v: &[u64], k: usize) -> u64 {
    if k == 0 {
        return 0;
    }
    v.get(k - 1).copied().unwrap_or(0)
}

/// Integral Lusztig datum in canonical form (no trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDatum", into = "RawDatum")]
pub struct LusztigDatum {
    a: Vec<u64>,
    lambda: Partition,
    a_up: Vec<u64>,
    system: System,
}

impl LusztigDatum {
    pub fn new(mut a: Vec<u64>, lambda: Partition, mut a_up: Vec<u64>, system: System) -> Self {
        trim(&mut a);
        trim(&mut a_up);
        LusztigDatum { a, lambda, a_up, system }
    }

    pub fn untwisted(a: Vec<u64>, lambda: Vec<u64>, a_up: Vec<u64>) -> Self {
        LusztigDatum::new(a, Partition::new(lambda), a_up, System::Untwisted)
    }

    pub fn twisted(a: Vec<u64>, lambda: Vec<u64>, a_up: Vec<u64>) -> Self {
        LusztigDatum::new(a, Partition::new(lambda), a_up, System::Twisted)
    }

    pub fn zero(system: System) -> Self {
        LusztigDatum::new(vec![], Partition::empty(), vec![], system)
    }

    pub fn system(&self) -> System {
        self.system
    }

    /// `a_k`, 1-indexed; zero past the stored length.
    pub fn a(&self, k: usize) -> u64 {
        get(&self.a, k)
    }

    /// `a^k`, 1-indexed.
    pub fn a_up(&self, k: usize) -> u64 {
        get(&self.a_up, k)
    }

    pub fn a_list(&self) -> &[u64] {
        &self.a
    }

    pub fn a_up_list(&self) -> &[u64] {
        &self.a_up
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty() && self.a_up.is_empty() && self.lambda.is_empty()
    }

    pub fn with_a(&self, k: usize, value: u64) -> Self {
        let mut a = self.a.clone();
        if a.len() < k {
            a.resize(k, 0);
        }
        a[k - 1] = value;
        LusztigDatum::new(a, self.lambda.clone(), self.a_up.clone(), self.system)
    }

    pub fn with_a_up(&self, k: usize, value: u64) -> Self {
        let mut a_up = self.a_up.clone();
        if a_up.len() < k {
            a_up.resize(k, 0);
        }
        a_up[k - 1] = value;
        LusztigDatum::new(self.a.clone(), self.lambda.clone(), a_up, self.system)
    }

    pub fn with_lambda(&self, lambda: Partition) -> Self {
        LusztigDatum::new(self.a.clone(), lambda, self.a_up.clone(), self.system)
    }

    pub fn with_system(&self, system: System) -> Self {
        LusztigDatum { system, ..self.clone() }
    }

    pub fn to_rational(&self) -> RatDatum {
        RatDatum::new(
            self.a.iter().map(|&x| q(x as i64)).collect(),
            self.lambda.parts.iter().map(|&x| q(x as i64)).collect(),
            self.a_up.iter().map(|&x| q(x as i64)).collect(),
            self.system,
        )
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| MvError::InvalidDatum(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("datum serializes")
    }

    /// Sort key for the canonical graded order.
    fn order_key(&self) -> (u64, &Vec<u64>, &Partition, &Vec<u64>) {
        (height(self), &self.a, &self.lambda, &self.a_up)
    }
}

impl PartialOrd for LusztigDatum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LusztigDatum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.system
            .cmp(&other.system)
            .then_with(|| self.order_key().cmp(&other.order_key()))
    }
}

impl fmt::Display for LusztigDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

#[derive(Serialize, Deserialize)]
struct RawDatum {
    #[serde(default)]
    a: Vec<i64>,
    #[serde(default)]
    lambda: Vec<i64>,
    #[serde(default)]
    a_up: Vec<i64>,
    #[serde(default)]
    system: System,
}

impl TryFrom<RawDatum> for LusztigDatum {
    type Error = MvError;
    fn try_from(r: RawDatum) -> Result<Self> {
        let conv = |name: &str, v: &[i64]| -> Result<Vec<u64>> {
            v.iter()
                .enumerate()
                .map(|(i, &x)| {
                    if x < 0 {
                        Err(MvError::Negative(format!("{name}[{}] = {x}", i + 1)))
                    } else {
                        Ok(x as u64)
                    }
                })
                .collect()
        };
        Ok(LusztigDatum::new(
            conv("a", &r.a)?,
            Partition::new(conv("lambda", &r.lambda)?),
            conv("a_up", &r.a_up)?,
            r.system,
        ))
    }
}

impl From<LusztigDatum> for RawDatum {
    fn from(d: LusztigDatum) -> Self {
        let c = |v: &[u64]| v.iter().map(|&x| x as i64).collect();
        RawDatum {
            a: c(&d.a),
            lambda: c(&d.lambda.parts),
            a_up: c(&d.a_up),
            system: d.system,
        }
    }
}

/// Weight of `d` read as right data.
pub fn weight(d: &LusztigDatum) -> RootVector {
    d.to_rational().weight()
}

/// Weight of `d` read as left data.
pub fn left_weight(d: &LusztigDatum) -> RootVector {
    d.to_rational().left_weight()
}

/// Height of the weight; the same for either reading.
pub fn height(d: &LusztigDatum) -> u64 {
    weight(d).height().to_integer().to_u64().expect("height fits u64")
}

/// Exchange the lower and upper lists; `lambda` is kept.
pub fn reverse(d: &LusztigDatum) -> LusztigDatum {
    LusztigDatum::new(d.a_up.clone(), d.lambda.clone(), d.a.clone(), d.system)
}

/// Entrywise sum; partitions are merged.
pub fn add(x: &LusztigDatum, y: &LusztigDatum) -> LusztigDatum {
    let n = x.a.len().max(y.a.len());
    let m = x.a_up.len().max(y.a_up.len());
    LusztigDatum::new(
        (1..=n).map(|k| x.a(k) + y.a(k)).collect(),
        x.lambda.union(&y.lambda),
        (1..=m).map(|k| x.a_up(k) + y.a_up(k)).collect(),
        x.system,
    )
}

/// Lusztig datum with nonnegative rational entries, used inside the
/// recursion and the geometric algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatDatum {
    a: Vec<Q>,
    lambda: Vec<Q>,
    a_up: Vec<Q>,
    system: System,
}

fn trim_q(v: &mut Vec<Q>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn get_q(v: &[Q], k: usize) -> Q {
    if k == 0 {
        return Q::zero();
    }
    v.get(k - 1).cloned().unwrap_or_else(Q::zero)
}

impl RatDatum {
    pub fn new(mut a: Vec<Q>, mut lambda: Vec<Q>, mut a_up: Vec<Q>, system: System) -> Self {
        trim_q(&mut a);
        trim_q(&mut a_up);
        lambda.retain(|x| !x.is_zero());
        lambda.sort_by(|x, y| y.cmp(x));
        RatDatum { a, lambda, a_up, system }
    }

    pub fn zero(system: System) -> Self {
        RatDatum::new(vec![], vec![], vec![], system)
    }

    pub fn system(&self) -> System {
        self.system
    }

    pub fn a(&self, k: usize) -> Q {
        get_q(&self.a, k)
    }

    pub fn a_up(&self, k: usize) -> Q {
        get_q(&self.a_up, k)
    }

    pub fn a_len(&self) -> usize {
        self.a.len()
    }

    pub fn a_up_len(&self) -> usize {
        self.a_up.len()
    }

    pub fn lambda(&self) -> &[Q] {
        &self.lambda
    }

    pub fn lambda_size(&self) -> Q {
        self.lambda.iter().fold(Q::zero(), |s, x| s + x)
    }

    pub fn lambda_largest(&self) -> Q {
        self.lambda.first().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty() && self.a_up.is_empty() && self.lambda.is_empty()
    }

    pub fn has_negative(&self) -> bool {
        self.a.iter().chain(&self.lambda).chain(&self.a_up).any(|x| x.is_negative())
    }

    pub fn with_a(&self, k: usize, value: Q) -> Self {
        let mut a = self.a.clone();
        if a.len() < k {
            a.resize(k, Q::zero());
        }
        a[k - 1] = value;
        RatDatum::new(a, self.lambda.clone(), self.a_up.clone(), self.system)
    }

    pub fn with_a_up(&self, k: usize, value: Q) -> Self {
        let mut a_up = self.a_up.clone();
        if a_up.len() < k {
            a_up.resize(k, Q::zero());
        }
        a_up[k - 1] = value;
        RatDatum::new(self.a.clone(), self.lambda.clone(), a_up, self.system)
    }

    pub fn with_lambda(&self, lambda: Vec<Q>) -> Self {
        RatDatum::new(self.a.clone(), lambda, self.a_up.clone(), self.system)
    }

    /// Only `a_k = v`.
    pub fn single_a(k: usize, v: Q, system: System) -> Self {
        RatDatum::zero(system).with_a(k, v)
    }

    /// Only `a^k = v`.
    pub fn single_a_up(k: usize, v: Q, system: System) -> Self {
        RatDatum::zero(system).with_a_up(k, v)
    }

    pub fn reverse(&self) -> Self {
        RatDatum::new(self.a_up.clone(), self.lambda.clone(), self.a.clone(), self.system)
    }

    pub fn add(&self, o: &RatDatum) -> RatDatum {
        let n = self.a.len().max(o.a.len());
        let m = self.a_up.len().max(o.a_up.len());
        let mut lambda = self.lambda.clone();
        lambda.extend(o.lambda.iter().cloned());
        RatDatum::new(
            (1..=n).map(|k| self.a(k) + o.a(k)).collect(),
            lambda,
            (1..=m).map(|k| self.a_up(k) + o.a_up(k)).collect(),
            self.system,
        )
    }

    pub fn weight(&self) -> RootVector {
        self.weight_with(Side::Lower, Side::Upper)
    }

    pub fn left_weight(&self) -> RootVector {
        self.weight_with(Side::Upper, Side::Lower)
    }

    fn weight_with(&self, low: Side, up: Side) -> RootVector {
        let s = self.system;
        let mut w = RootVector::delta(s).scale(&self.lambda_size());
        for (i, x) in self.a.iter().enumerate() {
            w = &w + &root(low, i + 1, s).scale(x);
        }
        for (i, x) in self.a_up.iter().enumerate() {
            w = &w + &root(up, i + 1, s).scale(x);
        }
        w
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().chain(&self.lambda).chain(&self.a_up).all(|x| x.is_integer())
    }

    /// The integral datum, if every entry is a nonnegative integer.
    pub fn to_integral(&self) -> Option<LusztigDatum> {
        let conv = |v: &[Q]| -> Option<Vec<u64>> {
            v.iter()
                .map(|x| {
                    if x.is_integer() && !x.is_negative() {
                        x.to_integer().to_u64()
                    } else {
                        None
                    }
                })
                .collect()
        };
        Some(LusztigDatum::new(
            conv(&self.a)?,
            Partition::new(conv(&self.lambda)?),
            conv(&self.a_up)?,
            self.system,
        ))
    }

    /// Multiply every entry (and every part) by `s`.
    pub fn scale(&self, s: &Q) -> RatDatum {
        let m = |v: &[Q]| v.iter().map(|x| x * s).collect::<Vec<_>>();
        RatDatum::new(m(&self.a), m(&self.lambda), m(&self.a_up), self.system)
    }

    pub fn with_system(&self, system: System) -> Self {
        RatDatum { system, ..self.clone() }
    }

    /// Least common multiple of all denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.a
            .iter()
            .chain(&self.lambda)
            .chain(&self.a_up)
            .fold(BigInt::from(1), |l, x| l.lcm(x.denom()))
    }
}

impl fmt::Display for RatDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[Q]| v.iter().map(q_to_string).collect::<Vec<_>>().join(",");
        write!(f, "a=[{}] lambda=[{}] a_up=[{}]", j(&self.a), j(&self.lambda), j(&self.a_up))
    }
}

/// Heights of the root labelling lower (or upper) index `k`.
fn root_height(side: Side, k: usize, s: System) -> u64 {
    root(side, k, s).height().to_integer().to_u64().expect("small height")
}

/// Every integral datum of the given system with height at most `h`,
/// sorted by height and then lexicographically.
pub fn data_up_to_height(h: u64, system: System) -> Vec<LusztigDatum> {
    // Twisted root heights are not monotone in k, so every index whose
    // height can still fit is visited; heights exceed k/2 in both systems.
    fn lists(side: Side, budget: u64, k: usize, s: System, cur: &mut Vec<u64>, out: &mut Vec<(Vec<u64>, u64)>) {
        if k as u64 > 2 * budget + 2 {
            let used: u64 = cur.iter().enumerate().map(|(i, &m)| m * root_height(side, i + 1, s)).sum();
            out.push((cur.clone(), used));
            return;
        }
        let hk = root_height(side, k, s);
        for m in 0..=(budget / hk) {
            cur.push(m);
            lists(side, budget - m * hk, k + 1, s, cur, out);
            cur.pop();
        }
    }
    let hd = RootVector::delta(system).height().to_integer().to_u64().expect("small");
    let mut lows = Vec::new();
    lists(Side::Lower, h, 1, system, &mut Vec::new(), &mut lows);
    let mut out = Vec::new();
    for (a, ua) in &lows {
        let mut ups = Vec::new();
        lists(Side::Upper, h - ua, 1, system, &mut Vec::new(), &mut ups);
        for (b, ub) in &ups {
            let rest = h - ua - ub;
            for n in 0..=(rest / hd) {
                for p in Partition::all_of(n) {
                    out.push(LusztigDatum::new(a.clone(), p, b.clone(), system));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every integral datum whose weight, read as right data (or as left data
/// when `left` is set), equals `w`.
pub fn data_of_weight(w: &RootVector, left: bool) -> Vec<LusztigDatum> {
    let h = w.height();
    if h.is_negative() || !h.is_integer() {
        return Vec::new();
    }
    let h = h.to_integer().to_u64().unwrap_or(0);
    data_up_to_height(h, w.system)
        .into_iter()
        .filter(|d| if left { left_weight(d) == *w } else { weight(d) == *w })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> LusztigDatum {
        LusztigDatum::untwisted(vec![2, 1, 1], vec![9, 2, 1, 1], vec![1, 0, 1])
    }

    #[test]
    fn weights_and_heights() {
        let u = System::Untwisted;
        assert_eq!(weight(&LusztigDatum::zero(u)), RootVector::zero(u));
        assert_eq!(weight(&sample()), RootVector::from_ints(20, 22, u));
        assert_eq!(height(&sample()), 42);
        let d = LusztigDatum::untwisted(vec![], vec![], vec![0, 1]);
        assert_eq!(weight(&d), RootVector::from_ints(2, 1, u));
        assert_eq!(height(&LusztigDatum::untwisted(vec![1], vec![], vec![])), 1);
        assert_eq!(height(&LusztigDatum::zero(u)), 0);
    }

    #[test]
    fn reverse_swaps_lists() {
        let d = LusztigDatum::untwisted(vec![1], vec![], vec![0, 3]);
        let r = reverse(&d);
        assert_eq!(r, LusztigDatum::untwisted(vec![0, 3], vec![], vec![1]));
        assert_eq!(reverse(&r), d);
        assert_eq!(weight(&reverse(&sample())), weight(&sample()).swap());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let d = sample();
        let s = d.to_json();
        assert_eq!(s, r#"{"a":[2,1,1],"lambda":[9,2,1,1],"a_up":[1,0,1],"system":"untwisted"}"#);
        assert_eq!(LusztigDatum::from_json(&s).unwrap(), d);
        assert_eq!(LusztigDatum::from_json("{}").unwrap(), LusztigDatum::zero(System::Untwisted));
        assert!(matches!(LusztigDatum::from_json(r#"{"a":[1,-1]}"#), Err(MvError::InvalidDatum(_))));
        let t = LusztigDatum::from_json(r#"{"a":[0,0],"lambda":[1,3],"system":"twisted"}"#).unwrap();
        assert_eq!(t, LusztigDatum::twisted(vec![], vec![3, 1], vec![]));
    }

    #[test]
    fn partitions_enumerate() {
        let counts: Vec<usize> = (0..8).map(|n| Partition::all_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn enumeration_small_heights() {
        let u = System::Untwisted;
        let d = data_up_to_height(2, u);
        assert_eq!(d.len(), 7);
        assert!(d[0].is_zero());
        let delta = RootVector::delta(u);
        assert_eq!(data_of_weight(&delta, false).len(), 2);
        assert_eq!(data_of_weight(&delta, true).len(), 2);
        for x in data_up_to_height(6, u) {
            assert!(height(&x) <= 6);
        }
    }
}
