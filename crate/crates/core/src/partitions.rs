//! Integer partitions and the symmetric polynomials they index.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{DunklError, Result};
use crate::linalg;
use crate::polyops::{MultiPoly, ParamRing};
use crate::scalar::{factorial, int, Scalar};

/// Weakly decreasing list of positive parts.
///
/// The empty partition exists only as an internal sentinel (for example
/// the `μ` of the basis element `e·p_μ = e`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(DunklError::ShapeMismatch("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Parses `"3,2,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<u32>, _> =
            s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse::<u32>()).collect();
        let parts = parts.map_err(|e| DunklError::ShapeMismatch(format!("bad partition {s:?}: {e}")))?;
        if parts.is_empty() {
            return Err(DunklError::ShapeMismatch("empty partition".into()));
        }
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 0)
    }

    /// `∏ parts`.
    pub fn part_product(&self) -> BigInt {
        self.0.iter().fold(BigInt::from(1), |a, &p| a * BigInt::from(p))
    }

    /// Partition with every part doubled.
    pub fn doubled(&self) -> Partition {
        Partition(self.0.iter().map(|p| 2 * p).collect())
    }

    /// Partition with every part halved (parts must be even).
    pub fn halved(&self) -> Partition {
        Partition(self.0.iter().map(|p| p / 2).collect())
    }

    /// Multiplicities `n_i` of each distinct part.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Number of distinct orderings of the parts.
    pub fn arrangements(&self) -> BigInt {
        self.multiplicities().values().fold(factorial(self.len() as u64), |acc, &n| acc / factorial(n as u64))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = DunklError;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Part-parity restriction for [`PartitionClass`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartsKind {
    All,
    EvenParts,
}

/// Which partitions of a fixed degree to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionClass {
    pub kind: PartsKind,
    pub max_part: Option<u32>,
    pub degree: u32,
}

impl PartitionClass {
    pub fn all(degree: u32) -> Self {
        PartitionClass { kind: PartsKind::All, max_part: None, degree }
    }

    pub fn bounded(degree: u32, max_part: u32) -> Self {
        PartitionClass { kind: PartsKind::All, max_part: Some(max_part), degree }
    }

    pub fn even(degree: u32, max_part: Option<u32>) -> Self {
        PartitionClass { kind: PartsKind::EvenParts, max_part, degree }
    }
}

fn gen(rem: u32, max: u32, step: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    let mut p = max.min(rem) / step * step;
    while p >= step {
        cur.push(p);
        gen(rem - p, p, step, cur, out);
        cur.pop();
        p -= step;
    }
}

/// Canonical order: shorter partitions first, then lexicographically decreasing.
pub fn canonical_cmp(a: &Partition, b: &Partition) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| b.0.cmp(&a.0))
}

/// All nonempty partitions in `class`, in canonical order.
pub fn enumerate(class: PartitionClass) -> Vec<Partition> {
    let step = match class.kind {
        PartsKind::All => 1,
        PartsKind::EvenParts => 2,
    };
    let mut out = Vec::new();
    if class.degree == 0 || !class.degree.is_multiple_of(step) {
        return out;
    }
    let max = class.max_part.unwrap_or(class.degree);
    gen(class.degree, max, step, &mut Vec::new(), &mut out);
    out.sort_by(canonical_cmp);
    out
}

/// Partitions of `degree` with at most `max_len` parts, canonical order.
pub fn enumerate_by_length(degree: u32, max_len: usize) -> Vec<Partition> {
    enumerate(PartitionClass::all(degree)).into_iter().filter(|p| p.len() <= max_len).collect()
}

/// `π(ν) = ∏ n_i!` over part multiplicities.
pub fn mult_factor(nu: &Partition) -> BigInt {
    nu.multiplicities().values().fold(BigInt::from(1), |acc, &n| acc * factorial(n as u64))
}

/// Concatenates and re-sorts.
pub fn partition_sum(parts: &[Partition]) -> Partition {
    let mut v: Vec<u32> = parts.iter().flat_map(|p| p.0.iter().copied()).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Partition(v)
}

/// `p_λ(x_1..x_N)`.
pub fn power_sum<S: Scalar>(lambda: &Partition, n: usize) -> MultiPoly<S> {
    let mut acc = MultiPoly::one(n, ParamRing::Plain);
    for &part in lambda.parts() {
        let mut f = MultiPoly::zero(n, ParamRing::Plain);
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = part;
            f.add_mono(MultiPoly::<S>::pack(&e, &[]), S::one());
        }
        acc = acc.mul(&f).expect("same ring");
    }
    acc
}

fn distinct_perms(v: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    let mut seen = std::collections::BTreeSet::new();
    for i in k..v.len() {
        if seen.insert(v[i]) {
            v.swap(k, i);
            distinct_perms(v, k + 1, out);
            v.swap(k, i);
        }
    }
}

/// `M_ε(x_1..x_N)`: every distinct monomial with exponent multiset `ε`.
pub fn monomial_sym<S: Scalar>(eps: &Partition, n: usize) -> Result<MultiPoly<S>> {
    if eps.len() > n {
        return Err(DunklError::LengthExceedsVariables { len: eps.len(), n });
    }
    let mut v: Vec<u32> = eps.parts().to_vec();
    v.resize(n, 0);
    let mut perms = Vec::new();
    distinct_perms(&mut v, 0, &mut perms);
    let mut out = MultiPoly::zero(n, ParamRing::Plain);
    for e in perms {
        out.add_mono(MultiPoly::<S>::pack(&e, &[]), S::one());
    }
    Ok(out)
}

/// `e = x_1⋯x_N`.
pub fn e_poly<S: Scalar>(n: usize) -> MultiPoly<S> {
    MultiPoly::monomial(n, ParamRing::Plain, &vec![1; n], S::one())
}

/// Coefficients `c_{ελ}` with `M_ε = Σ_λ c_{ελ} p_λ`, solved at `N = |ε|`.
pub fn monomial_to_powersum(eps: &Partition) -> BTreeMap<Partition, BigRational> {
    let k = eps.size();
    let n = k as usize;
    let basis = enumerate(PartitionClass::all(k));
    // column λ holds the monomial-basis coordinates of p_λ
    let index: BTreeMap<Vec<u32>, usize> = basis.iter().enumerate().map(|(i, p)| (p.0.clone(), i)).collect();
    let mut a: linalg::Matrix<BigRational> = vec![vec![int(0); basis.len()]; basis.len()];
    for (col, lam) in basis.iter().enumerate() {
        let p = power_sum::<BigRational>(lam, n);
        for (m, c) in p.terms() {
            let mut e: Vec<u32> = m.x[..n].iter().map(|&v| v as u32).filter(|&v| v > 0).collect();
            e.sort_unstable_by(|x, y| y.cmp(x));
            // only sorted representatives: all permutations share a coefficient
            let rep: Vec<u32> = m.x[..n].iter().map(|&v| v as u32).collect();
            let mut sorted_full = rep.clone();
            sorted_full.sort_unstable_by(|x, y| y.cmp(x));
            if rep == sorted_full {
                a[index[&e]][col] = c.clone();
            }
        }
    }
    let mut rhs = vec![vec![int(0)]; basis.len()];
    rhs[index[&eps.0]][0] = int(1);
    let sol = linalg::solve(&a, &rhs).expect("power sums are a basis at N = |ε|");
    basis.into_iter().zip(sol).filter(|(_, c)| c[0] != int(0)).map(|(p, c)| (p, c[0].clone())).collect()
}
