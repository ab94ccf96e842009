//! Noncrossing set partitions, their block statistics and the weight
//! polynomials built from them.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{DunklError, Result};
use crate::partitions::Partition;
use crate::polyops::CoefPoly;

type Q = BigRational;
pub type Weight = CoefPoly<Q>;

/// Noncrossing partition of the contiguous ground set `start..start+k`,
/// blocks sorted by their minimum and each block sorted increasingly.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct NcPartition {
    start: u32,
    k: u32,
    blocks: Vec<Vec<u32>>,
    // block index of each element, by offset from `start`
    owner: Vec<usize>,
}

/// Enumeration filter for [`enumerate_nc`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NcFilter {
    All,
    EvenBlocks,
    /// At least two blocks and the second block starts at the second element.
    Prime,
}

fn crosses(blocks: &[Vec<u32>]) -> bool {
    for (x, bx) in blocks.iter().enumerate() {
        for by in blocks.iter().skip(x + 1) {
            for w in bx.windows(2) {
                let (a, c) = (w[0], w[1]);
                let inside = by.iter().any(|&b| a < b && b < c);
                let outside = by.iter().any(|&b| b < a || b > c);
                if inside && outside {
                    return true;
                }
            }
        }
    }
    false
}

impl NcPartition {
    /// Builds and validates; blocks may be given in any order.
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_by_key(|b| b[0]);
        let mut all: Vec<u32> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.is_empty() {
            return Err(DunklError::InvalidGroundSet { k: 0, reason: "no elements".into() });
        }
        let start = all[0];
        let k = all.len() as u32;
        if all.iter().enumerate().any(|(i, &v)| v != start + i as u32) {
            return Err(DunklError::InvalidGroundSet {
                k: k as usize,
                reason: "blocks must cover a contiguous range once".into(),
            });
        }
        if crosses(&blocks) {
            return Err(DunklError::InvalidGroundSet { k: k as usize, reason: "blocks cross".into() });
        }
        Ok(Self::from_sorted(start, blocks))
    }

    fn from_sorted(start: u32, blocks: Vec<Vec<u32>>) -> Self {
        let k: u32 = blocks.iter().map(|b| b.len() as u32).sum();
        let mut owner = vec![0; k as usize];
        for (q, b) in blocks.iter().enumerate() {
            for &v in b {
                owner[(v - start) as usize] = q;
            }
        }
        NcPartition { start, k, blocks, owner }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    fn offset(&self, i: u32) -> Result<usize> {
        if i < self.start || i >= self.start + self.k {
            return Err(DunklError::IndexOutOfRange { index: i as usize, bound: (self.start + self.k - 1) as usize });
        }
        Ok((i - self.start) as usize)
    }

    fn block_of(&self, i: u32) -> usize {
        self.owner[(i - self.start) as usize]
    }

    /// 1 when `i` is the minimum of its block.
    pub fn stat_b(&self, i: u32) -> Result<u32> {
        self.offset(i)?;
        Ok(u32::from(self.blocks[self.block_of(i)][0] == i))
    }

    /// Number of elements `≥ i` lying in blocks `B_1..B_q`, `q` the block of `i`.
    pub fn stat_d(&self, i: u32) -> Result<u32> {
        self.offset(i)?;
        let q = self.block_of(i);
        Ok(self.blocks[..=q].iter().flatten().filter(|&&v| v >= i).count() as u32)
    }

    fn b(&self, i: u32) -> bool {
        self.blocks[self.block_of(i)][0] == i
    }

    fn d(&self, i: u32) -> u32 {
        self.stat_d(i).expect("index in range")
    }

    fn elements(&self) -> impl Iterator<Item = u32> {
        self.start..self.start + self.k
    }

    /// Non-minima with odd `d`.
    pub fn stat_o(&self) -> u32 {
        self.elements().filter(|&i| !self.b(i) && self.d(i) % 2 == 1).count() as u32
    }

    /// Block minima from the third element on whose `d` equals their block size.
    pub fn stat_z(&self) -> u32 {
        self.elements()
            .skip(2)
            .filter(|&i| self.b(i) && self.d(i) as usize == self.blocks[self.block_of(i)].len())
            .count() as u32
    }

    /// Size of the first block.
    pub fn stat_f(&self) -> u32 {
        self.blocks[0].len() as u32
    }

    /// Block sizes as a partition.
    pub fn stat_shape(&self) -> Partition {
        Partition::new(self.blocks.iter().map(|b| b.len() as u32).collect()).expect("positive sizes")
    }

    /// Removes the first element from the first block (dropping it when it empties).
    pub fn transform_b(&self) -> Result<NcPartition> {
        if self.k < 2 {
            return Err(DunklError::InvalidGroundSet {
                k: self.k as usize,
                reason: "needs at least two elements".into(),
            });
        }
        let mut blocks = self.blocks.clone();
        blocks[0].remove(0);
        blocks.retain(|b| !b.is_empty());
        blocks.sort_by_key(|b| b[0]);
        Ok(Self::from_sorted(self.start + 1, blocks))
    }

    /// Element `i` is a non-minimum.
    fn non_minima(&self) -> impl Iterator<Item = u32> + '_ {
        self.elements().filter(move |&i| !self.b(i))
    }

    /// Leading factor `1 + 1{b(2)=0}(d(2) − 1)` of the odd-sector weights.
    fn second_factor(&self) -> u32 {
        let second = self.start + 1;
        if self.k >= 2 && !self.b(second) {
            self.d(second)
        } else {
            1
        }
    }
}

impl From<NcPartition> for Vec<Vec<u32>> {
    fn from(p: NcPartition) -> Self {
        p.blocks
    }
}

impl TryFrom<Vec<Vec<u32>>> for NcPartition {
    type Error = DunklError;
    fn try_from(v: Vec<Vec<u32>>) -> Result<Self> {
        NcPartition::new(v)
    }
}

impl fmt::Debug for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let s: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            write!(f, "{{{}}}", s.join(","))?;
        }
        Ok(())
    }
}

/// Restricted-growth enumeration; yields partitions in lexicographic order
/// of the block-membership vector.
fn rgs(
    k: usize,
    cur: &mut Vec<usize>,
    nblocks: usize,
    out: &mut Vec<NcPartition>,
    keep: &dyn Fn(&NcPartition) -> bool,
) {
    if cur.len() == k {
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &q) in cur.iter().enumerate() {
            blocks[q].push(i as u32 + 1);
        }
        if !crosses(&blocks) {
            let p = NcPartition::from_sorted(1, blocks);
            if keep(&p) {
                out.push(p);
            }
        }
        return;
    }
    for q in 0..=nblocks {
        cur.push(q);
        rgs(k, cur, nblocks.max(q + 1), out, keep);
        cur.pop();
    }
}

/// Noncrossing partitions of `[k]` passing `filter`.
///
/// `Prime` takes the ground-set size: its members partition `[k]`.
pub fn enumerate_nc(k: u32, filter: NcFilter) -> Result<Vec<NcPartition>> {
    if k == 0 {
        return Err(DunklError::InvalidGroundSet { k: 0, reason: "ground set must be nonempty".into() });
    }
    if filter == NcFilter::Prime && k < 2 {
        return Err(DunklError::InvalidGroundSet { k: k as usize, reason: "needs at least two elements".into() });
    }
    let keep: Box<dyn Fn(&NcPartition) -> bool> = match filter {
        NcFilter::All => Box::new(|_| true),
        NcFilter::EvenBlocks => Box::new(|p: &NcPartition| p.blocks.iter().all(|b| b.len() % 2 == 0)),
        NcFilter::Prime => Box::new(|p: &NcPartition| p.blocks.len() >= 2 && p.blocks[1][0] == 2),
    };
    let mut out = Vec::new();
    rgs(k as usize, &mut Vec::new(), 0, &mut out, keep.as_ref());
    Ok(out)
}

/// Number of partitions in the filtered class with the given block shape.
pub fn count_by_shape(k: u32, shape: &Partition, filter: NcFilter) -> Result<usize> {
    if shape.size() != k {
        return Err(DunklError::ShapeMismatch(format!("shape {shape} does not partition {k}")));
    }
    Ok(enumerate_nc(k, filter)?.iter().filter(|p| &p.stat_shape() == shape).count())
}

/// Where a weight's denominator lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DenominatorBase {
    /// `1 + x`
    OnePlusX,
    /// `1 + x + y`
    OnePlusXPlusY,
}

/// `numerator / base^exponent`, polynomials in `x` (index 0) and `y` (index 1).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightPoly {
    pub numerator: Weight,
    pub base: DenominatorBase,
    pub exponent: u32,
}

impl WeightPoly {
    fn polynomial(numerator: Weight) -> Self {
        WeightPoly { numerator, base: DenominatorBase::OnePlusX, exponent: 0 }
    }

    pub fn base_poly(&self) -> Weight {
        base_poly(self.base, &Weight::var(0), &Weight::var(1))
    }

    pub fn denominator(&self) -> Weight {
        self.base_poly().pow(self.exponent)
    }

    /// Substitutes `x`, `y`, returning `(numerator, denominator)`.
    pub fn evaluate(&self, x: &Weight, y: &Weight) -> (Weight, Weight) {
        let vals = [x.clone(), y.clone()];
        (self.numerator.compose(&vals), base_poly(self.base, x, y).pow(self.exponent))
    }

    /// `base^m · self` as an exact polynomial; `None` unless the
    /// denominator cancels (it always does for `m ≥ exponent`).
    pub fn cleared(&self, m: u32, x: &Weight, y: &Weight) -> Option<Weight> {
        let (num, den) = self.evaluate(x, y);
        let scaled = &num * &base_poly(self.base, x, y).pow(m);
        scaled.div_exact(&den)
    }

    pub fn display(&self) -> String {
        let num = self.numerator.display_with(&["x", "y"]);
        if self.exponent == 0 {
            return num;
        }
        let base = match self.base {
            DenominatorBase::OnePlusX => "(1 + x)",
            DenominatorBase::OnePlusXPlusY => "(1 + x + y)",
        };
        format!("({num})/{base}^{}", self.exponent)
    }
}

fn base_poly(base: DenominatorBase, x: &Weight, y: &Weight) -> Weight {
    match base {
        DenominatorBase::OnePlusX => x + &Weight::one(),
        DenominatorBase::OnePlusXPlusY => &(x + y) + &Weight::one(),
    }
}

fn lin(d: u32, with_y: bool) -> Weight {
    let mut w = &Weight::var(0) + &Weight::from_int(d as i64);
    if with_y {
        w = &w + &Weight::var(1);
    }
    w
}

/// `W^A(π)(x) = ∏_{non-minima i} (x + d(i))`.
pub fn weight_a(pi: &NcPartition) -> WeightPoly {
    let mut acc = Weight::one();
    for i in pi.non_minima() {
        acc = &acc * &lin(pi.d(i), false);
    }
    WeightPoly::polynomial(acc)
}

/// `W^BC(π)(x,y) = ∏_{non-minima i} (x + 1{d(i) odd}·y + d(i))`.
pub fn weight_bc(pi: &NcPartition) -> WeightPoly {
    let mut acc = Weight::one();
    for i in pi.non_minima() {
        let d = pi.d(i);
        acc = &acc * &lin(d, d % 2 == 1);
    }
    WeightPoly::polynomial(acc)
}

fn odd_core(pi: &NcPartition, with_y: bool) -> Weight {
    let mut acc = Weight::from_int(pi.second_factor() as i64);
    for i in pi.non_minima().filter(|&i| i >= pi.start + 2) {
        let d = pi.d(i);
        acc = &acc * &lin(d, with_y && d % 2 == 1);
    }
    acc
}

/// `W^{D;odd}(π)(x)` for `π` over `[k+1]`.
pub fn weight_d_odd(pi: &NcPartition) -> Result<WeightPoly> {
    if pi.k < 2 {
        return Err(DunklError::InvalidGroundSet { k: pi.k as usize, reason: "needs at least two elements".into() });
    }
    Ok(WeightPoly {
        numerator: odd_core(pi, false),
        base: DenominatorBase::OnePlusX,
        exponent: pi.stat_z() + u32::from(pi.stat_f() > 1),
    })
}

/// `W^{BC;odd}(π)(x,y)` for `π` over `[k+1]`.
pub fn weight_bc_odd(pi: &NcPartition) -> Result<WeightPoly> {
    if pi.k < 2 {
        return Err(DunklError::InvalidGroundSet { k: pi.k as usize, reason: "needs at least two elements".into() });
    }
    let z = pi.stat_z();
    let one_plus_y = &Weight::one() + &Weight::var(1);
    Ok(WeightPoly {
        numerator: &odd_core(pi, true) * &one_plus_y.pow(z),
        base: DenominatorBase::OnePlusXPlusY,
        exponent: z + u32::from(pi.stat_f() > 1),
    })
}

/// `n`-th Catalan number.
pub fn catalan(n: u32) -> num_bigint::BigInt {
    crate::scalar::binomial(2 * n as i64, n as i64) / num_bigint::BigInt::from(n + 1)
}
