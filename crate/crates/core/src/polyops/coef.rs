//! Sparse polynomials in a handful of named indeterminates (θ, θ₀, θ₁, N, ...).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::scalar::{int, Scalar};

/// Exponent vector with trailing zeros stripped, so rings of different
/// arity embed into one another by padding.
pub type Exps = Vec<u32>;

fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_at(e: &[u32], i: usize) -> u32 {
    e.get(i).copied().unwrap_or(0)
}

/// Sparse polynomial over `S` in indeterminates indexed `0, 1, 2, ...`.
///
/// Terms are kept in lexicographic order of exponent vectors (variable 0
/// most significant); zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct CoefPoly<S> {
    terms: BTreeMap<Exps, S>,
}

impl<S: Scalar> Default for CoefPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> CoefPoly<S> {
    pub fn zero() -> Self {
        CoefPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(int(v))
    }

    /// The indeterminate with index `i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, S::one())
    }

    pub fn monomial(exps: Exps, c: S) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(trim(exps), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &S)> {
        self.terms.iter()
    }

    /// Adds `c·x^exps` in place.
    pub fn add_term(&mut self, exps: Exps, c: S) {
        if c.is_zero() {
            return;
        }
        let key = trim(exps);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> S {
        let key = trim(exps.to_vec());
        self.terms.get(&key).cloned().unwrap_or_else(S::zero)
    }

    /// The constant coefficient when the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| exp_at(e, var)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Number of indeterminates that actually occur.
    pub fn arity(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CoefPoly { terms: self.terms.iter().map(|(e, v)| (e.clone(), v.clone() * c.clone())).collect() }
    }

    /// Multiplies by `x_var^k`.
    pub fn shift(&self, var: usize, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| {
                let mut e = e.clone();
                if e.len() <= var {
                    e.resize(var + 1, 0);
                }
                e[var] += k;
                (e, v.clone())
            })
            .collect();
        CoefPoly { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `values[i]` for indeterminate `i`; indices beyond
    /// `values` are left in place.
    pub fn compose(&self, values: &[CoefPoly<S>]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            let mut rest = vec![0u32; e.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match values.get(i) {
                    Some(v) => term = &term * &v.pow(k),
                    None => rest[i] = k,
                }
            }
            if rest.iter().any(|&k| k > 0) {
                term = &term * &Self::monomial(rest, S::one());
            }
            out += &term;
        }
        out
    }

    /// Evaluates indeterminate `var` at the scalar `v`.
    pub fn eval_var(&self, var: usize, v: &S) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = exp_at(e, var);
            let mut e2 = e.clone();
            if k > 0 {
                e2[var] = 0;
            }
            let mut f = c.clone();
            for _ in 0..k {
                f *= v.clone();
            }
            out.add_term(e2, f);
        }
        out
    }

    /// Evaluates every indeterminate.
    pub fn eval(&self, values: &[S]) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= values[i].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        CoefPoly { terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, v)| (e.clone(), v.clone())).collect() }
    }

    /// Maps coefficients into another scalar type.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CoefPoly<T> {
        let mut out = CoefPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    fn leading(&self) -> Option<(&Exps, &S)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &CoefPoly<S>) -> Option<Self> {
        let (ld_e, ld_c) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((re, rc)) = rem.leading() {
            let len = re.len().max(ld_e.len());
            let mut qe = Vec::with_capacity(len);
            for i in 0..len {
                let (a, b) = (exp_at(re, i), exp_at(ld_e, i));
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let qc = rc.clone() / ld_c.clone();
            if qc.clone() * ld_c.clone() != *rc {
                return None;
            }
            let step = Self::monomial(qe, qc);
            rem -= &(&step * d);
            quot += &step;
        }
        Some(quot)
    }

    /// Formats with the given indeterminate names (`x0, x1, ...` beyond).
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&Exps> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mut cs = c.to_string();
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{i}"));
                factors.push(if k == 1 { name } else { format!("{name}^{k}") });
            }
            if factors.is_empty() {
                out.push_str(&cs);
            } else {
                if cs != "1" {
                    out.push_str(&cs);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for CoefPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl<S: Scalar> fmt::Display for CoefPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl<S: Scalar> AddAssign<&CoefPoly<S>> for CoefPoly<S> {
    fn add_assign(&mut self, rhs: &CoefPoly<S>) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl<S: Scalar> SubAssign<&CoefPoly<S>> for CoefPoly<S> {
    fn sub_assign(&mut self, rhs: &CoefPoly<S>) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl<S: Scalar> Add for &CoefPoly<S> {
    type Output = CoefPoly<S>;
    fn add(self, rhs: &CoefPoly<S>) -> CoefPoly<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> Sub for &CoefPoly<S> {
    type Output = CoefPoly<S>;
    fn sub(self, rhs: &CoefPoly<S>) -> CoefPoly<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Scalar> Neg for &CoefPoly<S> {
    type Output = CoefPoly<S>;
    fn neg(self) -> CoefPoly<S> {
        CoefPoly { terms: self.terms.iter().map(|(e, v)| (e.clone(), -v.clone())).collect() }
    }
}

impl<S: Scalar> Mul for &CoefPoly<S> {
    type Output = CoefPoly<S>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &CoefPoly<S>) -> CoefPoly<S> {
        let mut out = CoefPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let len = ea.len().max(eb.len());
                let e: Exps = (0..len).map(|i| exp_at(ea, i) + exp_at(eb, i)).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for CoefPoly<S> {
            type Output = CoefPoly<S>;
            fn $m(self, rhs: CoefPoly<S>) -> CoefPoly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<S: Scalar> Neg for CoefPoly<S> {
    type Output = CoefPoly<S>;
    fn neg(self) -> CoefPoly<S> {
        -&self
    }
}

impl<S: Scalar> Zero for CoefPoly<S> {
    fn zero() -> Self {
        CoefPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> One for CoefPoly<S> {
    fn one() -> Self {
        CoefPoly::one()
    }
}

/// Rising factorial `x(x+1)⋯(x+k−1)`.
pub fn pochhammer<S: Scalar>(x: &CoefPoly<S>, k: u32) -> CoefPoly<S> {
    let mut acc = CoefPoly::one();
    for i in 0..k {
        acc = &acc * &(x + &CoefPoly::from_int(i as i64));
    }
    acc
}
