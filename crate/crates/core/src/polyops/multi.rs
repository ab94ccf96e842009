//! Sparse polynomials in `x_1..x_N` whose coefficients are parameter polynomials.

use std::fmt;

use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use super::coef::{CoefPoly, Exps};
use crate::error::{DunklError, Result};
use crate::scalar::{int, Scalar};

/// Largest supported number of x-variables.
pub const MAX_VARS: usize = 16;
/// Largest supported number of parameter indeterminates.
pub const MAX_PARAMS: usize = 2;

/// Parameter signature of a coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamRing {
    /// Plain scalars.
    Plain,
    /// One indeterminate `theta` (types A and D).
    Theta,
    /// Two indeterminates `theta0`, `theta1` (type BC).
    Theta01,
}

impl ParamRing {
    pub fn symbols(self) -> &'static [&'static str] {
        match self {
            ParamRing::Plain => &[],
            ParamRing::Theta => &["theta"],
            ParamRing::Theta01 => &["theta0", "theta1"],
        }
    }

    pub fn arity(self) -> usize {
        self.symbols().len()
    }

    /// `Plain` embeds into every ring; otherwise the rings must agree.
    pub fn join(self, other: ParamRing) -> Result<ParamRing> {
        match (self, other) {
            (a, b) if a == b => Ok(a),
            (ParamRing::Plain, b) => Ok(b),
            (a, ParamRing::Plain) => Ok(a),
            (a, b) => Err(DunklError::RingMismatch(format!("{a:?} vs {b:?}"))),
        }
    }
}

/// Packed monomial: x-exponents followed by parameter exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono {
    pub x: [u8; MAX_VARS],
    pub p: [u8; MAX_PARAMS],
}

impl Mono {
    pub const ONE: Mono = Mono { x: [0; MAX_VARS], p: [0; MAX_PARAMS] };

    pub fn degree(&self) -> u32 {
        self.x.iter().map(|&e| e as u32).sum()
    }
}

/// Sparse polynomial over `S` in `N` variables, coefficients in `S[params]`.
#[derive(Clone)]
pub struct MultiPoly<S> {
    n: usize,
    ring: ParamRing,
    terms: FxHashMap<Mono, S>,
}

impl<S: Scalar> MultiPoly<S> {
    pub fn zero(n: usize, ring: ParamRing) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        MultiPoly { n, ring, terms: FxHashMap::default() }
    }

    pub fn one(n: usize, ring: ParamRing) -> Self {
        let mut p = Self::zero(n, ring);
        p.add_mono(Mono::ONE, S::one());
        p
    }

    /// `c·x^exps` with plain scalar coefficient.
    pub fn monomial(n: usize, ring: ParamRing, exps: &[u32], c: S) -> Self {
        let mut p = Self::zero(n, ring);
        p.add_mono(Self::pack(exps, &[]), c);
        p
    }

    /// `x_i` (1-based).
    pub fn var(n: usize, ring: ParamRing, i: usize) -> Result<Self> {
        check_index(i, n)?;
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Ok(Self::monomial(n, ring, &e, S::one()))
    }

    /// Packs exponent slices into a [`Mono`].
    pub fn pack(x: &[u32], p: &[u32]) -> Mono {
        let mut m = Mono::ONE;
        for (i, &e) in x.iter().enumerate() {
            m.x[i] = u8::try_from(e).expect("exponent below 256");
        }
        for (i, &e) in p.iter().enumerate() {
            m.p[i] = u8::try_from(e).expect("exponent below 256");
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> ParamRing {
        self.ring
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

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &S)> {
        self.terms.iter()
    }

    /// Terms sorted by monomial, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(Mono, S)> {
        let mut v: Vec<(Mono, S)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|a| a.0);
        v
    }

    /// Adds `c·m` in place.
    pub fn add_mono(&mut self, m: Mono, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Adds `coef(params)·x^exps`.
    pub fn add_term(&mut self, exps: &[u32], coef: &CoefPoly<S>) {
        for (pe, c) in coef.terms() {
            self.add_mono(Self::pack(exps, pe), c.clone());
        }
    }

    pub(crate) fn from_map(n: usize, ring: ParamRing, terms: FxHashMap<Mono, S>) -> Self {
        let mut p = MultiPoly { n, ring, terms };
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    pub(crate) fn into_map(self) -> FxHashMap<Mono, S> {
        self.terms
    }

    /// Same polynomial viewed in another ring (`Plain` embeds everywhere).
    pub fn with_ring(mut self, ring: ParamRing) -> Result<Self> {
        self.ring = self.ring.join(ring)?;
        Ok(self)
    }

    fn compatible(&self, other: &Self) -> Result<ParamRing> {
        if self.n != other.n {
            return Err(DunklError::RingMismatch(format!("N={} vs N={}", self.n, other.n)));
        }
        self.ring.join(other.ring)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let ring = self.compatible(other)?;
        let mut out = self.clone();
        out.ring = ring;
        for (m, c) in &other.terms {
            out.add_mono(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly { n: self.n, ring: self.ring, terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let ring = self.compatible(other)?;
        let mut out = Self::zero(self.n, ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = *ma;
                for i in 0..self.n {
                    m.x[i] = ma.x[i].checked_add(mb.x[i]).expect("exponent below 256");
                }
                for i in 0..MAX_PARAMS {
                    m.p[i] = ma.p[i].checked_add(mb.p[i]).expect("exponent below 256");
                }
                out.add_mono(m, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n, self.ring);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Multiplies by a parameter polynomial.
    pub fn scale(&self, c: &CoefPoly<S>) -> Result<Self> {
        if c.arity() > self.ring.arity() {
            return Err(DunklError::RingMismatch(format!(
                "scalar uses {} parameters, ring {:?} has {}",
                c.arity(),
                self.ring,
                self.ring.arity()
            )));
        }
        let mut out = Self::zero(self.n, self.ring);
        for (m, a) in &self.terms {
            for (pe, b) in c.terms() {
                let mut mm = *m;
                for (i, &e) in pe.iter().enumerate() {
                    mm.p[i] += e as u8;
                }
                out.add_mono(mm, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn scale_scalar(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n, self.ring);
        for (m, a) in &self.terms {
            out.add_mono(*m, a.clone() * c.clone());
        }
        out
    }

    /// Coefficient of `x^exps` as a parameter polynomial.
    pub fn coefficient(&self, exps: &[u32]) -> CoefPoly<S> {
        let key = Self::pack(exps, &[]);
        let mut out = CoefPoly::zero();
        for (m, c) in &self.terms {
            if m.x == key.x {
                out.add_term(m.p[..self.ring.arity()].iter().map(|&e| e as u32).collect(), c.clone());
            }
        }
        out
    }

    /// The constant term `[1]f`.
    pub fn constant_term(&self) -> CoefPoly<S> {
        self.coefficient(&[])
    }

    /// Largest total x-degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Groups terms by x-monomial.
    pub fn grouped(&self) -> Vec<(Exps, CoefPoly<S>)> {
        let mut map: std::collections::BTreeMap<Exps, CoefPoly<S>> = Default::default();
        let arity = self.ring.arity();
        for (m, c) in &self.terms {
            let xe: Exps = m.x[..self.n].iter().map(|&e| e as u32).collect();
            map.entry(xe).or_default().add_term(m.p[..arity].iter().map(|&e| e as u32).collect(), c.clone());
        }
        map.into_iter().collect()
    }

    /// Evaluates the parameters, giving a polynomial over plain scalars.
    pub fn eval_params(&self, values: &[S]) -> Self {
        let mut out = Self::zero(self.n, ParamRing::Plain);
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.p.iter().enumerate() {
                for _ in 0..e {
                    v *= values[i].clone();
                }
            }
            let mut mm = *m;
            mm.p = [0; MAX_PARAMS];
            out.add_mono(mm, v);
        }
        out
    }

    /// Evaluates at a point, keeping parameters symbolic.
    pub fn eval_at(&self, point: &[S]) -> CoefPoly<S> {
        let mut out = CoefPoly::zero();
        let arity = self.ring.arity();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, e) in point.iter().zip(&m.x[..self.n]) {
                for _ in 0..*e {
                    v *= x.clone();
                }
            }
            out.add_term(m.p[..arity].iter().map(|&e| e as u32).collect(), v);
        }
        out
    }

    /// Maps the coefficients into another scalar type.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MultiPoly<T> {
        let mut out = MultiPoly::zero(self.n, self.ring);
        for (m, c) in &self.terms {
            out.add_mono(*m, f(c));
        }
        out
    }

    /// JSON form `{"N": n, "terms": [{"exp": [...], "coef": {"params": [...], "value": "p/q"}}]}`.
    pub fn to_json(&self) -> Value {
        let arity = self.ring.arity();
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                json!({
                    "exp": m.x[..self.n].to_vec(),
                    "coef": {"params": m.p[..arity].to_vec(), "value": c.to_string()},
                })
            })
            .collect();
        json!({"N": self.n, "terms": terms})
    }
}

impl<S: Scalar> PartialEq for MultiPoly<S> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl<S: Scalar> fmt::Debug for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.grouped();
        if g.is_empty() {
            return write!(f, "0");
        }
        let syms = self.ring.symbols();
        let parts: Vec<String> = g
            .iter()
            .map(|(xe, c)| {
                let mono: Vec<String> = xe
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                    .collect();
                let cs = c.display_with(syms);
                if mono.is_empty() {
                    format!("({cs})")
                } else {
                    format!("({cs})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(DunklError::IndexOutOfRange { index: i, bound: n })
    } else {
        Ok(())
    }
}

/// `c·x_1^{e_1}⋯` helper used by tests and the partitions module.
pub fn mono_poly<S: Scalar>(n: usize, exps: &[u32], c: i64) -> MultiPoly<S> {
    MultiPoly::monomial(n, ParamRing::Plain, exps, int(c))
}
