//! Taylor blocks of the symmetric Dunkl kernel (Bessel function) from the Gram
//! system, the one-variable closed forms, and moment/cumulant transforms.

pub mod moments;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dunkl::{gram, BasisLabel, DunklContext, Kind, Params, Sector};
use crate::error::{DunklError, Result};
use crate::linalg::{adjugate, inverse};
use crate::polyops::CoefPoly;
use crate::scalar::{fmt_rational, int};
use crate::{Coef, Rational};

pub use crate::polyops::pochhammer;
pub use moments::{cumulants_from_moments, free_convolve, moments_from_cumulants, Regime};

/// Coefficient of `b_λ(a)·b_μ(x)` in a Taylor block.
#[derive(Clone, Debug, PartialEq)]
pub enum BesselCoef {
    Exact(Rational),
    /// `numerator / denominator` in the multiplicity parameters.
    Ratio(Coef, Coef),
}

impl BesselCoef {
    pub fn is_zero(&self) -> bool {
        match self {
            BesselCoef::Exact(r) => r.is_zero(),
            BesselCoef::Ratio(n, _) => n.is_zero(),
        }
    }

    /// Value at concrete parameters.
    pub fn evaluate(&self, params: &[Rational]) -> Result<Rational> {
        match self {
            BesselCoef::Exact(r) => Ok(r.clone()),
            BesselCoef::Ratio(n, d) => {
                let dv = d.eval(params);
                if dv.is_zero() {
                    return Err(DunklError::SingularDenominator("Bessel coefficient".into()));
                }
                Ok(n.eval(params) / dv)
            }
        }
    }

    pub fn display(&self, names: &[&str]) -> String {
        match self {
            BesselCoef::Exact(r) => fmt_rational(r),
            BesselCoef::Ratio(n, d) => format!("({})/({})", n.display_with(names), d.display_with(names)),
        }
    }
}

/// Degree-`k` part `J_a[k](x) = Σ coef[λ][μ] b_λ(a) b_μ(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BesselDegreeBlock {
    pub degree: u32,
    pub basis: Vec<BasisLabel>,
    pub coefs: Vec<Vec<BesselCoef>>,
    pub names: Vec<&'static str>,
}

impl BesselDegreeBlock {
    pub fn coef(&self, a: &BasisLabel, x: &BasisLabel) -> Option<&BesselCoef> {
        let i = self.basis.iter().position(|b| b == a)?;
        let j = self.basis.iter().position(|b| b == x)?;
        Some(&self.coefs[i][j])
    }

    pub fn to_json(&self) -> Value {
        let mut terms = Vec::new();
        for (i, row) in self.coefs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push(json!({
                        "a": self.basis[i].to_string(),
                        "x": self.basis[j].to_string(),
                        "coef": c.display(&self.names),
                    }));
                }
            }
        }
        json!({ "degree": self.degree, "terms": terms })
    }
}

/// Solves the Gram system at degree `k`. Numeric contexts give exact
/// rationals, symbolic ones adjugate/determinant pairs.
pub fn bessel_block(ctx: &DunklContext<Rational>, k: u32) -> Result<BesselDegreeBlock> {
    let names = ctx.kind.ring().symbols().to_vec();
    if k == 0 {
        return Err(DunklError::PreconditionViolated("degree must be positive".into()));
    }
    let g = gram(ctx, k, Sector::Full)?;
    if g.dim() == 0 {
        return Ok(BesselDegreeBlock { degree: k, basis: vec![], coefs: vec![], names });
    }
    let singular = || DunklError::SingularGram { k: k as usize, params: ctx.describe_params() };
    let coefs = match &ctx.params {
        Params::Numeric(_) => {
            let m: Vec<Vec<Rational>> = g
                .entries
                .iter()
                .map(|r| r.iter().map(|c| c.as_constant().unwrap_or_else(Rational::zero)).collect())
                .collect();
            let inv = inverse(&m).ok_or_else(singular)?;
            inv.into_iter().map(|r| r.into_iter().map(BesselCoef::Exact).collect()).collect()
        }
        Params::Symbolic => {
            let (adj, det) = adjugate(&g.entries);
            if det.is_zero() {
                return Err(singular());
            }
            adj.into_iter().map(|r| r.into_iter().map(|n| BesselCoef::Ratio(n, det.clone())).collect()).collect()
        }
    };
    Ok(BesselDegreeBlock { degree: k, basis: g.basis, coefs, names })
}

/// Blocks for degrees `1..=kmax`, solved in parallel.
pub fn bessel_blocks(ctx: &DunklContext<Rational>, kmax: u32) -> Result<Vec<BesselDegreeBlock>> {
    (1..=kmax).into_par_iter().map(|k| bessel_block(ctx, k)).collect()
}

/// `b(a)` for a basis label at a concrete point.
pub fn label_value(label: &BasisLabel, a: &[Rational]) -> Rational {
    let p = |m: u32| a.iter().fold(Rational::zero(), |s, v| s + num_traits::pow(v.clone(), m as usize));
    match label {
        BasisLabel::PowerSum(l) => l.parts().iter().fold(Rational::one(), |acc, &m| acc * p(m)),
        BasisLabel::EPowerSum(m) => {
            let e = a.iter().fold(Rational::one(), |acc, v| acc * v.clone());
            m.parts().iter().fold(e, |acc, &j| acc * p(j))
        }
    }
}

/// Coefficient of `z^k` in `J_a(z,0,…,0)` read off a Taylor block.
pub fn block_on_axis(block: &BesselDegreeBlock, a: &[Rational], params: &[Rational]) -> Result<Rational> {
    let n = a.len();
    let mut total = Rational::zero();
    for (i, row) in block.coefs.iter().enumerate() {
        let av = label_value(&block.basis[i], a);
        if av.is_zero() {
            continue;
        }
        for (j, c) in row.iter().enumerate() {
            // b_μ(z,0,…,0) is z^k for power sums and vanishes for e·p_μ when N > 1
            let on_axis = match &block.basis[j] {
                BasisLabel::PowerSum(_) => true,
                BasisLabel::EPowerSum(_) => n == 1,
            };
            if on_axis && !c.is_zero() {
                total += c.evaluate(params)? * av.clone();
            }
        }
    }
    Ok(total)
}

/// Coefficients of `exp(θ Σ_m p_m(b) z^m / m)` up to `z^kmax`.
fn exp_series(b: &[Rational], theta: &Rational, kmax: usize) -> Vec<Rational> {
    let p: Vec<Rational> =
        (0..=kmax).map(|m| b.iter().fold(Rational::zero(), |s, v| s + num_traits::pow(v.clone(), m))).collect();
    let mut c = vec![Rational::one()];
    for k in 1..=kmax {
        let mut s = Rational::zero();
        for m in 1..=k {
            s += p[m].clone() * c[k - m].clone();
        }
        c.push(s * theta.clone() / int::<Rational>(k as i64));
    }
    c
}

/// Taylor coefficients of `J_a(z,0,…,0)` in `z` up to degree `kmax`.
/// `params` is `[θ]` for A and D, `[θ₀, θ₁]` for BC.
pub fn one_var_bessel(kind: Kind, a: &[Rational], params: &[Rational], n: usize, kmax: usize) -> Result<Vec<Rational>> {
    if a.len() != n || n == 0 {
        return Err(DunklError::PreconditionViolated(format!("point has {} coordinates, N = {n}", a.len())));
    }
    if params.len() != kind.arity() {
        return Err(DunklError::PreconditionViolated(format!("{kind:?} takes {} parameter(s)", kind.arity())));
    }
    let nq = int::<Rational>(n as i64);
    let poch = |x: &Rational, k: usize| -> Rational {
        pochhammer(&CoefPoly::constant(x.clone()), k as u32).as_constant().unwrap_or_else(Rational::zero)
    };
    let nonzero = |v: Rational, k: usize| -> Result<Rational> {
        if v.is_zero() {
            return Err(DunklError::SingularDenominator(format!("Pochhammer denominator vanishes at order {k}")));
        }
        Ok(v)
    };
    let mut out = vec![Rational::zero(); kmax + 1];
    out[0] = Rational::one();
    match kind {
        Kind::A => {
            let theta = &params[0];
            let c = exp_series(a, theta, kmax);
            for k in 1..=kmax {
                out[k] = c[k].clone() / nonzero(poch(&(theta.clone() * nq.clone()), k), k)?;
            }
        }
        Kind::BC | Kind::D => {
            let (t0, t1) = match kind {
                Kind::BC => (params[0].clone(), params[1].clone()),
                _ => (params[0].clone(), Rational::zero()),
            };
            let sq: Vec<Rational> = a.iter().map(|v| v.clone() * v.clone()).collect();
            let c = exp_series(&sq, &t0, kmax / 2);
            let half = Rational::new(1.into(), 2.into());
            let shift = t1 + (nq.clone() - Rational::one()) * t0.clone() + half;
            for k in 1..=kmax / 2 {
                let den =
                    num_traits::pow(int::<Rational>(4), k) * poch(&shift, k) * poch(&(t0.clone() * nq.clone()), k);
                out[2 * k] = c[k].clone() / nonzero(den, k)?;
            }
        }
    }
    Ok(out)
}
