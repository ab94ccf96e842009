//! Exact interpolation in `N` over parameter polynomials.
//!
//! An interpolant is a [`CoefPoly`] whose indeterminate 0 is `N` and whose
//! indeterminates `1..` are the parameters of the sampled values.

use crate::error::{DunklError, Result};
use crate::polyops::CoefPoly;
use crate::scalar::{int, Scalar};

/// `c` regarded as a polynomial in `(N, params)` times `N^a`.
pub fn lift<S: Scalar>(c: &CoefPoly<S>, a: u32) -> CoefPoly<S> {
    let mut out = CoefPoly::zero();
    for (e, v) in c.terms() {
        let mut e2 = Vec::with_capacity(e.len() + 1);
        e2.push(a);
        e2.extend_from_slice(e);
        out.add_term(e2, v.clone());
    }
    out
}

/// Coefficient of `N^a` as a parameter polynomial.
pub fn n_coefficient<S: Scalar>(p: &CoefPoly<S>, a: u32) -> CoefPoly<S> {
    let mut out = CoefPoly::zero();
    for (e, v) in p.terms() {
        if e.first().copied().unwrap_or(0) == a {
            out.add_term(e.iter().skip(1).copied().collect(), v.clone());
        }
    }
    out
}

/// Degree in `N`, `None` for the zero polynomial.
pub fn n_degree<S: Scalar>(p: &CoefPoly<S>) -> Option<u32> {
    p.terms().map(|(e, _)| e.first().copied().unwrap_or(0)).max()
}

/// Value at a concrete `N`, as a parameter polynomial.
pub fn eval_n<S: Scalar>(p: &CoefPoly<S>, n: i64) -> CoefPoly<S> {
    let mut out = CoefPoly::zero();
    for (e, v) in p.terms() {
        let a = e.first().copied().unwrap_or(0);
        let mut c = v.clone();
        for _ in 0..a {
            c *= int::<S>(n);
        }
        out.add_term(e.iter().skip(1).copied().collect(), c);
    }
    out
}

/// Fits a polynomial in `N` through all but the last `extra` samples and
/// checks that it also matches those.
pub fn interpolate_in_n<S: Scalar>(samples: &[(i64, CoefPoly<S>)], extra: usize) -> Result<CoefPoly<S>> {
    if samples.len() <= extra {
        return Err(DunklError::PreconditionViolated(format!(
            "{} sample(s) cannot leave {extra} for checking",
            samples.len()
        )));
    }
    let fit = &samples[..samples.len() - extra];
    let degree = fit.len() - 1;
    // Newton divided differences
    let xs: Vec<i64> = fit.iter().map(|s| s.0).collect();
    let mut table: Vec<CoefPoly<S>> = fit.iter().map(|s| s.1.clone()).collect();
    for level in 1..fit.len() {
        for i in (level..fit.len()).rev() {
            let dx = xs[i] - xs[i - level];
            if dx == 0 {
                return Err(DunklError::PreconditionViolated("repeated sample point".into()));
            }
            let diff = &table[i] - &table[i - 1];
            table[i] = diff.scale(&(S::one() / int::<S>(dx)));
        }
    }
    let n_var = CoefPoly::<S>::var(0);
    let mut result = CoefPoly::zero();
    for i in (0..fit.len()).rev() {
        let factor = &n_var - &CoefPoly::from_int(xs[i]);
        result = &(&result * &factor) + &lift(&table[i], 0);
    }
    for (n, v) in &samples[samples.len() - extra..] {
        if &eval_n(&result, *n) != v {
            return Err(DunklError::InterpolationInconsistent { degree });
        }
    }
    Ok(result)
}
