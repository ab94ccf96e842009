//! Exact sparse polynomial arithmetic and the reflection / divided-difference
//! operators the Dunkl operators are assembled from.
//!
//! Indices are 1-based throughout, matching `x_1..x_N`.

pub mod coef;
pub mod multi;

pub use coef::{pochhammer, CoefPoly, Exps};
pub use multi::{Mono, MultiPoly, ParamRing, MAX_PARAMS, MAX_VARS};

use multi::check_index;

use crate::error::{DunklError, Result};
use crate::scalar::{int, Scalar};

/// Monomial kernels: each feeds `(monomial, integer weight)` pairs to `emit`.
/// Indices here are 0-based.
pub(crate) mod kernel {
    use super::Mono;

    /// Terms of `(x_i^a x_j^b − x_i^b x_j^a)/(x_i − x_j)` times the rest of `m`.
    #[inline]
    pub fn minus(m: &Mono, i: usize, j: usize, mut emit: impl FnMut(Mono, i64)) {
        let (a, b) = (m.x[i], m.x[j]);
        if a == b {
            return;
        }
        let (lo, d, sign) = if a > b { (b, a - b, 1) } else { (a, b - a, -1) };
        // a > b: Σ_t x_i^{lo+d-1-t} x_j^{lo+t};  a < b: −Σ_t x_i^{lo+t} x_j^{lo+d-1-t}
        for t in 0..d {
            let mut k = *m;
            if sign > 0 {
                k.x[i] = lo + d - 1 - t;
                k.x[j] = lo + t;
            } else {
                k.x[i] = lo + t;
                k.x[j] = lo + d - 1 - t;
            }
            emit(k, sign);
        }
    }

    /// Terms of `(f − τ_iτ_j s_ij f)/(x_i + x_j)` for the monomial `m`.
    #[inline]
    pub fn plus(m: &Mono, i: usize, j: usize, mut emit: impl FnMut(Mono, i64)) {
        let (a, b) = (m.x[i], m.x[j]);
        if a == b {
            return;
        }
        let (lo, d) = if a > b { (b, a - b) } else { (a, b - a) };
        let base: i64 = if a > b || d % 2 == 1 { 1 } else { -1 };
        for t in 0..d {
            let mut k = *m;
            k.x[i] = lo + d - 1 - t;
            k.x[j] = lo + t;
            let s = if t % 2 == 0 { base } else { -base };
            emit(k, s);
        }
    }

    /// `(f − τ_i f)/x_i`: odd powers drop by one with weight 2, even powers vanish.
    #[inline]
    pub fn tau(m: &Mono, i: usize, mut emit: impl FnMut(Mono, i64)) {
        let a = m.x[i];
        if a % 2 == 1 {
            let mut k = *m;
            k.x[i] = a - 1;
            emit(k, 2);
        }
    }

    /// `∂_i`.
    #[inline]
    pub fn partial(m: &Mono, i: usize, mut emit: impl FnMut(Mono, i64)) {
        let a = m.x[i];
        if a > 0 {
            let mut k = *m;
            k.x[i] = a - 1;
            emit(k, a as i64);
        }
    }
}

fn map_terms<S: Scalar>(f: &MultiPoly<S>, mut op: impl FnMut(&Mono, &mut dyn FnMut(Mono, i64))) -> MultiPoly<S> {
    let mut out = MultiPoly::zero(f.n(), f.ring());
    for (m, c) in f.terms() {
        op(m, &mut |k, w| out.add_mono(k, c.clone() * int::<S>(w)));
    }
    out
}

fn check_pair(i: usize, j: usize, n: usize) -> Result<()> {
    check_index(i, n)?;
    check_index(j, n)?;
    if i == j {
        return Err(DunklError::PreconditionViolated(format!("reflection indices must differ, got {i} twice")));
    }
    Ok(())
}

/// Formal partial derivative `∂_i f`.
pub fn partial<S: Scalar>(i: usize, f: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    check_index(i, f.n())?;
    Ok(map_terms(f, |m, e| kernel::partial(m, i - 1, e)))
}

/// `s_ij f`: swaps `x_i` and `x_j`.
pub fn switch_s<S: Scalar>(i: usize, j: usize, f: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    check_pair(i, j, f.n())?;
    Ok(map_terms(f, |m, e| {
        let mut k = *m;
        k.x.swap(i - 1, j - 1);
        e(k, 1)
    }))
}

/// `τ_i f`: replaces `x_i` by `−x_i`.
pub fn flip_tau<S: Scalar>(i: usize, f: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    check_index(i, f.n())?;
    Ok(map_terms(f, |m, e| e(*m, if m.x[i - 1] % 2 == 1 { -1 } else { 1 })))
}

/// `(f − s_ij f)/(x_i − x_j)` by monomial telescoping.
pub fn divdiff_minus<S: Scalar>(i: usize, j: usize, f: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    check_pair(i, j, f.n())?;
    Ok(map_terms(f, |m, e| kernel::minus(m, i - 1, j - 1, e)))
}

/// `(f − τ_iτ_j s_ij f)/(x_i + x_j)` by alternating telescoping.
pub fn divdiff_plus<S: Scalar>(i: usize, j: usize, f: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    check_pair(i, j, f.n())?;
    Ok(map_terms(f, |m, e| kernel::plus(m, i - 1, j - 1, e)))
}

/// `(f − τ_i f)/x_i`.
pub fn divdiff_tau<S: Scalar>(i: usize, f: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    check_index(i, f.n())?;
    Ok(map_terms(f, |m, e| kernel::tau(m, i - 1, e)))
}

/// `[1]f`.
pub fn constant_term<S: Scalar>(f: &MultiPoly<S>) -> CoefPoly<S> {
    f.constant_term()
}

/// `d_i`: lowers the degree in `x_i` by one and kills `x_i`-free monomials.
pub fn degree_lower<S: Scalar>(i: usize, f: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    check_index(i, f.n())?;
    Ok(map_terms(f, |m, e| {
        if m.x[i - 1] > 0 {
            let mut k = *m;
            k.x[i - 1] -= 1;
            e(k, 1)
        }
    }))
}
