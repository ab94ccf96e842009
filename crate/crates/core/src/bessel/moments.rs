//! Moment/cumulant transforms over noncrossing partitions and the free
//! convolutions they induce.

use num_traits::{One, Zero};

use crate::error::{DunklError, Result};
use crate::noncross::{enumerate_nc, weight_a, weight_bc, NcFilter, NcPartition};
use crate::polyops::CoefPoly;
use crate::scalar::int;
use crate::Rational;

/// Asymptotic regime selecting partition class, weight and block factor.
#[derive(Clone, Debug, PartialEq)]
pub enum Regime {
    /// `Σ_{NC(d)} ∏ |B| c_{|B|}`.
    A,
    /// `Σ_{NC^even(d)} (1+c)^{o(π)} ∏ 2^{|B|-1}|B| c_{|B|}`.
    BC(Rational),
    /// `Σ_{NC^even(d)} ∏ 2^{|B|-1}|B| c_{|B|}`.
    D,
    /// `Σ_{NC(d)} W^A(π)(c) ∏ |B| c_{|B|}`.
    AFinite(Rational),
    /// `Σ_{NC^even(d)} W^BC(π)(2c₀, 2c₁) ∏ |B| c_{|B|}`.
    BCFinite(Rational, Rational),
}

impl Regime {
    pub fn even_only(&self) -> bool {
        !matches!(self, Regime::A | Regime::AFinite(_))
    }

    fn filter(&self) -> NcFilter {
        if self.even_only() {
            NcFilter::EvenBlocks
        } else {
            NcFilter::All
        }
    }

    fn block_factor(&self, size: usize) -> Rational {
        let s = int::<Rational>(size as i64);
        match self {
            Regime::BC(_) | Regime::D => num_traits::pow(int::<Rational>(2), size - 1) * s,
            _ => s,
        }
    }

    /// Partition weight, excluding block factors.
    pub fn weight(&self, pi: &NcPartition) -> Rational {
        let c = |v: &Rational| CoefPoly::constant(v.clone());
        let eval = |w: crate::noncross::WeightPoly, x: &Rational, y: &Rational| {
            let (num, den) = w.evaluate(&c(x), &c(y));
            num.as_constant().unwrap_or_else(Rational::zero) / den.as_constant().unwrap_or_else(Rational::one)
        };
        match self {
            Regime::A | Regime::D => Rational::one(),
            Regime::BC(cp) => num_traits::pow(Rational::one() + cp.clone(), pi.stat_o() as usize),
            Regime::AFinite(cp) => eval(weight_a(pi), cp, &Rational::zero()),
            Regime::BCFinite(c0, c1) => {
                let two = int::<Rational>(2);
                eval(weight_bc(pi), &(two.clone() * c0.clone()), &(two * c1.clone()))
            }
        }
    }

    fn partitions(&self, d: usize) -> Result<Vec<(Rational, Vec<usize>)>> {
        Ok(enumerate_nc(d as u32, self.filter())?
            .iter()
            .map(|pi| (self.weight(pi), pi.blocks().iter().map(|b| b.len()).collect()))
            .collect())
    }

    fn check_parity(&self, seq: &[Rational], what: &str) -> Result<()> {
        if self.even_only() {
            if let Some(i) = (0..seq.len()).step_by(2).find(|&i| !seq[i].is_zero()) {
                return Err(DunklError::ParityMismatch(format!("{what} of odd order {} is nonzero", i + 1)));
            }
        }
        Ok(())
    }
}

/// `m_d` for `d = 1..=c.len()`; `c[d-1]` is the cumulant of order `d`.
pub fn moments_from_cumulants(c: &[Rational], regime: &Regime) -> Result<Vec<Rational>> {
    regime.check_parity(c, "cumulant")?;
    let mut out = Vec::with_capacity(c.len());
    for d in 1..=c.len() {
        if regime.even_only() && d % 2 == 1 {
            out.push(Rational::zero());
            continue;
        }
        out.push(moment(regime, &regime.partitions(d)?, c));
    }
    Ok(out)
}

fn moment(regime: &Regime, parts: &[(Rational, Vec<usize>)], c: &[Rational]) -> Rational {
    let mut m = Rational::zero();
    for (w, sizes) in parts {
        if w.is_zero() {
            continue;
        }
        let mut t = w.clone();
        for &s in sizes {
            t *= regime.block_factor(s) * c[s - 1].clone();
            if t.is_zero() {
                break;
            }
        }
        m += t;
    }
    m
}

/// Inverse of [`moments_from_cumulants`] by forward substitution.
pub fn cumulants_from_moments(m: &[Rational], regime: &Regime) -> Result<Vec<Rational>> {
    regime.check_parity(m, "moment")?;
    let mut c = vec![Rational::zero(); m.len()];
    for d in 1..=m.len() {
        if regime.even_only() && d % 2 == 1 {
            continue;
        }
        let parts = regime.partitions(d)?;
        // c[d-1] is still zero, so only lower cumulants contribute
        let lower = moment(regime, &parts, &c);
        let single = parts
            .iter()
            .find(|(_, sizes)| sizes.len() == 1)
            .map(|(w, _)| w.clone() * regime.block_factor(d))
            .unwrap_or_else(Rational::zero);
        if single.is_zero() {
            return Err(DunklError::SingularDiagonal(d));
        }
        c[d - 1] = (m[d - 1].clone() - lower) / single;
    }
    Ok(c)
}

/// Moments of the free convolution: cumulants add.
pub fn free_convolve(ma: &[Rational], mb: &[Rational], regime: &Regime) -> Result<Vec<Rational>> {
    if ma.len() != mb.len() {
        return Err(DunklError::ShapeMismatch(format!("moment sequences of lengths {} and {}", ma.len(), mb.len())));
    }
    let ca = cumulants_from_moments(ma, regime)?;
    let cb = cumulants_from_moments(mb, regime)?;
    let sum: Vec<Rational> = ca.into_iter().zip(cb).map(|(a, b)| a + b).collect();
    moments_from_cumulants(&sum, regime)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> Rational {
        int(a)
    }

    #[test]
    fn forward_examples() {
        let t = Rational::new(3.into(), 2.into());
        let m = moments_from_cumulants(&[t.clone(), q(0), q(0)], &Regime::A).unwrap();
        assert_eq!(m, vec![t.clone(), t.clone() * t.clone(), t.clone() * t.clone() * t.clone()]);
        let s = q(5);
        let m = moments_from_cumulants(&[q(0), s.clone(), q(0), q(0)], &Regime::A).unwrap();
        assert_eq!(m, vec![q(0), q(10), q(0), q(200)]);
        let m = moments_from_cumulants(&[q(0), q(7)], &Regime::BC(q(0))).unwrap();
        assert_eq!(m, vec![q(0), q(28)]);
    }

    #[test]
    fn inverse_examples() {
        let t = q(2);
        let c = cumulants_from_moments(&[t.clone(), q(4), q(8)], &Regime::A).unwrap();
        assert_eq!(c, vec![q(2), q(0), q(0)]);
        assert_eq!(cumulants_from_moments(&vec![q(0); 4], &Regime::D).unwrap(), vec![q(0); 4]);
        let c = cumulants_from_moments(&[q(0), q(10), q(0), q(200)], &Regime::A).unwrap();
        assert_eq!(c, vec![q(0), q(5), q(0), q(0)]);
    }

    #[test]
    fn errors() {
        assert!(matches!(moments_from_cumulants(&[q(1)], &Regime::D), Err(DunklError::ParityMismatch(_))));
        assert!(matches!(
            cumulants_from_moments(&[q(0), q(1)], &Regime::BC(q(-1))),
            Err(DunklError::SingularDiagonal(2))
        ));
        assert!(matches!(
            cumulants_from_moments(&[q(1), q(1)], &Regime::AFinite(q(-1))),
            Err(DunklError::SingularDiagonal(2))
        ));
        assert!(matches!(free_convolve(&[q(1)], &[q(1), q(2)], &Regime::A), Err(DunklError::ShapeMismatch(_))));
    }

    #[test]
    fn convolution_adds_cumulants() {
        let a = moments_from_cumulants(&[q(0), q(2), q(0), q(0)], &Regime::A).unwrap();
        let b = moments_from_cumulants(&[q(0), q(3), q(0), q(0)], &Regime::A).unwrap();
        let ab = free_convolve(&a, &b, &Regime::A).unwrap();
        assert_eq!(cumulants_from_moments(&ab, &Regime::A).unwrap(), vec![q(0), q(5), q(0), q(0)]);
        assert_eq!(free_convolve(&a, &vec![q(0); 4], &Regime::A).unwrap(), a);
    }
}
