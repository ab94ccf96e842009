use dunkl_kit::bessel::{cumulants_from_moments, free_convolve, moments_from_cumulants, Regime};
use dunkl_kit::dunkl::{bilinear, dunkl_apply, DunklContext, Kind};
use dunkl_kit::interp::interpolate_in_n;
use dunkl_kit::noncross::{catalan, count_by_shape, enumerate_nc, NcFilter};
use dunkl_kit::partitions::{enumerate, Partition, PartitionClass};
use dunkl_kit::polyops::{divdiff_minus, divdiff_plus, divdiff_tau, flip_tau, switch_s, MultiPoly, ParamRing};
use dunkl_kit::scalar::int;
use dunkl_kit::{Coef, Rational};
use proptest::prelude::*;

type P = MultiPoly<Rational>;

const N: usize = 3;

fn poly_from(terms: &[(Vec<u32>, i64)], n: usize) -> P {
    let mut p = P::zero(n, ParamRing::Plain);
    for (e, c) in terms {
        p.add_term(e, &Coef::from_int(*c));
    }
    p
}

fn poly(n: usize, max_exp: u32) -> impl Strategy<Value = P> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -5i64..=5), 0..6).prop_map(move |t| poly_from(&t, n))
}

/// Random homogeneous polynomial of total degree `d` in `n` variables.
fn homogeneous(n: usize, d: u32) -> impl Strategy<Value = P> {
    prop::collection::vec((prop::collection::vec(0..=d, n - 1), -4i64..=4), 1..5).prop_map(move |t| {
        let terms: Vec<(Vec<u32>, i64)> = t
            .into_iter()
            .filter_map(|(mut e, c)| {
                let s: u32 = e.iter().sum();
                (s <= d).then(|| {
                    e.push(d - s);
                    (e, c)
                })
            })
            .collect();
        poly_from(&terms, n)
    })
}

fn var(i: usize) -> P {
    P::var(N, ParamRing::Plain, i).unwrap()
}

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::A), Just(Kind::BC), Just(Kind::D)]
}

fn ctx(kind: Kind, n: usize, t0: Rational, t1: Rational) -> DunklContext<Rational> {
    let vals = if kind == Kind::BC { vec![t0, t1] } else { vec![t0] };
    DunklContext::numeric(kind, n, vals).unwrap()
}

fn regime() -> impl Strategy<Value = Regime> {
    // parameters away from the singular values -1 and negative integers
    let c = (1i64..=6, 1i64..=3).prop_map(|(a, b)| Rational::new(a.into(), b.into()));
    prop_oneof![
        Just(Regime::A),
        Just(Regime::D),
        c.clone().prop_map(Regime::BC),
        c.clone().prop_map(Regime::AFinite),
        (c.clone(), c).prop_map(|(a, b)| Regime::BCFinite(a, b)),
    ]
}

fn sequence(regime: &Regime, raw: Vec<Rational>) -> Vec<Rational> {
    if !regime.even_only() {
        return raw;
    }
    raw.into_iter().enumerate().map(|(i, v)| if i % 2 == 0 { int(0) } else { v }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minus_difference_times_linear_factor(f in poly(N, 5), (i, j) in (1usize..=N, 1usize..=N).prop_filter("distinct", |(a, b)| a != b)) {
        let lhs = var(i).sub(&var(j)).unwrap().mul(&divdiff_minus(i, j, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, f.sub(&switch_s(i, j, &f).unwrap()).unwrap());
    }

    #[test]
    fn plus_difference_times_linear_factor(f in poly(N, 5), (i, j) in (1usize..=N, 1usize..=N).prop_filter("distinct", |(a, b)| a != b)) {
        let reflected = flip_tau(i, &flip_tau(j, &switch_s(i, j, &f).unwrap()).unwrap()).unwrap();
        let lhs = var(i).add(&var(j)).unwrap().mul(&divdiff_plus(i, j, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, f.sub(&reflected).unwrap());
    }

    #[test]
    fn tau_difference_times_variable(f in poly(N, 5), i in 1usize..=N) {
        let lhs = var(i).mul(&divdiff_tau(i, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, f.sub(&flip_tau(i, &f).unwrap()).unwrap());
    }

    #[test]
    fn dunkl_operators_commute(f in poly(N, 4), k in kind(), t0 in rat(), t1 in rat(), i in 1usize..=N, j in 1usize..=N) {
        let c = ctx(k, N, t0, t1);
        let ij = dunkl_apply(&c, i, &dunkl_apply(&c, j, &f).unwrap()).unwrap();
        let ji = dunkl_apply(&c, j, &dunkl_apply(&c, i, &f).unwrap()).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn bilinear_form_is_symmetric((f, g) in (1u32..=4).prop_flat_map(|d| (homogeneous(N, d), homogeneous(N, d))), k in kind(), t0 in rat(), t1 in rat()) {
        let c = ctx(k, N, t0, t1);
        prop_assert_eq!(bilinear(&c, &f, &g).unwrap(), bilinear(&c, &g, &f).unwrap());
    }

    #[test]
    fn moment_cumulant_round_trip(reg in regime(), raw in prop::collection::vec(rat(), 1..=8)) {
        let c = sequence(&reg, raw);
        let m = moments_from_cumulants(&c, &reg).unwrap();
        prop_assert_eq!(cumulants_from_moments(&m, &reg).unwrap(), c);
    }

    #[test]
    fn free_convolution_commutes_and_associates(
        reg in regime(),
        (a, b, c) in (1usize..=6).prop_flat_map(|l| (
            prop::collection::vec(rat(), l),
            prop::collection::vec(rat(), l),
            prop::collection::vec(rat(), l),
        )),
    ) {
        let [a, b, c] = [a, b, c].map(|v| sequence(&reg, v));
        let ab = free_convolve(&a, &b, &reg).unwrap();
        prop_assert_eq!(&ab, &free_convolve(&b, &a, &reg).unwrap());
        let left = free_convolve(&ab, &c, &reg).unwrap();
        let right = free_convolve(&a, &free_convolve(&b, &c, &reg).unwrap(), &reg).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn interpolation_recovers_polynomials(coefs in prop::collection::vec(-9i64..=9, 1..6), start in 0i64..4) {
        // p(N) = Σ c_i N^i, coefficients constant in the parameters
        let value = |n: i64| coefs.iter().rev().fold(0i64, |acc, &c| acc * n + c);
        let samples: Vec<(i64, Coef)> = (start..start + coefs.len() as i64 + 2).map(|n| (n, Coef::from_int(value(n)))).collect();
        let p = interpolate_in_n(&samples, 2).unwrap();
        for n in -3..12 {
            prop_assert_eq!(dunkl_kit::interp::eval_n(&p, n), Coef::from_int(value(n)));
        }
    }

    #[test]
    fn exact_division_inverts_multiplication(a in prop::collection::vec((prop::collection::vec(0u32..3, 2), -4i64..=4), 1..4),
                                             b in prop::collection::vec((prop::collection::vec(0u32..3, 2), -4i64..=4), 1..4)) {
        let mk = |t: &[(Vec<u32>, i64)]| {
            let mut p = Coef::zero();
            for (e, c) in t {
                p.add_term(e.clone(), int(*c));
            }
            p
        };
        let (a, b) = (mk(&a), mk(&b));
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn partition_display_round_trips(parts in prop::collection::vec(1u32..9, 1..6)) {
        let p = Partition::new(parts).unwrap();
        let text = p.parts().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        prop_assert_eq!(Partition::parse(&text).unwrap(), p);
    }
}

#[test]
fn nc_shape_counts_sum_to_catalan() {
    for k in 1..=8u32 {
        let total: usize =
            enumerate(PartitionClass::all(k)).iter().map(|s| count_by_shape(k, s, NcFilter::All).unwrap()).sum();
        assert_eq!(num_bigint::BigInt::from(total), catalan(k));
        assert_eq!(num_bigint::BigInt::from(enumerate_nc(k, NcFilter::All).unwrap().len()), catalan(k));
    }
}
