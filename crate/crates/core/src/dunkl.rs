//! Dunkl operators for `A^{N-1}(θ)`, `BC^N(θ₀,θ₁)` and `D^N(θ)`, the Dunkl
//! bilinear form `[f,g] = [1] f(D_1..D_N) g`, and Gram matrices on the
//! canonical symmetric bases.

use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{DunklError, Result};
use crate::partitions::{e_poly, enumerate, power_sum, Partition, PartitionClass};
use crate::polyops::{kernel, CoefPoly, Mono, MultiPoly, ParamRing, MAX_VARS};
use crate::scalar::{factorial, from_bigint, int, Scalar};

/// Root-system family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    A,
    BC,
    D,
}

impl Kind {
    pub fn ring(self) -> ParamRing {
        match self {
            Kind::A | Kind::D => ParamRing::Theta,
            Kind::BC => ParamRing::Theta01,
        }
    }

    /// Number of multiplicity parameters.
    pub fn arity(self) -> usize {
        self.ring().arity()
    }

    /// Invariant polynomials of this family use only even parts.
    pub fn even_only(self) -> bool {
        !matches!(self, Kind::A)
    }
}

impl std::str::FromStr for Kind {
    type Err = DunklError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Kind::A),
            "BC" | "B" | "C" => Ok(Kind::BC),
            "D" => Ok(Kind::D),
            _ => Err(DunklError::PreconditionViolated(format!("unknown kind {s:?}"))),
        }
    }
}

/// Multiplicity parameters: indeterminates or fixed values (`θ` or `θ₀, θ₁`).
#[derive(Clone, Debug, PartialEq)]
pub enum Params<S> {
    Symbolic,
    Numeric(Vec<S>),
}

/// Operator family, number of variables and multiplicities.
#[derive(Clone, Debug)]
pub struct DunklContext<S> {
    pub kind: Kind,
    pub n: usize,
    pub params: Params<S>,
}

impl<S: Scalar> DunklContext<S> {
    pub fn symbolic(kind: Kind, n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(DunklContext { kind, n, params: Params::Symbolic })
    }

    pub fn numeric(kind: Kind, n: usize, values: Vec<S>) -> Result<Self> {
        check_n(n)?;
        if values.len() != kind.arity() {
            return Err(DunklError::PreconditionViolated(format!(
                "{kind:?} takes {} parameter value(s), got {}",
                kind.arity(),
                values.len()
            )));
        }
        Ok(DunklContext { kind, n, params: Params::Numeric(values) })
    }

    /// Coefficient ring of results.
    pub fn ring(&self) -> ParamRing {
        match self.params {
            Params::Symbolic => self.kind.ring(),
            Params::Numeric(_) => ParamRing::Plain,
        }
    }

    /// Same family and parameters with a different number of variables.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(DunklContext { kind: self.kind, n, params: self.params.clone() })
    }

    /// Parameter description for error messages.
    pub fn describe_params(&self) -> String {
        match &self.params {
            Params::Symbolic => "symbolic".into(),
            Params::Numeric(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        }
    }

    fn check_poly(&self, f: &MultiPoly<S>) -> Result<()> {
        if f.n() != self.n {
            return Err(DunklError::RingMismatch(format!(
                "polynomial in {} variables, context has N={}",
                f.n(),
                self.n
            )));
        }
        self.ring().join(f.ring()).map(|_| ())
    }

    /// `D_i f` with a 0-based index; no validation.
    fn apply_raw(&self, i: usize, f: &MultiPoly<S>) -> MultiPoly<S> {
        let ring = self.ring().join(f.ring()).expect("checked ring");
        let mut out: FxHashMap<Mono, S> = FxHashMap::default();
        out.reserve(f.len() * 2);
        let push = |out: &mut FxHashMap<Mono, S>, k: Mono, v: S| {
            if v.is_zero() {
                return;
            }
            match out.get_mut(&k) {
                Some(c) => *c += v,
                None => {
                    out.insert(k, v);
                }
            }
        };
        let numeric = match &self.params {
            Params::Numeric(v) => Some(v.as_slice()),
            Params::Symbolic => None,
        };
        let plus = matches!(self.kind, Kind::BC | Kind::D);
        for (m, c) in f.terms() {
            kernel::partial(m, i, |k, w| push(&mut out, k, c.clone() * int::<S>(w)));
            // switch terms carry parameter slot 0, the sign-flip term slot 1
            let (c0, nc0) = match numeric {
                Some(v) => {
                    let t = c.clone() * v[0].clone();
                    (t.clone(), -t)
                }
                None => (c.clone(), -c.clone()),
            };
            let emit0 = |out: &mut FxHashMap<Mono, S>, mut k: Mono, w: i64| {
                if numeric.is_none() {
                    k.p[0] += 1;
                }
                let v = match w {
                    1 => c0.clone(),
                    -1 => nc0.clone(),
                    _ => c0.clone() * int::<S>(w),
                };
                push(out, k, v);
            };
            for j in 0..self.n {
                if j == i {
                    continue;
                }
                kernel::minus(m, i, j, |k, w| emit0(&mut out, k, w));
                if plus {
                    kernel::plus(m, i, j, |k, w| emit0(&mut out, k, w));
                }
            }
            if self.kind == Kind::BC {
                kernel::tau(m, i, |mut k, w| {
                    let v = match numeric {
                        Some(vals) => c.clone() * vals[1].clone() * int::<S>(w),
                        None => {
                            k.p[1] += 1;
                            c.clone() * int::<S>(w)
                        }
                    };
                    push(&mut out, k, v);
                });
            }
        }
        MultiPoly::from_map(self.n, ring, out)
    }

    fn apply_power(&self, i: usize, m: u32, f: &MultiPoly<S>) -> MultiPoly<S> {
        let mut g = f.clone();
        for _ in 0..m {
            if g.is_zero() {
                break;
            }
            g = self.apply_raw(i, &g);
        }
        g
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(DunklError::PreconditionViolated(format!("N must lie in 1..={MAX_VARS}, got {n}")));
    }
    Ok(())
}

/// `D_i f` (1-based `i`).
pub fn dunkl_apply<S: Scalar>(ctx: &DunklContext<S>, i: usize, f: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    ctx.check_poly(f)?;
    if i == 0 || i > ctx.n {
        return Err(DunklError::IndexOutOfRange { index: i, bound: ctx.n });
    }
    Ok(ctx.apply_raw(i - 1, f))
}

type Term<S> = (Vec<u32>, CoefPoly<S>);

fn f_terms<S: Scalar>(f: &MultiPoly<S>) -> Vec<Term<S>> {
    f.grouped()
}

fn poly_apply_rec<S: Scalar>(
    ctx: &DunklContext<S>,
    order: &[usize],
    depth: usize,
    terms: Vec<Term<S>>,
    g: &MultiPoly<S>,
    out: &mut MultiPoly<S>,
) -> Result<()> {
    if depth == order.len() {
        for (_, c) in terms {
            *out = out.add(&g.scale(&c)?)?;
        }
        return Ok(());
    }
    let var = order[depth];
    let mut groups: std::collections::BTreeMap<u32, Vec<Term<S>>> = Default::default();
    for t in terms {
        groups.entry(t.0[var]).or_default().push(t);
    }
    let mut cur = g.clone();
    let mut applied = 0;
    for (a, group) in groups {
        cur = ctx.apply_power(var, a - applied, &cur);
        applied = a;
        if cur.is_zero() {
            break;
        }
        poly_apply_rec(ctx, order, depth + 1, group, &cur, out)?;
    }
    Ok(())
}

/// `f(D_1..D_N) g`, evaluating the operators of each monomial of `f` in the
/// variable order `order` (0-based, a permutation of `0..N`).
pub fn dunkl_poly_apply_ordered<S: Scalar>(
    ctx: &DunklContext<S>,
    f: &MultiPoly<S>,
    g: &MultiPoly<S>,
    order: &[usize],
) -> Result<MultiPoly<S>> {
    ctx.check_poly(f)?;
    ctx.check_poly(g)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..ctx.n).collect::<Vec<_>>() {
        return Err(DunklError::PreconditionViolated("order must permute the variables".into()));
    }
    let ring = ctx.ring().join(f.ring())?.join(g.ring())?;
    let mut out = MultiPoly::zero(ctx.n, ring);
    poly_apply_rec(ctx, order, 0, f_terms(f), &g.clone().with_ring(ring)?, &mut out)?;
    Ok(out)
}

/// `f(D_1..D_N) g` with monomials of `f` evaluated from `D_1` upward.
pub fn dunkl_poly_apply<S: Scalar>(ctx: &DunklContext<S>, f: &MultiPoly<S>, g: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    let order: Vec<usize> = (0..ctx.n).collect();
    dunkl_poly_apply_ordered(ctx, f, g, &order)
}

/// `[f, g] = [1] f(D) g`.
pub fn bilinear<S: Scalar>(ctx: &DunklContext<S>, f: &MultiPoly<S>, g: &MultiPoly<S>) -> Result<CoefPoly<S>> {
    Ok(dunkl_poly_apply(ctx, f, g)?.constant_term())
}

/// `Σ_j D_j^m g`, the operator attached to `p_(m)`.
pub fn apply_power_sum_part<S: Scalar>(ctx: &DunklContext<S>, m: u32, g: &MultiPoly<S>) -> MultiPoly<S> {
    let parts: Vec<MultiPoly<S>> = (0..ctx.n).into_par_iter().map(|j| ctx.apply_power(j, m, g)).collect();
    let ring = ctx.ring().join(g.ring()).expect("checked ring");
    let mut acc: FxHashMap<Mono, S> = FxHashMap::default();
    for p in parts {
        for (k, v) in p.into_map() {
            match acc.get_mut(&k) {
                Some(c) => *c += v,
                None => {
                    acc.insert(k, v);
                }
            }
        }
    }
    MultiPoly::from_map(ctx.n, ring, acc)
}

/// `p_λ(D) g`.
pub fn apply_power_sum<S: Scalar>(ctx: &DunklContext<S>, lambda: &Partition, g: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    ctx.check_poly(g)?;
    let mut cur = g.clone();
    // smaller parts first keeps intermediate supports small
    for &m in lambda.parts().iter().rev() {
        if cur.is_zero() {
            break;
        }
        cur = apply_power_sum_part(ctx, m, &cur);
    }
    Ok(cur)
}

/// `e(D) g = D_1⋯D_N g`.
pub fn apply_e<S: Scalar>(ctx: &DunklContext<S>, g: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    ctx.check_poly(g)?;
    let mut cur = g.clone();
    for i in (0..ctx.n).rev() {
        if cur.is_zero() {
            break;
        }
        cur = ctx.apply_raw(i, &cur);
    }
    Ok(cur)
}

/// Symmetric basis element: `p_λ`, or `e·p_μ` (`μ` possibly empty).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisLabel {
    PowerSum(Partition),
    EPowerSum(Partition),
}

impl BasisLabel {
    /// The polynomial this label names.
    pub fn poly<S: Scalar>(&self, n: usize) -> MultiPoly<S> {
        match self {
            BasisLabel::PowerSum(l) => power_sum(l, n),
            BasisLabel::EPowerSum(m) => e_poly::<S>(n).mul(&power_sum(m, n)).expect("same ring"),
        }
    }

    pub fn degree(&self, n: usize) -> u32 {
        match self {
            BasisLabel::PowerSum(l) => l.size(),
            BasisLabel::EPowerSum(m) => m.size() + n as u32,
        }
    }

    /// Parses `p(2,1)`, `e` or `e*p(2)`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "e" {
            return Ok(BasisLabel::EPowerSum(Partition::empty()));
        }
        let inner = |u: &str| -> Result<Partition> {
            let body = u.strip_prefix("p(").and_then(|r| r.strip_suffix(')'));
            match body {
                Some(b) => Partition::parse(b),
                None => Err(DunklError::ShapeMismatch(format!("bad basis label {s:?}"))),
            }
        };
        match t.strip_prefix("e*") {
            Some(rest) => Ok(BasisLabel::EPowerSum(inner(rest)?)),
            None => Ok(BasisLabel::PowerSum(inner(t)?)),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = |p: &Partition| p.parts().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        match self {
            BasisLabel::PowerSum(l) => write!(f, "p({})", parts(l)),
            BasisLabel::EPowerSum(m) if m.is_empty() => write!(f, "e"),
            BasisLabel::EPowerSum(m) => write!(f, "e*p({})", parts(m)),
        }
    }
}

impl fmt::Debug for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Which block of the invariant basis a Gram matrix covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sector {
    /// `p_λ` block.
    Even,
    /// `e·p_μ` block (type D).
    Odd,
    /// Both blocks, `p_λ` first.
    Full,
}

impl std::str::FromStr for Sector {
    type Err = DunklError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "even" => Ok(Sector::Even),
            "odd" => Ok(Sector::Odd),
            "full" => Ok(Sector::Full),
            _ => Err(DunklError::PreconditionViolated(format!("unknown sector {s:?}"))),
        }
    }
}

/// `p_λ` labels of degree `k`: parts `≤ N` for A, even parts `≤ 2N` for BC/D.
pub fn even_basis(kind: Kind, n: usize, k: u32) -> Vec<BasisLabel> {
    let class = match kind {
        Kind::A => PartitionClass::bounded(k, n as u32),
        Kind::BC | Kind::D => PartitionClass::even(k, Some(2 * n as u32)),
    };
    enumerate(class).into_iter().map(BasisLabel::PowerSum).collect()
}

/// `e·p_μ` labels of degree `k` for type D.
pub fn odd_basis(kind: Kind, n: usize, k: u32) -> Result<Vec<BasisLabel>> {
    let n32 = n as u32;
    if kind != Kind::D {
        return Err(DunklError::SectorUnavailable(format!("the e·p block exists only for type D, not {kind:?}")));
    }
    if k < n32 || !(k - n32).is_multiple_of(2) {
        return Err(DunklError::SectorUnavailable(format!("degree {k} has no e·p block at N={n}")));
    }
    let rest = k - n32;
    if rest == 0 {
        return Ok(vec![BasisLabel::EPowerSum(Partition::empty())]);
    }
    Ok(enumerate(PartitionClass::even(rest, Some(2 * n32))).into_iter().map(BasisLabel::EPowerSum).collect())
}

pub fn sector_basis(kind: Kind, n: usize, k: u32, sector: Sector) -> Result<Vec<BasisLabel>> {
    if k == 0 {
        return Err(DunklError::PreconditionViolated("degree must be positive".into()));
    }
    match sector {
        Sector::Even => Ok(even_basis(kind, n, k)),
        Sector::Odd => odd_basis(kind, n, k),
        Sector::Full => {
            let mut b = even_basis(kind, n, k);
            if let Ok(odd) = odd_basis(kind, n, k) {
                b.extend(odd);
            }
            Ok(b)
        }
    }
}

/// `[1] op(u) g` where `op(u)` is the operator of basis label `u`.
pub fn apply_label<S: Scalar>(ctx: &DunklContext<S>, u: &BasisLabel, g: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    match u {
        BasisLabel::PowerSum(l) => apply_power_sum(ctx, l, g),
        BasisLabel::EPowerSum(m) => {
            let h = apply_e(ctx, g)?;
            apply_power_sum(ctx, m, &h)
        }
    }
}

/// `[u, v]` for two basis labels.
pub fn pairing<S: Scalar>(ctx: &DunklContext<S>, u: &BasisLabel, v: &BasisLabel) -> Result<CoefPoly<S>> {
    if u.degree(ctx.n) != v.degree(ctx.n) {
        return Ok(CoefPoly::zero());
    }
    let g = v.poly::<S>(ctx.n).with_ring(ctx.ring())?;
    Ok(apply_label(ctx, u, &g)?.constant_term())
}

/// `[p_λ, p_ν]`.
pub fn pairing_pp<S: Scalar>(ctx: &DunklContext<S>, lambda: &Partition, nu: &Partition) -> Result<CoefPoly<S>> {
    pairing(ctx, &BasisLabel::PowerSum(lambda.clone()), &BasisLabel::PowerSum(nu.clone()))
}

/// `[e·p_λ, e·p_ν]`.
pub fn pairing_ep<S: Scalar>(ctx: &DunklContext<S>, lambda: &Partition, nu: &Partition) -> Result<CoefPoly<S>> {
    pairing(ctx, &BasisLabel::EPowerSum(lambda.clone()), &BasisLabel::EPowerSum(nu.clone()))
}

/// Symbolic pairing evaluated over the integers and returned over the rationals.
pub fn pairing_symbolic(kind: Kind, n: usize, u: &BasisLabel, v: &BasisLabel) -> Result<CoefPoly<crate::Rational>> {
    let ctx = DunklContext::<num_bigint::BigInt>::symbolic(kind, n)?;
    Ok(pairing(&ctx, u, v)?.map_scalar(from_bigint))
}

/// Pairing matrix on an ordered basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix<S: Scalar> {
    pub degree: u32,
    pub basis: Vec<BasisLabel>,
    pub entries: Vec<Vec<CoefPoly<S>>>,
}

impl<S: Scalar> GramMatrix<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn to_json(&self, names: &[&str]) -> Value {
        json!({
            "degree": self.degree,
            "basis": self.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|r| r.iter().map(|c| c.display_with(names)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

fn gram_on<S: Scalar>(
    ctx: &DunklContext<S>,
    k: u32,
    basis: Vec<BasisLabel>,
    both_triangles: bool,
) -> Result<GramMatrix<S>> {
    let d = basis.len();
    let pairs: Vec<(usize, usize)> =
        (0..d).flat_map(|i| (0..d).filter(move |&j| both_triangles || j >= i).map(move |j| (i, j))).collect();
    let values: Vec<Result<CoefPoly<S>>> = pairs.par_iter().map(|&(i, j)| pairing(ctx, &basis[i], &basis[j])).collect();
    let mut entries = vec![vec![CoefPoly::zero(); d]; d];
    for (&(i, j), v) in pairs.iter().zip(values) {
        let v = v?;
        if !both_triangles {
            entries[j][i] = v.clone();
        }
        entries[i][j] = v;
    }
    Ok(GramMatrix { degree: k, basis, entries })
}

/// Gram matrix of degree `k` on the requested sector (upper triangle mirrored).
pub fn gram<S: Scalar>(ctx: &DunklContext<S>, k: u32, sector: Sector) -> Result<GramMatrix<S>> {
    let basis = sector_basis(ctx.kind, ctx.n, k, sector)?;
    gram_on(ctx, k, basis, false)
}

/// Gram matrix with every entry computed independently.
pub fn gram_unmirrored<S: Scalar>(ctx: &DunklContext<S>, k: u32, sector: Sector) -> Result<GramMatrix<S>> {
    let basis = sector_basis(ctx.kind, ctx.n, k, sector)?;
    gram_on(ctx, k, basis, true)
}

/// Rank-one convention `[p_λ, p_ν] = 1{|λ|=|ν|}·|λ|!`.
pub fn degenerate_pairing<S: Scalar>(_kind: Kind, lambda: &Partition, nu: &Partition) -> CoefPoly<S> {
    if lambda.size() != nu.size() {
        return CoefPoly::zero();
    }
    CoefPoly::constant(from_bigint(&factorial(lambda.size() as u64)))
}
