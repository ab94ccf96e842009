use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dunkl_kit::asymptotics::{default_n_range, leading, summation_check, verify_leading, Theorem};
use dunkl_kit::bessel::{
    bessel_block, cumulants_from_moments, free_convolve, moments_from_cumulants, one_var_bessel, Regime,
};
use dunkl_kit::dunkl::{gram, pairing, pairing_symbolic, BasisLabel, DunklContext, Kind, Sector};
use dunkl_kit::noncross::{enumerate_nc, NcFilter, NcPartition};
use dunkl_kit::partitions::Partition;
use dunkl_kit::scalar::{fmt_rational, parse_rational};
use dunkl_kit::{DunklError, Rational};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dunkl-kit", version, about = "Exact Dunkl-operator pairings, Gram matrices and asymptotics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    /// θ for types A and D.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    theta: Option<Rational>,
    /// θ₀ for type BC.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    theta0: Option<Rational>,
    /// θ₁ for type BC.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    theta1: Option<Rational>,
    /// Keep the parameters as indeterminates.
    #[arg(long)]
    symbolic: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    Even,
    Prime,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    A,
    Bc,
    D,
    AFinite,
    BcFinite,
}

#[derive(Args, Clone)]
struct RegimeArgs {
    #[arg(long, value_enum)]
    regime: RegimeArg,
    /// `c` of the BC and finite-A regimes.
    #[arg(long = "c-param", value_parser = rational, allow_hyphen_values = true)]
    c_param: Option<Rational>,
    /// `c₀` of the finite-BC regime.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    c0: Option<Rational>,
    /// `c₁` of the finite-BC regime.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    c1: Option<Rational>,
}

#[derive(Subcommand)]
enum Command {
    /// Bilinear form of two basis elements (`2,1`, `e` or `e*p(2)`).
    Pairing {
        #[arg(long, value_parser = kind)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = label)]
        lam: BasisLabel,
        #[arg(long, value_parser = label)]
        nu: BasisLabel,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Gram matrix of one degree and sector.
    Gram {
        #[arg(long, value_parser = kind)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        deg: u32,
        #[arg(long, value_parser = sector, default_value = "full")]
        sector: Sector,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Degree block of the Bessel-function Taylor expansion.
    Bessel {
        #[arg(long, value_parser = kind)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        deg: u32,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// One-variable Bessel coefficients `J_a(z,0,…,0)`, `N` = number of coordinates of `a`.
    Onevar {
        #[arg(long, value_parser = kind)]
        kind: Kind,
        #[arg(long, value_parser = rationals, allow_hyphen_values = true)]
        a: RationalList,
        #[arg(long)]
        kmax: usize,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Leading term predicted by a theorem.
    Leading {
        #[arg(long, value_parser = theorem)]
        thm: Theorem,
        #[arg(long, value_parser = partition)]
        lam: Partition,
        #[arg(long, value_parser = partition)]
        nu: Partition,
    },
    /// Interpolates the brute-force pairing in `N` and checks a theorem.
    Verify {
        #[arg(long, value_parser = theorem)]
        thm: Theorem,
        #[arg(long, value_parser = partition)]
        lam: Partition,
        #[arg(long, value_parser = partition)]
        nu: Partition,
        #[arg(long, requires = "nmax")]
        nmin: Option<usize>,
        #[arg(long, requires = "nmin")]
        nmax: Option<usize>,
    },
    /// Checks the summation formula at rank `N`.
    Summation {
        #[arg(long, value_parser = kind)]
        kind: Kind,
        #[arg(long, value_parser = partition)]
        lam: Partition,
        #[arg(long, value_parser = partition)]
        nu: Partition,
        #[arg(long)]
        n: usize,
    },
    /// Lists noncrossing partitions of `[k]`.
    Ncpart {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "all")]
        filter: FilterArg,
        /// Include block statistics.
        #[arg(long)]
        stats: bool,
    },
    /// Moments from cumulants, or cumulants from moments with `--moments`.
    Moments {
        #[command(flatten)]
        regime: RegimeArgs,
        #[arg(long, value_parser = rationals, allow_hyphen_values = true, conflicts_with = "moments", required_unless_present = "moments")]
        cumulants: Option<RationalList>,
        #[arg(long, value_parser = rationals, allow_hyphen_values = true)]
        moments: Option<RationalList>,
    },
    /// Moments of the free convolution of two moment sequences.
    Freeconv {
        #[command(flatten)]
        regime: RegimeArgs,
        #[arg(long, value_parser = rationals, allow_hyphen_values = true)]
        ma: RationalList,
        #[arg(long, value_parser = rationals, allow_hyphen_values = true)]
        mb: RationalList,
    },
}

#[derive(Clone)]
struct RationalList(Vec<Rational>);

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational: {s:?}"))
}

fn rationals(s: &str) -> Result<RationalList, String> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(rational).collect::<Result<_, _>>().map(RationalList)
}

fn kind(s: &str) -> Result<Kind, String> {
    s.parse().map_err(|e: DunklError| e.to_string())
}

fn sector(s: &str) -> Result<Sector, String> {
    s.parse().map_err(|e: DunklError| e.to_string())
}

fn theorem(s: &str) -> Result<Theorem, String> {
    s.parse().map_err(|e: DunklError| e.to_string())
}

fn partition(s: &str) -> Result<Partition, String> {
    Partition::parse(s).map_err(|e| e.to_string())
}

fn label(s: &str) -> Result<BasisLabel, String> {
    if s.contains('(') || s.trim() == "e" {
        BasisLabel::parse(s).map_err(|e| e.to_string())
    } else {
        partition(s).map(BasisLabel::PowerSum)
    }
}

enum Failure {
    Usage(String),
    Compute(DunklError),
}

impl From<DunklError> for Failure {
    fn from(e: DunklError) -> Self {
        Failure::Compute(e)
    }
}

type Outcome = Result<Value, Failure>;

/// Parameter values for `kind`, or `None` for symbolic mode.
fn param_values(kind: Kind, p: &ParamArgs) -> Result<Option<Vec<Rational>>, Failure> {
    let given = [&p.theta, &p.theta0, &p.theta1].iter().any(|v| v.is_some());
    if p.symbolic {
        if given {
            return Err(Failure::Usage("--symbolic conflicts with parameter values".into()));
        }
        return Ok(None);
    }
    match kind {
        Kind::A | Kind::D => {
            if p.theta0.is_some() || p.theta1.is_some() {
                return Err(Failure::Usage(format!("{kind:?} takes --theta only")));
            }
            Ok(p.theta.clone().map(|t| vec![t]))
        }
        Kind::BC => {
            if p.theta.is_some() {
                return Err(Failure::Usage("BC takes --theta0 and --theta1".into()));
            }
            match (&p.theta0, &p.theta1) {
                (Some(a), Some(b)) => Ok(Some(vec![a.clone(), b.clone()])),
                (None, None) => Ok(None),
                _ => Err(Failure::Usage("BC needs both --theta0 and --theta1".into())),
            }
        }
    }
}

fn context(kind: Kind, n: usize, p: &ParamArgs) -> Result<DunklContext<Rational>, Failure> {
    Ok(match param_values(kind, p)? {
        Some(v) => DunklContext::numeric(kind, n, v)?,
        None => DunklContext::symbolic(kind, n)?,
    })
}

fn regime(r: &RegimeArgs) -> Result<Regime, Failure> {
    let need =
        |v: &Option<Rational>, flag: &str| v.clone().ok_or_else(|| Failure::Usage(format!("this regime needs {flag}")));
    Ok(match r.regime {
        RegimeArg::A => Regime::A,
        RegimeArg::D => Regime::D,
        RegimeArg::Bc => Regime::BC(need(&r.c_param, "--c-param")?),
        RegimeArg::AFinite => Regime::AFinite(need(&r.c_param, "--c-param")?),
        RegimeArg::BcFinite => Regime::BCFinite(need(&r.c0, "--c0")?, need(&r.c1, "--c1")?),
    })
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn nc_json(p: &NcPartition, stats: bool) -> Value {
    let mut v = json!({ "blocks": p.blocks() });
    if stats {
        v["stats"] = json!({
            "shape": p.stat_shape().parts(),
            "o": p.stat_o(),
            "z": p.stat_z(),
            "f": p.stat_f(),
            "d": (p.start()..p.start() + p.k()).map(|i| p.stat_d(i).unwrap_or(0)).collect::<Vec<_>>(),
        });
    }
    v
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Pairing { kind, n, lam, nu, params } => {
            let ctx = context(kind, n, &params)?;
            let value = if ctx.params == dunkl_kit::dunkl::Params::Symbolic {
                pairing_symbolic(kind, n, &lam, &nu)?
            } else {
                pairing(&ctx, &lam, &nu)?
            };
            Ok(json!({ "value": value.display_with(kind.ring().symbols()) }))
        }
        Command::Gram { kind, n, deg, sector, params } => {
            let ctx = context(kind, n, &params)?;
            Ok(gram(&ctx, deg, sector)?.to_json(kind.ring().symbols()))
        }
        Command::Bessel { kind, n, deg, params } => {
            let ctx = context(kind, n, &params)?;
            Ok(bessel_block(&ctx, deg)?.to_json())
        }
        Command::Onevar { kind, a, kmax, params } => {
            let vals = param_values(kind, &params)?
                .ok_or_else(|| Failure::Usage("onevar needs numeric parameter values".into()))?;
            let n = a.0.len();
            Ok(json!(strings(&one_var_bessel(kind, &a.0, &vals, n, kmax)?)))
        }
        Command::Leading { thm, lam, nu } => {
            let l = leading(thm, &lam, &nu)?;
            Ok(json!({
                "theorem": thm.name(),
                "lambda": lam.parts(),
                "nu": nu.parts(),
                "leading": l.display(),
                "nPower": l.n_power,
                "paramPowers": l.param_powers,
                "prefactor": l.prefactor.map(|p| p.describe()),
                "remainder": l.remainder.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::Verify { thm, lam, nu, nmin, nmax } => {
            let range = match (nmin, nmax) {
                (Some(a), Some(b)) if a <= b => (a..=b).collect(),
                (Some(_), Some(_)) => return Err(Failure::Usage("--nmin must not exceed --nmax".into())),
                _ => default_n_range(thm, &lam, &nu),
            };
            Ok(verify_leading(thm, &lam, &nu, &range)?.to_json())
        }
        Command::Summation { kind, lam, nu, n } => Ok(summation_check(kind, &lam, &nu, n)?.to_json()),
        Command::Ncpart { k, filter, stats } => {
            let f = match filter {
                FilterArg::All => NcFilter::All,
                FilterArg::Even => NcFilter::EvenBlocks,
                FilterArg::Prime => NcFilter::Prime,
            };
            let parts = enumerate_nc(k, f)?;
            Ok(json!({
                "k": k,
                "count": parts.len(),
                "partitions": parts.iter().map(|p| nc_json(p, stats)).collect::<Vec<_>>(),
            }))
        }
        Command::Moments { regime: r, cumulants, moments } => {
            let reg = regime(&r)?;
            match (cumulants, moments) {
                (Some(c), _) => Ok(json!({ "moments": strings(&moments_from_cumulants(&c.0, &reg)?) })),
                (None, Some(m)) => Ok(json!({ "cumulants": strings(&cumulants_from_moments(&m.0, &reg)?) })),
                (None, None) => Err(Failure::Usage("give --cumulants or --moments".into())),
            }
        }
        Command::Freeconv { regime: r, ma, mb } => {
            let reg = regime(&r)?;
            Ok(json!({ "moments": strings(&free_convolve(&ma.0, &mb.0, &reg)?) }))
        }
    }
}

fn error_json(kind: &str, message: &str) -> String {
    json!({ "error": kind, "message": message }).to_string()
}

fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("DUNKL_KIT_THREADS") {
        let n: usize =
            v.trim().parse().map_err(|_| format!("DUNKL_KIT_THREADS must be a positive integer, got {v:?}"))?;
        if n == 0 {
            return Err("DUNKL_KIT_THREADS must be positive".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", error_json("UsageError", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("{}", error_json("UsageError", &msg));
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", error_json("UsageError", &msg));
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("{}", error_json(e.kind(), &e.to_string()));
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_parse() {
        assert_eq!(label("2,1").unwrap(), BasisLabel::PowerSum(Partition::parse("2,1").unwrap()));
        assert_eq!(label("e").unwrap(), BasisLabel::EPowerSum(Partition::empty()));
        assert!(label("x").is_err());
        assert!(rationals("1/2,3").is_ok());
        assert!(rational("1/0").is_err());
        assert!(rational("abc").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
