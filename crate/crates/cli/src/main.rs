//! `quintic`: command-line front end for the quintic-core computations.
//!
//! Exit codes: 0 on success, 1 when a computation reports an internal
//! inconsistency or an irregular result, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use quintic_core::bundles::{
    cotangent_splitting, is_balanced, normal_h0, normal_in_f_splitting, normal_splitting, smooth_along,
};
use quintic_core::cohom::{
    ideal_cohomology, is_maximal_rank, quintics_through, random_quintic_through, regularity_report, span_dimension,
    QuinticFile, QuinticForm,
};
use quintic_core::curve::{derive_seed, validate, CurveFile, RationalCurveMap, Sampler};
use quintic_core::strata::{
    dim_j, dim_k, hypersurface_family_bound, hypersurface_family_max, jd_membership, kd_membership, m0_membership,
    reducibility_verdict, run_experiment, surface_pair_dims, ExperimentConfig, Irreducibility, Property,
};
use quintic_core::{Error, PrimeField, DEFAULT_PRIME};

#[derive(Parser)]
#[command(name = "quintic", version, about = "Rational curves in P^4 and on quintic threefolds, computed exactly over Z/p")]
struct Cli {
    /// Characteristic of the working field [default: 32003].
    #[arg(long, global = true)]
    prime: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    line: bool,
    #[arg(long)]
    rnc: bool,
    #[arg(long)]
    random: bool,
    #[arg(long)]
    in_hyperplane: bool,
    #[arg(long)]
    on_quadric: bool,
    #[arg(long, value_name = "PATH")]
    curve_file: Option<PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    source: Source,
    /// Degree for the sampling selectors.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args)]
struct QuinticArgs {
    /// Quintic to use; by default a random quintic through the curve.
    #[arg(long, value_name = "PATH")]
    quintic_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// h0 and h1 of the twisted ideal sheaf.
    Cohomology {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        k: usize,
    },
    /// Maximal-rank scan over twists.
    MaxRank {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Castelnuovo-Mumford regularity.
    Regularity {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Dimension of the linear span.
    Span {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Basis of the quintics containing the curve.
    Quintics {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Base-point freeness, unramifiedness and birationality checks.
    Validate {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = quintic_core::curve::DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Splitting type of the pulled-back cotangent bundle.
    Cotangent {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Splitting type of the normal bundle in P^4.
    Normal {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Splitting type of the normal bundle in a quintic.
    NormalInF {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        quintic: QuinticArgs,
    },
    /// Whether the normal bundle in a quintic is O(-1) + O(-1).
    Balanced {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        quintic: QuinticArgs,
    },
    /// Membership test for curves in a hyperplane on no quintic surface.
    Kd {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Necessary conditions for lying on a degree-e surface in a hyperplane.
    Jd {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        e: usize,
    },
    /// Whether h1(I_C(5)) vanishes.
    M0 {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Table of stratum dimensions and reducibility verdicts.
    Dims {
        #[arg(long, default_value_t = 1)]
        d_min: u64,
        #[arg(long, default_value_t = 30)]
        d_max: u64,
    },
    /// Dimension count for the pairs (surface, quintic through it).
    SurfacePairs {
        #[arg(long)]
        e: u64,
    },
    /// Dimension count for curves on a degree-t surface in a hyperplane.
    HypersurfaceBound {
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
    },
    /// Monte Carlo experiment described by a JSON config file.
    Experiment {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
    },
    /// Writes the selected curve as a curve file.
    Sample {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Writes a random quintic through the selected curve as a quintic file.
    SampleQuintic {
        #[command(flatten)]
        curve: CurveArgs,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn field(cli: &Cli) -> CliResult<PrimeField> {
    Ok(PrimeField::new(cli.prime.unwrap_or(DEFAULT_PRIME))?)
}

fn load_curve(cli: &Cli, args: &CurveArgs) -> CliResult<RationalCurveMap> {
    let src = &args.source;
    if let Some(path) = &src.curve_file {
        let file: CurveFile = serde_json::from_str(&read_file(path)?)
            .map_err(|e| usage(format!("malformed curve file {}: {e}", path.display())))?;
        if let Some(p) = cli.prime {
            if p != file.p {
                return Err(usage(format!("--prime {p} disagrees with the curve file's p = {}", file.p)));
            }
        }
        return Ok(file.into_curve()?);
    }
    let field = field(cli)?;
    let sampler = if src.line {
        Sampler::Line
    } else if src.rnc {
        Sampler::Rnc
    } else if src.random {
        Sampler::Random
    } else if src.in_hyperplane {
        Sampler::InHyperplane
    } else {
        Sampler::OnQuadric
    };
    let d = match (sampler, args.d) {
        (Sampler::Line, d) => d.unwrap_or(1),
        (_, Some(d)) => d,
        (_, None) => return Err(usage("--d is required with this sampler")),
    };
    Ok(sampler.sample(d, field, cli.seed)?)
}

fn load_quintic(cli: &Cli, c: &RationalCurveMap, args: &QuinticArgs) -> CliResult<Option<QuinticForm>> {
    match &args.quintic_file {
        Some(path) => {
            let file: QuinticFile = serde_json::from_str(&read_file(path)?)
                .map_err(|e| usage(format!("malformed quintic file {}: {e}", path.display())))?;
            let (f_field, f) = file.into_form()?;
            if f_field != *c.field() {
                return Err(usage("the quintic and the curve are over different primes"));
            }
            Ok(Some(f))
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cli.seed, 1));
            Ok(random_quintic_through(c, &mut rng))
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct DimsRow {
    d: u64,
    dim_J2: Option<u64>,
    dim_J3: Option<u64>,
    dim_J4_bound: Option<u64>,
    dim_J4_conflicting: Option<u64>,
    /// `None` when the stratum is empty.
    dim_K: Option<u64>,
    hypersurface_t2: u64,
    hypersurface_t3: u64,
    hypersurface_t4: u64,
    verdict: Irreducibility,
    extra_component_dim_at_least: Option<u64>,
}

fn dims_row(d: u64) -> CliResult<DimsRow> {
    let j = |e| dim_j(d, e).ok().and_then(|r| r.dimension.value());
    let j4_conflicting = dim_j(d, 4).ok().and_then(|r| match r.dimension {
        quintic_core::strata::Dimension::UpperBound { conflicting, .. } => conflicting,
        _ => None,
    });
    let verdict = reducibility_verdict(d);
    Ok(DimsRow {
        d,
        dim_J2: j(2),
        dim_J3: j(3),
        dim_J4_bound: j(4),
        dim_J4_conflicting: j4_conflicting,
        dim_K: dim_k(d)?.dimension.value(),
        hypersurface_t2: hypersurface_family_bound(d, 2)?,
        hypersurface_t3: hypersurface_family_bound(d, 3)?,
        hypersurface_t4: hypersurface_family_bound(d, 4)?,
        verdict: verdict.status,
        extra_component_dim_at_least: verdict.extra_component_dim_at_least,
    })
}

fn dims_csv(rows: &[DimsRow]) -> String {
    let cell = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut out = String::from(
        "d,dim_J2,dim_J3,dim_J4_bound,dim_J4_conflicting,dim_K,hypersurface_t2,hypersurface_t3,hypersurface_t4,verdict,extra_component_dim_at_least",
    );
    for r in rows {
        let verdict = match r.verdict {
            Irreducibility::Irreducible => "irreducible",
            Irreducibility::Unknown => "unknown",
            Irreducibility::Reducible => "reducible",
        };
        out.push_str(&format!(
            "\n{},{},{},{},{},{},{},{},{},{},{}",
            r.d,
            cell(r.dim_J2),
            cell(r.dim_J3),
            cell(r.dim_J4_bound),
            cell(r.dim_J4_conflicting),
            r.dim_K.map(|x| x.to_string()).unwrap_or_else(|| "empty".into()),
            r.hypersurface_t2,
            r.hypersurface_t3,
            r.hypersurface_t4,
            verdict,
            cell(r.extra_component_dim_at_least),
        ));
    }
    out
}

/// Parses an experiment config whose `d` may be a single degree or a list,
/// reporting every offending field at once.
fn parse_experiment_config(text: &str, cli: &Cli) -> CliResult<Vec<ExperimentConfig>> {
    let value: Value = serde_json::from_str(text).map_err(|e| usage(format!("config is not valid JSON: {e}")))?;
    let Value::Object(obj) = value else {
        return Err(usage("config must be a JSON object"));
    };
    let mut problems = Vec::new();
    const KNOWN: [&str; 6] = ["sampler", "d", "property", "samples", "seed", "prime"];
    for key in obj.keys().filter(|k| !KNOWN.contains(&k.as_str())) {
        problems.push(format!("{key}: unknown field"));
    }
    let sampler: Option<Sampler> = field_value(&obj, "sampler", true, &mut problems);
    let property: Option<Property> = field_value(&obj, "property", true, &mut problems);
    let samples: Option<usize> = field_value(&obj, "samples", true, &mut problems);
    let seed: Option<u64> = field_value(&obj, "seed", false, &mut problems);
    let prime: Option<u32> = field_value(&obj, "prime", false, &mut problems);
    let degrees = match obj.get("d") {
        None => {
            problems.push("d: missing".into());
            None
        }
        Some(Value::Array(items)) if !items.is_empty() => {
            let ds: Option<Vec<usize>> = items.iter().map(|v| v.as_u64().map(|x| x as usize)).collect();
            if ds.is_none() {
                problems.push("d: every entry must be a nonnegative integer".into());
            }
            ds
        }
        Some(v) => match v.as_u64() {
            Some(x) => Some(vec![x as usize]),
            None => {
                problems.push("d: expected an integer or a nonempty list of integers".into());
                None
            }
        },
    };
    if samples == Some(0) {
        problems.push("samples: must be at least 1".into());
    }
    if degrees.as_ref().is_some_and(|ds| ds.contains(&0)) {
        problems.push("d: degrees must be at least 1".into());
    }
    if !problems.is_empty() {
        return Err(usage(format!("invalid config: {}", problems.join("; "))));
    }
    let (sampler, property, samples) = (sampler.unwrap(), property.unwrap(), samples.unwrap());
    let seed = seed.unwrap_or(cli.seed);
    let prime = prime.or(cli.prime).unwrap_or(DEFAULT_PRIME);
    Ok(degrees
        .unwrap()
        .into_iter()
        .map(|d| ExperimentConfig { sampler, d, property, samples, seed, prime })
        .collect())
}

fn field_value<T: serde::de::DeserializeOwned>(
    obj: &Map<String, Value>,
    key: &str,
    required: bool,
    problems: &mut Vec<String>,
) -> Option<T> {
    match obj.get(key) {
        None => {
            if required {
                problems.push(format!("{key}: missing"));
            }
            None
        }
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| problems.push(format!("{key}: {e}"))).ok(),
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Dims { .. }) {
        return Err(usage("--format csv is only available for dims"));
    }
    let text = match &cli.command {
        Command::Cohomology { curve, k } => to_json(&ideal_cohomology(&load_curve(cli, curve)?, *k)?),
        Command::MaxRank { curve } => to_json(&is_maximal_rank(&load_curve(cli, curve)?)?),
        Command::Regularity { curve } => to_json(&regularity_report(&load_curve(cli, curve)?)?),
        Command::Span { curve } => {
            let c = load_curve(cli, curve)?;
            to_json(&json!({ "d": c.degree(), "span": span_dimension(&c) }))
        }
        Command::Quintics { curve } => {
            let c = load_curve(cli, curve)?;
            let basis: Vec<Vec<u32>> = quintics_through(&c).iter().map(|f| f.coeffs().to_vec()).collect();
            to_json(&json!({ "d": c.degree(), "count": basis.len(), "basis": basis }))
        }
        Command::Validate { curve, trials } => to_json(&validate(&load_curve(cli, curve)?, *trials)),
        Command::Cotangent { curve } => {
            let c = load_curve(cli, curve)?;
            to_json(&json!({ "d": c.degree(), "splitting": cotangent_splitting(&c)? }))
        }
        Command::Normal { curve } => {
            let c = load_curve(cli, curve)?;
            let split = normal_splitting(&c)?;
            to_json(&json!({ "d": c.degree(), "h0": normal_h0(&c, 0)?, "splitting": split }))
        }
        Command::NormalInF { curve, quintic } => {
            let c = load_curve(cli, curve)?;
            let f = load_quintic(cli, &c, quintic)?.ok_or_else(|| usage("no quintic contains this curve"))?;
            to_json(&json!({ "d": c.degree(), "splitting": normal_in_f_splitting(&c, &f)? }))
        }
        Command::Balanced { curve, quintic } => {
            let c = load_curve(cli, curve)?;
            let f = load_quintic(cli, &c, quintic)?.ok_or_else(|| usage("no quintic contains this curve"))?;
            let smooth = smooth_along(&c, &f)?;
            let (balanced, splitting) = if smooth {
                (is_balanced(&c, &f)?, Some(normal_in_f_splitting(&c, &f)?))
            } else {
                (false, None)
            };
            to_json(&json!({ "d": c.degree(), "smooth_along": smooth, "balanced": balanced, "splitting": splitting }))
        }
        Command::Kd { curve } => to_json(&kd_membership(&load_curve(cli, curve)?)?),
        Command::Jd { curve, e } => {
            let c = load_curve(cli, curve)?;
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cli.seed, 2));
            to_json(&jd_membership(&c, *e, &mut rng)?)
        }
        Command::M0 { curve } => {
            let c = load_curve(cli, curve)?;
            to_json(&json!({ "d": c.degree(), "m0": m0_membership(&c)? }))
        }
        Command::Dims { d_min, d_max } => {
            if !(1 <= *d_min && d_min <= d_max && *d_max <= 30) {
                return Err(usage(format!("need 1 <= d_min <= d_max <= 30, got {d_min}..{d_max}")));
            }
            let rows = (*d_min..=*d_max).map(dims_row).collect::<CliResult<Vec<_>>>()?;
            match cli.format {
                Format::Json => to_json(&rows),
                Format::Csv => dims_csv(&rows),
            }
        }
        Command::SurfacePairs { e } => {
            let (h0, pairs) = surface_pair_dims(*e)?;
            to_json(&json!({ "e": e, "h0_quintics_through_surface": h0, "pair_space_dim": pairs }))
        }
        Command::HypersurfaceBound { d, t } => match (d, t) {
            (Some(d), Some(t)) => to_json(&json!({ "d": d, "t": t, "bound": hypersurface_family_bound(*d, *t)? })),
            (None, None) => {
                let (bound, d, t) = hypersurface_family_max();
                to_json(&json!({ "max": bound, "d": d, "t": t }))
            }
            _ => return Err(usage("give both --d and --t, or neither for the maximum")),
        },
        Command::Experiment { config } => {
            let configs = parse_experiment_config(&read_file(config)?, cli)?;
            let reports = configs.iter().map(run_experiment).collect::<Result<Vec<_>, _>>()?;
            for r in &reports {
                let line = format!("d={} frequency={}", r.config.d, r.frequency);
                if cli.out.is_some() {
                    println!("{line}");
                } else {
                    eprintln!("{line}");
                }
            }
            if reports.len() == 1 {
                to_json(&reports[0])
            } else {
                to_json(&reports)
            }
        }
        Command::Sample { curve } => load_curve(cli, curve)?.to_json(),
        Command::SampleQuintic { curve } => {
            let c = load_curve(cli, curve)?;
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cli.seed, 1));
            let f = random_quintic_through(&c, &mut rng).ok_or_else(|| usage("no quintic contains this curve"))?;
            to_json(&f.to_file(c.field()))
        }
    };
    emit(cli, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_finding() { 1 } else { 2 })
        }
    }
}
