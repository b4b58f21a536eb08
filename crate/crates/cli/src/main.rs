//! `monad-forge` command-line driver.

mod config;

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use monad_forge::algebra::{MultiDegree, SpaceSpec};
use monad_forge::cohom::{kunneth, les_cohom, TwoTermResolution};
use monad_forge::fp::SAMPLING_PRIME;
use monad_forge::invariants::{
    candidate_twists, kernel_numerics, simplicity_certificate, stability_certificate_with_cap, Certificate,
    Polarization, DEFAULT_CELL_CAP,
};
use monad_forge::linmat::{RankStrategy, DEFAULT_POINT_CAP};
use monad_forge::monad::{
    build_floystad, build_monad, display_ranks, segre_dimension, verify_monad_with_cap, which_condition,
    MonadInstance, MonadSpec,
};
use monad_forge::{Error, SCHEMA};

use config::JobConfig;

const EXIT_USAGE: u8 = 2;
const EXIT_REFUTED: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "monad-forge", version, about = "Linear monads on products of projective spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a linear monad with the given ranks exists.
    Exists(JobConfig),
    /// Build a monad and print it as JSON.
    Build(JobConfig),
    /// Check BA = 0 and the fiberwise ranks of A and B.
    Verify(JobConfig),
    /// Cohomology of a line bundle or of T*.
    Cohom(JobConfig),
    /// Display ranks, degree, slope, normalization and Hoppe twists.
    Invariants(JobConfig),
    /// Stability certificate for T = ker B.
    Stability(JobConfig),
    /// Simplicity certificate for the cohomology bundle E.
    Simplicity(JobConfig),
}

impl Cmd {
    fn parts(self) -> (&'static str, JobConfig) {
        match self {
            Cmd::Exists(c) => ("exists", c),
            Cmd::Build(c) => ("build", c),
            Cmd::Verify(c) => ("verify", c),
            Cmd::Cohom(c) => ("cohom", c),
            Cmd::Invariants(c) => ("invariants", c),
            Cmd::Stability(c) => ("stability", c),
            Cmd::Simplicity(c) => ("simplicity", c),
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(Error::CapExceeded { .. }) => EXIT_INCONCLUSIVE,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

type Outcome = Result<(String, u8), CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("missing --{name}")))
}

fn load(name: &str, flags: JobConfig) -> Result<JobConfig, CliError> {
    let Some(path) = flags.config.clone() else {
        return Ok(flags);
    };
    let text = fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let file: JobConfig = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if let Some(sub) = &file.subcommand {
        if sub != name {
            return Err(usage(format!("config is for `{sub}`, not `{name}`")));
        }
    }
    Ok(flags.overlay(file))
}

fn space_of(cfg: &JobConfig) -> Result<SpaceSpec, CliError> {
    match (&cfg.space, cfg.n_top) {
        (Some(dims), _) => Ok(SpaceSpec::new(dims.clone())?),
        (None, Some(n)) => Ok(SpaceSpec::projective(n)?),
        (None, None) => Err(usage("missing --space or --N")),
    }
}

fn ones(space: &SpaceSpec) -> MultiDegree {
    MultiDegree(vec![1; space.n_factors()])
}

fn weights_of(cfg: &JobConfig, space: &SpaceSpec) -> MultiDegree {
    cfg.weights.clone().map(MultiDegree).unwrap_or_else(|| ones(space))
}

fn spec_of(cfg: &JobConfig) -> Result<MonadSpec, CliError> {
    let ranks = || -> Result<_, CliError> { Ok((need(cfg.alpha, "alpha")?, need(cfg.beta, "beta")?, need(cfg.gamma, "gamma")?)) };
    let spec = match cfg.flavor.as_deref() {
        Some("p1power") => MonadSpec::p1_power(need(cfg.m, "m")?, need(cfg.k, "k")?)?,
        Some("floystad") => {
            let (n, k) = (need(cfg.n, "n")?, need(cfg.k, "k")?);
            MonadSpec::type_i(n, 1, k, 2 * n + 2 * k, k)?
        }
        Some("type-i") => {
            let (a, b, g) = ranks()?;
            MonadSpec::type_i(need(cfg.n, "n")?, need(cfg.m, "m")?, a, b, g)?
        }
        Some("type-ii") | None => {
            let space = space_of(cfg)?;
            let w = weights_of(cfg, &space);
            let (a, b, g) = ranks()?;
            MonadSpec::type_ii(space, w, a, b, g)?
        }
        Some(other) => return Err(usage(format!("unknown flavor `{other}`"))),
    };
    Ok(spec)
}

fn instance_of(cfg: &JobConfig) -> Result<MonadInstance, CliError> {
    if let Some(path) = &cfg.input {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        return Ok(MonadInstance::from_json(&text)?);
    }
    if cfg.flavor.as_deref() == Some("floystad") {
        return Ok(build_floystad(need(cfg.n, "n")?, need(cfg.k, "k")?)?);
    }
    Ok(build_monad(&spec_of(cfg)?, cfg.seed.unwrap_or(0))?)
}

fn polarization_of(cfg: &JobConfig, space: &SpaceSpec) -> Result<Polarization, CliError> {
    let p = cfg.polarization.clone().map(MultiDegree).unwrap_or_else(|| ones(space));
    space.check_degree(&p)?;
    Ok(Polarization::new(p)?)
}

fn strategy_of(cfg: &JobConfig) -> Result<RankStrategy, CliError> {
    match (&cfg.exhaustive, cfg.samples) {
        (Some(fields), None) => Ok(RankStrategy::Exhaustive { fields: fields.clone() }),
        (None, Some(count)) => {
            let seed = cfg.seed.ok_or_else(|| usage("sampled rank checks need --seed"))?;
            Ok(RankStrategy::Sampled { count, modulus: cfg.modulus.unwrap_or(SAMPLING_PRIME), seed })
        }
        (Some(_), Some(_)) => Err(usage("give either --exhaustive or --samples, not both")),
        (None, None) => Err(usage("missing --exhaustive or --samples")),
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v).map_err(Error::from)?)
}

fn certificate_outcome(c: &Certificate) -> Outcome {
    Ok((pretty(c)?, c.verdict.exit_code() as u8))
}

fn cmd_exists(cfg: &JobConfig) -> Outcome {
    let (a, b, g) = (need(cfg.alpha, "alpha")?, need(cfg.beta, "beta")?, need(cfg.gamma, "gamma")?);
    let n = match (&cfg.space, cfg.n_top) {
        (Some(_), _) => {
            let space = space_of(cfg)?;
            let w = weights_of(cfg, &space);
            space.check_degree(&w)?;
            segre_dimension(&space, &w)?
        }
        (None, Some(n)) => n,
        (None, None) => return Err(usage("missing --N or --space")),
    };
    let cond = which_condition(a as u64, b as u64, g as u64, n as u64);
    let doc = json!({
        "schema": SCHEMA,
        "alpha": a,
        "beta": b,
        "gamma": g,
        "N": n,
        "exists": cond.is_some(),
        "condition": cond,
    });
    Ok((pretty(&doc)?, if cond.is_some() { 0 } else { EXIT_REFUTED }))
}

fn cmd_build(cfg: &JobConfig) -> Outcome {
    Ok((instance_of(cfg)?.to_json()?, 0))
}

fn cmd_verify(cfg: &JobConfig) -> Outcome {
    let inst = instance_of(cfg)?;
    let strategy = strategy_of(cfg)?;
    let c = verify_monad_with_cap(&inst, &strategy, cfg.point_cap.unwrap_or(DEFAULT_POINT_CAP))?;
    certificate_outcome(&c)
}

fn cmd_cohom(cfg: &JobConfig) -> Outcome {
    let twist = MultiDegree(cfg.twist.clone().ok_or_else(|| usage("missing --twist"))?);
    let (table, bundle) = match cfg.bundle.as_deref().unwrap_or("line") {
        "line" => {
            let space = space_of(cfg)?;
            space.check_degree(&twist)?;
            (kunneth(&space, &twist)?, "line")
        }
        "kernel-dual" => {
            let res = if cfg.input.is_some() {
                TwoTermResolution::kernel_dual_of(instance_of(cfg)?.b())?
            } else {
                let space = space_of(cfg)?;
                let w = weights_of(cfg, &space);
                TwoTermResolution::kernel_dual(&space, &w, need(cfg.beta, "beta")?, need(cfg.gamma, "gamma")?)?
            };
            (les_cohom(&res, &twist)?, "kernel-dual")
        }
        other => return Err(usage(format!("unknown bundle `{other}`"))),
    };
    let code = if table.is_exact() { 0 } else { EXIT_INCONCLUSIVE };
    let doc = json!({"schema": SCHEMA, "bundle": bundle, "twist": twist, "table": table});
    Ok((pretty(&doc)?, code))
}

fn cmd_invariants(cfg: &JobConfig) -> Outcome {
    let spec = if cfg.input.is_some() { instance_of(cfg)?.spec().clone() } else { spec_of(cfg)? };
    let pol = polarization_of(cfg, spec.space())?;
    let ranks = display_ranks(&spec)?;
    let num = kernel_numerics(&spec, &pol)?;
    let candidates = (1..num.rank)
        .map(|q| {
            let c = candidate_twists(spec.space(), &pol, &num, q)?;
            Ok(json!({"q": q, "strict": c.strict, "boundary": c.boundary}))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let doc = json!({
        "schema": SCHEMA,
        "spec": spec,
        "polarization": pol.weights(),
        "display_ranks": ranks,
        "kernel": num,
        "hoppe_twists": candidates,
    });
    Ok((pretty(&doc)?, 0))
}

fn cmd_stability(cfg: &JobConfig) -> Outcome {
    let inst = instance_of(cfg)?;
    let pol = polarization_of(cfg, inst.spec().space())?;
    let c = stability_certificate_with_cap(&inst, &pol, cfg.cell_cap.unwrap_or(DEFAULT_CELL_CAP))?;
    certificate_outcome(&c)
}

fn cmd_simplicity(cfg: &JobConfig) -> Outcome {
    let inst = instance_of(cfg)?;
    let pol = polarization_of(cfg, inst.spec().space())?;
    let stability = if cfg.with_stability {
        Some(stability_certificate_with_cap(&inst, &pol, cfg.cell_cap.unwrap_or(DEFAULT_CELL_CAP))?)
    } else {
        None
    };
    certificate_outcome(&simplicity_certificate(&inst, &pol, stability.as_ref())?)
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("MONAD_FORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| usage(format!("MONAD_FORGE_THREADS must be a positive integer, got `{v}`")))?;
    if n == 0 {
        return Err(usage("MONAD_FORGE_THREADS must be positive"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| usage(e.to_string()))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    init_threads()?;
    let (name, flags) = cli.cmd.parts();
    let cfg = load(name, flags)?;
    let (body, code) = match name {
        "exists" => cmd_exists(&cfg),
        "build" => cmd_build(&cfg),
        "verify" => cmd_verify(&cfg),
        "cohom" => cmd_cohom(&cfg),
        "invariants" => cmd_invariants(&cfg),
        "stability" => cmd_stability(&cfg),
        _ => cmd_simplicity(&cfg),
    }?;
    let body = body + "\n";
    match &cfg.out {
        Some(path) => fs::write(path, &body).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    Ok(code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
