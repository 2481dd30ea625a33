mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use hypell::arith::{parse_rational, Rational};
use hypell::constructions::{construct_with_d, d_for_genus, parse_delta, AlphaSource, ConstructionOptions, ConstructionRecord, CurveKind, GenericConstruction};
use hypell::etale::EtaleAlgebra;
use hypell::galois_modules::{run_check, FiniteGroup, ModuleCheck, ModulePattern};
use hypell::specialize::{sample_specializations, specialize_at, SamplingParams, SpecializedCurve};
use hypell::verify::{certify, independence_sieve, SieveOptions};
use hypell::Error;
use output::{read_json, write_json, CliError, CliResult, EXIT_INCONCLUSIVE, EXIT_OK};
use serde_json::json;

#[derive(Parser)]
#[command(name = "hypell", version, about = "Hyperelliptic curves with marked divisors of prescribed etale type")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, env = "HYPELL_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the generic construction for an algebra.
    Construct(ConstructArgs),
    /// Sample admissible specializations.
    Specialize(SpecializeArgs),
    /// Certify specialized curves (Galois group, Zarhin hypotheses, sieve).
    Verify(VerifyArgs),
    /// Run the independence sieve on genus-one specializations.
    Sieve(SieveArgs),
    /// Permutation-character checks.
    Modules(ModulesArgs),
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Construction or specialization JSON produced by an earlier step.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Algebra: `split:N` or factors separated by `;`, e.g. `x^10-2`.
    #[arg(long)]
    omega: Option<String>,
    #[arg(long, default_value_t = 1)]
    genus: usize,
    /// X1, X2 or X3.
    #[arg(long, default_value = "X1")]
    kind: String,
    /// δ per factor of Ω separated by `;` (one entry applies to all).
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Args, Clone)]
struct SamplingArgs {
    #[arg(long, default_value_t = 5)]
    count: usize,
    #[arg(long, default_value_t = 10)]
    height_bound: i64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Explicit parameters `t_1,..,t_n` instead of sampling.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Skip the symbolic computation over `Q[z]`.
    #[arg(long)]
    no_symbolic: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpecializeArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    sampling: SamplingArgs,
    /// Primes sampled for the Galois test and the sieve.
    #[arg(long, default_value_t = 200)]
    prime_budget: usize,
    /// Also run the independence sieve on genus-one curves.
    #[arg(long)]
    sieve: bool,
    #[arg(long, default_value_t = 5)]
    coeff_bound: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SieveArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[arg(long, default_value_t = 200)]
    prime_budget: usize,
    #[arg(long, default_value_t = 5)]
    coeff_bound: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ModulesArgs {
    /// `S_n`, `A_n`, `C_n`, `D_n`, `W_k` or generators like `(1,2,3);(1,2)`.
    #[arg(long)]
    group: String,
    /// perm-character, v-module, v-etale, quad-identity, submodule,
    /// rank-growth or character-table.
    #[arg(long)]
    check: String,
    /// Pattern JSON, inline or as a file path.
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> CliResult<CurveKind> {
    s.parse::<CurveKind>().map_err(CliError::Core)
}

fn build_construction(src: &SourceArgs, symbolic: bool) -> CliResult<GenericConstruction> {
    let opts = if symbolic { ConstructionOptions::default() } else { ConstructionOptions::numeric_only() };
    if let Some(path) = &src.input {
        let rec = load_record(path)?;
        return Ok(GenericConstruction::from_record(&rec, opts)?);
    }
    let desc = src.omega.as_deref().ok_or_else(|| CliError::Input("either --input or --omega is required".into()))?;
    let omega = EtaleAlgebra::parse(desc)?;
    let kind = parse_kind(&src.kind)?;
    let delta = src.delta.as_deref().map(|d| parse_delta(d, &omega)).transpose()?;
    let source = if kind == CurveKind::X1 && delta.is_none() { AlphaSource::Linear } else { AlphaSource::Quadratic };
    Ok(construct_with_d(kind, source, &omega, delta.as_deref(), d_for_genus(kind, src.genus), opts)?)
}

fn load_record(path: &Path) -> CliResult<ConstructionRecord> {
    let v = read_json(path)?;
    let rec = v.get("construction").cloned().ok_or_else(|| CliError::Input(format!("{}: no \"construction\" record", path.display())))?;
    serde_json::from_value(rec).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parameter tuples stored in a specialization file, if `path` is one.
fn stored_parameters(path: &Path) -> CliResult<Option<Vec<Vec<Rational>>>> {
    let v = read_json(path)?;
    let Some(curves) = v.get("curves").and_then(|c| c.as_array()) else { return Ok(None) };
    curves
        .iter()
        .map(|c| {
            let t = c.get("t").cloned().ok_or_else(|| CliError::Input("curve without parameters".into()))?;
            serde_json::from_value::<Vec<Rational>>(t).map_err(|e| CliError::Input(e.to_string()))
        })
        .collect::<CliResult<Vec<_>>>()
        .map(Some)
}

fn parse_t(s: &str) -> CliResult<Vec<Rational>> {
    s.split(',').map(|x| parse_rational(x.trim()).map_err(CliError::Core)).collect()
}

/// Curves from explicit `--t`, a specialization file, or the seeded sampler.
fn curves(gc: &GenericConstruction, src: &SourceArgs, s: &SamplingArgs) -> CliResult<(Vec<SpecializedCurve>, serde_json::Value)> {
    if let Some(t) = &s.t {
        return Ok((vec![specialize_at(gc, &parse_t(t)?)?], json!({"explicit": true})));
    }
    if let Some(path) = &src.input {
        if let Some(ts) = stored_parameters(path)? {
            let cs = ts.iter().map(|t| specialize_at(gc, t)).collect::<hypell::Result<Vec<_>>>()?;
            return Ok((cs, json!({"from": path.display().to_string()})));
        }
    }
    let params = SamplingParams::new(s.count, s.height_bound, s.seed);
    let cs = sample_specializations(gc, params)?;
    Ok((cs, json!({"count": s.count, "height_bound": s.height_bound, "seed": s.seed})))
}

fn cmd_construct(a: &ConstructArgs) -> CliResult<i32> {
    let gc = build_construction(&a.source, !a.no_symbolic)?;
    let rec = gc.record();
    write_json(a.out.as_deref(), &json!({"construction": rec}))?;
    eprintln!("{} construction: n = {}, d = {}, genus {}", gc.kind, gc.n, gc.d, gc.genus);
    Ok(EXIT_OK)
}

fn cmd_specialize(a: &SpecializeArgs) -> CliResult<i32> {
    let gc = build_construction(&a.source, false)?;
    let (cs, sampling) = curves(&gc, &a.source, &a.sampling)?;
    let records: Vec<_> = cs.iter().map(SpecializedCurve::record).collect();
    let mut rec = gc.record();
    rec.symbolic_note = None;
    write_json(a.out.as_deref(), &json!({"construction": rec, "sampling": sampling, "curves": records}))?;
    eprintln!("{} specializations", cs.len());
    Ok(EXIT_OK)
}

fn sieve_options(coeff_bound: i64, prime_budget: usize) -> CliResult<SieveOptions> {
    if coeff_bound < 1 || prime_budget == 0 {
        return Err(CliError::Core(Error::InvalidParameters("coefficient bound and prime budget must be positive".into())));
    }
    Ok(SieveOptions { coeff_bound: coeff_bound as u64, prime_budget, ..SieveOptions::default() })
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<i32> {
    let gc = build_construction(&a.source, false)?;
    let (cs, sampling) = curves(&gc, &a.source, &a.sampling)?;
    let opts = sieve_options(a.coeff_bound, a.prime_budget)?;
    let mut all = true;
    let mut out = Vec::new();
    for sc in &cs {
        let cert = certify(sc, a.prime_budget, a.sieve.then_some(&opts))?;
        all &= cert.conclusive();
        out.push(json!({"t": sc.t, "ell": sc.dec.ell, "genus": sc.genus(), "conclusive": cert.conclusive(), "certificate": cert}));
    }
    let mut rec = gc.record();
    rec.symbolic_note = None;
    write_json(a.out.as_deref(), &json!({"construction": rec, "sampling": sampling, "prime_budget": a.prime_budget, "curves": out}))?;
    eprintln!("{} curves, {}", cs.len(), if all { "all conclusive" } else { "some inconclusive" });
    Ok(if all { EXIT_OK } else { EXIT_INCONCLUSIVE })
}

fn cmd_sieve(a: &SieveArgs) -> CliResult<i32> {
    let gc = build_construction(&a.source, false)?;
    if gc.genus != 1 {
        return Err(CliError::Core(Error::InvalidParameters(format!("the sieve needs a genus-one construction, got genus {}", gc.genus))));
    }
    let (cs, sampling) = curves(&gc, &a.source, &a.sampling)?;
    let opts = sieve_options(a.coeff_bound, a.prime_budget)?;
    let results = cs.iter().map(|sc| independence_sieve(sc, &opts)).collect::<hypell::Result<Vec<_>>>()?;
    let all = results.iter().all(|r| r.verdict.is_conclusive());
    let out: Vec<_> = cs.iter().zip(&results).map(|(sc, r)| json!({"t": sc.t, "ell": sc.dec.ell, "sieve": r})).collect();
    write_json(a.out.as_deref(), &json!({"sampling": sampling, "coeff_bound": a.coeff_bound, "prime_budget": a.prime_budget, "curves": out}))?;
    Ok(if all { EXIT_OK } else { EXIT_INCONCLUSIVE })
}

fn cmd_modules(a: &ModulesArgs) -> CliResult<i32> {
    let g = Arc::new(FiniteGroup::parse(&a.group)?);
    let check: ModuleCheck = a.check.parse()?;
    let pattern: ModulePattern = match &a.pattern {
        None => ModulePattern::default(),
        Some(p) if p.trim_start().starts_with('{') => serde_json::from_str(p).map_err(|e| CliError::Input(format!("pattern: {e}")))?,
        Some(p) => serde_json::from_value(read_json(Path::new(p))?).map_err(|e| CliError::Input(format!("pattern: {e}")))?,
    };
    let outcome = run_check(&g, check, &pattern)?;
    write_json(a.out.as_deref(), &json!({"group": a.group, "result": outcome}))?;
    eprintln!("{}: {}", check.name(), outcome.holds);
    Ok(if outcome.partial { EXIT_INCONCLUSIVE } else { EXIT_OK })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("thread pool: {e}");
        }
    }
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Specialize(a) => cmd_specialize(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sieve(a) => cmd_sieve(a),
        Command::Modules(a) => cmd_modules(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
