//! Command-line front end: one verb per module.
//!
//! Exit codes are part of the interface: 0 means success (or a valid
//! certificate), 1 means a verification failure, an invalid certificate,
//! or an exhausted search, always with a machine-readable reason on
//! standard output, and 2 means the invocation itself was unusable.
//! Randomised subcommands take their seed on the command line and nothing
//! from ambient entropy, so every run is reproducible from the `invocation`
//! string echoed in its output.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{emit_bounds_table, BoundConstants, SRule};
use crate::certificate::{Certificate, CertificateError};
use crate::construction::{
    build_main_colouring, build_simple_colouring, resample_until_valid, BuiltColouring,
    ConstructionKind, ResampleOutcome,
};
use crate::diagnostics::{
    bucket_weight_sum, compute_bad_pair_stats, compute_cluster_diagnostics,
    expected_collision_weight, max_bad_edges_over_sampled_cliques, Subgraph,
};
use crate::oracle::{self, OracleError};
use crate::params::{default_delta, derive_params, override_params, ConstructionParams};
use crate::ratio;
use crate::rng::{self, StreamPurpose};
use crate::verifier;
use crate::Rational;

#[derive(Parser, Debug)]
#[command(
    name = "set-ramsey",
    version,
    about = "Generate, verify, and analyse set colourings of complete graphs"
)]
pub struct Cli {
    /// Worker threads for clique search; 0 keeps the library default.
    /// Results never depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a colouring and write its certificate
    Construct(ConstructArgs),
    /// Check a certificate file against its claims
    Verify(VerifyArgs),
    /// Determine an exact small-case threshold by exhaustive search
    Oracle(OracleArgs),
    /// Emit the closed-form bound comparison table as CSV
    Bounds(BoundsArgs),
    /// Run a grid of build attempts and report per-cell statistics
    Sweep(SweepArgs),
    /// Collision and repair statistics of a single build
    Diagnose(DiagnoseArgs),
}

/// Which colouring family to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// Random seed graphs composed with random part maps, then repaired
    Main,
    /// Complete multipartite classes on k - 1 parts, never repaired
    Simple,
}

impl KindArg {
    fn label(self) -> &'static str {
        match self {
            KindArg::Main => "main",
            KindArg::Simple => "simple",
        }
    }
}

impl From<KindArg> for ConstructionKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Main => ConstructionKind::Main,
            KindArg::Simple => ConstructionKind::Simple,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct ConstructArgs {
    /// Palette size
    #[arg(long)]
    pub r: u32,
    /// Minimum colours required on every edge
    #[arg(long)]
    pub s: u32,
    /// Forbidden clique order
    #[arg(long)]
    pub k: u32,
    /// Slack parameter in (0, 1/16), as a fraction like 1/32
    #[arg(long, value_parser = parse_rational_arg)]
    pub delta: Option<Rational>,
    /// Colouring family
    #[arg(long, value_enum, default_value_t = KindArg::Main)]
    pub kind: KindArg,
    /// Master seed; attempt i uses seed + i
    #[arg(long)]
    pub seed: u64,
    /// Builds to try before reporting failure
    #[arg(long, default_value_t = 1)]
    pub attempts: u32,
    /// Override the derived seed-graph order
    #[arg(long)]
    pub m: Option<u64>,
    /// Override the derived vertex count
    #[arg(long)]
    pub n: Option<u64>,
    /// Override the derived seed-graph edge probability, e.g. 123/128
    #[arg(long, value_parser = parse_rational_arg)]
    pub p: Option<Rational>,
    /// Where to write the certificate
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Certificate file to check
    pub file: PathBuf,
    /// Check against this minimum colour count instead of the header's
    #[arg(long)]
    pub s: Option<u32>,
    /// Check against this clique order instead of the header's
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(clap::Args, Debug)]
pub struct OracleArgs {
    /// Palette size
    #[arg(long)]
    pub r: u32,
    /// Colours per edge
    #[arg(long)]
    pub s: u32,
    /// Forbidden clique order
    #[arg(long)]
    pub k: u32,
    /// Largest graph order to search before giving up
    #[arg(long, default_value_t = 12)]
    pub cap: u32,
    /// Total search-node budget across all orders
    #[arg(long, default_value_t = 200_000_000)]
    pub max_nodes: u64,
    /// Write the largest clique-free colouring found here
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
    /// Include the per-order exploration text in the output
    #[arg(long)]
    pub proof: bool,
}

#[derive(clap::Args, Debug)]
pub struct BoundsArgs {
    /// Palette sizes, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<u32>,
    /// How s follows r: fixed:<v>, minus:<d>, or minus-log2
    #[arg(long, value_parser = parse_s_rule_arg)]
    pub s_rule: SRule,
    /// Clique orders, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<u32>,
    /// Scale on the known upper exponent
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Scale on the previously best lower exponent
    #[arg(long, default_value_t = 1.0)]
    pub cprime: f64,
    /// Slack parameter of the randomised construction
    #[arg(long, default_value_t = 1.0 / 32.0)]
    pub delta: f64,
    /// Scale on the concentration lower exponent
    #[arg(long, default_value_t = 1.0)]
    pub cdelta: f64,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct SweepArgs {
    /// Palette sizes, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<u32>,
    /// How s follows r: fixed:<v>, minus:<d>, or minus-log2
    #[arg(long, value_parser = parse_s_rule_arg)]
    pub s_rule: SRule,
    /// Clique orders, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<u32>,
    /// Slack parameter, as a fraction like 1/32
    #[arg(long, value_parser = parse_rational_arg)]
    pub delta: Option<Rational>,
    /// Colouring family
    #[arg(long, value_enum, default_value_t = KindArg::Main)]
    pub kind: KindArg,
    /// Base seed; cell c, attempt i uses seed + c * attempts + i
    #[arg(long)]
    pub seed: u64,
    /// Builds per grid cell
    #[arg(long, default_value_t = 10)]
    pub attempts: u32,
    /// Override the derived seed-graph order in every cell
    #[arg(long)]
    pub m: Option<u64>,
    /// Override the derived vertex count in every cell
    #[arg(long)]
    pub n: Option<u64>,
    /// Override the derived edge probability in every cell
    #[arg(long, value_parser = parse_rational_arg)]
    pub p: Option<Rational>,
}

#[derive(clap::Args, Debug)]
pub struct DiagnoseArgs {
    /// Palette size
    #[arg(long)]
    pub r: u32,
    /// Minimum colours per edge
    #[arg(long)]
    pub s: u32,
    /// Forbidden clique order
    #[arg(long)]
    pub k: u32,
    /// Slack parameter, as a fraction like 1/32
    #[arg(long, value_parser = parse_rational_arg)]
    pub delta: Option<Rational>,
    /// Colouring family
    #[arg(long, value_enum, default_value_t = KindArg::Main)]
    pub kind: KindArg,
    /// Master seed for the build; the observation target uses a
    /// separate stream derived from the same seed
    #[arg(long)]
    pub seed: u64,
    /// Override the derived seed-graph order
    #[arg(long)]
    pub m: Option<u64>,
    /// Override the derived vertex count
    #[arg(long)]
    pub n: Option<u64>,
    /// Override the derived edge probability
    #[arg(long, value_parser = parse_rational_arg)]
    pub p: Option<Rational>,
    /// Vertices in the sampled observation subgraph
    #[arg(long)]
    pub f_vertices: u32,
    /// Edges in the sampled observation subgraph
    #[arg(long)]
    pub f_edges: u64,
    /// Also scan this many random k-vertex sets for repaired pairs
    #[arg(long, default_value_t = 0)]
    pub clique_samples: u32,
}

fn parse_rational_arg(text: &str) -> Result<Rational, String> {
    ratio::parse(text).map_err(|e| e.to_string())
}

fn parse_s_rule_arg(text: &str) -> Result<SRule, String> {
    text.parse().map_err(|e: crate::bounds::ParseSRuleError| e.to_string())
}

/// Parse the process arguments, dispatch, and return the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    run_parsed(cli)
}

fn run_parsed(cli: Cli) -> i32 {
    if cli.threads > 0 {
        match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => usage_error(&format!("cannot build a {}-thread pool: {e}", cli.threads)),
        }
    } else {
        dispatch(&cli.command)
    }
}

fn dispatch(command: &Command) -> i32 {
    match command {
        Command::Construct(a) => do_construct(a),
        Command::Verify(a) => do_verify(a),
        Command::Oracle(a) => do_oracle(a),
        Command::Bounds(a) => do_bounds(a),
        Command::Sweep(a) => do_sweep(a),
        Command::Diagnose(a) => do_diagnose(a),
    }
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    2
}

/// Failure with a machine-readable reason on standard output.
fn failure(invocation: &str, kind: &str, message: &str) -> i32 {
    let body = json!({
        "invocation": invocation,
        "outcome": "error",
        "error": { "kind": kind, "message": message },
    });
    println!("{}", serde_json::to_string_pretty(&body).expect("static shape"));
    1
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("static shape"));
}

fn resolve_params(
    r: u32,
    s: u32,
    k: u32,
    delta: Option<&Rational>,
    m: Option<u64>,
    n: Option<u64>,
    p: Option<&Rational>,
) -> Result<ConstructionParams, String> {
    let delta = delta.cloned().unwrap_or_else(default_delta);
    let base = derive_params(r, s, k, &delta).map_err(|e| e.to_string())?;
    override_params(&base, m, n, p.cloned()).map_err(|e| e.to_string())
}

fn push_overrides(
    line: &mut String,
    m: Option<u64>,
    n: Option<u64>,
    p: Option<&Rational>,
) {
    if let Some(m) = m {
        let _ = write!(line, " --m {m}");
    }
    if let Some(n) = n {
        let _ = write!(line, " --n {n}");
    }
    if let Some(p) = p {
        let _ = write!(line, " --p {}", ratio::format(p));
    }
}

fn construct_invocation(a: &ConstructArgs, delta: &Rational) -> String {
    let mut line = format!(
        "construct --r {} --s {} --k {} --delta {} --kind {} --seed {} --attempts {}",
        a.r,
        a.s,
        a.k,
        ratio::format(delta),
        a.kind.label(),
        a.seed,
        a.attempts,
    );
    push_overrides(&mut line, a.m, a.n, a.p.as_ref());
    let _ = write!(line, " --out {}", a.out.display());
    line
}

fn do_construct(a: &ConstructArgs) -> i32 {
    let delta = a.delta.clone().unwrap_or_else(default_delta);
    let invocation = construct_invocation(a, &delta);
    let params =
        match resolve_params(a.r, a.s, a.k, Some(&delta), a.m, a.n, a.p.as_ref()) {
            Ok(params) => params,
            Err(message) => return usage_error(&message),
        };
    if a.attempts == 0 {
        return usage_error("need at least one attempt");
    }
    let outcome =
        match resample_until_valid(&params, a.kind.into(), a.seed, a.attempts) {
            Ok(outcome) => outcome,
            Err(e) => return usage_error(&e.to_string()),
        };
    match outcome {
        ResampleOutcome::Exhausted { attempts, min_colour_failures, clique_failures } => {
            let body = json!({
                "invocation": invocation,
                "outcome": "exhausted",
                "attempts": attempts,
                "min_colour_failures": min_colour_failures,
                "clique_failures": clique_failures,
            });
            emit(&body);
            1
        }
        ResampleOutcome::Valid { certificate, attempts, seed } => {
            if let Err(e) = certificate.save(&a.out) {
                return failure(&invocation, "io", &e.to_string());
            }
            let body = json!({
                "invocation": invocation,
                "outcome": "valid",
                "r": certificate.r(),
                "s": certificate.s,
                "k": certificate.k,
                "n": certificate.n(),
                "m": certificate.m,
                "p": certificate.p.as_ref().map(ratio::format),
                "attempts": attempts,
                "seed": seed,
                "out": a.out.display().to_string(),
            });
            emit(&body);
            0
        }
    }
}

fn certificate_error_kind(e: &CertificateError) -> &'static str {
    match e {
        CertificateError::Io(_) => "io",
        CertificateError::VersionMismatch { .. } => "version-mismatch",
        CertificateError::Parse { .. } => "parse",
        CertificateError::ChecksumMismatch { .. } => "checksum-mismatch",
    }
}

fn do_verify(a: &VerifyArgs) -> i32 {
    let mut invocation = format!("verify {}", a.file.display());
    if let Some(s) = a.s {
        let _ = write!(invocation, " --s {s}");
    }
    if let Some(k) = a.k {
        let _ = write!(invocation, " --k {k}");
    }
    let certificate = match Certificate::load(&a.file) {
        Ok(certificate) => certificate,
        Err(e) => return failure(&invocation, certificate_error_kind(&e), &e.to_string()),
    };
    let s = a.s.unwrap_or(certificate.s);
    let k = a.k.unwrap_or(certificate.k);
    let report = verifier::verify(&certificate.colouring, s, k);
    let witness = report.witness.as_ref().map(|w| {
        json!({ "colour": w.colour_index, "vertices": w.vertices })
    });
    let violations: Vec<_> = report
        .violating_edges
        .iter()
        .take(8)
        .map(|&(u, v, count)| json!([u, v, count]))
        .collect();
    let body = json!({
        "invocation": invocation,
        "file": a.file.display().to_string(),
        "r": certificate.r(),
        "s": s,
        "k": k,
        "n": certificate.n(),
        "construction": certificate.construction.label(),
        "seed": certificate.seed,
        "valid": report.valid(),
        "min_colour_ok": report.min_colour_ok,
        "violating_edges": report.violating_edges.len(),
        "first_violations": violations,
        "clique_free": report.clique_free,
        "witness": witness,
        "elapsed_ms": report.elapsed.as_millis() as u64,
    });
    emit(&body);
    i32::from(!report.valid())
}

fn order_summaries(log: &oracle::SearchLog) -> Vec<serde_json::Value> {
    log.runs
        .iter()
        .map(|run| {
            json!({
                "order": run.order,
                "nodes": run.total_nodes,
                "admits_good_colouring": run.admits_good_colouring,
            })
        })
        .collect()
}

fn do_oracle(a: &OracleArgs) -> i32 {
    let mut invocation = format!(
        "oracle --r {} --s {} --k {} --cap {} --max-nodes {}",
        a.r, a.s, a.k, a.cap, a.max_nodes,
    );
    if let Some(path) = &a.witness_out {
        let _ = write!(invocation, " --witness-out {}", path.display());
    }
    if a.proof {
        invocation.push_str(" --proof");
    }
    let save_witness = |witness: Option<&Certificate>| -> Result<(), String> {
        match (&a.witness_out, witness) {
            (Some(path), Some(certificate)) => {
                certificate.save(path).map_err(|e| e.to_string())
            }
            (Some(_), None) => Err("no witness exists to write".to_string()),
            _ => Ok(()),
        }
    };
    match oracle::exact_ramsey(a.r, a.s, a.k, a.cap, a.max_nodes) {
        Ok(result) => {
            if let Err(message) = save_witness(result.witness.as_ref()) {
                return failure(&invocation, "io", &message);
            }
            let total_nodes: u64 = result.log.runs.iter().map(|r| r.total_nodes).sum();
            let mut body = json!({
                "invocation": invocation,
                "outcome": "determined",
                "r": result.r,
                "s": result.s,
                "k": result.k,
                "value": result.value,
                "exhaustive_upper_proof": result.exhaustive_upper_proof,
                "witness_order": result.witness.as_ref().map(Certificate::n),
                "total_nodes": total_nodes,
                "orders": order_summaries(&result.log),
            });
            if a.proof {
                body["proof"] = json!(oracle::render_proof_log(&result.log));
            }
            emit(&body);
            0
        }
        Err(OracleError::CapExceeded { cap, witness, log }) => {
            if let Err(message) = save_witness(Some(&witness)) {
                return failure(&invocation, "io", &message);
            }
            let body = json!({
                "invocation": invocation,
                "outcome": "cap-exceeded",
                "cap": cap,
                "witness_order": witness.n(),
                "orders": order_summaries(&log),
                "error": {
                    "kind": "cap-exceeded",
                    "message": format!(
                        "good colourings exist at every order up to {cap}; raise --cap",
                    ),
                },
            });
            emit(&body);
            1
        }
        Err(OracleError::NodeBudgetExceeded { nodes, at_order }) => failure(
            &invocation,
            "node-budget-exceeded",
            &format!("search passed {nodes} nodes at order {at_order}; raise --max-nodes"),
        ),
        Err(e) => usage_error(&e.to_string()),
    }
}

fn s_rule_label(rule: &SRule) -> String {
    match rule {
        SRule::Fixed(v) => format!("fixed:{v}"),
        SRule::Minus(d) => format!("minus:{d}"),
        SRule::MinusCeilLog2 => "minus-log2".to_string(),
    }
}

fn join_u32(values: &[u32]) -> String {
    values.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn do_bounds(a: &BoundsArgs) -> i32 {
    let constants = BoundConstants {
        c: a.c,
        c_prime: a.cprime,
        delta: a.delta,
        c_delta: a.cdelta,
    };
    let written = match &a.out {
        Some(path) => File::create(path).and_then(|mut file| {
            emit_bounds_table(&a.r, &a.s_rule, &a.k, &constants, &mut file)
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit_bounds_table(&a.r, &a.s_rule, &a.k, &constants, &mut lock)
                .and_then(|rows| lock.flush().map(|()| rows))
        }
    };
    match written {
        Ok(_) => 0,
        Err(e) if e.kind() == io::ErrorKind::InvalidInput => usage_error(&e.to_string()),
        Err(e) => {
            eprintln!("error: cannot write table: {e}");
            1
        }
    }
}

fn do_sweep(a: &SweepArgs) -> i32 {
    if a.attempts == 0 {
        return usage_error("need at least one attempt per cell");
    }
    let delta = a.delta.clone().unwrap_or_else(default_delta);
    let mut invocation = format!(
        "sweep --r {} --s-rule {} --k {} --delta {} --kind {} --seed {} --attempts {}",
        join_u32(&a.r),
        s_rule_label(&a.s_rule),
        join_u32(&a.k),
        ratio::format(&delta),
        a.kind.label(),
        a.seed,
        a.attempts,
    );
    push_overrides(&mut invocation, a.m, a.n, a.p.as_ref());

    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let mut cell_index: u64 = 0;
    for &r in &a.r {
        let Some(s) = a.s_rule.s_for(r) else { continue };
        for &k in &a.k {
            let base_seed = a.seed.wrapping_add(cell_index * u64::from(a.attempts));
            cell_index += 1;
            let cell = sweep_cell(a, &invocation, &delta, r, s, k, base_seed);
            let line = serde_json::to_string(&cell).expect("static shape");
            if writeln!(lock, "{line}").is_err() {
                return 1;
            }
        }
    }
    if lock.flush().is_err() {
        return 1;
    }
    0
}

fn sweep_cell(
    a: &SweepArgs,
    invocation: &str,
    delta: &Rational,
    r: u32,
    s: u32,
    k: u32,
    base_seed: u64,
) -> serde_json::Value {
    let params =
        match resolve_params(r, s, k, Some(delta), a.m, a.n, a.p.as_ref()) {
            Ok(params) => params,
            Err(message) => {
                return json!({
                    "invocation": invocation,
                    "r": r, "s": s, "k": k,
                    "error": message,
                });
            }
        };
    let mut successes: u32 = 0;
    let mut min_colour_failures: u32 = 0;
    let mut clique_failures: u32 = 0;
    let mut first_valid_seed: Option<u64> = None;
    for attempt in 0..a.attempts {
        let seed = base_seed.wrapping_add(u64::from(attempt));
        let built = match a.kind {
            KindArg::Main => build_main_colouring(&params, seed),
            KindArg::Simple => build_simple_colouring(
                params.r,
                params.k,
                params.n.min(u64::from(u32::MAX)) as u32,
                seed,
            ),
        };
        let built = match built {
            Ok(built) => built,
            Err(e) => {
                return json!({
                    "invocation": invocation,
                    "r": r, "s": s, "k": k,
                    "error": e.to_string(),
                });
            }
        };
        if !verifier::check_min_colours(&built.colouring, params.s).is_empty() {
            min_colour_failures += 1;
        } else if verifier::find_monochromatic_clique(&built.colouring, params.k).is_some() {
            clique_failures += 1;
        } else {
            successes += 1;
            first_valid_seed.get_or_insert(seed);
        }
    }
    json!({
        "invocation": invocation,
        "r": r,
        "s": s,
        "k": k,
        "n": params.n,
        "m": (a.kind == KindArg::Main).then_some(params.m),
        "p": (a.kind == KindArg::Main).then(|| ratio::format(&params.p)),
        "kind": a.kind.label(),
        "base_seed": base_seed,
        "attempts": a.attempts,
        "successes": successes,
        "min_colour_failures": min_colour_failures,
        "clique_failures": clique_failures,
        "first_valid_seed": first_valid_seed,
    })
}

fn do_diagnose(a: &DiagnoseArgs) -> i32 {
    let delta = a.delta.clone().unwrap_or_else(default_delta);
    let mut invocation = format!(
        "diagnose --r {} --s {} --k {} --delta {} --kind {} --seed {}",
        a.r,
        a.s,
        a.k,
        ratio::format(&delta),
        a.kind.label(),
        a.seed,
    );
    push_overrides(&mut invocation, a.m, a.n, a.p.as_ref());
    let _ = write!(
        invocation,
        " --f-vertices {} --f-edges {} --clique-samples {}",
        a.f_vertices, a.f_edges, a.clique_samples,
    );

    let params =
        match resolve_params(a.r, a.s, a.k, Some(&delta), a.m, a.n, a.p.as_ref()) {
            Ok(params) => params,
            Err(message) => return usage_error(&message),
        };
    let n = params.n.min(u64::from(u32::MAX)) as u32;
    let built: BuiltColouring = match match a.kind {
        KindArg::Main => build_main_colouring(&params, a.seed),
        KindArg::Simple => build_simple_colouring(params.r, params.k, n, a.seed),
    } {
        Ok(built) => built,
        Err(e) => return usage_error(&e.to_string()),
    };

    // The observation target comes from a stream the build never touches:
    // colour slot 1 of the sampling purpose (slot 0 feeds clique scans).
    let mut target_rng = rng::stream(a.seed, 1, StreamPurpose::Sampling);
    let target = match Subgraph::sample(&mut target_rng, n, a.f_vertices, a.f_edges) {
        Ok(target) => target,
        Err(e) => return usage_error(&e.to_string()),
    };

    let diag = compute_cluster_diagnostics(
        &target,
        &built.artifacts.partitions,
        &params.delta,
        &params.eps,
    );
    let part_count = built.artifacts.partitions[0].part_count();
    let expected_weight =
        expected_collision_weight(&target, part_count, built.artifacts.r());
    let pairs = compute_bad_pair_stats(&target, &built);
    let expected_absent = match a.kind {
        KindArg::Main => {
            (1.0 - ratio::to_f64(&params.p)) * pairs.collision_free_pairs as f64
        }
        KindArg::Simple => 0.0,
    };
    let weight_sum = bucket_weight_sum(&diag);
    let weight_bound = ratio::from_frac(2, 1)
        * Rational::from_integer(target.edge_count().into())
        / Rational::from_integer(u64::from(target.vertex_count()).into());
    let max_bad = (a.clique_samples > 0 && params.k <= n).then(|| {
        max_bad_edges_over_sampled_cliques(&built, params.k, a.clique_samples, a.seed)
    });

    let body = json!({
        "invocation": invocation,
        "r": params.r,
        "s": params.s,
        "k": params.k,
        "n": n,
        "m": (a.kind == KindArg::Main).then_some(params.m),
        "p": (a.kind == KindArg::Main).then(|| ratio::format(&params.p)),
        "kind": a.kind.label(),
        "seed": a.seed,
        "target": {
            "vertices": target.vertex_count(),
            "edges": target.edge_count(),
        },
        "collisions": {
            "observed_weight": diag.collision_weight,
            "expected_weight": expected_weight,
            "collided_vertex_slots": diag
                .collided_per_colour
                .iter()
                .map(Vec::len)
                .sum::<usize>(),
        },
        "buckets": {
            "sizes": diag.degree_buckets.iter().map(Vec::len).collect::<Vec<_>>(),
            "collision_counts": diag.bucket_collision_counts,
            "weight_sum": ratio::format(&weight_sum),
            "weight_bound": ratio::format(&weight_bound),
            "weight_within_bound": weight_sum <= weight_bound,
            "bottleneck_level": diag.bottleneck_level,
            "bottleneck_prefix_size": diag.bottleneck_prefix_size,
        },
        "pairs": {
            "collision_free": pairs.collision_free_pairs,
            "absent_edge": pairs.absent_edge_pairs,
            "expected_absent_edge": expected_absent,
        },
        "repaired_edges": built.repaired_edges.len(),
        "max_repaired_in_sampled_cliques": max_bad,
    });
    emit(&body);
    0
}
