//! `eqkit`: equiangular lines, spectral radius orders and eigenvalue multiplicities.
//!
//! Exit codes: 0 success, 1 a validation or ledger check failed, 2 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use eqkit::algebraic::{parse_algebraic, Angle};
use eqkit::equiangular::{
    brute_oracle, construct_lower_bound, lines_from_graph, lower_bound_size, n_alpha_formula,
    validate, LineConfig, NORM_TOL, PRODUCT_TOL,
};
use eqkit::graph::{graph6, Graph};
use eqkit::linalg::{adjacency_eigenvalues, DEFAULT_RANK_TOL};
use eqkit::multiplicity::{cluster_count, multiplicity_exact, proof_trace};
use eqkit::report::{to_json, LedgerEntry, Report, RunManifest};
use eqkit::spectral_order::{k_order, DEFAULT_KMAX, ENUM_CAP, PREFILTER_TOL};
use eqkit::suite::{run_suite, Level};
use eqkit::switching::{bounded_degree_switch, SwitchParams};

#[derive(Parser, Debug)]
#[command(
    name = "eqkit",
    version,
    about = "Equiangular lines and spectral graph computations"
)]
struct Cli {
    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the JSON report `{manifest, results, ledger}` to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[arg(long, global = true, env = "EQKIT_SEED", default_value_t = 0)]
    seed: u64,
    /// Leave wall-clock times out of reports so reruns are byte-identical.
    #[arg(long, global = true)]
    no_wall_time: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the floor(k(d-1)/(k-1))-line configuration for an angle.
    Construct {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        d: usize,
        /// Write vectors.json here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Search bound for the spectral radius order.
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: usize,
    },
    /// Check a vectors.json file against an angle.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
        rank_tol: f64,
    },
    /// Largest N <= nmax realisable in R^d, by exhaustive search over graphs.
    Oracle {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        nmax: usize,
    },
    /// Fewest vertices of a graph with spectral radius exactly lambda.
    Korder {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: usize,
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Switch a configuration so its associated graph has bounded degree.
    Switch {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        m1: Option<u64>,
        #[arg(long)]
        m2: Option<u64>,
    },
    /// Multiplicity of lambda_j (floating), or of an exact lambda.
    Mult {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        j: usize,
        #[arg(long, requires = "lambda")]
        exact: bool,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Trace the multiplicity bound for lambda_j with its inequality ledger.
    Trace {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        j: usize,
        #[arg(long, default_value_t = 1.5)]
        c: f64,
    },
    /// Run the regression suite.
    Suite {
        #[arg(long)]
        quick: bool,
    },
}

struct CliError {
    code: u8,
    error: anyhow::Error,
}

fn usage(e: impl Into<anyhow::Error>) -> CliError {
    CliError {
        code: 2,
        error: e.into(),
    }
}

fn failure(e: impl Into<anyhow::Error>) -> CliError {
    CliError {
        code: 1,
        error: e.into(),
    }
}

/// What a command produced: a report body, a human summary, and whether every check held.
struct Outcome {
    parameters: Value,
    tolerances: Value,
    results: Value,
    ledger: Vec<LedgerEntry>,
    summary: String,
    ok: bool,
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn angle(text: &str) -> Result<Angle, CliError> {
    Angle::parse(text).map_err(|e| usage(anyhow!("--alpha {text:?}: {e}")))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(usage)
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(failure)
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read(path)?;
    let graphs =
        graph6::decode_all(&text).map_err(|e| failure(anyhow!("{}: {e}", path.display())))?;
    graphs
        .into_iter()
        .next()
        .ok_or_else(|| failure(anyhow!("{}: no graph", path.display())))
}

fn validation_ledger(v: &eqkit::equiangular::ValidationReport) -> Vec<LedgerEntry> {
    vec![
        LedgerEntry::leq(
            "max |norm - 1|",
            v.max_norm_deviation,
            v.norm_tolerance,
            0.0,
        ),
        LedgerEntry::leq(
            "max ||<v_i, v_j>| - alpha|",
            v.max_product_deviation,
            v.product_tolerance,
            0.0,
        ),
        LedgerEntry::leq(
            "effective dimension <= d",
            v.effective_dim as f64,
            v.d as f64,
            0.0,
        ),
    ]
}

fn construct(alpha: &str, d: usize, out: Option<&Path>, kmax: usize) -> Result<Outcome, CliError> {
    let a = angle(alpha)?;
    if d < 2 {
        return Err(usage(anyhow!("--d must be at least 2")));
    }
    let korder = k_order(a.lambda(), kmax).map_err(usage)?;
    let formula = n_alpha_formula(d, &korder);
    let config = match (&korder.k, &korder.witness) {
        (&Some(k), Some(h)) if k >= 2 && d >= k => {
            construct_lower_bound(h, k, d, &a, DEFAULT_RANK_TOL).map_err(failure)?
        }
        _ => lines_from_graph(&Graph::empty(d), &a, DEFAULT_RANK_TOL).map_err(failure)?,
    };
    let v = validate(&config, &a, DEFAULT_RANK_TOL).map_err(failure)?;
    let mut ledger = validation_ledger(&v);
    if let Some(k) = korder.k.filter(|&k| k >= 2 && d >= k) {
        ledger.push(LedgerEntry::exact_eq(
            "N = floor(k (d - 1) / (k - 1))",
            config.len() as f64,
            lower_bound_size(k, d) as f64,
        ));
    }
    if let Some(path) = out {
        write(path, &config.to_json())?;
    }
    let ok = v.valid && ledger.iter().all(|e| e.holds);
    let summary = format!(
        "{} lines in R^{d} at alpha = {alpha}; k = {}; N_alpha(d): {}; {}",
        config.len(),
        korder.k.map_or("not found".to_string(), |k| k.to_string()),
        formula,
        if ok { "valid" } else { "INVALID" }
    );
    Ok(Outcome {
        parameters: json!({"alpha": alpha, "d": d, "kmax": kmax, "out": out.map(|p| p.display().to_string())}),
        tolerances: json!({"rank": DEFAULT_RANK_TOL, "norm": NORM_TOL, "product": PRODUCT_TOL, "prefilter": PREFILTER_TOL}),
        results: json!({
            "n_lines": config.len(),
            "d": d,
            "k": korder.k,
            "witness_graph6": korder.witness_graph6,
            "n_alpha": value(&formula),
            "validation": value(&v),
        }),
        ledger,
        summary,
        ok,
    })
}

fn verify(input: &Path, alpha: &str, rank_tol: f64) -> Result<Outcome, CliError> {
    let a = angle(alpha)?;
    let text = read(input)?;
    let parameters =
        json!({"in": input.display().to_string(), "alpha": alpha, "rank_tol": rank_tol});
    let tolerances = json!({"rank": rank_tol, "norm": NORM_TOL, "product": PRODUCT_TOL});
    let config = match LineConfig::from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            return Ok(Outcome {
                parameters,
                tolerances,
                results: json!({"valid": false, "violations": [e.to_string()]}),
                ledger: vec![LedgerEntry::exact_eq("well-formed vectors file", 0.0, 1.0)],
                summary: format!("INVALID: {e}"),
                ok: false,
            })
        }
    };
    let v = validate(&config, &a, rank_tol).map_err(failure)?;
    let mut summary = format!(
        "{} vectors in R^{}, effective dimension {}, {} edges in the associated graph: {}",
        v.n,
        v.d,
        v.effective_dim,
        v.associated_graph.edge_count(),
        if v.valid { "valid" } else { "INVALID" }
    );
    for msg in &v.violations {
        summary.push_str(&format!("\n  violation: {msg}"));
    }
    Ok(Outcome {
        parameters,
        tolerances,
        results: value(&v),
        ledger: validation_ledger(&v),
        summary,
        ok: v.valid,
    })
}

fn oracle(alpha: &str, d: usize, nmax: usize) -> Result<Outcome, CliError> {
    let a = angle(alpha)?;
    let r = brute_oracle(&a, d, nmax, DEFAULT_RANK_TOL).map_err(usage)?;
    Ok(Outcome {
        parameters: json!({"alpha": alpha, "d": d, "nmax": nmax}),
        tolerances: json!({"rank": DEFAULT_RANK_TOL}),
        summary: format!(
            "largest N <= {nmax} in R^{d} at alpha = {alpha}: {} (witness {})",
            r.n_max, r.witness_graph6
        ),
        results: value(&r),
        ledger: Vec::new(),
        ok: true,
    })
}

fn korder(lambda: &str, kmax: usize, emit: Option<&Path>) -> Result<Outcome, CliError> {
    let l = parse_algebraic(lambda).map_err(|e| usage(anyhow!("--lambda {lambda:?}: {e}")))?;
    if kmax > ENUM_CAP {
        return Err(usage(anyhow!(
            "--kmax {kmax} exceeds the enumeration cap {ENUM_CAP}"
        )));
    }
    let r = k_order(&l, kmax).map_err(usage)?;
    if let Some(path) = emit {
        let cert = json!({
            "lambda": value(&r.lambda),
            "k": r.k,
            "search_bound": r.search_bound,
            "witness_graph6": r.witness_graph6,
            "certificate": value(&r.certificate),
        });
        write(path, &to_json(&cert))?;
    }
    let mut ledger = Vec::new();
    if let Some(c) = &r.certificate {
        ledger.push(LedgerEntry::exact_eq(
            "minpoly divides charpoly",
            f64::from(u8::from(c.minpoly_divides_charpoly)),
            1.0,
        ));
        ledger.push(LedgerEntry::exact_eq(
            "roots in isolating interval",
            c.roots_in_interval as f64,
            1.0,
        ));
        ledger.push(LedgerEntry::exact_eq(
            "roots above lambda",
            c.roots_above as f64,
            0.0,
        ));
    }
    let summary = match (&r.k, &r.witness_graph6) {
        (Some(k), Some(w)) => format!("k={k} witness={w}"),
        _ => format!("not found for k <= {kmax} (k(lambda) > {kmax})"),
    };
    Ok(Outcome {
        parameters: json!({"lambda": lambda, "kmax": kmax}),
        tolerances: json!({"prefilter": PREFILTER_TOL}),
        results: value(&r),
        ok: ledger.iter().all(|e| e.holds),
        ledger,
        summary,
    })
}

fn switch(
    input: &Path,
    alpha: &str,
    m1: Option<u64>,
    m2: Option<u64>,
    seed: u64,
) -> Result<Outcome, CliError> {
    let a = angle(alpha)?;
    let config = LineConfig::from_json(&read(input)?).map_err(failure)?;
    let params = match (m1, m2) {
        (None, None) => SwitchParams::defaults(&a),
        (Some(m1), None) => SwitchParams::with_m1(&a, m1).map_err(usage)?,
        (m1, Some(m2)) => {
            SwitchParams::new(&a, m1.unwrap_or(SwitchParams::defaults(&a).m1), m2).map_err(usage)?
        }
    };
    let r = bounded_degree_switch(&config, &a, params, seed).map_err(failure)?;
    let mut ledger = vec![
        LedgerEntry::leq(
            "max clique <= 1/alpha + 1",
            r.clique.max_clique as f64,
            r.clique.bound as f64,
            0.0,
        ),
        LedgerEntry::leq(
            "max degree <= D",
            r.max_degree as f64,
            params.delta_target as f64,
            0.0,
        ),
    ];
    if let Some(l) = &r.lemma {
        ledger.push(LedgerEntry::leq(
            "max degree of G[C_X(empty)] <= ceil(lambda^2)",
            l.empty_profile_max_degree as f64,
            l.degree_bound as f64,
            0.0,
        ));
        ledger.push(LedgerEntry::leq(
            "|C_X(Y)| <= M2 for nonempty proper Y",
            l.max_class_size as f64,
            l.m2 as f64,
            0.0,
        ));
    }
    let summary = format!(
        "negated {} of {} vectors; max degree {} -> {} (D = {}); max clique {} (bound {})",
        r.negated.len(),
        config.len(),
        r.max_degree_before,
        r.max_degree,
        params.delta_target,
        r.clique.max_clique,
        r.clique.bound
    );
    Ok(Outcome {
        parameters: json!({"in": input.display().to_string(), "alpha": alpha, "m1": params.m1, "m2": params.m2}),
        tolerances: json!({"norm": NORM_TOL, "product": PRODUCT_TOL}),
        results: value(&r),
        ok: ledger.iter().all(|e| e.holds),
        ledger,
        summary,
    })
}

fn mult(path: &Path, j: usize, exact: bool, lambda: Option<&str>) -> Result<Outcome, CliError> {
    let g = read_graph(path)?;
    let values = adjacency_eigenvalues(&g).map_err(failure)?;
    if j == 0 || j > values.len() {
        return Err(usage(anyhow!("--j {j} outside 1..={}", values.len())));
    }
    let tol = 1e-7 * values[0].abs().max(1.0);
    let parameters =
        json!({"graph": path.display().to_string(), "j": j, "exact": exact, "lambda": lambda});
    let (results, summary) = if let (true, Some(text)) = (exact, lambda) {
        let l = parse_algebraic(text).map_err(|e| usage(anyhow!("--lambda {text:?}: {e}")))?;
        let m = multiplicity_exact(&g, &l).map_err(failure)?;
        (
            json!({"lambda": value(&l), "multiplicity": m, "exact": true}),
            format!("multiplicity of {text}: {m} (exact)"),
        )
    } else {
        let target = match lambda {
            Some(text) => parse_algebraic(text)
                .map_err(|e| usage(anyhow!("--lambda {text:?}: {e}")))?
                .to_f64(),
            None => values[j - 1],
        };
        let m = cluster_count(&values, target, tol).map_err(failure)?;
        (
            json!({"lambda": target, "j": j, "multiplicity": m, "exact": false}),
            format!("lambda = {target:.12}: multiplicity {m} (tol {tol:e})"),
        )
    };
    Ok(Outcome {
        parameters,
        tolerances: json!({"cluster": tol}),
        results,
        ledger: Vec::new(),
        summary,
        ok: true,
    })
}

fn trace(path: &Path, j: usize, c: f64) -> Result<Outcome, CliError> {
    let g = read_graph(path)?;
    let t = proof_trace(&g, j, c).map_err(failure)?;
    let mut summary = format!(
        "lambda_{j} = {:.12}; |U| = {}, |U0| = {}, |V0| = {}, |H| = {}; mult_G = {}, mult_H = {}",
        t.lambda,
        t.u.len(),
        t.u0.len(),
        t.v0.len(),
        t.h.n(),
        t.multiplicity_in_g,
        t.multiplicity_in_h
    );
    for e in &t.ledger {
        summary.push_str(&format!(
            "\n  {} {}: {} <= {}",
            if e.holds { "ok  " } else { "FAIL" },
            e.name,
            e.lhs,
            e.rhs
        ));
    }
    if let Some(a) = &t.asymptotic {
        summary.push_str(&format!(
            "\n  note (asymptotic, not asserted): {}: {} vs {}",
            a.name, a.lhs, a.rhs
        ));
    }
    Ok(Outcome {
        parameters: json!({"graph": path.display().to_string(), "j": j, "c": c}),
        tolerances: json!({"cluster": t.tolerance, "ledger": eqkit::multiplicity::LEDGER_TOL}),
        ok: t.holds(),
        ledger: t.ledger.clone(),
        results: value(&t),
        summary,
    })
}

fn suite(quick: bool, seed: u64, wall_time: bool) -> Result<Outcome, CliError> {
    let level = if quick { Level::Quick } else { Level::Full };
    let mut r = run_suite(level, seed);
    let mut summary = String::new();
    let mut ledger = Vec::new();
    for c in &mut r.criteria {
        let time = c
            .elapsed_ms
            .map(|t| format!(" ({t} ms)"))
            .unwrap_or_default();
        summary.push_str(&format!(
            "{} criterion {}: {}{time}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.name
        ));
        if let Some(e) = &c.error {
            summary.push_str(&format!("  error: {e}\n"));
        }
        for e in c.failures() {
            summary.push_str(&format!(
                "  violated: {} ({} vs {})\n",
                e.name, e.lhs, e.rhs
            ));
        }
        ledger.extend(c.ledger.iter().cloned().map(|mut e| {
            e.name = format!("criterion {}: {}", c.id, e.name);
            e
        }));
        if !wall_time {
            c.elapsed_ms = None;
        }
    }
    summary.push_str(if r.passed {
        "all criteria pass"
    } else {
        "some criteria FAIL"
    });
    Ok(Outcome {
        parameters: json!({"level": level}),
        tolerances: json!({"rank": DEFAULT_RANK_TOL, "product": eqkit::suite::PRODUCT_CHECK_TOL, "spectrum": eqkit::suite::SPECTRUM_TOL, "ledger": eqkit::multiplicity::LEDGER_TOL}),
        ok: r.passed,
        results: value(&r),
        ledger,
        summary,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Construct {
            alpha,
            d,
            out,
            kmax,
        } => construct(alpha, *d, out.as_deref(), *kmax),
        Command::Verify {
            input,
            alpha,
            rank_tol,
        } => verify(input, alpha, *rank_tol),
        Command::Oracle { alpha, d, nmax } => oracle(alpha, *d, *nmax),
        Command::Korder {
            lambda,
            kmax,
            emit_certificate,
        } => korder(lambda, *kmax, emit_certificate.as_deref()),
        Command::Switch {
            input,
            alpha,
            m1,
            m2,
        } => switch(input, alpha, *m1, *m2, cli.seed),
        Command::Mult {
            graph,
            j,
            exact,
            lambda,
        } => mult(graph, *j, *exact, lambda.as_deref()),
        Command::Trace { graph, j, c } => trace(graph, *j, *c),
        Command::Suite { quick } => suite(*quick, cli.seed, !cli.no_wall_time),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Construct { .. } => "construct",
        Command::Verify { .. } => "verify",
        Command::Oracle { .. } => "oracle",
        Command::Korder { .. } => "korder",
        Command::Switch { .. } => "switch",
        Command::Mult { .. } => "mult",
        Command::Trace { .. } => "trace",
        Command::Suite { .. } => "suite",
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(usage)?;
    }
    let start = Instant::now();
    let out = dispatch(&cli)?;
    println!("{}", out.summary);
    if let Some(path) = &cli.report {
        let mut manifest = RunManifest::new(
            command_name(&cli.command),
            out.parameters,
            cli.seed,
            out.tolerances,
        );
        if !cli.no_wall_time {
            manifest.wall_time_ms = Some(start.elapsed().as_millis() as u64);
        }
        let report = Report {
            manifest,
            results: out.results,
            ledger: out.ledger,
        };
        write(path, &report.to_json())?;
    }
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
