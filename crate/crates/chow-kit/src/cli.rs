//! Command-line surface. Exit codes: 0 success/verified, 1 verification
//! failure or conjecture finding, 2 usage or parse error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use chow_kit::chow::{aug_chow_poly, chow_poly, poset_report, PosetReport};
use chow_kit::classical::{
    binomial_eulerian, eulerian, gamma_binomial_eulerian, gamma_eulerian, verify_decomposition,
};
use chow_kit::descent::{verify_five_conditions, verify_interlacing_diagram, DEFAULT_ENUM_BOUND};
use chow_kit::format::read_poset_file;
use chow_kit::fuzz::{random_facet_count, run_instance, FuzzRecord, GenParams};
use chow_kit::golden::{run_golden_example, GoldenCheck};
use chow_kit::poly::IntPoly;
use chow_kit::poset::{binomial, boolean_lattice};
use chow_kit::sets::SmallSet;

const EXIT_OK: u8 = 0;
const EXIT_FINDING: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "chow-kit",
    about = "Exact Chow and augmented Chow polynomials of graded posets, with certified real-rootedness and interlacing checks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a poset file: f/h-vectors, flag tables, Chow polynomials, verdicts
    Compute {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Fail unless the input (below its top) is a simplicial poset
        #[arg(long)]
        require_simplicial: bool,
    },
    /// Build and exactly verify the interlacing diagram D_n(T)
    VerifyDiagram {
        #[arg(long)]
        n: u32,
        /// T as `full` ([1,n]), `chow` ([1,n-1]), or an explicit list like `1,3`
        #[arg(long)]
        t: String,
    },
    /// Stress the conjecture on seeded random pure complexes, logging JSONL records
    Fuzz {
        #[arg(long)]
        vertices: Option<u32>,
        #[arg(long)]
        rank: Option<u32>,
        /// Facet count per instance: a number, or `random`
        #[arg(long, default_value = "random")]
        facets: String,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSONL output path (appended)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Re-run and re-assert the records in an existing JSONL file
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Recompute the running-example quantities and assert each one
    ReproduceExample,
    /// Eulerian and binomial Eulerian cross-checks for rank n
    Eulerian {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let bound = enum_bound();
    let result = match cli.command {
        Command::Compute {
            file,
            format,
            require_simplicial,
        } => cmd_compute(&file, format, require_simplicial),
        Command::VerifyDiagram { n, t } => cmd_verify_diagram(n, &t, bound),
        Command::Fuzz {
            vertices,
            rank,
            facets,
            count,
            seed,
            out,
            jobs,
            replay,
        } => cmd_fuzz(vertices, rank, &facets, count, seed, out, jobs, replay),
        Command::ReproduceExample => cmd_reproduce_example(),
        Command::Eulerian { n } => cmd_eulerian(n, bound),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn enum_bound() -> u32 {
    std::env::var("CHOWKIT_ENUM_BOUND")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_ENUM_BOUND)
}

fn poly_json(p: &IntPoly) -> serde_json::Value {
    json!({ "coeffs": p.to_coeff_string(), "pretty": p.pretty() })
}

fn cmd_compute(
    file: &std::path::Path,
    format: OutputFormat,
    require_simplicial: bool,
) -> Result<u8, Failure> {
    let poset = read_poset_file(file).map_err(usage)?;
    let violations = poset.validate();
    if !violations.is_empty() {
        return Err(usage(format!(
            "poset file fails validation: {}",
            violations.join("; ")
        )));
    }
    let report = poset_report(&poset).map_err(usage)?;
    if require_simplicial && !report.simplicial {
        return Err(usage("input is not a simplicial poset"));
    }
    let PosetReport {
        elements,
        simplicial,
        f,
        h,
        stats,
        result,
        verdicts,
    } = report;
    let pass = verdicts.conjecture_holds();

    let alpha_rows: Vec<serde_json::Value> = stats
        .alpha
        .iter()
        .map(|(t, v)| json!({ "set": t.to_string(), "value": v }))
        .collect();
    let beta_rows: Vec<serde_json::Value> = stats
        .beta
        .iter()
        .map(|(s, v)| json!({ "set": s.to_string(), "value": v }))
        .collect();

    match format {
        OutputFormat::Json => {
            let report = json!({
                "elements": elements,
                "n": result.n,
                "simplicial": simplicial,
                "f_vector": f,
                "h_vector": h,
                "flag_alpha": alpha_rows,
                "flag_beta": beta_rows,
                "chow": poly_json(&result.chow),
                "chow_dual": poly_json(&result.chow_dual),
                "aug": poly_json(&result.aug),
                "gamma_chow": poly_json(&result.gamma_chow),
                "gamma_chow_dual": poly_json(&result.gamma_chow_dual),
                "gamma_aug": poly_json(&result.gamma_aug),
                "verdicts": serde_json::to_value(&verdicts).unwrap(),
                "pass": pass,
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        OutputFormat::Text => {
            println!(
                "poset: {elements} elements with top, n = {}, simplicial: {simplicial}",
                result.n
            );
            if let (Some(f), Some(h)) = (&f, &h) {
                println!("f-vector: {}", join_i64(f));
                println!(
                    "h-vector: {} (h-positive: {})",
                    join_i64(h),
                    verdicts.h_positive
                );
            }
            let fmt_rows = |rows: &[serde_json::Value]| -> String {
                rows.iter()
                    .map(|r| format!("{}={}", r["set"].as_str().unwrap(), r["value"]))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            println!("flag alpha: {}", fmt_rows(&alpha_rows));
            println!("flag beta:  {}", fmt_rows(&beta_rows));
            for (name, p, rr) in [
                ("H     ", &result.chow, verdicts.real_rooted_chow),
                ("H_dual", &result.chow_dual, verdicts.real_rooted_chow_dual),
                ("H_aug ", &result.aug, verdicts.real_rooted_aug),
            ] {
                println!(
                    "{name} = {:<14} ({})  real-rooted: {rr}",
                    p.to_coeff_string(),
                    p.pretty()
                );
            }
            println!(
                "gamma: H -> {}; H_dual -> {}; H_aug -> {}",
                result.gamma_chow.to_coeff_string(),
                result.gamma_chow_dual.to_coeff_string(),
                result.gamma_aug.to_coeff_string()
            );
            println!(
                "interlacing: H_dual vs H_aug: {}; H vs H_aug: {}",
                verdicts.interlace_dual_aug, verdicts.interlace_chow_aug
            );
            println!("verdict: {}", if pass { "pass" } else { "FINDING" });
        }
    }
    Ok(if pass { EXIT_OK } else { EXIT_FINDING })
}

fn join_i64(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_t_spec(n: u32, spec: &str) -> Result<SmallSet, Failure> {
    match spec {
        "full" => Ok(SmallSet::interval(1, n)),
        "chow" => Ok(SmallSet::interval(1, n - 1)),
        list => {
            let mut t = SmallSet::empty();
            for part in list.split(',') {
                let v: u32 = part
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("cannot parse T element {part:?}")))?;
                if v == 0 || v > n {
                    return Err(usage(format!("T element {v} outside 1..={n}")));
                }
                t = t.with(v);
            }
            if !t.contains(1) {
                return Err(usage("T must contain 1"));
            }
            Ok(t)
        }
    }
}

fn cmd_verify_diagram(n: u32, t_spec: &str, bound: u32) -> Result<u8, Failure> {
    if n < 2 {
        return Err(usage("diagram verification needs n >= 2"));
    }
    let t = parse_t_spec(n, t_spec)?;
    let verdict = verify_interlacing_diagram(n, t, bound).map_err(usage)?;
    println!("diagram D_{n}({t}), cells as low-to-high coefficient lists:");
    for row in 0..3 {
        let name = ["top", "mid", "bot"][row];
        let cells: Vec<String> = (0..=n)
            .map(|c| {
                verdict.diagram.cells[(row as u32 * (n + 1) + c) as usize]
                    .poly
                    .to_coeff_string()
            })
            .collect();
        println!("  {name}: [{}]", cells.join("] ["));
    }
    for fail in &verdict.failures {
        println!(
            "  FAILED PAIR {:?}{} -> {:?}{}: {} does not interlace {}",
            fail.from.0, fail.from.1, fail.to.0, fail.to.1, fail.f, fail.g
        );
    }
    let mut pass = verdict.pass;
    let full = SmallSet::interval(1, n);
    let chow = SmallSet::interval(1, n.saturating_sub(1));
    if n >= 3 && (t == full || t == chow) {
        let five = verify_five_conditions(n, t, bound).map_err(usage)?;
        println!(
            "five conditions: rows {}/{}/{} columns {} diagonal {}",
            five.top_row, five.mid_row, five.bot_row, five.columns, five.diagonal
        );
        if five.pass != verdict.pass {
            println!("INTERNAL DISAGREEMENT: five-condition form contradicts pairwise check");
            pass = false;
        }
    }
    println!("diagram verdict: {}", if pass { "pass" } else { "FAIL" });
    Ok(if pass { EXIT_OK } else { EXIT_FINDING })
}

#[allow(clippy::too_many_arguments)]
fn cmd_fuzz(
    vertices: Option<u32>,
    rank: Option<u32>,
    facets: &str,
    count: u64,
    seed: u64,
    out: Option<PathBuf>,
    jobs: usize,
    replay: Option<PathBuf>,
) -> Result<u8, Failure> {
    if let Some(path) = replay {
        return replay_file(&path);
    }
    let vertices = vertices.ok_or_else(|| usage("--vertices is required"))?;
    let rank = rank.ok_or_else(|| usage("--rank is required"))?;
    let out = out.ok_or_else(|| usage("--out is required"))?;
    if rank == 0 || rank > vertices {
        return Err(usage("need 1 <= rank <= vertices"));
    }
    let total = binomial(vertices as u64, rank as u64);
    let fixed_facets = match facets {
        "random" => None,
        other => {
            let f: u64 = other
                .parse()
                .map_err(|_| usage(format!("--facets must be a number or `random`, got {other:?}")))?;
            if f == 0 || f > total {
                return Err(usage(format!(
                    "--facets must lie in 1..=C({vertices},{rank}) = {total}"
                )));
            }
            Some(f)
        }
    };
    let file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&out)
        .map_err(|e| usage(format!("cannot open {}: {e}", out.display())))?;
    let writer = Mutex::new(std::io::BufWriter::new(file));
    let next = AtomicU64::new(0);
    let h_positive = AtomicU64::new(0);
    let violations: Mutex<Vec<FuzzRecord>> = Mutex::new(Vec::new());
    let failure: Mutex<Option<String>> = Mutex::new(None);
    let jobs = jobs.clamp(1, 64);

    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count || failure.lock().unwrap().is_some() {
                    return;
                }
                let instance_seed = seed.wrapping_add(i);
                let num_facets = fixed_facets
                    .unwrap_or_else(|| random_facet_count(vertices, rank, instance_seed));
                let params = GenParams {
                    num_vertices: vertices,
                    rank,
                    num_facets,
                };
                match run_instance(params, instance_seed) {
                    Ok(record) => {
                        if record.h_positive {
                            h_positive.fetch_add(1, Ordering::Relaxed);
                        }
                        let line = record.to_json_line();
                        {
                            let mut w = writer.lock().unwrap();
                            if let Err(e) = writeln!(w, "{line}").and_then(|_| w.flush()) {
                                *failure.lock().unwrap() =
                                    Some(format!("cannot write record: {e}"));
                                return;
                            }
                        }
                        if !record.conjecture_holds() {
                            violations.lock().unwrap().push(record);
                        }
                    }
                    Err(e) => {
                        *failure.lock().unwrap() = Some(format!(
                            "instance seed {instance_seed} failed: {e}"
                        ));
                        return;
                    }
                }
            });
        }
    });

    if let Some(message) = failure.into_inner().unwrap() {
        return Err(usage(message));
    }
    let violations = violations.into_inner().unwrap();
    println!(
        "fuzz: {count} instances, {} h-positive, {} conjecture violations",
        h_positive.into_inner(),
        violations.len()
    );
    for v in &violations {
        println!("violation: {}", v.to_json_line());
    }
    Ok(if violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_FINDING
    })
}

fn replay_file(path: &std::path::Path) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut mismatches = 0usize;
    let mut total = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        total += 1;
        let record: FuzzRecord = serde_json::from_str(line)
            .map_err(|e| usage(format!("line {}: bad record: {e}", lineno + 1)))?;
        let fresh = run_instance(record.generator_params, record.seed)
            .map_err(|e| usage(format!("line {}: replay failed: {e}", lineno + 1)))?;
        if fresh.same_outcome(&record) {
            println!("line {}: ok", lineno + 1);
        } else {
            mismatches += 1;
            println!(
                "line {}: MISMATCH\n  recorded: {}\n  replayed: {}",
                lineno + 1,
                record.to_json_line(),
                fresh.to_json_line()
            );
        }
    }
    println!("replay: {total} records, {mismatches} mismatches");
    Ok(if mismatches == 0 { EXIT_OK } else { EXIT_FINDING })
}

fn render_checks(checks: &[GoldenCheck]) -> u8 {
    let mut failed = 0;
    for c in checks {
        if c.pass {
            println!("  ok   {}: {}", c.name, c.actual);
        } else {
            failed += 1;
            println!("  FAIL {}: expected {}, got {}", c.name, c.expected, c.actual);
        }
    }
    println!(
        "reproduce-example: {} checks, {} failures",
        checks.len(),
        failed
    );
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_FINDING
    }
}

fn cmd_reproduce_example() -> Result<u8, Failure> {
    Ok(render_checks(&run_golden_example()))
}

fn cmd_eulerian(n: u32, bound: u32) -> Result<u8, Failure> {
    if n == 0 {
        return Err(usage("need n >= 1"));
    }
    let m = n + 1;
    let a = eulerian(m, bound).map_err(usage)?;
    let at = binomial_eulerian(m, bound).map_err(usage)?;
    println!("A_{m}  = {}  ({})", a.to_coeff_string(), a.pretty());
    println!("~A_{m} = {}  ({})", at.to_coeff_string(), at.pretty());

    let mut pass = true;
    let gamma_a = gamma_eulerian(m, bound).map_err(usage)?;
    let gamma_at = gamma_binomial_eulerian(m, bound).map_err(usage)?;
    println!("gamma(A_{m})  = {}", join_i64(&gamma_a));
    println!("gamma(~A_{m}) = {}", join_i64(&gamma_at));
    let ga_ok = a.gamma_expand().map_err(usage)? == IntPoly::from_i64s(&gamma_a);
    let gat_ok = at.gamma_expand().map_err(usage)? == IntPoly::from_i64s(&gamma_at);
    println!("gamma counts match expansion: A: {ga_ok}, ~A: {gat_ok}");
    pass &= ga_ok && gat_ok;

    if n >= 2 {
        let v = verify_decomposition(n, bound).map_err(usage)?;
        println!(
            "decomposition identities: A_{m}: {}, ~A_{m}: {}",
            v.eulerian_ok, v.binomial_ok
        );
        pass &= v.pass();
    }

    let b = boolean_lattice(m).map_err(usage)?;
    let chow_ok = chow_poly(&b).map_err(usage)? == a;
    let aug_ok = aug_chow_poly(&b).map_err(usage)? == at;
    println!("Boolean-lattice cross-checks: Chow(B_{m}) = A_{m}: {chow_ok}, aug = ~A_{m}: {aug_ok}");
    pass &= chow_ok && aug_ok;

    println!("eulerian verdict: {}", if pass { "pass" } else { "FAIL" });
    Ok(if pass { EXIT_OK } else { EXIT_FINDING })
}
