use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qbracket::bracket3::{self, Engine};
use qbracket::classical::{kauffman_bracket, normalize_by_writhe};
use qbracket::diagram::{conjugate, rewrite_moves, Presentation};
use qbracket::quotient::{
    self, branches, duplicate_pairs, raw_branch_count, verify_branch, SAMPLES,
};
use qbracket::search::{self, Cache, ScanOptions};
use qbracket::statesum::DEFAULT_STATE_CAP;
use qbracket::{normal_form, parse_braid};

const EXIT_COMPUTATION: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "qbracket",
    version,
    about = "Classical and three-variable Kauffman brackets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical bracket, writhe and normalized invariant.
    Bracket {
        /// `braid:n:l1,l2,...`, `PD[X(..),...]`, or a file holding one.
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Three-variable bracket: raw sum, normal form and ambient value.
    Bracket3 {
        input: String,
        #[arg(long, value_enum, default_value_t = EngineArg::Tl)]
        engine: EngineArg,
        #[arg(long)]
        json: bool,
    },
    /// Machine checks; JSON lines on stdout.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Compare ambient values inside classical-bracket buckets.
    Search(SearchArgs),
}

#[derive(Subcommand)]
enum Verify {
    /// Gröbner basis of the fixed ideal.
    Groebner,
    /// Listed solution branches of the ideal's generators.
    Variety {
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Normal form under seeded braid rewrites.
    Moves {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Rewrites applied per case.
        #[arg(long, default_value_t = 16)]
        moves: usize,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// `name<TAB>presentation` table; defaults to the bundled knots up to
    /// nine crossings.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    max_crossings: Option<usize>,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = EngineArg::Tl)]
    engine: EngineArg,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Naive,
    Tl,
    Both,
}

/// Error carrying its exit status.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn computation(err: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: EXIT_COMPUTATION,
        err: err.into(),
    }
}

type Outcome = Result<bool, Failure>;

fn read_input(input: &str) -> Result<Presentation, Failure> {
    let text = if input.trim_start().starts_with("braid:") || input.trim_start().starts_with("PD") {
        input.to_string()
    } else {
        std::fs::read_to_string(input)
            .with_context(|| format!("'{input}' is neither a diagram nor a readable file"))
            .map_err(computation)?
    };
    Presentation::parse(&text).map_err(computation)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string(v).expect("json"));
}

fn cmd_bracket(input: &str, as_json: bool) -> Outcome {
    let p = read_input(input)?;
    let bracket = if p.crossing_count() <= DEFAULT_STATE_CAP {
        kauffman_bracket(&p.diagram()).map_err(computation)?
    } else {
        let raw = bracket3::raw_bracket(&p, Engine::Tl).map_err(computation)?;
        bracket3::classical_from_raw(&raw).map_err(computation)?
    };
    let w = p.writhe();
    let f = normalize_by_writhe(&bracket, w);
    if as_json {
        print_json(&json!({
            "input": p.to_string(),
            "writhe": w,
            "bracket": bracket.to_string(),
            "f": f.to_string(),
        }));
    } else {
        println!("input: {p}");
        println!("writhe: {w}");
        println!("bracket: {bracket}");
        println!("f: {f}");
    }
    Ok(true)
}

fn cmd_bracket3(input: &str, engine: EngineArg, as_json: bool) -> Outcome {
    let p = read_input(input)?;
    let (values, agree) = match engine {
        EngineArg::Naive => (
            bracket3::evaluate(&p, Engine::Naive).map_err(computation)?,
            true,
        ),
        EngineArg::Tl => (
            bracket3::evaluate(&p, Engine::Tl).map_err(computation)?,
            true,
        ),
        EngineArg::Both => {
            let a = bracket3::evaluate(&p, Engine::Naive).map_err(computation)?;
            let b = bracket3::evaluate(&p, Engine::Tl).map_err(computation)?;
            let same = a.raw == b.raw;
            (b, same)
        }
    };
    let engine_name = match engine {
        EngineArg::Both => "both".to_string(),
        _ => values.engine.to_string(),
    };
    if as_json {
        print_json(&json!({
            "input": values.input,
            "engine": engine_name,
            "engines_agree": agree,
            "crossings": values.crossings,
            "writhe": values.writhe,
            "raw": values.raw,
            "normal_form": values.normal_form,
            "ambient3": values.ambient3,
            "ambient3_dcurl": values.ambient3_dcurl,
        }));
    } else {
        println!("input: {}", values.input);
        println!("engine: {engine_name}");
        println!("writhe: {}", values.writhe);
        println!("raw: {}", values.raw);
        println!("normal_form: {}", values.normal_form);
        println!("ambient3: {}", values.ambient3);
        println!("ambient3_dcurl: {}", values.ambient3_dcurl);
        if !agree {
            println!("ENGINE MISMATCH");
        }
    }
    Ok(agree)
}

fn cmd_groebner() -> Outcome {
    let r = quotient::verify_groebner().map_err(computation)?;
    let group = |prefix: &str| {
        let members: Vec<_> = r
            .checks
            .iter()
            .filter(|c| c.check.starts_with(prefix))
            .collect();
        let pass = members.iter().all(|c| c.pass);
        let failed: Vec<&str> = members
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.check.as_str())
            .collect();
        (pass, members.len(), failed)
    };
    let (s_pass, s_n, s_failed) = group("spoly_reduces");
    let (g_pass, g_n, g_failed) = group("generator_in_basis_ideal");
    let (b_pass, b_n, b_failed) = group("basis_in_generator_ideal");
    let eq_pass = b_pass && r.relation != "different";
    print_json(&json!({
        "check": "reduced_basis_equals_listed",
        "pass": eq_pass,
        "relation": r.relation,
        "recomputed": r.recomputed_basis,
        "membership_checks": b_n,
        "failed": b_failed,
    }));
    print_json(&json!({
        "check": "s_polynomials_reduce_to_zero",
        "pass": s_pass,
        "pairs": s_n,
        "failed": s_failed,
    }));
    print_json(&json!({
        "check": "generators_reduce_to_zero",
        "pass": g_pass,
        "generators": g_n,
        "failed": g_failed,
    }));
    Ok(eq_pass && s_pass && g_pass)
}

fn cmd_variety(tol: f64) -> Outcome {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Failure {
            code: EXIT_USAGE,
            err: anyhow!("--tol must be positive"),
        });
    }
    let distinct = branches();
    let mut all = true;
    for b in &distinct {
        let r = verify_branch(b, SAMPLES.len(), tol);
        all &= r.pass && r.skipped.is_empty();
        print_json(&json!({
            "check": format!("branch {}", b.label),
            "index": r.index,
            "assignment": b.to_string(),
            "pass": r.pass,
            "max_residual_p1": r.max_residual_p1,
            "max_residual_p2": r.max_residual_p2,
            "samples": r.samples_evaluated,
            "skipped": r.skipped,
        }));
    }
    print_json(&json!({
        "check": "variety_summary",
        "pass": all,
        "listed": raw_branch_count(),
        "distinct": distinct.len(),
        "duplicates": duplicate_pairs(),
        "tol": tol,
    }));
    Ok(all)
}

fn cmd_moves(seed: u64, cases: usize, moves: usize) -> Outcome {
    let bases = [
        ("unknot", "braid:3:1,-2"),
        ("hopf", "braid:2:1,1"),
        ("trefoil", "braid:2:1,1,1"),
        ("figure-eight", "braid:3:1,-2,1,-2"),
    ];
    print_json(
        &json!({ "header": { "seed": seed, "cases": cases, "moves_per_case": moves, "engine": "tl" } }),
    );
    let mut all = true;
    for (name, w) in bases {
        let b = parse_braid(w).map_err(computation)?;
        let raw = bracket3::tl_evaluate(&b).map_err(computation)?;
        let reference = normal_form(&raw);
        let mut mismatches = Vec::new();
        for i in 0..cases as u64 {
            let case_seed = seed.wrapping_add(i);
            let r = rewrite_moves(&b, case_seed, moves);
            let v = bracket3::tl_evaluate(&r).map_err(computation)?;
            if normal_form(&v) != reference {
                mismatches.push(case_seed);
            }
        }
        let pass = mismatches.is_empty();
        all &= pass;
        print_json(&json!({
            "check": "regular_isotopy",
            "word": name,
            "base": w,
            "cases": cases,
            "pass": pass,
            "mismatched_seeds": mismatches,
            "normal_form": reference.to_string(),
        }));
        // cyclic rotation is planar isotopy of the closure: raw values agree exactly
        let rot_pass = (0..b.len().max(1))
            .map(|k| bracket3::tl_evaluate(&conjugate(&b, k)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(computation)?
            .iter()
            .all(|v| *v == raw);
        all &= rot_pass;
        print_json(&json!({
            "check": "conjugation",
            "word": name,
            "base": w,
            "pass": rot_pass,
        }));
    }
    Ok(all)
}

fn cmd_search(a: &SearchArgs) -> Outcome {
    let entries = match &a.table {
        Some(p) => search::load_table(p).map_err(computation)?,
        None => search::bundled_table(),
    };
    let engine = match a.engine {
        EngineArg::Naive => Engine::Naive,
        EngineArg::Tl | EngineArg::Both => Engine::Tl,
    };
    let opts = ScanOptions {
        engine,
        max_crossings: a.max_crossings,
    };
    let mut cache = match &a.cache {
        Some(p) => Some(Cache::open(p).map_err(computation)?),
        None => None,
    };
    if let Some(c) = &cache {
        for w in c.warnings() {
            eprintln!("warning: {w}");
        }
    }
    let report = search::conjecture_scan(&entries, opts, cache.as_mut()).map_err(computation)?;
    if a.json {
        println!("{}", report.to_json());
    } else if a.csv {
        print!("{}", report.to_csv());
    } else {
        print!("{}", report.to_text());
    }
    for w in &report.witnesses {
        eprintln!(
            "WITNESS CANDIDATE: {} / {} (bucket {}, engines {})",
            w.name1, w.name2, w.bucket, w.engines
        );
    }
    Ok(report.consistent())
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("QBRACKET_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| Failure {
            code: EXIT_USAGE,
            err: anyhow!("QBRACKET_THREADS must be a positive integer, got '{v}'"),
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(computation)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    match cli.command {
        Command::Bracket { input, json } => cmd_bracket(&input, json),
        Command::Bracket3 {
            input,
            engine,
            json,
        } => cmd_bracket3(&input, engine, json),
        Command::Verify { what } => match what {
            Verify::Groebner => cmd_groebner(),
            Verify::Variety { tol } => cmd_variety(tol),
            Verify::Moves { seed, cases, moves } => cmd_moves(seed, cases, moves),
        },
        Command::Search(a) => cmd_search(&a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFICATION),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
