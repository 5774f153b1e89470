//! Command-line front end: pattern catalog, CNF export, SAT solving,
//! exact Ramsey computation, table reproduction, extremal constructions
//! and coloring verification.
//!
//! Machine-facing output is JSON on stdout with 0-indexed vertices;
//! `--pretty` switches to a human-readable rendering with 1-indexed
//! vertices matching the usual figure labels. Exit codes: 0 success,
//! 1 verification or table mismatch, 2 usage errors.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ordered_ramsey::compute::{
    cache_load, cache_store, compute_ordered_ramsey, reproduce_table1, ComputeOptions, Method,
    ResultCache, K4E_MISSING_EDGES,
};
use ordered_ramsey::constructions::{
    build_fig2, build_fig5, build_pendant_construction, find_extremal_clique_coloring,
    PendantConstructionSpec,
};
use ordered_ramsey::encode::{
    encode_no_mono, read_dimacs, write_dimacs_with_edge_map, EdgeVarMap,
};
use ordered_ramsey::model::{
    catalog, find_monochromatic_copy, parse_pattern_arg, Color, EdgeColoring, Embedding,
    OrderedPattern,
};
use ordered_ramsey::oracle::OracleBudget;
use ordered_ramsey::solver::{external_solve, solve, SolverConfig, Verdict};

#[derive(Parser)]
#[command(name = "ordered-ramsey", version, about = "Exact ordered Ramsey numbers by SAT")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the pattern catalog with edge sets
    Patterns {
        #[command(subcommand)]
        action: PatternsCmd,
    },
    /// Encode a pattern pair at a fixed N to DIMACS CNF
    Encode(EncodeArgs),
    /// Decide a DIMACS CNF file (embedded CDCL or an external solver)
    Solve(SolveArgs),
    /// Compute an exact ordered Ramsey number
    Compute(ComputeArgs),
    /// Reproduce the 6x6 diamond-orderings table and diff it
    Table1(Table1Args),
    /// Emit a verified extremal coloring
    Construct(ConstructArgs),
    /// Check a coloring file against a pattern pair
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum PatternsCmd {
    List {
        #[arg(long)]
        pretty: bool,
    },
}

#[derive(Args)]
struct EncodeArgs {
    #[arg(long)]
    red: String,
    #[arg(long)]
    blue: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    /// External solver command; defaults to $RAMSEY_EXTERNAL_SOLVER if set
    #[arg(long)]
    external: Option<String>,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    red: String,
    #[arg(long)]
    blue: String,
    /// Use the brute-force oracle instead of SAT
    #[arg(long)]
    oracle: bool,
    /// External solver command for the SAT path
    #[arg(long)]
    external: Option<String>,
    /// Known lower bound to seed the ascent (re-checked, never trusted)
    #[arg(long)]
    start_n: Option<usize>,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct Table1Args {
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct ConstructArgs {
    /// fig2, fig5 or pendant
    kind: String,
    #[arg(long, default_value_t = 3)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long)]
    red: String,
    #[arg(long)]
    blue: String,
    #[arg(long)]
    pretty: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, String> {
    match cmd {
        Cmd::Patterns { action: PatternsCmd::List { pretty } } => patterns_list(pretty),
        Cmd::Encode(args) => cmd_encode(args),
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Compute(args) => cmd_compute(args),
        Cmd::Table1(args) => cmd_table1(args),
        Cmd::Construct(args) => cmd_construct(args),
        Cmd::Verify(args) => cmd_verify(args),
    }
}

/// Fixed catalog names plus small instances of the two parametric families.
fn listed_names() -> Vec<String> {
    let mut names: Vec<String> = [
        "k2uk2-a", "k2uk2-b", "k2uk2-c", "pan3-a", "pan3-b", "pan3-c", "path3",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for &(a, b) in &K4E_MISSING_EDGES {
        names.push(format!("k4e-miss-{a}-{b}"));
    }
    for m in 2..=5 {
        names.push(format!("k{m}"));
    }
    for m in 2..=4 {
        names.push(format!("pendant-k{m}"));
    }
    names
}

fn one_indexed_edges(p: &OrderedPattern) -> String {
    p.edges()
        .iter()
        .map(|&(i, j)| format!("({},{})", i + 1, j + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

fn one_indexed_embedding(e: &Embedding) -> String {
    let verts: Vec<String> = e.vertices().iter().map(|v| (v + 1).to_string()).collect();
    format!("({})", verts.join(","))
}

fn patterns_list(pretty: bool) -> Result<ExitCode, String> {
    let names = listed_names();
    if pretty {
        println!("{:<14} {:>2}  edges (1-indexed)", "name", "n");
        for name in names {
            let p = catalog(&name).map_err(|e| e.to_string())?;
            println!("{:<14} {:>2}  {}", name, p.vertex_count(), one_indexed_edges(&p));
        }
        println!("families: k<m> (complete), pendant-k<m> (complete plus pendant edge)");
    } else {
        let items: Vec<serde_json::Value> = names
            .iter()
            .map(|name| {
                let p = catalog(name).expect("listed names resolve");
                serde_json::json!({
                    "name": name,
                    "n": p.vertex_count(),
                    "edges": p.edges(),
                    "text": p.to_string(),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&items).expect("serializable"));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_encode(args: EncodeArgs) -> Result<ExitCode, String> {
    let red = parse_pattern_arg(&args.red).map_err(|e| e.to_string())?;
    let blue = parse_pattern_arg(&args.blue).map_err(|e| e.to_string())?;
    let formula = encode_no_mono(&red, &blue, args.n).map_err(|e| e.to_string())?;
    let file = File::create(&args.out).map_err(|e| e.to_string())?;
    let mut writer = BufWriter::new(file);
    write_dimacs_with_edge_map(&formula, &EdgeVarMap::new(args.n), &mut writer)
        .and_then(|_| writer.flush())
        .map_err(|e| e.to_string())?;
    eprintln!(
        "wrote {} vars, {} clauses to {}",
        formula.num_vars(),
        formula.clauses().len(),
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode, String> {
    let file = File::open(&args.file).map_err(|e| e.to_string())?;
    let formula = read_dimacs(BufReader::new(file)).map_err(|e| e.to_string())?;
    let external = args
        .external
        .or_else(|| std::env::var("RAMSEY_EXTERNAL_SOLVER").ok().filter(|s| !s.is_empty()));
    let outcome = match external {
        Some(cmd) => external_solve(&formula, &cmd).map_err(|e| e.to_string())?,
        None => solve(&formula, &SolverConfig::default()),
    };
    match outcome.verdict {
        Verdict::Sat => {
            println!("s SATISFIABLE");
            let model = outcome.model.expect("Sat carries a model");
            let mut line = String::from("v");
            for (idx, &value) in model.iter().enumerate() {
                let var = idx as i64 + 1;
                line.push_str(&format!(" {}", if value { var } else { -var }));
            }
            line.push_str(" 0");
            println!("{line}");
        }
        Verdict::Unsat => println!("s UNSATISFIABLE"),
        Verdict::Unknown => println!("s UNKNOWN"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compute(args: ComputeArgs) -> Result<ExitCode, String> {
    let red = parse_pattern_arg(&args.red).map_err(|e| e.to_string())?;
    let blue = parse_pattern_arg(&args.blue).map_err(|e| e.to_string())?;
    let method = if args.oracle {
        Method::Oracle
    } else if let Some(cmd) = args.external {
        Method::ExternalSat(cmd)
    } else {
        Method::EmbeddedSat
    };
    let opts = ComputeOptions {
        start_n: args.start_n,
        method,
        solver: SolverConfig::default(),
        oracle_budget: OracleBudget::default(),
    };

    let mut cache = match &args.cache {
        Some(path) if path.exists() => cache_load(path).map_err(|e| e.to_string())?,
        _ => ResultCache::new(),
    };
    let result = match cache.get(&red, &blue) {
        Some(hit) => hit,
        None => {
            let fresh = compute_ordered_ramsey(&red, &blue, &opts).map_err(|e| e.to_string())?;
            cache.insert(fresh.clone());
            if let Some(path) = &args.cache {
                cache_store(path, &cache).map_err(|e| e.to_string())?;
            }
            fresh
        }
    };

    if args.pretty {
        println!("r_<({}, {}) = {}", args.red, args.blue, result.value);
        println!("witness on {} vertices: {}", result.witness.vertex_count(), result.witness);
        println!("method: {}", result.method);
    } else {
        println!("{}", serde_json::to_string(&result.to_json()).expect("serializable"));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table1(args: Table1Args) -> Result<ExitCode, String> {
    let mut cache = match &args.cache {
        Some(path) if path.exists() => cache_load(path).map_err(|e| e.to_string())?,
        _ => ResultCache::new(),
    };
    let report = reproduce_table1(&ComputeOptions::default(), Some(&mut cache))
        .map_err(|e| e.to_string())?;
    if let Some(path) = &args.cache {
        cache_store(path, &cache).map_err(|e| e.to_string())?;
    }

    if args.pretty {
        let labels: Vec<String> =
            K4E_MISSING_EDGES.iter().map(|&(a, b)| format!("{a}-{b}")).collect();
        print!("{:>5}", "");
        for l in &labels {
            print!("{l:>5}");
        }
        println!();
        for (i, l) in labels.iter().enumerate() {
            print!("{l:>5}");
            for j in 0..6 {
                if j >= i {
                    print!("{:>5}", report.computed[i][j]);
                } else {
                    print!("{:>5}", "");
                }
            }
            println!();
        }
        if report.matches_expected() {
            println!("all 21 cells match the published table");
        } else {
            for m in &report.mismatches {
                println!(
                    "MISMATCH at ({}, {}): computed {}, expected {}",
                    labels[m.row], labels[m.col], m.computed, m.expected
                );
            }
        }
    } else {
        let doc = serde_json::json!({
            "labels": K4E_MISSING_EDGES
                .iter()
                .map(|&(a, b)| format!("{a}-{b}"))
                .collect::<Vec<_>>(),
            "computed": report.computed,
            "mismatches": report
                .mismatches
                .iter()
                .map(|m| serde_json::json!({
                    "row": m.row,
                    "col": m.col,
                    "computed": m.computed,
                    "expected": m.expected,
                }))
                .collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    }
    Ok(if report.matches_expected() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode, String> {
    let coloring = match args.kind.as_str() {
        "fig2" => build_fig2(),
        "fig5" => build_fig5(),
        "pendant" => pendant_via_sat(args.m, args.n)?,
        other => return Err(format!("unknown construction `{other}` (fig2, fig5, pendant)")),
    };
    let text = coloring.to_string();
    match &args.out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| e.to_string())?,
        None => println!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

/// Finds the largest clique-avoiding block Z by SAT ascent, then assembles
/// the pendant construction on top of it.
fn pendant_via_sat(m: usize, n: usize) -> Result<EdgeColoring, String> {
    let cfg = SolverConfig::default();
    let mut best: Option<EdgeColoring> = None;
    let mut size = 1;
    loop {
        match find_extremal_clique_coloring(m, n, size, &cfg).map_err(|e| e.to_string())? {
            Some(coloring) => {
                best = Some(coloring);
                size += 1;
            }
            None => break,
        }
    }
    let z = best.ok_or_else(|| "no clique-avoiding block exists at any size".to_string())?;
    let spec = PendantConstructionSpec::new(m, n, z).map_err(|e| e.to_string())?;
    build_pendant_construction(&spec).map_err(|e| e.to_string())
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(&args.coloring).map_err(|e| e.to_string())?;
    let coloring: EdgeColoring = text.parse().map_err(|e: ordered_ramsey::model::ModelError| e.to_string())?;
    let red = parse_pattern_arg(&args.red).map_err(|e| e.to_string())?;
    let blue = parse_pattern_arg(&args.blue).map_err(|e| e.to_string())?;

    let find = |pattern: &OrderedPattern, color: Color| -> Option<Embedding> {
        if pattern.vertex_count() > coloring.vertex_count() {
            None
        } else {
            find_monochromatic_copy(&coloring, pattern, color).expect("size checked")
        }
    };
    let red_copy = find(&red, Color::Red);
    let blue_copy = find(&blue, Color::Blue);
    let clean = red_copy.is_none() && blue_copy.is_none();

    if args.pretty {
        match &red_copy {
            Some(e) => println!("red copy of {}: {}", args.red, one_indexed_embedding(e)),
            None => println!("no red copy of {}", args.red),
        }
        match &blue_copy {
            Some(e) => println!("blue copy of {}: {}", args.blue, one_indexed_embedding(e)),
            None => println!("no blue copy of {}", args.blue),
        }
    } else {
        let doc = serde_json::json!({
            "red": args.red,
            "blue": args.blue,
            "red_copy": red_copy.as_ref().map(|e| e.vertices().to_vec()),
            "blue_copy": blue_copy.as_ref().map(|e| e.vertices().to_vec()),
            "good": clean,
        });
        println!("{}", serde_json::to_string(&doc).expect("serializable"));
    }
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
