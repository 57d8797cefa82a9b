//! `polymatch` — count maximal matchings in polygon chains and rings.
//!
//! Exit codes: 0 success, 1 verify failure or runtime error, 2 bad input
//! (spec syntax, range, or structure), 3 methods disagree under
//! `--method both`.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use polymatch::matgen::transition_matrix;
use polymatch::notation::{ChainSpec, RingSpec};
use polymatch::{
    build_chain, build_ring, chain_vector, count_chain, count_maximal, count_ring, parse_chain,
    parse_ring, ConstraintSet, Count, MarkedGraph, MatrixCache,
};

mod bench;
mod report;
mod verify;

const EXIT_BAD_INPUT: u8 = 2;
const EXIT_DISAGREEMENT: u8 = 3;

#[derive(Parser)]
#[command(name = "polymatch", version, about = "Count maximal matchings in polygon chains and rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    Chain,
    Ring,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Transfer-matrix product (fast, any size)
    Transfer,
    /// Exhaustive enumeration (exponential; small instances only)
    Oracle,
    /// Run both and compare
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count the maximal matchings of a chain or ring
    Count {
        shape: Shape,
        /// Face list, e.g. "t(6,*)t(6,2)t(6,*)", or hexagon shorthand "t(2)t(3)..."
        #[arg(long = "type")]
        spec: String,
        #[arg(long, value_enum, default_value_t = Method::Transfer)]
        method: Method,
        /// Emit a one-line JSON report instead of plain text
        #[arg(long)]
        json: bool,
        /// Also write the underlying graph as an edge-list dump
        #[arg(long, value_name = "PATH")]
        dump_graph: Option<PathBuf>,
    },
    /// Print the nine-component vector of a chain at its free terminal edge
    Vector {
        /// Face list, e.g. "t(6,*)t(6,2)t(6,*)"
        #[arg(long = "type")]
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Generate the transfer matrix of a face shape from first principles
    GenMatrix {
        #[arg(long)]
        size: u32,
        #[arg(long)]
        offset: u32,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Replay the counting formulas against the enumeration oracle
    Verify {
        /// Largest chain/ring length used by the randomized suites
        #[arg(long, default_value_t = 4)]
        max_faces: usize,
        /// Face size range for the randomized suites, inclusive, e.g. 4..8
        #[arg(long, default_value = "4..7")]
        sizes: String,
        #[arg(long, default_value_t = 2026)]
        seed: u64,
    },
    /// Time the methods on hexagon rings of growing size (CSV on stdout)
    Bench {
        /// Largest ring in the ladder
        #[arg(long, default_value_t = 10_000)]
        faces: usize,
        /// Timing repetitions per row (the minimum is reported)
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    // Die quietly when the reader goes away (`polymatch bench | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Count { shape, spec, method, json, dump_graph } => {
            count_cmd(shape, &spec, method, json, dump_graph)
        }
        Command::Vector { spec, json } => vector_cmd(&spec, json),
        Command::GenMatrix { size, offset, format } => gen_matrix_cmd(size, offset, format),
        Command::Verify { max_faces, sizes, seed } => verify_cmd(max_faces, &sizes, seed),
        Command::Bench { faces, repeat, seed } => {
            bench::run(faces, repeat, seed);
            Ok(ExitCode::SUCCESS)
        }
    }
}

enum Parsed {
    Chain(ChainSpec),
    Ring(RingSpec),
}

impl Parsed {
    fn build(&self) -> MarkedGraph {
        match self {
            Parsed::Chain(s) => build_chain(s),
            Parsed::Ring(s) => build_ring(s),
        }
    }

    fn count_transfer(&self, cache: &mut MatrixCache) -> Count {
        match self {
            Parsed::Chain(s) => count_chain(s, cache),
            Parsed::Ring(s) => count_ring(s, cache),
        }
    }
}

fn count_cmd(
    shape: Shape,
    text: &str,
    method: Method,
    json: bool,
    dump: Option<PathBuf>,
) -> Result<ExitCode> {
    let (mode, parsed) = match shape {
        Shape::Chain => ("chain", parse_chain(text).map(Parsed::Chain)),
        Shape::Ring => ("ring", parse_ring(text).map(Parsed::Ring)),
    };
    let parsed = match parsed {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e);
            return Ok(ExitCode::from(EXIT_BAD_INPUT));
        }
    };
    if let Some(path) = &dump {
        let marked = parsed.build();
        fs::write(path, marked.to_dump()).with_context(|| format!("writing {}", path.display()))?;
    }

    let started = Instant::now();
    let transfer = (method != Method::Oracle).then(|| {
        let mut cache = MatrixCache::new();
        parsed.count_transfer(&mut cache)
    });
    let oracle = (method != Method::Transfer)
        .then(|| count_maximal(parsed.build().graph(), &ConstraintSet::new()));
    let elapsed_s = started.elapsed().as_secs_f64();

    let agreement = match (&transfer, &oracle) {
        (Some(t), Some(o)) => Some(t == o),
        _ => None,
    };
    let result = transfer.as_ref().or(oracle.as_ref()).expect("at least one method ran");
    let method_name = match method {
        Method::Transfer => "transfer",
        Method::Oracle => "oracle",
        Method::Both => "both",
    };

    if json {
        let report = report::RunReport {
            mode,
            input: text,
            method: method_name,
            result: result.to_string(),
            elapsed_s,
            agreement,
        };
        println!("{}", report.to_json()?);
    } else {
        match (&transfer, &oracle) {
            (Some(t), Some(o)) => {
                println!("transfer {}", t);
                println!("oracle {}", o);
                println!("agreement {}", if t == o { "yes" } else { "no" });
            }
            _ => println!("{}", result),
        }
    }

    if agreement == Some(false) {
        eprintln!("error: methods disagree on {} {}", mode, text);
        return Ok(ExitCode::from(EXIT_DISAGREEMENT));
    }
    Ok(ExitCode::SUCCESS)
}

fn vector_cmd(text: &str, json: bool) -> Result<ExitCode> {
    let spec = match parse_chain(text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}", e);
            return Ok(ExitCode::from(EXIT_BAD_INPUT));
        }
    };
    let started = Instant::now();
    let mut cache = MatrixCache::new();
    let v = chain_vector(&spec, &mut cache);
    let elapsed_s = started.elapsed().as_secs_f64();
    if json {
        let components: Vec<String> = v.0.iter().map(|c| c.to_string()).collect();
        println!(
            "{}",
            serde_json::json!({
                "mode": "chain-vector",
                "input": text,
                "components": components,
                "elapsed_s": elapsed_s,
            })
        );
    } else {
        println!("{}", v);
    }
    Ok(ExitCode::SUCCESS)
}

fn gen_matrix_cmd(size: u32, offset: u32, format: Format) -> Result<ExitCode> {
    let matrix = match transition_matrix(size, offset) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {}", e);
            return Ok(ExitCode::from(EXIT_BAD_INPUT));
        }
    };
    match format {
        Format::Plain => print!("{}", matrix),
        Format::Json => {
            let rows: Vec<Vec<String>> = (0..9)
                .map(|r| (0..9).map(|c| matrix.entry(r, c).to_string()).collect())
                .collect();
            println!(
                "{}",
                serde_json::json!({ "size": size, "offset": offset, "rows": rows })
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(max_faces: usize, sizes: &str, seed: u64) -> Result<ExitCode> {
    let (size_lo, size_hi) = match parse_size_range(sizes) {
        Some(r) => r,
        None => {
            eprintln!(
                "error: --sizes wants an inclusive range like 4..8 (sizes >= 4, upper <= 12)"
            );
            return Ok(ExitCode::from(EXIT_BAD_INPUT));
        }
    };
    if !(3..=6).contains(&max_faces) {
        eprintln!("error: --max-faces must be between 3 and 6: the oracle side is exponential");
        return Ok(ExitCode::from(EXIT_BAD_INPUT));
    }
    let opts = verify::Options { max_faces, size_lo, size_hi, seed };
    let results = verify::run_all(&opts);
    let mut failed = false;
    for r in &results {
        match &r.failure {
            None => println!("PASS {} ({} cases)", r.name, r.cases),
            Some(msg) => {
                failed = true;
                println!("FAIL {} (case {}): {}", r.name, r.cases, msg);
            }
        }
    }
    Ok(if failed { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn parse_size_range(text: &str) -> Option<(u32, u32)> {
    let (lo, hi) = text.split_once("..")?;
    let lo: u32 = lo.trim().parse().ok()?;
    let hi: u32 = hi.trim().parse().ok()?;
    (4..=12).contains(&lo).then_some(())?;
    (lo..=12).contains(&hi).then_some(())?;
    Some((lo, hi))
}
