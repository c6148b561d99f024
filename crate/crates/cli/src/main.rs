//! coxlab: exact analysis of Coxeter graphs from the command line.
//!
//! Exit codes: 0 success, 1 failure, 2 parse/usage error, 3 label outside
//! the exact field without --numeric, 4 rank cap or enumeration limit
//! exceeded, 5 cycle budget exceeded.

mod census;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use coxlab_core::{
    cosine_matrix, det_elimination, det_sigma_closed, det_sigma_recurrence, det_vinberg_matrix,
    inertia, is_word_hyperbolic_with, sigma_family, ClassifyError, ClassifyOptions, CoxeterGraph,
    Inertia, MatrixError, MatrixMode, ParseError, DEFAULT_CYCLE_BUDGET, DEFAULT_RANK_CAP,
};

#[derive(Parser)]
#[command(
    name = "coxlab",
    version,
    about = "Exact determinants, signatures, classification and word-hyperbolicity of Coxeter graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DetMethod {
    Elim,
    Vinberg,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: determinant, inertia, type, families, hyperbolicity
    Analyze {
        /// Graph file (text or JSON format)
        file: PathBuf,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
        /// Approximate non-exact labels rationally to this many digits
        #[arg(long, value_name = "DIGITS", value_parser = clap::value_parser!(u32).range(1..=1000))]
        numeric: Option<u32>,
    },
    /// Generate Σ_k and verify its determinant and signature
    Family {
        /// Number of chain copies (rank is 5k)
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Determinant by elimination, by cycle expansion, or both
    Det {
        /// Graph file (text or JSON format)
        file: PathBuf,
        #[arg(long, value_enum)]
        method: DetMethod,
        /// Approximate non-exact labels rationally to this many digits
        #[arg(long, value_name = "DIGITS", value_parser = clap::value_parser!(u32).range(1..=1000))]
        numeric: Option<u32>,
        /// Cap on cycle enumeration work
        #[arg(long, default_value_t = DEFAULT_CYCLE_BUDGET)]
        budget: usize,
    },
    /// Word-hyperbolicity verdict with witnesses
    Hyperbolic {
        /// Graph file (text or JSON format)
        file: PathBuf,
    },
    /// Enumerate all graphs of a rank over a label set; stream CSV rows
    Census {
        #[arg(long)]
        rank: usize,
        /// Comma-separated labels, e.g. 2,3,5 (or inf)
        #[arg(long)]
        labels: String,
        /// Keep only connected graphs
        #[arg(long)]
        connected: bool,
        /// Cap on the number of enumerated graphs
        #[arg(long, default_value_t = 1_000_000)]
        limit: u128,
    },
}

/// A failure with its process exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(2, e.to_string())
    }
}

impl From<MatrixError> for Failure {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::UnsupportedLabel(_) => Failure::new(3, e.to_string()),
            MatrixError::CycleBudgetExceeded(_) => Failure::new(5, e.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Matrix(m) => m.into(),
            ClassifyError::RankCapExceeded { .. } => Failure::new(4, e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file, json, numeric } => cmd_analyze(&file, json, numeric),
        Command::Family { k, json } => cmd_family(k as usize, json),
        Command::Det {
            file,
            method,
            numeric,
            budget,
        } => cmd_det(&file, method, numeric, budget),
        Command::Hyperbolic { file } => cmd_hyperbolic(&file),
        Command::Census {
            rank,
            labels,
            connected,
            limit,
        } => census::run(rank, &labels, connected, limit),
    }
}

fn rank_cap() -> Result<usize, Failure> {
    match std::env::var("COXLAB_RANK_CAP") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::new(2, format!("COXLAB_RANK_CAP must be an integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_RANK_CAP),
    }
}

fn read_graph(path: &Path) -> Result<CoxeterGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(1, format!("cannot read {}: {e}", path.display())))?;
    let graph = if text.trim_start().starts_with('{') {
        CoxeterGraph::from_json(&text)?
    } else {
        CoxeterGraph::parse(&text)?
    };
    Ok(graph)
}

fn matrix_mode(numeric: Option<u32>) -> MatrixMode {
    match numeric {
        Some(digits) => MatrixMode::Numeric(digits),
        None => MatrixMode::Exact,
    }
}

fn cmd_analyze(path: &Path, json: bool, numeric: Option<u32>) -> Result<(), Failure> {
    let graph = read_graph(path)?;
    let cap = rank_cap()?;
    let mode = matrix_mode(numeric);
    let started = Instant::now();
    let report = report::analyze(&graph, mode, cap)?;
    let elapsed = started.elapsed();
    if json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        print!("{}", report.render_text());
        println!("time: {:.1} ms", elapsed.as_secs_f64() * 1e3);
    }
    Ok(())
}

fn cmd_family(k: usize, json: bool) -> Result<(), Failure> {
    let cap = rank_cap()?;
    if 5 * k > cap {
        return Err(Failure::new(
            4,
            format!(
                "family k={k} needs rank {} but the rank cap is {cap} (set COXLAB_RANK_CAP)",
                5 * k
            ),
        ));
    }
    let graph = sigma_family(k);
    let matrix = cosine_matrix(&graph, MatrixMode::Exact)?;

    let by_elimination = det_elimination(&matrix);
    let by_vinberg = det_vinberg_matrix(&matrix, DEFAULT_CYCLE_BUDGET)?;
    let by_recurrence = det_sigma_recurrence(k);
    let by_closed = det_sigma_closed(k);
    let ine = inertia(&matrix);

    let opts = ClassifyOptions {
        mode: MatrixMode::Exact,
        rank_cap: cap,
    };
    let hyp = is_word_hyperbolic_with(&graph, &opts)?;

    let dets_agree =
        by_elimination == by_vinberg && by_elimination == by_recurrence && by_elimination == by_closed;
    let inertia_ok = ine
        == Inertia {
            positive: 4 * k,
            negative: k,
            zero: 0,
        };
    let pass = dets_agree && inertia_ok;

    if json {
        let doc = serde_json::json!({
            "k": k,
            "rank": graph.rank(),
            "determinants": {
                "elimination": by_elimination.to_radical_string(),
                "vinberg": by_vinberg.to_radical_string(),
                "recurrence": by_recurrence.to_radical_string(),
                "closed_form": by_closed.to_radical_string(),
            },
            "determinant_decimal": by_elimination.to_decimal(6),
            "inertia": { "positive": ine.positive, "negative": ine.negative, "zero": ine.zero },
            "hyperbolic": hyp.hyperbolic,
            "paper_mode_applicable": hyp.paper_mode_applicable,
            "pass": pass,
        });
        println!("{doc}");
    } else {
        println!("family Sigma_{k}: rank {}, {} labeled pairs", graph.rank(), graph.labeled_pair_count());
        println!("det (elimination):      {}", by_elimination.to_radical_string());
        println!("det (cycle expansion):  {}", by_vinberg.to_radical_string());
        println!("det (recurrence):       {}", by_recurrence.to_radical_string());
        println!("det (closed form):      {}", by_closed.to_radical_string());
        println!("determinant = {}", by_elimination.to_decimal(6));
        println!("inertia: {ine}");
        println!(
            "hyperbolic: {} (paper mode applicable: {})",
            if hyp.hyperbolic { "yes" } else { "no" },
            hyp.paper_mode_applicable
        );
        if pass {
            println!(
                "PASS: all four determinants agree and inertia = ({}, {}, 0)",
                4 * k,
                k
            );
        } else {
            println!("FAIL: determinant or signature check failed");
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::new(1, format!("family k={k} consistency check failed")))
    }
}

fn cmd_det(
    path: &Path,
    method: DetMethod,
    numeric: Option<u32>,
    budget: usize,
) -> Result<(), Failure> {
    let graph = read_graph(path)?;
    let matrix = cosine_matrix(&graph, matrix_mode(numeric))?;
    let render = |v: &coxlab_core::FieldElement| {
        format!("{} = {}", v.to_radical_string(), v.to_decimal(6))
    };
    match method {
        DetMethod::Elim => {
            println!("elimination: {}", render(&det_elimination(&matrix)));
        }
        DetMethod::Vinberg => {
            println!("vinberg: {}", render(&det_vinberg_matrix(&matrix, budget)?));
        }
        DetMethod::Both => {
            let by_elim = det_elimination(&matrix);
            let by_vinberg = det_vinberg_matrix(&matrix, budget)?;
            println!("elimination: {}", render(&by_elim));
            println!("vinberg: {}", render(&by_vinberg));
            if by_elim == by_vinberg {
                println!("AGREE");
            } else {
                println!("DISAGREE");
                return Err(Failure::new(1, "determinant methods disagree"));
            }
        }
    }
    Ok(())
}

fn cmd_hyperbolic(path: &Path) -> Result<(), Failure> {
    let graph = read_graph(path)?;
    let cap = rank_cap()?;
    let opts = ClassifyOptions {
        mode: MatrixMode::Exact,
        rank_cap: cap,
    };
    let report = is_word_hyperbolic_with(&graph, &opts)?;
    println!(
        "verdict: {}",
        if report.hyperbolic {
            "Hyperbolic"
        } else {
            "NotHyperbolic"
        }
    );
    if let Some(witness) = &report.witness {
        match witness {
            coxlab_core::Witness::Affine(s) => println!("witness: affine subset {s}"),
            coxlab_core::Witness::Pair(a, b) => {
                println!("witness: unjoined infinite pair {a} x {b}")
            }
        }
    }
    println!("paper_mode_applicable: {}", report.paper_mode_applicable);
    println!(
        "parabolic subgraphs: {}",
        report::parabolic_status_str(report.parabolic_status)
    );
    println!(
        "minimal infinite subsets: {} (subsets examined: {})",
        report.minimal_infinite.len(),
        report.stats.subsets_examined
    );
    Ok(())
}
