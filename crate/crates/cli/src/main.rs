mod batch;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::anyhow;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use hypercsa::{
    build_index_with_map, parse_edge_list, write_edge_list, Error, HyperIndex, IncidenceList,
    DEFAULT_SAMPLE_PERIOD,
};
use serde::Serialize;

use batch::{parse_batch, parse_labels, Engine, Query};

#[derive(Parser)]
#[command(name = "hypercsa", version, about = "Compressed self-index for hypergraphs")]
struct Cli {
    /// More log output (-v info, -vv debug)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from an edge list
    Compress {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Ψ sample period
        #[arg(long, default_value_t = DEFAULT_SAMPLE_PERIOD, value_parser = positive)]
        t: usize,
    },
    /// Write the edge list stored in an index
    Decompress {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Answer a single query or a batch file
    #[command(group(ArgGroup::new("mode").required(true).args(["contains", "exists", "degree", "batch"])))]
    Query {
        #[arg(short, long)]
        input: PathBuf,
        /// Edges containing all of the comma-separated nodes
        #[arg(long)]
        contains: Option<String>,
        /// Multiplicity of the edge with exactly these nodes
        #[arg(long)]
        exists: Option<String>,
        /// Number of edges incident to the node
        #[arg(long)]
        degree: Option<u64>,
        /// File with one `c:`/`e:`/`d:` query per line
        #[arg(long)]
        batch: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EngineKind::Hypercsa)]
        engine: EngineKind,
    },
    /// Header fields and size breakdown
    Stats {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also run the full structural self-check
        #[arg(long)]
        check: bool,
    },
    /// Average per-query latency of a batch, index loaded once
    Bench {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        batch: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = positive)]
        threads: usize,
        #[arg(long, value_enum, default_value_t = EngineKind::Hypercsa)]
        engine: EngineKind,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineKind {
    Hypercsa,
    Naive,
}

/// Failure with its process exit status.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

const EXIT_INPUT: u8 = 3;
const EXIT_LOAD: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

fn fail(code: u8, err: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code,
        err: err.into(),
    }
}

/// Exit status for a library error raised outside of index loading.
fn classify(e: Error) -> Failure {
    let code = match e {
        Error::Load(_) => EXIT_LOAD,
        Error::Invariant(_) | Error::NotAPermutation(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    };
    fail(code, e)
}

type Res<T> = Result<T, Failure>;

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn read_text(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_INPUT, anyhow!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Res<()> {
    fs::write(path, bytes).map_err(|e| fail(EXIT_INPUT, anyhow!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Res<HyperIndex> {
    let bytes = fs::read(path).map_err(|e| fail(EXIT_LOAD, anyhow!("{}: {e}", path.display())))?;
    let start = Instant::now();
    let index = HyperIndex::from_bytes(&bytes)
        .map_err(|e| fail(EXIT_LOAD, anyhow!("{}: {e}", path.display())))?;
    log::info!("loaded {} in {:?}", path.display(), start.elapsed());
    Ok(index)
}

fn engine(index: HyperIndex, kind: EngineKind) -> Engine {
    match kind {
        EngineKind::Hypercsa => Engine::Index(index),
        EngineKind::Naive => {
            let g = index.decompress();
            Engine::Naive(IncidenceList::new(&g, index.node_map().clone()))
        }
    }
}

fn compress(input: &Path, output: &Path, t: usize) -> Res<()> {
    let text = read_text(input)?;
    let (g, map) = parse_edge_list(&text).map_err(classify)?;
    let start = Instant::now();
    let index = build_index_with_map(&g, map, t).map_err(classify)?;
    log::info!("built index in {:?}", start.elapsed());
    let bytes = index.to_bytes();
    write_file(output, &bytes)?;
    println!("incidences: {}", index.incidence_sum());
    println!("nodes: {}", index.node_count());
    println!("edges: {}", index.edge_count());
    println!("input bytes: {}", text.len());
    println!("index bytes: {}", bytes.len());
    // ratio above 1 means the index is larger than the plain edge list
    println!("ratio: {:.4}", bytes.len() as f64 / text.len().max(1) as f64);
    Ok(())
}

fn decompress(input: &Path, output: &Path) -> Res<()> {
    let index = load(input)?;
    let g = index.decompress();
    write_file(output, write_edge_list(&g, index.node_map()).as_bytes())
}

fn query(input: &Path, queries: Vec<Query>, single: bool, kind: EngineKind) -> Res<()> {
    let engine = engine(load(input)?, kind);
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for q in &queries {
        let line = match engine.answer(q) {
            Ok(line) => line,
            // a lone query reports failure through the exit status; a batch
            // keeps going so line numbers stay aligned
            Err(e) if single => return Err(classify(e)),
            Err(e) => format!("error: {e}"),
        };
        writeln!(out, "{line}").map_err(|e| fail(EXIT_INPUT, e))?;
    }
    out.flush().map_err(|e| fail(EXIT_INPUT, e))
}

#[derive(Serialize)]
struct Stats {
    file_bytes: u64,
    incidences: usize,
    nodes: usize,
    edges: usize,
    sample_period: usize,
    identity_map: bool,
    degree_bits: usize,
    degree_directory_bits: usize,
    psi_stream_bits: usize,
    psi_sample_bits: usize,
    node_map_entries: usize,
    bits_per_incidence: f64,
}

fn stats(input: &Path, json: bool, check: bool) -> Res<()> {
    let file_bytes = fs::metadata(input).map(|m| m.len()).unwrap_or(0);
    let index = load(input)?;
    if check {
        index.check_invariants().map_err(classify)?;
    }
    let b = index.size_breakdown();
    let s = Stats {
        file_bytes,
        incidences: index.incidence_sum(),
        nodes: index.node_count(),
        edges: index.edge_count(),
        sample_period: index.sample_period(),
        identity_map: index.node_map().is_identity(),
        degree_bits: b.degree_bits,
        degree_directory_bits: b.degree_directory_bits,
        psi_stream_bits: b.psi_stream_bits,
        psi_sample_bits: b.psi_sample_bits,
        node_map_entries: if index.node_map().is_identity() { 0 } else { b.node_map_entries },
        bits_per_incidence: file_bytes as f64 * 8.0 / index.incidence_sum().max(1) as f64,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&s).map_err(|e| fail(EXIT_INTERNAL, e))?);
        return Ok(());
    }
    println!("file bytes: {}", s.file_bytes);
    println!("incidences (M): {}", s.incidences);
    println!("nodes: {}", s.nodes);
    println!("edges: {}", s.edges);
    println!("sample period: {}", s.sample_period);
    println!("identity map: {}", s.identity_map);
    println!("D bits: {} (+{} directory)", s.degree_bits, s.degree_directory_bits);
    println!("psi stream bits: {}", s.psi_stream_bits);
    println!("psi sample bits: {}", s.psi_sample_bits);
    println!("map entries: {}", s.node_map_entries);
    println!("bits per incidence: {:.3}", s.bits_per_incidence);
    if check {
        println!("invariants: ok");
    }
    Ok(())
}

#[derive(Serialize)]
struct BenchReport {
    queries: usize,
    threads: usize,
    errors: usize,
    total_ms: f64,
    avg_latency_us: f64,
    queries_per_sec: f64,
}

fn bench(input: &Path, batch: &Path, threads: usize, kind: EngineKind, json: bool) -> Res<()> {
    let queries = parse_batch(&read_text(batch)?).map_err(|e| fail(EXIT_INPUT, anyhow!(e)))?;
    if queries.is_empty() {
        return Err(fail(EXIT_INPUT, anyhow!("batch file has no queries")));
    }
    let engine = engine(load(input)?, kind);
    let chunk = queries.len().div_ceil(threads);
    let start = Instant::now();
    // per-thread (busy nanoseconds, errors)
    let results: Vec<(u128, usize)> = std::thread::scope(|s| {
        let handles: Vec<_> = queries
            .chunks(chunk)
            .map(|part| {
                let engine = &engine;
                s.spawn(move || {
                    let t = Instant::now();
                    let errors = part.iter().filter(|q| engine.answer(q).is_err()).count();
                    (t.elapsed().as_nanos(), errors)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("bench thread panicked")).collect()
    });
    let total = start.elapsed();
    let busy: u128 = results.iter().map(|r| r.0).sum();
    let report = BenchReport {
        queries: queries.len(),
        threads,
        errors: results.iter().map(|r| r.1).sum(),
        total_ms: total.as_secs_f64() * 1e3,
        avg_latency_us: busy as f64 / 1e3 / queries.len() as f64,
        queries_per_sec: queries.len() as f64 / total.as_secs_f64(),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).map_err(|e| fail(EXIT_INTERNAL, e))?);
    } else {
        println!(
            "{} queries on {} thread(s): {:.3} us/query, {:.0} queries/s, {} errors",
            report.queries, report.threads, report.avg_latency_us, report.queries_per_sec, report.errors
        );
    }
    Ok(())
}

fn run(cli: Cli) -> Res<()> {
    match cli.command {
        Command::Compress { input, output, t } => compress(&input, &output, t),
        Command::Decompress { input, output } => decompress(&input, &output),
        Command::Query {
            input,
            contains,
            exists,
            degree,
            batch,
            engine,
        } => {
            let labels = |s: &str| parse_labels(s).map_err(|e| fail(EXIT_INPUT, anyhow!(e)));
            let single = batch.is_none();
            let queries = if let Some(s) = contains {
                vec![Query::Contains(labels(&s)?)]
            } else if let Some(s) = exists {
                vec![Query::Exists(labels(&s)?)]
            } else if let Some(v) = degree {
                vec![Query::Degree(v)]
            } else {
                let path = batch.expect("clap requires one query mode");
                parse_batch(&read_text(&path)?).map_err(|e| fail(EXIT_INPUT, anyhow!(e)))?
            };
            query(&input, queries, single, engine)
        }
        Command::Stats { input, json, check } => stats(&input, json, check),
        Command::Bench {
            input,
            batch,
            threads,
            engine,
            json,
        } => bench(&input, &batch, threads, engine, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).parse_default_env().init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
