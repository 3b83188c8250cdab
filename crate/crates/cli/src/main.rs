//! Command-line front end: invariants, complements, families, censuses,
//! theorem verification, the constructive procedures, and isomorph-free
//! enumeration, over graph6 lines.
//!
//! Exit codes: 0 success, 1 domain errors (bad graphs, failed
//! preconditions), 2 usage errors, 3 when `verify` finds a violation or an
//! extremal-class mismatch.

use std::fs;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use locdom_core::enumeration::{Census, CensusFilter, CensusRecord, ImportedLine};
use locdom_core::families::{DerivedPair, FamilyId, FamilySpec};
use locdom_core::graph::{Graph, VertexSet};
use locdom_core::invariants::{min_invariant, InvariantKind};
use locdom_core::verifier::{self, LocatingTarget, TheoremId, TheoremReport};
use locdom_core::{graph6, VerifyError};

const DERIVED_STORE: &str = "derived_ef.g6";

#[derive(Parser)]
#[command(
    name = "locdom",
    version,
    about = "Exact domination/location invariants of small graphs, censuses, and bound verification"
)]
struct Cli {
    /// Emit JSON instead of aligned text
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for enumeration and verification (0 = all cores)
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    jobs: usize,

    /// Directory for resumable census caches and the derived store
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Abort on the first malformed graph6 line instead of skipping it
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

/// Graph input: inline line, file, or standard input (one graph6 line per
/// graph). The forms are mutually exclusive.
#[derive(Args)]
struct GraphInput {
    /// Inline graph6 line
    #[arg(long, value_name = "LINE", conflicts_with = "file")]
    graph6: Option<String>,

    /// File with one graph6 line per graph
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

impl GraphInput {
    fn read(&self) -> Result<Vec<(String, Graph)>> {
        let decode_all = |lines: &mut dyn Iterator<Item = String>| -> Result<Vec<(String, Graph)>> {
            let mut graphs = Vec::new();
            for (idx, raw) in lines.enumerate() {
                let line = raw.trim();
                if line.is_empty() {
                    continue;
                }
                let g = graph6::decode(line)
                    .with_context(|| format!("line {}: {line:?}", idx + 1))?;
                graphs.push((line.to_owned(), g));
            }
            if graphs.is_empty() {
                bail!("no input graphs");
            }
            Ok(graphs)
        };
        if let Some(line) = &self.graph6 {
            decode_all(&mut std::iter::once(line.clone()))
        } else if let Some(path) = &self.file {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            decode_all(&mut text.lines().map(str::to_owned))
        } else {
            let stdin = std::io::stdin();
            decode_all(&mut stdin.lock().lines().map_while(Result::ok))
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute an invariant of each input graph, with a minimum witness set
    Invariant {
        /// gamma, beta, eta or lambda
        #[arg(long, value_parser = InvariantKind::from_str)]
        kind: InvariantKind,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Emit the complement of each input graph
    Complement {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Construct a named graph or family as graph6 lines
    Family {
        /// path, cycle, complete, empty, star, complete-bipartite,
        /// double-star, star-attach, bull, house, e, f, omega, beta-high
        #[arg(long, value_parser = FamilyId::from_str)]
        id: FamilyId,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
    },
    /// List census classes whose invariant equals a value exactly
    Census {
        /// gamma, beta, eta or lambda
        #[arg(long, value_parser = InvariantKind::from_str)]
        kind: InvariantKind,
        #[arg(long)]
        value: usize,
        #[arg(long, default_value_t = 2)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
        /// Restrict to connected graphs
        #[arg(long)]
        connected: bool,
        /// Read the census from a graph6 file instead of generating it
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
    },
    /// Check a bound statement over the census (exit 3 on violation or
    /// extremal-class mismatch)
    Verify {
        #[arg(long, value_parser = TheoremId::from_str)]
        theorem: TheoremId,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
        /// Read the census from a graph6 file instead of generating it
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
    },
    /// Construct a locating set of size n-4 for each doubly-connected
    /// diameter-2 input graph whose complement also has diameter 2
    LemmaConstruct {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Transfer a locating-dominating set to the complement
    LdTransfer {
        /// Comma-separated vertex indices, e.g. 0,3
        #[arg(long, value_name = "V,V,...")]
        set: String,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Emit one representative per isomorphism class as graph6 lines
    Enumerate {
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
        /// Keep connected graphs only
        #[arg(long)]
        connected: bool,
        /// Keep graphs whose complement is also connected
        #[arg(long)]
        doubly_connected: bool,
    },
}

/// Die quietly when a downstream pipe closes, like the rest of the
/// line-oriented tools this CLI is meant to compose with.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .ok();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn emit_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

/// Builds the census for `census`/`verify`: from a graph6 file when given,
/// otherwise by built-in generation (cached under `--cache-dir` if set).
fn load_census(
    file: Option<&Path>,
    cache_dir: Option<&Path>,
    max_n: usize,
    strict: bool,
) -> Result<Census> {
    if let Some(path) = file {
        let reader = BufReader::new(
            fs::File::open(path).with_context(|| format!("opening {}", path.display()))?,
        );
        let filter = CensusFilter::all();
        let mut graphs = Vec::new();
        for item in locdom_core::enumeration::import_graph6(reader, &filter) {
            match item {
                ImportedLine::Graph(g) => graphs.push(g),
                ImportedLine::Filtered => {}
                ImportedLine::Error { line, error } => {
                    if strict {
                        bail!("{}: line {line}: {error}", path.display());
                    }
                    eprintln!("warning: {}: line {line}: {error} (skipped)", path.display());
                }
            }
        }
        Ok(Census::from_graphs(graphs))
    } else if let Some(dir) = cache_dir {
        Ok(Census::generate_with_cache(dir, max_n)?)
    } else {
        Ok(Census::generate(max_n)?)
    }
}

/// Loads the derived pair from the cache-dir store when present, otherwise
/// derives it (from the given census if it reaches order 8, else from a
/// fresh built-in census) and saves it back when a cache dir is set.
fn resolve_derived(cache_dir: Option<&Path>, census: Option<&Census>) -> Result<DerivedPair> {
    if let Some(dir) = cache_dir {
        let store = dir.join(DERIVED_STORE);
        if store.exists() {
            return Ok(DerivedPair::load(&store)?);
        }
    }
    let pair = match census {
        Some(c) if c.max_order() >= 8 => verifier::derive_ef(c)?,
        _ => {
            let full = match cache_dir {
                Some(dir) => Census::generate_with_cache(dir, 8)?,
                None => Census::generate(8)?,
            };
            verifier::derive_ef(&full)?
        }
    };
    if let Some(dir) = cache_dir {
        fs::create_dir_all(dir)?;
        pair.save(&dir.join(DERIVED_STORE))?;
    }
    Ok(pair)
}

#[derive(Serialize)]
struct InvariantLine {
    graph6: String,
    kind: InvariantKind,
    value: usize,
    witness: VertexSet,
}

#[derive(Serialize)]
struct ComplementLine {
    graph6: String,
    complement: String,
}

#[derive(Serialize)]
struct FamilyOutput {
    id: FamilyId,
    count: usize,
    graphs: Vec<String>,
}

#[derive(Serialize)]
struct LemmaLine {
    graph6: String,
    target: LocatingTarget,
    set: VertexSet,
}

#[derive(Serialize)]
struct TransferLine {
    graph6: String,
    set: VertexSet,
    transferred: VertexSet,
}

#[derive(Serialize)]
struct EnumerateLine {
    order: usize,
    graph6: String,
}

fn print_report_text(report: &TheoremReport) {
    println!("theorem:    {}", report.id);
    println!("orders:     {}..{}", report.orders.min, report.orders.max);
    println!("graphs:     {}", report.counts.graphs_checked);
    println!("violations: {}", report.violations.len());
    println!("match:      {}", report.matches);
    println!("elapsed:    {} ms", report.elapsed_ms);
    for v in report.violations.iter().take(20) {
        println!("  violation n={} {}  {}", v.order, v.graph6, v.detail);
    }
    if !report.matches {
        for c in &report.found {
            if !report.expected.contains(c) {
                println!("  found but not expected: n={} {} {:?}", c.order, c.graph6, c.side);
            }
        }
        for c in &report.expected {
            if !report.found.contains(c) {
                println!("  expected but not found: n={} {} {:?}", c.order, c.graph6, c.side);
            }
        }
    }
}

fn parse_vertex_set(text: &str, order: usize) -> Result<VertexSet> {
    let mut set = VertexSet::EMPTY;
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: usize = part
            .parse()
            .with_context(|| format!("bad vertex index {part:?}"))?;
        if v >= order {
            bail!("vertex index {v} out of range for order {order}");
        }
        set = set.with(v);
    }
    Ok(set)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let cache_dir = cli.cache_dir.as_deref();
    match &cli.command {
        Command::Invariant { kind, input } => {
            let mut lines = Vec::new();
            for (line, g) in input.read()? {
                let result = min_invariant(&g, *kind);
                lines.push(InvariantLine {
                    graph6: line,
                    kind: *kind,
                    value: result.value,
                    witness: result.witness,
                });
            }
            if cli.json {
                emit_json(&lines)?;
            } else {
                for l in &lines {
                    println!("{:<20} {}={} witness={}", l.graph6, l.kind, l.value, l.witness);
                }
            }
        }
        Command::Complement { input } => {
            let mut lines = Vec::new();
            for (line, g) in input.read()? {
                lines.push(ComplementLine {
                    graph6: line,
                    complement: graph6::encode(&g.complement()),
                });
            }
            if cli.json {
                emit_json(&lines)?;
            } else {
                for l in &lines {
                    println!("{}", l.complement);
                }
            }
        }
        Command::Family { id, n, r, s, h } => {
            let spec = FamilySpec {
                id: *id,
                n: *n,
                r: *r,
                s: *s,
                h: *h,
            };
            let derived = if matches!(id, FamilyId::E | FamilyId::F) {
                Some(resolve_derived(cache_dir, None)?)
            } else {
                None
            };
            let graphs = spec.build(derived.as_ref())?;
            let output = FamilyOutput {
                id: *id,
                count: graphs.len(),
                graphs: graphs.iter().map(graph6::encode).collect(),
            };
            if cli.json {
                emit_json(&output)?;
            } else {
                for line in &output.graphs {
                    println!("{line}");
                }
            }
        }
        Command::Census {
            kind,
            value,
            min_n,
            max_n,
            connected,
            file,
        } => {
            let census = load_census(file.as_deref(), cache_dir, *max_n, cli.strict)?;
            let sidecar = cache_dir.map(|dir| {
                dir.join(format!(
                    "census_{}{}_n{}-{}{}.json",
                    kind,
                    value,
                    min_n,
                    max_n,
                    if *connected { "_connected" } else { "" }
                ))
            });
            let records: Vec<CensusRecord> = match sidecar.as_ref().filter(|p| p.exists()) {
                Some(path) => serde_json::from_str(&fs::read_to_string(path)?)
                    .with_context(|| format!("parsing cached {}", path.display()))?,
                None => {
                    let mut records =
                        verifier::census_by_invariant(&census, *kind, *value, *max_n, *connected)?;
                    records.retain(|rec| rec.order >= *min_n);
                    if let Some(path) = &sidecar {
                        fs::write(path, serde_json::to_string(&records)?)?;
                    }
                    records
                }
            };
            if cli.json {
                emit_json(&records)?;
            } else {
                for rec in &records {
                    let p = &rec.profile;
                    println!(
                        "{:<20} n={} gamma={} beta={} eta={} lambda={} diam={} codiam={} connected={} coconnected={}",
                        rec.graph6,
                        rec.order,
                        p.gamma,
                        p.beta,
                        p.eta,
                        p.lambda,
                        p.diameter,
                        p.complement_diameter,
                        p.connected,
                        p.complement_connected
                    );
                }
            }
        }
        Command::Verify {
            theorem,
            min_n,
            max_n,
            file,
        } => {
            let census = load_census(file.as_deref(), cache_dir, *max_n, cli.strict)?;
            let derived = if theorem.requires_derived_pair() {
                Some(resolve_derived(cache_dir, Some(&census))?)
            } else {
                None
            };
            let report = verifier::verify(*theorem, *min_n, *max_n, &census, derived.as_ref())?;
            if cli.json {
                emit_json(&report)?;
            } else {
                print_report_text(&report);
            }
            if !report.passed() {
                return Ok(ExitCode::from(3));
            }
        }
        Command::LemmaConstruct { input } => {
            let mut lines = Vec::new();
            for (line, g) in input.read()? {
                let (target, set) = verifier::construct_locating_set_diam2(&g)?;
                lines.push(LemmaLine {
                    graph6: line,
                    target,
                    set,
                });
            }
            if cli.json {
                emit_json(&lines)?;
            } else {
                for l in &lines {
                    let target = match l.target {
                        LocatingTarget::Graph => "graph",
                        LocatingTarget::Complement => "complement",
                    };
                    println!("{:<20} target={} set={}", l.graph6, target, l.set);
                }
            }
        }
        Command::LdTransfer { set, input } => {
            let mut lines = Vec::new();
            for (line, g) in input.read()? {
                let s = parse_vertex_set(set, g.order())?;
                let transferred = match verifier::transfer_ld_set(&g, s) {
                    Ok(t) => t,
                    Err(e @ VerifyError::NotLdSet) => {
                        bail!("{line}: {e}");
                    }
                    Err(e) => return Err(e.into()),
                };
                lines.push(TransferLine {
                    graph6: line,
                    set: s,
                    transferred,
                });
            }
            if cli.json {
                emit_json(&lines)?;
            } else {
                for l in &lines {
                    println!("{:<20} set={} transferred={}", l.graph6, l.set, l.transferred);
                }
            }
        }
        Command::Enumerate {
            min_n,
            max_n,
            connected,
            doubly_connected,
        } => {
            let census = match cache_dir {
                Some(dir) => Census::generate_with_cache(dir, *max_n)?,
                None => Census::generate(*max_n)?,
            };
            let filter = CensusFilter {
                connected: connected.then_some(true),
                doubly_connected: *doubly_connected,
                ..CensusFilter::default()
            };
            let mut lines = Vec::new();
            for n in *min_n..=*max_n {
                for g in census.classes(n)? {
                    if filter.matches(g) {
                        lines.push(EnumerateLine {
                            order: n,
                            graph6: graph6::encode(g),
                        });
                    }
                }
            }
            if cli.json {
                emit_json(&lines)?;
            } else {
                for l in &lines {
                    println!("{}", l.graph6);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
