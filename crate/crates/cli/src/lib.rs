//! The `graphalg` command line.
//!
//! Exit codes: 0 when the requested check passes (or the command just
//! reports), 1 when a mathematical check fails (the output names a witness),
//! 2 for usage and input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use graphalg::corpus::{self, CorpusError};
use graphalg::decomposition::{
    check_admissible, enumerate_admissible, verify_lemma_complement, verify_lemma_intersection,
    AdmissibilityReport, Decomposition, DecompositionError,
};
use graphalg::format::{
    parse_graph_file, to_dot, write_graph, write_subgraph_line, GraphFile, ParseError,
};
use graphalg::graph::{
    all_saturated_hereditary, hereditary_saturated_closure, is_hereditary, is_saturated,
    quotient_graph, Graph, GraphError, VertexSet,
};
use graphalg::leavitt::{normal_form, parse_element, AlgebraError, SpecialEdges};
use graphalg::morphisms::{
    candidate_quotient_hom, hom_respects_relations, quotient_hom, HomError, HomLiteral,
};
use graphalg::pullback::{verify_theorem, PullbackError, DEFAULT_LENGTH_BOUND, DEFAULT_SEED};
use serde::Serialize;
use thiserror::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "graphalg",
    version,
    about = "Admissible graph decompositions and Leavitt path algebra pullbacks"
)]
pub struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Graph file (the `graph`/`vertex`/`edge`/`subgraph` line format)
    #[arg(long, conflicts_with = "corpus", required_unless_present = "corpus")]
    pub graph: Option<PathBuf>,
    /// Built-in example: podles, sphere-N, lens-L-K
    #[arg(long)]
    pub corpus: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a decomposition (two `subgraph` lines) for admissibility
    Check(Source),
    /// List every admissible decomposition of a graph
    Enumerate(Source),
    /// Verify the pullback square of a decomposition up to a path length
    Verify {
        #[command(flatten)]
        source: Source,
        /// Longest path length used by the bounded checks
        #[arg(long, default_value_t = DEFAULT_LENGTH_BOUND)]
        max_len: usize,
        /// Seed for the sampled checks
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Include wall-clock time in the report
        #[arg(long)]
        timing: bool,
    },
    /// Quotient graph by a hereditary saturated vertex set, with the quotient map
    Quotient {
        #[command(flatten)]
        source: Source,
        /// Comma-separated vertices
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<String>,
        /// Path length for the sampled relation check
        #[arg(long, default_value_t = DEFAULT_LENGTH_BOUND)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// List the hereditary saturated sets, or close a given set
    Closures {
        #[command(flatten)]
        source: Source,
        /// Comma-separated vertices to close
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Option<Vec<String>>,
    },
    /// Normal form of an element literal such as "S[a]* S[a] - S[u1]"
    Eval {
        #[command(flatten)]
        source: Source,
        expr: String,
        /// File of `vertex edge` lines overriding the special edge choice
        #[arg(long)]
        special_edges: Option<PathBuf>,
    },
    /// Built-in examples
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Write a graph in DOT
    ExportDot(Source),
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    /// Keys of the standard examples
    List,
    /// A corpus example in the graph file format, or DOT
    Show {
        key: String,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Pullback(#[from] PullbackError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

fn read_file(path: &Path) -> Result<GraphFile, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_graph_file(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

impl Source {
    fn graph(&self) -> Result<Graph, CliError> {
        match (&self.graph, &self.corpus) {
            (Some(path), _) => Ok(Graph::from_decl(&read_file(path)?.graph)?),
            (None, Some(key)) => Ok(corpus::by_key(key)?.graph),
            (None, None) => Err(CliError::Usage(
                "one of --graph or --corpus is required".into(),
            )),
        }
    }

    fn decomposition(&self) -> Result<Decomposition, CliError> {
        match (&self.graph, &self.corpus) {
            (Some(path), _) => Ok(Decomposition::from_file(&read_file(path)?)?),
            (None, Some(key)) => Ok(corpus::by_key(key)?.decomposition),
            (None, None) => Err(CliError::Usage(
                "one of --graph or --corpus is required".into(),
            )),
        }
    }
}

fn vertex_set(g: &Graph, ids: &[String]) -> Result<VertexSet, CliError> {
    for v in ids {
        if !g.has_vertex(v) {
            return Err(GraphError::UnknownVertex(v.clone()).into());
        }
    }
    Ok(ids.iter().cloned().collect())
}

fn read_special_edges(g: &Arc<Graph>, path: &Path) -> Result<SpecialEdges, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut sp = SpecialEdges::least(g);
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [vertex, edge] = parts.as_slice() else {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                source: ParseError {
                    line: n + 1,
                    column: 1,
                    message: "expected `vertex edge`".into(),
                },
            });
        };
        sp = sp.with_choice(vertex, edge)?;
    }
    Ok(sp)
}

#[derive(Serialize)]
struct PieceJson {
    vertices: Vec<String>,
    edges: Vec<String>,
}

impl PieceJson {
    fn of(g: &Graph) -> Self {
        PieceJson {
            vertices: g.vertices().map(str::to_string).collect(),
            edges: g.edge_ids().into_iter().collect(),
        }
    }
}

#[derive(Serialize)]
struct CheckJson<'a> {
    #[serde(flatten)]
    report: &'a AdmissibilityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma_intersection: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma_complement: Option<bool>,
}

#[derive(Serialize)]
struct Timed<'a, T: Serialize> {
    #[serde(flatten)]
    report: &'a T,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

#[derive(Serialize)]
struct QuotientJson {
    graph: String,
    set: VertexSet,
    hereditary: bool,
    saturated: bool,
    respects_relations: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotient: Option<PieceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    map: Option<HomLiteral>,
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Check(source) => check(source, cli.json, out),
        Command::Enumerate(source) => enumerate(source, cli.json, out),
        Command::Verify {
            source,
            max_len,
            seed,
            timing,
        } => verify(source, *max_len, *seed, *timing, cli.json, out),
        Command::Quotient {
            source,
            set,
            max_len,
            seed,
        } => quotient(source, set, *max_len, *seed, cli.json, out),
        Command::Closures { source, set } => closures(source, set.as_deref(), cli.json, out),
        Command::Eval {
            source,
            expr,
            special_edges,
        } => eval(source, expr, special_edges.as_deref(), cli.json, out),
        Command::Corpus { action } => corpus_command(action, cli.json, out),
        Command::ExportDot(source) => {
            write!(out, "{}", to_dot(&source.graph()?))?;
            Ok(EXIT_PASS)
        }
    }
}

fn check(source: &Source, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let d = source.decomposition()?;
    let report = check_admissible(&d);
    let (inter, comp) = if report.admissible {
        (
            Some(verify_lemma_intersection(&d)?),
            Some(verify_lemma_complement(&d)?),
        )
    } else {
        (None, None)
    };
    if json {
        json_line(
            out,
            &CheckJson {
                report: &report,
                lemma_intersection: inter,
                lemma_complement: comp,
            },
        )?;
    } else {
        writeln!(out, "{report}")?;
        writeln!(out, "admissible: {}", yes_no(report.admissible))?;
        if let (Some(i), Some(c)) = (inter, comp) {
            writeln!(
                out,
                "intersection is a quotient of each piece: {}",
                yes_no(i)
            )?;
            writeln!(
                out,
                "pieces are quotients by saturated hereditary complements: {}",
                yes_no(c)
            )?;
        }
    }
    let pass = report.admissible && inter == Some(true) && comp == Some(true);
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn enumerate(source: &Source, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = source.graph()?;
    let all = enumerate_admissible(&g)?;
    if json {
        #[derive(Serialize)]
        struct Pair {
            f1: PieceJson,
            f2: PieceJson,
        }
        let pairs: Vec<Pair> = all
            .iter()
            .map(|d| Pair {
                f1: PieceJson::of(d.f1()),
                f2: PieceJson::of(d.f2()),
            })
            .collect();
        json_line(out, &pairs)?;
    } else {
        writeln!(
            out,
            "# {} admissible decompositions of {}",
            all.len(),
            g.name()
        )?;
        for d in &all {
            writeln!(out, "{}", write_subgraph_line(d.f1()))?;
            writeln!(out, "{}", write_subgraph_line(d.f2()))?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_PASS)
}

fn verify(
    source: &Source,
    max_len: usize,
    seed: u64,
    timing: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let d = source.decomposition()?;
    let start = Instant::now();
    let report = verify_theorem(&d, max_len, seed)?;
    let elapsed = start.elapsed().as_millis();
    if json {
        json_line(
            out,
            &Timed {
                report: &report,
                elapsed_ms: timing.then_some(elapsed),
            },
        )?;
    } else {
        writeln!(out, "graph: {}", report.graph)?;
        writeln!(out, "length bound: {}", report.length_bound)?;
        writeln!(out, "seed: {}", report.seed)?;
        writeln!(out, "admissibility: {}", report.admissibility)?;
        if let Some(stage) = &report.stopped_at {
            writeln!(out, "stopped at: {stage}")?;
        } else {
            for (name, value) in [
                ("lemmas", report.lemmas),
                ("commutes", report.commutes),
                ("kernel_products_zero", report.kernel_products_zero),
                ("mapped_kernel_included", report.mapped_kernel_included),
                ("mapped_kernel_equal (observed)", report.mapped_kernel_equal),
                ("lifting_verified", report.lifting_verified),
                ("graded", report.graded),
                ("kernel_intersection_zero", report.kernel_intersection_zero),
                ("path_containment", report.path_containment),
            ] {
                writeln!(out, "{name}: {value}")?;
            }
            writeln!(out, "lifting samples: {}", report.lifting_samples)?;
        }
        for (name, witness) in &report.witnesses {
            writeln!(out, "witness {name}: {witness}")?;
        }
        if timing {
            writeln!(out, "elapsed: {elapsed} ms")?;
        }
        writeln!(out, "pass: {}", report.pass)?;
    }
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

fn quotient(
    source: &Source,
    set: &[String],
    max_len: usize,
    seed: u64,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let g = Arc::new(source.graph()?);
    let h = vertex_set(&g, set)?;
    let hereditary = is_hereditary(&g, &h)?;
    let saturated = is_saturated(&g, &h)?;
    let mut result = QuotientJson {
        graph: g.name().to_string(),
        set: h.clone(),
        hereditary,
        saturated,
        respects_relations: false,
        witness: None,
        quotient: None,
        map: None,
    };
    if !hereditary {
        result.witness = Some(format!("{h} is not hereditary"));
    } else {
        let hom = if saturated {
            quotient_hom(&g, &h)?
        } else {
            candidate_quotient_hom(&g, &h)?
        };
        let outcome = hom_respects_relations(&hom, max_len, seed)?;
        result.respects_relations = outcome.holds;
        result.witness = outcome.witness;
        result.quotient = Some(PieceJson::of(hom.target()));
        result.map = Some(hom.to_literal());
    }
    let pass = hereditary && saturated && result.respects_relations;
    if json {
        json_line(out, &result)?;
    } else {
        writeln!(out, "hereditary: {}", yes_no(hereditary))?;
        writeln!(out, "saturated: {}", yes_no(saturated))?;
        if hereditary {
            writeln!(
                out,
                "respects relations: {}",
                yes_no(result.respects_relations)
            )?;
        }
        if let Some(w) = &result.witness {
            writeln!(out, "witness: {w}")?;
        }
        if pass {
            let target = quotient_graph(&g, &h)?.renamed(format!("{}_quotient", g.name()));
            write!(out, "{}", write_graph(&target))?;
            if let Some(map) = &result.map {
                for (v, x) in &map.vertices {
                    writeln!(out, "# {v} -> {x}")?;
                }
                for (e, x) in &map.edges {
                    writeln!(out, "# {e} -> {x}")?;
                }
            }
        }
    }
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn closures(
    source: &Source,
    set: Option<&[String]>,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let g = source.graph()?;
    match set {
        Some(ids) => {
            let h = vertex_set(&g, ids)?;
            let closure = hereditary_saturated_closure(&g, &h)?;
            if json {
                json_line(out, &closure)?;
            } else {
                writeln!(out, "{closure}")?;
            }
        }
        None => {
            let all = all_saturated_hereditary(&g)?;
            if json {
                json_line(out, &all)?;
            } else {
                for h in &all {
                    writeln!(out, "{h}")?;
                }
            }
        }
    }
    Ok(EXIT_PASS)
}

fn eval(
    source: &Source,
    expr: &str,
    special_edges: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let g = Arc::new(source.graph()?);
    let sp = match special_edges {
        Some(path) => read_special_edges(&g, path)?,
        None => SpecialEdges::least(&g),
    };
    let x = parse_element(&g, expr).map_err(AlgebraError::from)?;
    let nf = normal_form(&x, &sp)?;
    if json {
        #[derive(Serialize)]
        struct EvalJson {
            input: String,
            normal_form: String,
            degrees: Vec<i64>,
        }
        json_line(
            out,
            &EvalJson {
                input: x.to_string(),
                normal_form: nf.to_string(),
                degrees: nf.degrees().into_iter().collect(),
            },
        )?;
    } else {
        writeln!(out, "{nf}")?;
    }
    Ok(EXIT_PASS)
}

fn corpus_command(action: &CorpusAction, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    match action {
        CorpusAction::List => {
            let all = corpus::list();
            if json {
                #[derive(Serialize)]
                struct Entry {
                    key: String,
                    description: String,
                }
                let entries: Vec<Entry> = all
                    .into_iter()
                    .map(|ex| Entry {
                        key: ex.key,
                        description: ex.description,
                    })
                    .collect();
                json_line(out, &entries)?;
            } else {
                for ex in all {
                    writeln!(out, "{:<12} {}", ex.key, ex.description)?;
                }
            }
        }
        CorpusAction::Show { key, dot } => {
            let ex = corpus::by_key(key)?;
            if *dot {
                write!(out, "{}", to_dot(&ex.graph))?;
            } else {
                writeln!(out, "# {}", ex.description)?;
                write!(out, "{}", write_graph(&ex.graph))?;
                writeln!(out, "{}", write_subgraph_line(ex.decomposition.f1()))?;
                writeln!(out, "{}", write_subgraph_line(ex.decomposition.f2()))?;
            }
        }
    }
    Ok(EXIT_PASS)
}
