//! `bcr`: enumeration, dimension tables, relation matrices, the maps `σ`
//! and `κ`, and the verification suites.

mod output;

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use bcr_core::graph::text::{parse_graphs, print_graph, ParseError};
use bcr_core::graph::{ColoredGraph, GraphClass, Parity};
use bcr_core::linalg::{DiagramVector, RelationKind};
use bcr_core::pbw::{kappa, KappaStrategy, SigmaEngine};
use bcr_core::relations::Fault;
use bcr_core::spaces::{Caps, Component, SpaceId};
use bcr_core::verify::{run_suite, Suite, SuiteConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::{emit, render_vector, to_json, Header};

/// Exit status of a failed verification suite.
const EXIT_SUITE_FAILED: u8 = 1;
const EXIT_SYNTAX: u8 = 3;
const EXIT_INVALID_GRAPH: u8 = 4;
const EXIT_OTHER: u8 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "bcr",
    version,
    about = "Colored BCR, hairy and chord graphs over Q"
)]
struct Cli {
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct CapsArgs {
    #[arg(long, default_value_t = 8)]
    max_vertices: usize,
    #[arg(long, default_value_t = 8)]
    max_edges: usize,
    #[arg(long, default_value = "even", value_parser = parse_parity)]
    parity: Parity,
}

impl CapsArgs {
    fn caps(&self) -> Caps {
        Caps::new(self.max_vertices, self.max_edges)
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct ComponentArgs {
    #[arg(long)]
    vertices: usize,
    #[arg(long)]
    edges: usize,
    #[arg(long, default_value = "even", value_parser = parse_parity)]
    parity: Parity,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one representative of every isomorphism class in a component.
    Enumerate {
        #[command(flatten)]
        component: ComponentArgs,
        #[arg(long, default_value = "bcr", value_parser = parse_class)]
        class: GraphClass,
        /// Also print graphs that vanish by an odd automorphism.
        #[arg(long)]
        include_zero: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient dimensions for every component within the caps.
    Dims {
        /// One of B, A, Abar, Ac, Acbar, or `all`.
        #[arg(long, default_value = "all")]
        space: String,
        #[command(flatten)]
        caps: CapsArgs,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The generated rows of one relation family over the BCR basis.
    Relations {
        #[arg(long = "type", value_enum)]
        kind: RelationArg,
        #[command(flatten)]
        component: ComponentArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// `σ` of every graph in a file, in the hairy quotient.
    Sigma {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = VectorFormat::Text)]
        format: VectorFormat,
    },
    /// `κ` of every graph in a file, as chord diagrams.
    Resolve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "min", value_parser = parse_strategy)]
        strategy: KappaStrategy,
        #[arg(long, value_enum, default_value_t = VectorFormat::Text)]
        format: VectorFormat,
    },
    /// Run one verification suite; the exit status is nonzero on failure.
    Verify {
        /// pbw, sigma-words, kappa, ihx-in-stu, sliding or question.
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        caps: CapsArgs,
        /// Restrict to one component, as `V,E`.
        #[arg(long, value_parser = parse_component)]
        component: Option<(usize, usize)>,
        #[arg(long, default_value_t = SuiteConfig::default().kappa_seed)]
        kappa_seed: u64,
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, hide = true, value_parser = parse_fault)]
        fault_inject: Option<Fault>,
    },
    /// Bases, dimensions and quotient bases of every component.
    Export {
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
        #[command(flatten)]
        caps: CapsArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum VectorFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ExportFormat {
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum RelationArg {
    Stu,
    Ihx,
    Chord,
    #[value(name = "4t")]
    FourT,
}

impl RelationArg {
    fn kind(self) -> RelationKind {
        match self {
            RelationArg::Stu => RelationKind::Stu,
            RelationArg::Ihx => RelationKind::Ihx,
            RelationArg::Chord => RelationKind::Chord,
            RelationArg::FourT => RelationKind::FourT,
        }
    }
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    s.parse()
}

fn parse_class(s: &str) -> Result<GraphClass, String> {
    s.parse()
}

fn parse_strategy(s: &str) -> Result<KappaStrategy, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    s.parse()
}

fn parse_component(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected `V,E`, found `{s}`");
    let (v, e) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        v.trim().parse().map_err(|_| bad())?,
        e.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_spaces(s: &str) -> Result<Vec<SpaceId>, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(SpaceId::ALL.to_vec());
    }
    s.split(',').map(|x| x.trim().parse()).collect()
}

/// An error together with the exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<ParseError>() {
            Some(ParseError::Syntax { .. }) => EXIT_SYNTAX,
            Some(ParseError::Validation { .. }) => EXIT_INVALID_GRAPH,
            None => EXIT_OTHER,
        };
        Failure { code, error }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        log::debug!("worker pool of {n} threads");
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot size the worker pool: {e}");
            return ExitCode::from(EXIT_OTHER);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Enumerate {
            component,
            class,
            include_zero,
            out,
        } => enumerate(component, class, include_zero, out.as_deref())?,
        Command::Dims {
            space,
            caps,
            format,
            out,
        } => {
            let spaces = parse_spaces(&space).map_err(anyhow::Error::msg)?;
            dims(&spaces, caps, format, out.as_deref())?
        }
        Command::Relations {
            kind,
            component,
            out,
        } => relations(kind.kind(), component, out.as_deref())?,
        Command::Sigma { graph, format } => sigma(&graph, format)?,
        Command::Resolve {
            graph,
            strategy,
            format,
        } => resolve(&graph, strategy, format)?,
        Command::Verify {
            suite,
            caps,
            component,
            kappa_seed,
            report,
            fault_inject,
        } => {
            let config = SuiteConfig {
                parity: caps.parity,
                caps: caps.caps(),
                component,
                kappa_seed,
                fault: fault_inject,
                ..SuiteConfig::default()
            };
            return verify(suite, &config, report.as_deref());
        }
        Command::Export {
            format: ExportFormat::Json,
            caps,
            out,
        } => export(caps, out.as_deref())?,
    }
    Ok(0)
}

fn enumerate(
    args: ComponentArgs,
    class: GraphClass,
    include_zero: bool,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let caps = Caps::new(args.vertices, args.edges);
    let component = Component::new(args.vertices, args.edges, args.parity, None);
    let graphs: Vec<(&ColoredGraph, bool)> = component
        .underlying()
        .iter()
        .filter(|u| (include_zero || !u.zero) && u.graph.in_class(class))
        .map(|u| (&u.graph, u.zero))
        .collect();
    let mut text = Header::new("enumerate", args.parity, caps).comment();
    text.push_str(&format!(
        "# component V={} E={} class {class:?}\n# count {}\n",
        args.vertices,
        args.edges,
        graphs.len()
    ));
    for (g, zero) in graphs {
        text.push('\n');
        text.push_str(&format!(
            "# {}{}\n",
            g.certificate(),
            if zero { " (vanishes)" } else { "" }
        ));
        text.push_str(&print_graph(g));
    }
    emit(out, &text).context("writing the graph list")
}

#[derive(Serialize)]
struct DimsRow {
    vertices: usize,
    edges: usize,
    dimensions: BTreeMap<&'static str, usize>,
}

fn dims(
    spaces: &[SpaceId],
    args: CapsArgs,
    format: TableFormat,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let caps = args.caps();
    let rows: Vec<DimsRow> = caps
        .components()
        .into_iter()
        .map(|(v, e)| {
            let c = Component::new(v, e, args.parity, None);
            let dimensions = spaces
                .iter()
                .map(|&s| (s.as_str(), c.dimension(s)))
                .collect();
            DimsRow {
                vertices: v,
                edges: e,
                dimensions,
            }
        })
        .collect();
    let header = Header::new("dims", args.parity, caps);
    let text = match format {
        TableFormat::Json => {
            #[derive(Serialize)]
            struct Table<'a> {
                header: Header,
                spaces: Vec<&'static str>,
                rows: &'a [DimsRow],
            }
            to_json(&Table {
                header,
                spaces: spaces.iter().map(|s| s.as_str()).collect(),
                rows: &rows,
            })
        }
        TableFormat::Csv => {
            let mut text = header.comment();
            let names: Vec<&str> = spaces.iter().map(|s| s.as_str()).collect();
            text.push_str(&format!("vertices,edges,{}\n", names.join(",")));
            for r in &rows {
                let values: Vec<String> =
                    names.iter().map(|n| r.dimensions[n].to_string()).collect();
                text.push_str(&format!(
                    "{},{},{}\n",
                    r.vertices,
                    r.edges,
                    values.join(",")
                ));
            }
            text
        }
    };
    emit(out, &text).context("writing the dimension table")
}

fn relations(kind: RelationKind, args: ComponentArgs, out: Option<&Path>) -> anyhow::Result<()> {
    let component = Component::new(args.vertices, args.edges, args.parity, None);
    #[derive(Serialize)]
    struct Doc {
        header: Header,
        relation: RelationKind,
        vertices: usize,
        edges: usize,
        matrix: bcr_core::linalg::MatrixExport,
    }
    let doc = Doc {
        header: Header::new(
            "relations",
            args.parity,
            Caps::new(args.vertices, args.edges),
        ),
        relation: kind,
        vertices: args.vertices,
        edges: args.edges,
        matrix: component.family(kind).export(),
    };
    emit(out, &to_json(&doc)).context("writing the relation matrix")
}

fn read_graphs(path: &Path) -> anyhow::Result<Vec<ColoredGraph>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graphs = parse_graphs(&text).map_err(anyhow::Error::new)?;
    Ok(graphs)
}

#[derive(Serialize)]
struct VectorResult {
    input: String,
    value: DiagramVector,
}

fn print_vectors(
    command: &'static str,
    graphs: &[ColoredGraph],
    results: &[VectorResult],
    format: VectorFormat,
) -> anyhow::Result<()> {
    let parity = graphs.first().map_or(Parity::Even, |g| g.parity());
    let caps = Caps::new(
        graphs.iter().map(|g| g.vertex_count()).max().unwrap_or(0),
        graphs.iter().map(|g| g.edge_count()).max().unwrap_or(0),
    );
    let header = Header::new(command, parity, caps);
    let text = match format {
        VectorFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                header: Header,
                results: &'a [VectorResult],
            }
            to_json(&Doc { header, results })
        }
        VectorFormat::Text => {
            let mut text = header.comment();
            for r in results {
                text.push_str(&format!("\n{command}({}) =\n", r.input));
                text.push_str(&render_vector(&r.value));
            }
            text
        }
    };
    emit(None, &text).context("writing results")
}

fn sigma(path: &Path, format: VectorFormat) -> anyhow::Result<()> {
    let graphs = read_graphs(path)?;
    let mut engines: HashMap<(usize, usize, Parity), SigmaEngine> = HashMap::new();
    let mut results = Vec::new();
    for g in &graphs {
        let key = (g.vertex_count(), g.edge_count(), g.parity());
        let engine = engines.entry(key).or_insert_with(|| {
            SigmaEngine::new(Arc::new(Component::new(key.0, key.1, key.2, None)))
        });
        let value = engine
            .sigma(g)
            .with_context(|| format!("sigma of {}", g.certificate()))?;
        results.push(VectorResult {
            input: g.certificate(),
            value,
        });
    }
    print_vectors("sigma", &graphs, &results, format)
}

fn resolve(path: &Path, strategy: KappaStrategy, format: VectorFormat) -> anyhow::Result<()> {
    let graphs = read_graphs(path)?;
    let mut results = Vec::new();
    for g in &graphs {
        let value = kappa(g, strategy).with_context(|| format!("resolving {}", g.certificate()))?;
        results.push(VectorResult {
            input: g.certificate(),
            value,
        });
    }
    print_vectors("kappa", &graphs, &results, format)
}

fn verify(suite: Suite, config: &SuiteConfig, report: Option<&Path>) -> Result<u8, Failure> {
    let r = run_suite(suite, config).map_err(anyhow::Error::new)?;
    if let Some(path) = report {
        fs::write(path, r.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{}", r.summary());
    for (c, e) in r.evidence().filter(|(_, e)| !e.note.is_empty()) {
        println!(
            "  (V={}, E={}) {}: {}",
            c.vertices, c.edges, e.check, e.note
        );
    }
    for f in r.failures() {
        println!(
            "  FAIL {}: {} {}",
            f.check,
            f.certificates.join(" "),
            f.detail
        );
        println!("    replay: {}", f.replay);
    }
    Ok(if r.passed { 0 } else { EXIT_SUITE_FAILED })
}

#[derive(Serialize)]
struct ExportComponent {
    vertices: usize,
    edges: usize,
    vanishing_classes: usize,
    bases: BTreeMap<&'static str, Vec<String>>,
    dimensions: BTreeMap<&'static str, usize>,
    quotient_bases: BTreeMap<&'static str, Vec<String>>,
}

fn export(args: CapsArgs, out: Option<&Path>) -> anyhow::Result<()> {
    let caps = args.caps();
    let components: Vec<ExportComponent> = caps
        .components()
        .into_iter()
        .map(|(v, e)| {
            let c = Component::new(v, e, args.parity, None);
            let certs =
                |gs: &[ColoredGraph]| gs.iter().map(|g| g.certificate()).collect::<Vec<_>>();
            let bases = [
                ("bcr", GraphClass::Bcr),
                ("hairy", GraphClass::Hairy),
                ("chord", GraphClass::Chord),
            ]
            .into_iter()
            .map(|(name, class)| (name, certs(&c.basis(class))))
            .collect();
            ExportComponent {
                vertices: v,
                edges: e,
                vanishing_classes: c.underlying().iter().filter(|u| u.zero).count(),
                bases,
                dimensions: SpaceId::ALL
                    .iter()
                    .map(|&s| (s.as_str(), c.dimension(s)))
                    .collect(),
                quotient_bases: SpaceId::ALL
                    .iter()
                    .map(|&s| (s.as_str(), certs(&c.space(s).quotient_basis())))
                    .collect(),
            }
        })
        .collect();
    #[derive(Serialize)]
    struct Doc {
        header: Header,
        components: Vec<ExportComponent>,
    }
    let doc = Doc {
        header: Header::new("export", args.parity, caps),
        components,
    };
    emit(out, &to_json(&doc)).context("writing the export")
}
