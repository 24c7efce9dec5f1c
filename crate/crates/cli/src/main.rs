mod cache;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

use tilegraph::corona::{algorithm2_from, CoronaError};
use tilegraph::exactmath::{IntMatrix, IntVector, MathError};
use tilegraph::formats;
use tilegraph::rauzygraphs::{
    contact_graph_with_cap, from_simple, merged_node_count, naive_boundary_graph, RauzyGraphError,
};
use tilegraph::selfaffine::{
    algorithm1_with_cap, approximate_tile, contact_set, naive_neighbors, TileError,
};
use tilegraph::stepped::{approximate_subtile, SteppedError};
use tilegraph::substitution::{prefix_suffix_graph, Letter, Substitution};
use tilegraph::{PisotSystem, Projector, SimpleGraph, TileSystem, Vector};

#[derive(Parser)]
#[command(name = "tilegraph", version, about = "Contact and neighbor graphs of self-affine tiles and Rauzy fractals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Self-affine tiles given as JSON {"M": [[…]], "D": [[…]]}
    Tile {
        #[command(subcommand)]
        action: TileAction,
    },
    /// Substitutions given as lines `i -> word`
    Subst {
        #[command(subcommand)]
        action: SubstAction,
    },
}

#[derive(Subcommand)]
enum TileAction {
    /// Contact graph Γ_R
    Contact(TileArgs),
    /// Neighbor graph Γ_S by the corona iteration
    Neighbors(TileArgs),
    /// SVG of the n-th approximation 𝒯_n
    Render(TileArgs),
}

#[derive(Subcommand)]
enum SubstAction {
    /// Certify that the substitution is Pisot unit
    Check(SubstArgs),
    /// Prefix-suffix graph
    Psgraph(SubstArgs),
    /// Contact graph G_C
    Contact(SubstArgs),
    /// Boundary graph G_B by the corona iteration
    Neighbors(SubstArgs),
    /// SVG of the approximations ℛ_n(i)
    Render(SubstArgs),
    /// Faces of the stepped surface near the origin
    Stepped(SubstArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Svg,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format; graphs default to dot, drawings to svg
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write files into this directory instead of printing to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cross-check against the exhaustive search (exit 4 on mismatch)
    #[arg(long)]
    oracle: bool,
    /// Iteration cap for the fixpoint loops
    #[arg(long, default_value_t = 64)]
    max_iter: usize,
    /// Approximation level n
    #[arg(long, default_value_t = 4)]
    level: u32,
    /// Cap on the number of cells drawn
    #[arg(long, default_value_t = 1 << 20)]
    max_cells: usize,
    /// Cap on the candidates examined by --oracle
    #[arg(long, default_value_t = 1 << 22)]
    max_candidates: usize,
}

#[derive(Args)]
struct TileArgs {
    /// JSON file, or the JSON text itself
    input: String,
    /// Lattice basis for R_0, e.g. "1,0;0,1"
    #[arg(long)]
    basis: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SubstArgs {
    /// Substitution file, or rules separated by `;` such as "1 -> 12; 2 -> 1"
    input: String,
    /// Letter i of ℛ_n(i); all letters when omitted
    #[arg(long)]
    letter: Option<Letter>,
    /// Bits of working precision for eigenvectors before rounding to f64
    #[arg(long, default_value_t = 64)]
    precision: u32,
    /// ‖x‖∞ radius of the stepped-surface patch
    #[arg(long, default_value_t = 3)]
    radius: i64,
    /// Emit the simple (signed) form of graphs instead of the normalized one
    #[arg(long)]
    simple: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

impl From<TileError> for CliError {
    fn from(e: TileError) -> Self {
        match e {
            TileError::IterationLimitExceeded(_)
            | TileError::SearchLimitExceeded(_)
            | TileError::PatchTooLarge { .. }
            | TileError::CandidateBoxTooLarge { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<MathError> for CliError {
    fn from(e: MathError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<SteppedError> for CliError {
    fn from(e: SteppedError) -> Self {
        match e {
            SteppedError::PatchTooLarge { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<RauzyGraphError> for CliError {
    fn from(e: RauzyGraphError) -> Self {
        match e {
            RauzyGraphError::ClosureLimitExceeded(_) | RauzyGraphError::CandidateBoxTooLarge { .. } => {
                CliError::Cap(e.to_string())
            }
            RauzyGraphError::Stepped(s) => s.into(),
            RauzyGraphError::MalformedTriple(_) => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<CoronaError> for CliError {
    fn from(e: CoronaError) -> Self {
        match e {
            CoronaError::Graph(g) => g.into(),
            _ => CliError::Cap(e.to_string()),
        }
    }
}

/// Destination of artifacts: files in a directory, or stdout with the summary
/// moved to stderr.
struct Sink {
    dir: Option<PathBuf>,
    summary: Vec<String>,
}

impl Sink {
    fn new(dir: Option<&Path>) -> Result<Self, CliError> {
        if let Some(d) = dir {
            fs::create_dir_all(d).map_err(|e| CliError::Io(format!("{}: {e}", d.display())))?;
        }
        Ok(Sink { dir: dir.map(Path::to_path_buf), summary: Vec::new() })
    }

    fn say(&mut self, line: String) {
        self.summary.push(line);
    }

    fn emit(&self, name: &str, content: &str) -> Result<(), CliError> {
        match &self.dir {
            Some(d) => {
                let path = d.join(name);
                fs::write(&path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
            }
            None => {
                print!("{content}");
                Ok(())
            }
        }
    }

    fn finish(self) {
        for line in &self.summary {
            if self.dir.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
        }
    }
}

fn read_input(input: &str) -> Result<String, CliError> {
    let path = Path::new(input);
    if path.is_file() {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{input}: {e}")))
    } else {
        Ok(input.to_string())
    }
}

fn json_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

fn json_rows(v: &Value, what: &str) -> Result<Vec<Vec<BigInt>>, CliError> {
    let bad = || CliError::Invalid(format!("{what} must be an array of integer arrays"));
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|row| row.as_array().ok_or_else(bad)?.iter().map(|c| json_int(c).ok_or_else(bad)).collect())
        .collect()
}

fn parse_tile(input: &str) -> Result<TileSystem, CliError> {
    let text = read_input(input)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("tile input: {e}")))?;
    let m = json_rows(&value["M"], "M")?;
    let d = json_rows(&value["D"], "D")?;
    let matrix = IntMatrix::from_rows(m)?;
    Ok(TileSystem::new(matrix, d.into_iter().map(IntVector::new).collect())?)
}

fn parse_basis(text: &str) -> Result<Vec<Vector>, CliError> {
    text.split(';')
        .map(|v| {
            v.split(',')
                .map(|c| c.trim().parse::<BigInt>())
                .collect::<Result<Vec<_>, _>>()
                .map(IntVector::new)
                .map_err(|_| CliError::Invalid(format!("bad basis vector {v:?}")))
        })
        .collect()
}

fn parse_subst(input: &str) -> Result<Substitution, CliError> {
    let text = read_input(input)?;
    let text = if Path::new(input).is_file() { text } else { text.replace(';', "\n") };
    Substitution::parse(&text).map_err(|e| CliError::Invalid(e.to_string()))
}

fn graph_format(common: &Common) -> Result<Format, CliError> {
    match common.format.unwrap_or(Format::Dot) {
        Format::Svg => Err(CliError::Invalid("graphs are written as dot or json".into())),
        f => Ok(f),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn run_tile(action: TileAction) -> Result<Sink, CliError> {
    match action {
        TileAction::Contact(args) => {
            let t = parse_tile(&args.input)?;
            let basis = args.basis.as_deref().map(parse_basis).transpose()?;
            let run = contact_set(&t, basis.as_deref())?;
            let mut sink = Sink::new(args.common.out.as_deref())?;
            sink.say(format!(
                "R: {} nodes, {} edges; R' stable after {} steps",
                run.graph.node_count(),
                run.graph.edge_count(),
                run.stages
            ));
            emit_lattice(&sink, "contact", &run.graph, graph_format(&args.common)?)?;
            Ok(sink)
        }
        TileAction::Neighbors(args) => {
            let t = parse_tile(&args.input)?;
            let basis = args.basis.as_deref().map(parse_basis).transpose()?;
            let contact = contact_set(&t, basis.as_deref())?.graph;
            let run = algorithm1_with_cap(&t, &contact, args.common.max_iter)?;
            let mut sink = Sink::new(args.common.out.as_deref())?;
            sink.say(format!(
                "S: {} nodes, {} edges; fixpoint after {} iterations; |R_q| = {:?}",
                run.graph.node_count(),
                run.graph.edge_count(),
                run.iterations,
                run.sizes
            ));
            if args.common.oracle {
                let oracle = naive_neighbors(&t, args.common.max_candidates)?;
                if oracle != run.graph {
                    return Err(CliError::Mismatch(format!(
                        "oracle mismatch: corona {} nodes, exhaustive {} nodes",
                        run.graph.node_count(),
                        oracle.node_count()
                    )));
                }
                sink.say("oracle: equal (nodes and labelled edges)".into());
            }
            emit_lattice(&sink, "neighbors", &run.graph, graph_format(&args.common)?)?;
            Ok(sink)
        }
        TileAction::Render(args) => {
            let t = parse_tile(&args.input)?;
            if t.dim() != 2 {
                return Err(CliError::Invalid("only planar tiles can be drawn".into()));
            }
            let patch = approximate_tile(&t, args.common.level, args.common.max_cells)?;
            let mut sink = Sink::new(args.common.out.as_deref())?;
            sink.say(format!("T_{}: {} cells", args.common.level, patch.len()));
            match args.common.format.unwrap_or(Format::Svg) {
                Format::Svg => sink.emit("tile.svg", &formats::tile_patch_svg(&patch).render(800.0))?,
                Format::Json => {
                    let offsets: Vec<Value> = patch.offsets().iter().map(formats::vector_json).collect();
                    let v = serde_json::json!({ "level": patch.level(), "offsets": offsets });
                    sink.emit("tile.json", &pretty(&v))?
                }
                Format::Dot => return Err(CliError::Invalid("drawings are written as svg or json".into())),
            }
            Ok(sink)
        }
    }
}

fn emit_lattice(sink: &Sink, name: &str, g: &tilegraph::LatticeGraph, format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => sink.emit(&format!("{name}.json"), &pretty(&formats::lattice_graph_json(g))),
        _ => sink.emit(&format!("{name}.dot"), &formats::lattice_graph_dot(g, name)),
    }
}

fn emit_rauzy(sink: &Sink, name: &str, sys: &PisotSystem, g: &SimpleGraph, args: &SubstArgs) -> Result<(), CliError> {
    let format = graph_format(&args.common)?;
    if args.simple {
        return match format {
            Format::Json => sink.emit(&format!("{name}.json"), &pretty(&formats::simple_graph_json(g))),
            _ => sink.emit(&format!("{name}.dot"), &formats::simple_graph_dot(g, name)),
        };
    }
    let normalized = from_simple(sys, g)?;
    match format {
        Format::Json => sink.emit(&format!("{name}.json"), &pretty(&formats::normalized_graph_json(&normalized))),
        _ => sink.emit(&format!("{name}.dot"), &formats::normalized_graph_dot(&normalized, name)),
    }
}

fn load_system(sigma: &Substitution, sink: &mut Sink) -> Result<PisotSystem, CliError> {
    let (cert, cached) = cache::certificate(sink.dir.as_deref(), sigma).map_err(|r| {
        CliError::Invalid(format!("not a Pisot unit substitution: {r}"))
    })?;
    if cached {
        sink.say("spectral data: loaded from cache".into());
    }
    Ok(PisotSystem::from_certificate(sigma, cert)?)
}

fn run_subst(action: SubstAction) -> Result<Sink, CliError> {
    match action {
        SubstAction::Check(args) => {
            let sigma = parse_subst(&args.input)?;
            let mut sink = Sink::new(args.common.out.as_deref())?;
            let sys = load_system(&sigma, &mut sink)?;
            let cert = sys.certificate();
            sink.say(format!(
                "Pisot unit: characteristic polynomial {}; β ≈ {:.12}; {} conjugates inside the unit disk",
                cert.charpoly,
                cert.beta_isolation().to_f64(),
                cert.conjugates_inside
            ));
            Ok(sink)
        }
        SubstAction::Psgraph(args) => {
            let sigma = parse_subst(&args.input)?;
            let mut sink = Sink::new(args.common.out.as_deref())?;
            let edges = prefix_suffix_graph(&sigma);
            sink.say(format!("prefix-suffix graph: {} letters, {} edges", sigma.alphabet_size(), edges.len()));
            match graph_format(&args.common)? {
                Format::Json => sink.emit("psgraph.json", &pretty(&formats::psgraph_json(&sigma, &edges)))?,
                _ => sink.emit("psgraph.dot", &formats::psgraph_dot(&sigma, &edges))?,
            }
            Ok(sink)
        }
        SubstAction::Contact(args) => {
            let sigma = parse_subst(&args.input)?;
            let mut sink = Sink::new(args.common.out.as_deref())?;
            let sys = load_system(&sigma, &mut sink)?;
            let run = contact_graph_with_cap(&sys, tilegraph::rauzygraphs::DEFAULT_CLOSURE_CAP)?;
            let normalized = from_simple(&sys, &run.graph)?;
            sink.say(format!(
                "G_C: {} nodes (simple: {}; merged: {})",
                normalized.node_count(),
                run.graph.node_count(),
                merged_node_count(&run.graph)
            ));
            emit_rauzy(&sink, "contact", &sys, &run.graph, &args)?;
            Ok(sink)
        }
        SubstAction::Neighbors(args) => {
            let sigma = parse_subst(&args.input)?;
            let mut sink = Sink::new(args.common.out.as_deref())?;
            let sys = load_system(&sigma, &mut sink)?;
            let contact = contact_graph_with_cap(&sys, tilegraph::rauzygraphs::DEFAULT_CLOSURE_CAP)?.graph;
            let run = algorithm2_from(&sys, &contact, args.common.max_iter)?;
            let normalized = from_simple(&sys, &run.graph)?;
            sink.say(format!(
                "G_B: {} nodes (simple: {}; merged: {}); fixpoint after {} iterations; G_B = G_C: {}",
                normalized.node_count(),
                run.graph.node_count(),
                merged_node_count(&run.graph),
                run.iterations,
                run.graph == run.contact
            ));
            if args.common.oracle {
                let oracle = naive_boundary_graph(&sys, args.common.max_candidates)?;
                if oracle != run.graph {
                    return Err(CliError::Mismatch(format!(
                        "oracle mismatch: corona {} nodes, exhaustive {} nodes",
                        run.graph.node_count(),
                        oracle.node_count()
                    )));
                }
                sink.say("oracle: equal (nodes and labelled edges)".into());
            }
            emit_rauzy(&sink, "neighbors", &sys, &run.graph, &args)?;
            if sink.dir.is_some() {
                sink.emit("report.json", &pretty(&run.report_json()))?;
            }
            Ok(sink)
        }
        SubstAction::Render(args) => {
            let sigma = parse_subst(&args.input)?;
            let mut sink = Sink::new(args.common.out.as_deref())?;
            let sys = load_system(&sigma, &mut sink)?;
            let projector = Projector::new(&sys, args.precision);
            let letters: Vec<Letter> = match args.letter {
                Some(l) if l >= 1 && l as usize <= sys.dim() => vec![l],
                Some(l) => return Err(CliError::Invalid(format!("letter {l} is outside the alphabet"))),
                None => sys.letters().collect(),
            };
            let level = args.common.level;
            let patches = letters
                .iter()
                .map(|&l| approximate_subtile(&sys, &projector, l, level, args.common.max_cells))
                .collect::<Result<Vec<_>, _>>()?;
            for p in &patches {
                sink.say(format!("R_{level}({}): {} cells", p.letter, p.len()));
            }
            let stem = match args.letter {
                Some(l) => format!("subtile-{l}"),
                None => "rauzy".to_string(),
            };
            match args.common.format.unwrap_or(Format::Svg) {
                Format::Svg => sink.emit(&format!("{stem}.svg"), &formats::subtile_svg(&patches).render(800.0))?,
                Format::Json => {
                    let mut faces = Vec::new();
                    for &l in &letters {
                        let seed = BTreeSet::from([tilegraph::Face::origin(sys.dim(), l)]);
                        faces.extend(sys.iterate_dual(&seed, level)?);
                    }
                    sink.emit(&format!("{stem}.json"), &pretty(&formats::faces_json(&faces)))?
                }
                Format::Dot => return Err(CliError::Invalid("drawings are written as svg or json".into())),
            }
            Ok(sink)
        }
        SubstAction::Stepped(args) => {
            let sigma = parse_subst(&args.input)?;
            let mut sink = Sink::new(args.common.out.as_deref())?;
            let sys = load_system(&sigma, &mut sink)?;
            if args.radius < 0 {
                return Err(CliError::Invalid("radius must be non-negative".into()));
            }
            let mut faces = sys.stepped_patch(args.radius);
            faces.sort();
            sink.say(format!("H_σ: {} faces with ‖x‖∞ ≤ {}", faces.len(), args.radius));
            match args.common.format.unwrap_or(Format::Svg) {
                Format::Svg => {
                    let projector = Projector::new(&sys, args.precision);
                    sink.emit("stepped.svg", &formats::stepped_svg(&faces, &projector).render(800.0))?
                }
                Format::Json => sink.emit("stepped.json", &pretty(&formats::faces_json(&faces)))?,
                Format::Dot => return Err(CliError::Invalid("faces are written as svg or json".into())),
            }
            Ok(sink)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tile { action } => run_tile(action),
        Command::Subst { action } => run_subst(action),
    };
    match result {
        Ok(sink) => {
            sink.finish();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
