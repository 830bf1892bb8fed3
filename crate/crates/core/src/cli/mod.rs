//! Command-line front end. [`run`] parses arguments and returns the report
//! text and exit code without touching the process, so it is testable
//! in-process; the binary only prints the outcome.
//!
//! Exit codes: 0 success, 1 negative verdict under `--strict`, 2 input
//! error, 3 resource cap.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cube::{check_npc, check_weakly_special, davis_chamber, salvetti, ComplexError, CubeComplex};
use crate::flats::{ball_flat_graph, g1_classifier, join_witness, local_flat_graph, FlatError, G1Class, WitnessOutcome};
use crate::graph::io::{parse_json, parse_text, to_dot, GraphJson};
use crate::graph::{
    complement_graph, find_top_hyperoctahedron, join_decomposition, property_pd, FlagComplex, GraphError,
    SimplicialGraph,
};
use crate::homology::{
    boundary_matrices, link_support_check, support_link, support_set, vertex_antipode_check, HomologyError,
};
use crate::raag::{DevelopedBall, GeometryError, GroupElement, Raag, StandardSubcomplex, DEFAULT_CAP};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable limiting the worker thread count.
pub const THREADS_ENV: &str = "ORTHANTKIT_THREADS";

#[derive(Parser, Debug)]
#[command(name = "orthantkit", version, about = "Cube complexes, RAAG geometry and flat-graph invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug, Clone)]
struct Options {
    /// Input file (`-` for stdin). May also be given positionally.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Input format; `auto` picks JSON when the input starts with `{`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Auto)]
    format: Format,
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Vertex cap for developed balls.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Rank for flat graphs.
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Exit 1 when the main verdict is negative.
    #[arg(long, global = true)]
    strict: bool,
    /// Also write a DOT rendering to this path.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Complex built from a graph input.
    #[arg(long, global = true, value_enum, default_value_t = Build::Salvetti)]
    of: Build,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Auto,
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Build {
    Salvetti,
    Davis,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// Input file (`-` for stdin).
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graph-level invariants.
    Graph {
        #[command(subcommand)]
        action: GraphCmd,
    },
    /// Build a cube complex from a graph.
    Build {
        #[command(subcommand)]
        action: BuildCmd,
    },
    /// Curvature and specialness checks.
    Check {
        #[command(subcommand)]
        action: CheckCmd,
    },
    /// Develop the ball of radius `--radius` in the universal cover.
    Develop {
        #[command(flatten)]
        src: Source,
        /// Center of the ball as a word.
        #[arg(long)]
        center: Option<String>,
    },
    /// Median of three vertices.
    Median {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// Gate of a vertex on a standard subcomplex such as `c<a,b>`.
    Gate {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        x: String,
        #[arg(long)]
        flat: String,
    },
    /// Coarse intersection of two standard subcomplexes.
    Coarse {
        #[command(flatten)]
        src: Source,
        #[arg(long, num_args = 2, value_names = ["FIRST", "SECOND"])]
        flats: Vec<String>,
    },
    /// Flat graphs and the diameter classifier.
    Flats {
        #[command(subcommand)]
        action: FlatsCmd,
    },
    /// Z/2 homology of the top dimension.
    Homology {
        #[command(subcommand)]
        action: HomologyCmd,
    },
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    Analyze(Source),
}

#[derive(Subcommand, Debug)]
enum BuildCmd {
    Salvetti(Source),
    Davis(Source),
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    Npc(Source),
    WeaklySpecial(Source),
}

#[derive(Subcommand, Debug)]
enum FlatsCmd {
    Local(Source),
    Ball(Source),
    Classify(Source),
    Witness(Source),
}

#[derive(Subcommand, Debug)]
enum HomologyCmd {
    Top {
        #[command(flatten)]
        src: Source,
        /// Include boundary matrices as `row col` triplets.
        #[arg(long)]
        triplets: bool,
    },
    Support {
        #[command(flatten)]
        src: Source,
        /// Index into the top cycle basis.
        #[arg(long, default_value_t = 0)]
        cycle: usize,
    },
    Antipode {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 0)]
        cycle: usize,
    },
}

/// Machine-readable report printed by every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool: String,
    pub command: String,
    /// Echo of the parsed input.
    pub input: Value,
    /// Radii, ranks and caps the results were computed under.
    pub parameters: BTreeMap<String, Value>,
    pub result: Value,
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::VertexBound { .. } | ComplexError::TooManyCells { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<FlatError> for Failure {
    fn from(e: FlatError) -> Self {
        match e {
            FlatError::Geometry(g) => g.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Apply [`THREADS_ENV`] to the global thread pool, once.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parse `args` (including the program name) and execute the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((report, negative)) => {
            let mut stdout = serde_json::to_string_pretty(&report).expect("reports serialize");
            stdout.push('\n');
            Outcome {
                code: if negative && cli.opts.strict { 1 } else { 0 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => {
            let (Failure::Input(m) | Failure::Cap(m)) = &f;
            Outcome {
                code: f.code(),
                stdout: String::new(),
                stderr: format!("error: {m}\n"),
            }
        }
    }
}

fn read_source(opts: &Options, src: &Source) -> Result<String, Failure> {
    let path = match (&src.file, &opts.input) {
        (Some(_), Some(_)) => return Err(Failure::Input("give the input either positionally or with --input".into())),
        (Some(p), None) | (None, Some(p)) => p.clone(),
        (None, None) => PathBuf::from("-"),
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(&path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn parse_graph_with(text: &str, format: Format) -> Result<SimplicialGraph, Failure> {
    let json = match format {
        Format::Auto => text.trim_start().starts_with('{'),
        Format::Json => true,
        Format::Text => false,
    };
    Ok(if json { parse_json(text)? } else { parse_text(text)? })
}

/// Read a graph in edge-list or JSON form.
pub fn parse_graph_input(text: &str) -> Result<SimplicialGraph, String> {
    parse_graph_with(text, Format::Auto).map_err(|e| match e {
        Failure::Input(m) | Failure::Cap(m) => m,
    })
}

fn load_graph(opts: &Options, src: &Source) -> Result<SimplicialGraph, Failure> {
    parse_graph_with(&read_source(opts, src)?, opts.format)
}

/// A complex from a complex-JSON input (one with a `cubes` key), or built
/// from a graph input according to `--of`.
fn load_complex(opts: &Options, src: &Source) -> Result<(CubeComplex, Value, Value), Failure> {
    let text = read_source(opts, src)?;
    let is_complex = serde_json::from_str::<Value>(&text)
        .ok()
        .is_some_and(|v| v.get("cubes").is_some());
    if is_complex {
        let x = CubeComplex::from_json_str(&text)?;
        let echo = serde_json::to_value(x.to_json()).expect("complex serializes");
        return Ok((x, echo, json!("complex")));
    }
    let g = parse_graph_with(&text, opts.format)?;
    let echo = graph_echo(&g);
    let x = match opts.of {
        Build::Salvetti => salvetti(&g),
        Build::Davis => davis_chamber(&g)?,
    };
    Ok((x, echo, serde_json::to_value(opts.of).expect("build kind serializes")))
}

fn graph_echo(g: &SimplicialGraph) -> Value {
    serde_json::to_value(GraphJson::from(g)).expect("graph serializes")
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("result serializes")
}

fn write_dot(opts: &Options, dot: impl FnOnce() -> String) -> Result<(), Failure> {
    if let Some(path) = &opts.dot {
        fs::write(path, dot()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn ball_for(opts: &Options, g: &SimplicialGraph, default_radius: usize) -> Result<DevelopedBall, Failure> {
    let radius = opts.radius.unwrap_or(default_radius);
    Ok(DevelopedBall::develop(
        Raag::new(g.clone()),
        GroupElement::identity(),
        radius,
        opts.cap,
    )?)
}

/// Parse `rep<a,b>`; `<a,b>` has the identity as representative.
fn parse_subcomplex(raag: &Raag, s: &str) -> Result<StandardSubcomplex, Failure> {
    let bad = || Failure::Input(format!("expected a subcomplex like `c<a,b>`, got `{s}`"));
    let (rep, rest) = s.split_once('<').ok_or_else(bad)?;
    let gens = rest.trim_end().strip_suffix('>').ok_or_else(bad)?;
    let rep = raag.parse(rep)?;
    let names: Vec<&str> = gens.split(',').map(str::trim).filter(|n| !n.is_empty()).collect();
    let mask = raag.graph().mask_of(&names)?;
    Ok(StandardSubcomplex::new(raag, &rep, mask))
}

const DEFAULT_QUERY_RADIUS: usize = 4;
const DEFAULT_FLAT_RADIUS: usize = 2;

type Executed = (AnalysisReport, bool);

fn report(command: &str, input: Value, parameters: BTreeMap<String, Value>, result: Value) -> AnalysisReport {
    AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool: format!("orthantkit {}", env!("CARGO_PKG_VERSION")),
        command: command.to_owned(),
        input,
        parameters,
        result,
    }
}

fn params<const N: usize>(entries: [(&str, Value); N]) -> BTreeMap<String, Value> {
    entries.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
}

fn execute(cli: &Cli) -> Result<Executed, Failure> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Graph { action: GraphCmd::Analyze(src) } => graph_analyze(opts, src),
        Command::Build { action } => {
            let (src, kind) = match action {
                BuildCmd::Salvetti(s) => (s, Build::Salvetti),
                BuildCmd::Davis(s) => (s, Build::Davis),
            };
            let g = load_graph(opts, src)?;
            let x = match kind {
                Build::Salvetti => salvetti(&g),
                Build::Davis => davis_chamber(&g)?,
            };
            let result = json!({ "counts": x.counts(), "complex": x.to_json() });
            let name = if kind == Build::Salvetti { "build salvetti" } else { "build davis" };
            Ok((report(name, graph_echo(&g), BTreeMap::new(), result), false))
        }
        Command::Check { action } => {
            let (src, weak) = match action {
                CheckCmd::Npc(s) => (s, false),
                CheckCmd::WeaklySpecial(s) => (s, true),
            };
            let (x, echo, built) = load_complex(opts, src)?;
            let p = params([("complex", built)]);
            if weak {
                let r = check_weakly_special(&x);
                let negative = !r.weakly_special;
                Ok((report("check weakly-special", echo, p, to_value(&r)), negative))
            } else {
                let r = check_npc(&x);
                let negative = !r.npc;
                Ok((report("check npc", echo, p, to_value(&r)), negative))
            }
        }
        Command::Develop { src, center } => {
            let g = load_graph(opts, src)?;
            let radius = opts
                .radius
                .ok_or_else(|| Failure::Input("develop needs --radius".into()))?;
            let raag = Raag::new(g.clone());
            let center = raag.parse(center.as_deref().unwrap_or(""))?;
            let ball = DevelopedBall::develop(raag, center, radius, opts.cap)?;
            let result = json!({
                "counts": ball.counts(),
                "wallCount": ball.wall_count(),
                "ball": ball.to_json(),
            });
            let p = params([("radius", json!(radius)), ("cap", json!(opts.cap))]);
            Ok((report("develop", graph_echo(&g), p, result), false))
        }
        Command::Median { src, x, y, z } => {
            let g = load_graph(opts, src)?;
            let ball = ball_for(opts, &g, DEFAULT_QUERY_RADIUS)?;
            let raag = ball.raag();
            let ids = [x, y, z]
                .iter()
                .map(|s| Ok(ball.require(&raag.parse(s)?)?))
                .collect::<Result<Vec<usize>, Failure>>()?;
            let m = ball.median(ids[0], ids[1], ids[2])?;
            let result = json!({
                "points": ids.iter().map(|&i| raag.format(ball.vertex(i))).collect::<Vec<_>>(),
                "median": raag.format(ball.vertex(m)),
            });
            let p = params([("radius", json!(ball.radius())), ("cap", json!(opts.cap))]);
            Ok((report("median", graph_echo(&g), p, result), false))
        }
        Command::Gate { src, x, flat } => {
            let g = load_graph(opts, src)?;
            let ball = ball_for(opts, &g, DEFAULT_QUERY_RADIUS)?;
            let raag = ball.raag();
            let c = parse_subcomplex(raag, flat)?;
            let v = ball.require(&raag.parse(x)?)?;
            let gate = ball.gate(v, &c)?;
            let result = json!({
                "point": raag.format(ball.vertex(v)),
                "subcomplex": c.describe(raag),
                "gate": raag.format(ball.vertex(gate)),
                "distance": ball.distance(v, gate),
            });
            let p = params([("radius", json!(ball.radius())), ("cap", json!(opts.cap))]);
            Ok((report("gate", graph_echo(&g), p, result), false))
        }
        Command::Coarse { src, flats } => {
            let g = load_graph(opts, src)?;
            if flats.len() != 2 {
                return Err(Failure::Input("coarse needs --flats FIRST SECOND".into()));
            }
            let ball = ball_for(opts, &g, DEFAULT_QUERY_RADIUS)?;
            let raag = ball.raag();
            let c1 = parse_subcomplex(raag, &flats[0])?;
            let c2 = parse_subcomplex(raag, &flats[1])?;
            let ci = ball.coarse_intersection(&c1, &c2)?;
            let name = |v: usize| raag.format(ball.vertex(v));
            let result = json!({
                "first": c1.describe(raag),
                "second": c2.describe(raag),
                "delta": ci.delta,
                "directions": g.names_of(ci.directions),
                "y1": ci.y1.iter().map(|&v| name(v)).collect::<Vec<_>>(),
                "y2": ci.y2.iter().map(|&v| name(v)).collect::<Vec<_>>(),
                "pairs": ci.pairs.iter().map(|&(a, b)| (name(a), name(b))).collect::<Vec<_>>(),
                "y1Subcomplex": ci.y1_subcomplex.as_ref().map(|s| s.describe(raag)),
                "y2Subcomplex": ci.y2_subcomplex.as_ref().map(|s| s.describe(raag)),
            });
            let p = params([("radius", json!(ball.radius())), ("cap", json!(opts.cap))]);
            Ok((report("coarse", graph_echo(&g), p, result), false))
        }
        Command::Flats { action } => flats(opts, action),
        Command::Homology { action } => homology(opts, action),
    }
}

fn graph_analyze(opts: &Options, src: &Source) -> Result<Executed, Failure> {
    let g = load_graph(opts, src)?;
    let join = join_decomposition(&g)?;
    let flag = FlagComplex::new(g.clone());
    let dim = flag.dimension().unwrap_or(0);
    let pd = (1..=dim + 1)
        .map(|d| property_pd(&g, d))
        .collect::<Result<Vec<_>, _>>()?;
    let octahedron = find_top_hyperoctahedron(&g);
    let g1 = g1_classifier(&g)?;
    write_dot(opts, || to_dot(&g, "graph"))?;
    let negative = !pd[0].holds;
    let result = json!({
        "vertexCount": g.vertex_count(),
        "edgeCount": g.edge_count(),
        "complement": GraphJson::from(&complement_graph(&g)),
        "joinDecomposition": join,
        "joinParts": join.part_count(),
        "flagDimension": dim,
        "fVector": flag.f_vector(),
        "pd": pd,
        "topHyperoctahedron": octahedron.is_some(),
        "hyperoctahedronPairs": octahedron,
        "g1": g1,
    });
    Ok((report("graph analyze", graph_echo(&g), BTreeMap::new(), result), negative))
}

fn flats(opts: &Options, action: &FlatsCmd) -> Result<Executed, Failure> {
    match action {
        FlatsCmd::Local(src) => {
            let g = load_graph(opts, src)?;
            let d = opts.d.unwrap_or(1);
            let raag = Raag::new(g.clone());
            let fg = local_flat_graph(&g, d)?;
            write_dot(opts, || fg.to_dot(&raag, "local"))?;
            let j = fg.to_json(&raag);
            let negative = !j.connected;
            Ok((report("flats local", graph_echo(&g), params([("d", json!(d))]), to_value(&j)), negative))
        }
        FlatsCmd::Ball(src) => {
            let g = load_graph(opts, src)?;
            let d = opts.d.unwrap_or(1);
            let ball = ball_for(opts, &g, DEFAULT_FLAT_RADIUS)?;
            let fg = ball_flat_graph(&ball, d)?;
            write_dot(opts, || fg.to_dot(ball.raag(), "ball"))?;
            let j = fg.to_json(ball.raag());
            let negative = !j.connected;
            let p = params([("d", json!(d)), ("radius", json!(ball.radius())), ("cap", json!(opts.cap))]);
            Ok((report("flats ball", graph_echo(&g), p, to_value(&j)), negative))
        }
        FlatsCmd::Classify(src) => {
            let g = load_graph(opts, src)?;
            let c = g1_classifier(&g)?;
            let negative = matches!(c, G1Class::Infinite { .. });
            Ok((report("flats classify", graph_echo(&g), BTreeMap::new(), to_value(&c)), negative))
        }
        FlatsCmd::Witness(src) => {
            let g = load_graph(opts, src)?;
            let w = join_witness(&g)?;
            let negative = match &w {
                WitnessOutcome::Witness(r) => !(r.geodesic_verified && r.separation_verified),
                WitnessOutcome::NotApplicable => true,
            };
            Ok((report("flats witness", graph_echo(&g), BTreeMap::new(), to_value(&w)), negative))
        }
    }
}

fn homology(opts: &Options, action: &HomologyCmd) -> Result<Executed, Failure> {
    let (src, name) = match action {
        HomologyCmd::Top { src, .. } => (src, "homology top"),
        HomologyCmd::Support { src, .. } => (src, "homology support"),
        HomologyCmd::Antipode { src, .. } => (src, "homology antipode"),
    };
    let (x, echo, built) = load_complex(opts, src)?;
    let c = boundary_matrices(&x);
    let basis = c.top_cycle_basis();
    let top = c.dimension().unwrap_or(0);
    let pick = |i: usize| -> Result<Vec<usize>, Failure> {
        if basis.is_empty() {
            return Ok(Vec::new());
        }
        basis
            .get(i)
            .cloned()
            .ok_or_else(|| Failure::Input(format!("cycle index {i} out of range 0..{}", basis.len())))
    };
    match action {
        HomologyCmd::Top { triplets, .. } => {
            let ranks: Vec<usize> = (0..=top).map(|k| c.boundary(k).map_or(0, |m| m.rank())).collect();
            let mut result = json!({
                "dimension": c.dimension(),
                "cellCounts": x.counts(),
                "boundaryRanks": ranks,
                "chainComplex": c.is_chain_complex(),
                "topCycleDimension": basis.len(),
                "topCycleBasis": basis,
            });
            if *triplets {
                let t: BTreeMap<String, String> = (1..=top)
                    .filter_map(|k| c.to_triplets(k).map(|s| (k.to_string(), s)))
                    .collect();
                result["boundaryTriplets"] = to_value(&t);
            }
            let negative = basis.is_empty();
            Ok((report(name, echo, params([("complex", built)]), result), negative))
        }
        HomologyCmd::Support { cycle, .. } => {
            let s = support_set(&c, &pick(*cycle)?)?;
            let checks: Vec<_> = x.vertices().iter().map(|&v| link_support_check(&x, &s, v)).collect();
            let holds = checks.iter().all(|r| r.holds);
            let result = json!({ "support": s, "linkChecks": checks, "holds": holds });
            let p = params([("complex", built), ("cycle", json!(cycle))]);
            Ok((report(name, echo, p, result), !holds))
        }
        HomologyCmd::Antipode { cycle, .. } => {
            let s = support_set(&c, &pick(*cycle)?)?;
            let mut per_vertex = Vec::new();
            for &v in x.vertices() {
                let link = crate::cube::vertex_link(&x, v);
                let sub = support_link(&x, &link, &s);
                let r = vertex_antipode_check(&link, &sub)?;
                per_vertex.push(json!({ "vertex": v, "report": r }));
            }
            let pass = per_vertex.iter().all(|r| r["report"]["pass"] == json!(true));
            let result = json!({ "pass": pass, "vertices": per_vertex });
            let p = params([("complex", built), ("cycle", json!(cycle))]);
            Ok((report(name, echo, p, result), !pass))
        }
    }
}
