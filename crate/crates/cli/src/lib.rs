//! Command-line front end: argument types and a testable `run`.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monospan::geom::{validate_general_position, Direction, GeomError, PointSet};
use monospan::graph::{
    is_k_rooted_y_monotone, is_uniform_2d_monotone, is_xy_monotone_connected,
    is_y_monotone_connected, GeometricGraph, GraphError, RootedPointSet,
};
use monospan::io::{
    graph_to_edges, graph_to_json, graph_to_svg, parse_graph_edges, parse_points, points_to_json,
    points_to_text, PointInput,
};
use monospan::oracle::{
    brute_min_k_rooted, brute_min_xy_spanning, sampled_angle_scan, OracleBudget, OracleError,
};
use monospan::rational::parse_rational;
use monospan::rooted::{k_rooted_2approx, rooted_y_mmsg, RootedError};
use monospan::sweep::{least_edges_uniform, ummsg, SweepError};
use monospan::{generate, Objective};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(
    name = "monospan",
    version,
    about = "Monotone spanning graphs of planar point sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rectangle of influence graph for one axis pair.
    Rig(DirectedArgs),
    /// Minimum-cost xy-monotone spanning graph for one axis pair.
    XyMmsg(DirectedArgs),
    /// Minimum-cost uniform 2D-monotone spanning graph over all axis pairs.
    Ummsg(GraphArgs),
    /// Uniform 2D-monotone spanning graph with the fewest edges.
    LeastEdges(GraphArgs),
    /// Minimum-cost y-monotone spanning graph for a single root.
    Rooted(GraphArgs),
    /// k-rooted y-monotone spanning graph within twice the optimum.
    KrootedApprox(GraphArgs),
    /// Monotonicity properties of a given graph.
    Check(CheckArgs),
    /// Exhaustive or sampled reference solutions for small inputs.
    Oracle(OracleArgs),
    /// General-position report.
    Validate(InputArgs),
    /// Random point set in general position.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Point file (`x y [r]` lines or JSON); standard input when omitted.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Edges,
    Svg,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: GraphFormat,
}

#[derive(Debug, Args)]
pub struct DirectedArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Counterclockwise rotation in degrees, or a `dx,dy` vector for the y' axis.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub axes: String,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Graph JSON with an `edges` array.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub axes: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Xy,
    Rooted,
    Scan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Cost,
    Edges,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value = "xy")]
    pub kind: OracleKind,
    #[arg(long, value_enum, default_value = "cost")]
    pub objective: ObjectiveArg,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub axes: String,
    /// Largest number of edge subsets the exhaustive search may face.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Directions sampled by the scan.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PointFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: PointFormat,
}

/// Failure with its exit code: 1 for unreadable input, 2 for degenerate input.
struct Failure {
    code: i32,
    message: String,
    report: Option<serde_json::Value>,
}

impl Failure {
    fn parse(message: impl ToString) -> Self {
        Failure {
            code: 1,
            message: message.to_string(),
            report: None,
        }
    }

    fn degenerate(message: impl ToString, report: serde_json::Value) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
            report: Some(report),
        }
    }
}

fn tied_y_report(a: usize, b: usize) -> serde_json::Value {
    json!({ "violations": [{ "kind": "tied_y", "points": [a, b] }] })
}

fn validation_report(points: &PointSet) -> serde_json::Value {
    serde_json::to_value(validate_general_position(points)).expect("serialisable")
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TiedY(a, b) => Failure::degenerate(&e, tied_y_report(a, b)),
            other => Failure::parse(other),
        }
    }
}

impl From<RootedError> for Failure {
    fn from(e: RootedError) -> Self {
        match e {
            RootedError::Graph(g) => g.into(),
            other => Failure::parse(other),
        }
    }
}

pub fn parse_axes(text: &str) -> Result<Direction, String> {
    let bad = |e: &dyn std::fmt::Display| format!("invalid --axes {text:?}: {e}");
    match text.split_once(',') {
        Some((dx, dy)) => {
            let dx = parse_rational(dx).map_err(|e| bad(&e))?;
            let dy = parse_rational(dy).map_err(|e| bad(&e))?;
            Direction::from_rational(&dx, &dy).map_err(|e| bad(&e))
        }
        None => {
            let deg: f64 = text.trim().parse().map_err(|e| bad(&e))?;
            if !deg.is_finite() {
                return Err(bad(&"angle must be finite"));
            }
            Direction::from_degrees(deg).map_err(|e| bad(&e))
        }
    }
}

fn read_input(args: &InputArgs, stdin: &mut dyn Read) -> Result<PointInput, Failure> {
    let text = match &args.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            stdin.read_to_string(&mut buf).map_err(Failure::parse)?;
            buf
        }
    };
    parse_points(&text).map_err(Failure::parse)
}

fn render(
    g: &GeometricGraph,
    d: Direction,
    roots: &[usize],
    format: GraphFormat,
    axes: bool,
) -> String {
    match format {
        GraphFormat::Json => graph_to_json(g, d) + "\n",
        GraphFormat::Edges => graph_to_edges(g),
        GraphFormat::Svg => graph_to_svg(g, roots, axes.then_some(d)),
    }
}

fn require_general_position(points: &PointSet) -> Result<(), Failure> {
    let report = validate_general_position(points);
    if report.is_valid() {
        return Ok(());
    }
    Err(Failure::degenerate(
        "input is not in general position",
        serde_json::to_value(report).expect("serialisable"),
    ))
}

fn sweep_failure(e: SweepError, points: &PointSet) -> Failure {
    match e {
        SweepError::Geom(GeomError::DegenerateInput(m)) => {
            Failure::degenerate(m, validation_report(points))
        }
        other => Failure::parse(other),
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    Failure::parse(e)
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<String, Failure> {
    match &cli.command {
        Command::Rig(a) | Command::XyMmsg(a) => {
            let d = parse_axes(&a.axes).map_err(Failure::parse)?;
            let input = read_input(&a.graph.input, stdin)?;
            let g = monospan::rig::xy_mmsg(&input.points, d).graph;
            Ok(render(
                &g,
                d,
                &input.roots,
                a.graph.format,
                d != Direction::STANDARD,
            ))
        }
        Command::Ummsg(a) | Command::LeastEdges(a) => {
            let input = read_input(&a.input, stdin)?;
            require_general_position(&input.points)?;
            let solve = if matches!(cli.command, Command::Ummsg(_)) {
                ummsg
            } else {
                least_edges_uniform
            };
            let s = solve(&input.points).map_err(|e| sweep_failure(e, &input.points))?;
            Ok(render(&s.graph, s.direction, &input.roots, a.format, true))
        }
        Command::Rooted(a) | Command::KrootedApprox(a) => {
            let input = read_input(&a.input, stdin)?;
            let roots = input.roots.clone();
            let rps = RootedPointSet::new(input.points, roots.iter().copied())?;
            let g = if matches!(cli.command, Command::Rooted(_)) {
                rooted_y_mmsg(&rps)?
            } else {
                k_rooted_2approx(&rps)?
            };
            Ok(render(&g, Direction::STANDARD, &roots, a.format, false))
        }
        Command::Check(a) => {
            let d = parse_axes(&a.axes).map_err(Failure::parse)?;
            let input = read_input(&a.input, stdin)?;
            let text = fs::read_to_string(&a.graph)
                .map_err(|e| Failure::parse(format!("{}: {e}", a.graph.display())))?;
            let edges = parse_graph_edges(&text).map_err(Failure::parse)?;
            let g = GeometricGraph::from_edges(&input.points, edges).map_err(Failure::parse)?;
            let y_monotone = is_y_monotone_connected(&g, d).ok();
            let uniform = is_uniform_2d_monotone(&g)
                .map_err(Failure::parse)?
                .map(|w| json!({ "dx": w.dx().to_string(), "dy": w.dy().to_string() }));
            let rooted = if input.roots.is_empty() {
                None
            } else {
                let frame_roots: Vec<usize> = {
                    let mut r = input.roots.clone();
                    r.sort_by_key(|&i| input.points.frame(d).v(i));
                    r
                };
                Some(is_k_rooted_y_monotone(&g, &frame_roots, d)?)
            };
            let value = json!({
                "xy_monotone": is_xy_monotone_connected(&g, d),
                "y_monotone": y_monotone,
                "uniform_2d_monotone": uniform,
                "k_rooted_y_monotone": rooted,
            });
            Ok(serde_json::to_string_pretty(&value).expect("serialisable") + "\n")
        }
        Command::Oracle(a) => {
            let input = read_input(&a.graph.input, stdin)?;
            let mut budget = OracleBudget::default();
            if let Some(b) = a.budget {
                budget.max_edge_subsets = b;
            }
            if let Some(s) = a.samples {
                budget.samples = s;
            }
            let objective = match a.objective {
                ObjectiveArg::Cost => Objective::Cost,
                ObjectiveArg::Edges => Objective::Edges,
            };
            match a.kind {
                OracleKind::Xy => {
                    let d = parse_axes(&a.axes).map_err(Failure::parse)?;
                    let g = brute_min_xy_spanning(&input.points, d, objective, &budget)
                        .map_err(oracle_failure)?;
                    Ok(render(
                        &g,
                        d,
                        &input.roots,
                        a.graph.format,
                        d != Direction::STANDARD,
                    ))
                }
                OracleKind::Rooted => {
                    let roots = input.roots.clone();
                    let rps = RootedPointSet::new(input.points, roots.iter().copied())?;
                    let g = brute_min_k_rooted(&rps, &budget).map_err(oracle_failure)?;
                    Ok(render(
                        &g,
                        Direction::STANDARD,
                        &roots,
                        a.graph.format,
                        false,
                    ))
                }
                OracleKind::Scan => {
                    let r = sampled_angle_scan(&input.points, budget.samples)
                        .map_err(Failure::parse)?;
                    let dir = |d: Direction| json!({ "dx": d.dx().to_string(), "dy": d.dy().to_string() });
                    let value = json!({
                        "cost_direction": dir(r.cost_direction),
                        "cost": r.cost,
                        "edges_direction": dir(r.edges_direction),
                        "edge_count": r.edge_count,
                    });
                    Ok(serde_json::to_string_pretty(&value).expect("serialisable") + "\n")
                }
            }
        }
        Command::Validate(a) => {
            let input = read_input(a, stdin)?;
            let report = validate_general_position(&input.points);
            let value = serde_json::to_value(&report).expect("serialisable");
            if report.is_valid() {
                Ok(serde_json::to_string_pretty(&value).expect("serialisable") + "\n")
            } else {
                Err(Failure::degenerate(
                    "input is not in general position",
                    value,
                ))
            }
        }
        Command::Gen(a) => {
            let g = generate(a.n, a.k, a.seed).map_err(Failure::parse)?;
            Ok(match a.format {
                PointFormat::Text => points_to_text(&g.points, &g.roots),
                PointFormat::Json => points_to_json(&g.points, &g.roots) + "\n",
            })
        }
    }
}

/// Runs one command. Results go to `out`, diagnostics to `err`; degenerate
/// input also writes its report to `out`. Returns the exit code.
pub fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, stdin) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(f) => {
            if let Some(report) = f.report {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serialisable")
                );
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
