//! Monotone spanning graphs of planar point sets.
//!
//! Builds the rectangle of influence graph for an axis pair, finds the axis
//! pair minimising cost or edge count by an exact angular sweep, and
//! approximates rooted variants where some points must be reachable from
//! designated roots.

pub mod generate;
pub mod geom;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod rig;
pub mod rooted;
pub mod sweep;

/// What a uniform sweep minimises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Total Euclidean length.
    Cost,
    /// Number of edges.
    Edges,
}

pub use generate::{generate, GenerateError, Generated};
pub use geom::{Direction, EventSchedule, GeomError, Point, PointSet, ValidationReport, Violation};
pub use graph::{Edge, GeometricGraph, GraphError, RootedPointSet};
pub use io::{IoError, PointInput};
pub use oracle::{OracleBudget, OracleError, ScanResult};
pub use rig::{rectangle_of_influence_graph, xy_mmsg, InclusionCounts};
pub use rooted::{k_rooted_2approx, rooted_y_mmsg, two_rooted_2approx, RootedError};
pub use sweep::{least_edges_uniform, ummsg, SweepError, UniformSolution};
