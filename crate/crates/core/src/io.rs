//! Point set and graph serialisation.
//!
//! Coordinates always travel as decimal or `num/den` strings, so a set read
//! back from its own output has the same exact rationals.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Direction, GeomError, PointSet};
use crate::graph::GeometricGraph;
use crate::rational::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A parsed input: points plus the indices marked as roots (possibly none).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointInput {
    pub points: PointSet,
    pub roots: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PointRecord {
    x: String,
    y: String,
    #[serde(default)]
    root: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct PointsDocument {
    points: Vec<PointRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DirectionRecord {
    pub dx: String,
    pub dy: String,
}

/// JSON shape of an emitted graph.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphDocument {
    pub direction: DirectionRecord,
    pub edges: Vec<[usize; 2]>,
    pub cost: f64,
    pub edge_count: usize,
}

/// Reads either the line format (`x y [r]`, `#` comments) or the JSON
/// `{"points": [...]}` document, chosen by the first non-blank character.
pub fn parse_points(text: &str) -> Result<PointInput, IoError> {
    if text.trim_start().starts_with('{') {
        parse_points_json(text)
    } else {
        parse_points_text(text)
    }
}

fn parse_points_text(text: &str) -> Result<PointInput, IoError> {
    let mut coords = Vec::new();
    let mut roots = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| IoError::Line {
            line: lineno + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (x, y) = match fields.as_slice() {
            [x, y] => (x, y),
            [x, y, "r"] => {
                roots.push(coords.len());
                (x, y)
            }
            _ => return Err(err(format!("expected `x y [r]`, found {line:?}"))),
        };
        let x = parse_rational(x).map_err(|e| err(e.to_string()))?;
        let y = parse_rational(y).map_err(|e| err(e.to_string()))?;
        coords.push((x, y));
    }
    Ok(PointInput {
        points: PointSet::new(coords)?,
        roots,
    })
}

fn parse_points_json(text: &str) -> Result<PointInput, IoError> {
    let doc: PointsDocument =
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    let mut coords = Vec::with_capacity(doc.points.len());
    let mut roots = Vec::new();
    for (i, p) in doc.points.iter().enumerate() {
        let parse =
            |s: &str| parse_rational(s).map_err(|e| IoError::Json(format!("point {i}: {e}")));
        coords.push((parse(&p.x)?, parse(&p.y)?));
        if p.root {
            roots.push(i);
        }
    }
    Ok(PointInput {
        points: PointSet::new(coords)?,
        roots,
    })
}

/// Edge list of a graph document, as emitted by [`graph_to_json`].
pub fn parse_graph_edges(text: &str) -> Result<Vec<(usize, usize)>, IoError> {
    #[derive(Deserialize)]
    struct EdgesOnly {
        edges: Vec<[usize; 2]>,
    }
    let doc: EdgesOnly = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    Ok(doc.edges.into_iter().map(|[a, b]| (a, b)).collect())
}

pub fn points_to_json(points: &PointSet, roots: &[usize]) -> String {
    let doc = PointsDocument {
        points: points
            .points()
            .iter()
            .map(|p| PointRecord {
                x: format_rational(&p.x),
                y: format_rational(&p.y),
                root: roots.contains(&p.index),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serialisable")
}

pub fn points_to_text(points: &PointSet, roots: &[usize]) -> String {
    let mut out = String::new();
    for p in points.points() {
        let mark = if roots.contains(&p.index) { " r" } else { "" };
        let _ = writeln!(
            out,
            "{} {}{mark}",
            format_rational(&p.x),
            format_rational(&p.y)
        );
    }
    out
}

pub fn graph_document(g: &GeometricGraph, direction: Direction) -> GraphDocument {
    let int = |v: i128| format_rational(&BigRational::from_integer(v.into()));
    GraphDocument {
        direction: DirectionRecord {
            dx: int(direction.dx()),
            dy: int(direction.dy()),
        },
        edges: g.edge_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        cost: g.cost(),
        edge_count: g.edge_count(),
    }
}

pub fn graph_to_json(g: &GeometricGraph, direction: Direction) -> String {
    serde_json::to_string_pretty(&graph_document(g, direction)).expect("serialisable")
}

/// One `i j` line per edge.
pub fn graph_to_edges(g: &GeometricGraph) -> String {
    g.edge_pairs()
        .into_iter()
        .map(|(a, b)| format!("{a} {b}\n"))
        .collect()
}

/// Renders the graph in a 512-unit square with y pointing up. Roots are
/// filled; `axes`, when given, is drawn as a pair of lines through the centre.
pub fn graph_to_svg(g: &GeometricGraph, roots: &[usize], axes: Option<Direction>) -> String {
    const SIZE: f64 = 512.0;
    const MARGIN: f64 = 24.0;
    let points = g.points();
    let n = points.len();
    let xs: Vec<f64> = (0..n).map(|i| points.x_f64(i)).collect();
    let ys: Vec<f64> = (0..n).map(|i| points.y_f64(i)).collect();
    let bounds = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lo.is_finite() {
            (lo, hi)
        } else {
            (0.0, 1.0)
        }
    };
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let sx = |x: f64| MARGIN + (x - x0) * scale;
    let sy = |y: f64| SIZE - MARGIN - (y - y0) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some(d) = axes {
        let (cx, cy) = (SIZE / 2.0, SIZE / 2.0);
        let len = (d.dx() as f64).hypot(d.dy() as f64);
        let (ux, uy) = (d.dx() as f64 / len, d.dy() as f64 / len);
        let half = SIZE / 2.0 - MARGIN / 2.0;
        for (ax, ay) in [(ux, uy), (uy, -ux)] {
            let _ = writeln!(
                out,
                r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#bbbbbb" stroke-dasharray="4 4"/>"##,
                cx - ax * half,
                cy + ay * half,
                cx + ax * half,
                cy - ay * half
            );
        }
    }
    for (a, b) in g.edge_pairs() {
        let _ = writeln!(
            out,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="1.5"/>"#,
            sx(xs[a]),
            sy(ys[a]),
            sx(xs[b]),
            sy(ys[b])
        );
    }
    for i in 0..n {
        let fill = if roots.contains(&i) { "black" } else { "white" };
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="{fill}" stroke="black"/>"#,
            sx(xs[i]),
            sy(ys[i])
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format_with_roots_and_comments() {
        let input = parse_points("# header\n0 0 r\n1/3 0.25\n\n-2 1e1 # trailing\n").unwrap();
        assert_eq!(input.points.len(), 3);
        assert_eq!(input.roots, vec![0]);
        assert_eq!(input.points.point(1).x, parse_rational("1/3").unwrap());
        assert_eq!(input.points.point(2).y, parse_rational("10").unwrap());
    }

    #[test]
    fn text_format_errors_name_the_line() {
        let err = parse_points("0 0\n1 x\n").unwrap_err();
        assert!(matches!(err, IoError::Line { line: 2, .. }));
        assert!(matches!(
            parse_points("1 2 3\n"),
            Err(IoError::Line { line: 1, .. })
        ));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let input = parse_points("0.125 -7\n2/3 5 r\n").unwrap();
        let json = points_to_json(&input.points, &input.roots);
        let back = parse_points(&json).unwrap();
        assert_eq!(back, input);
        let text = points_to_text(&input.points, &input.roots);
        assert_eq!(parse_points(&text).unwrap(), input);
    }

    #[test]
    fn graph_json_shape() {
        let ps = PointSet::from_ints(&[(0, 0), (3, 4)]).unwrap();
        let g = GeometricGraph::complete(&ps);
        let json = graph_to_json(&g, Direction::STANDARD);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["direction"]["dx"], "0");
        assert_eq!(value["direction"]["dy"], "1");
        assert_eq!(value["edges"], serde_json::json!([[0, 1]]));
        assert_eq!(value["cost"], 5.0);
        assert_eq!(value["edge_count"], 1);
        assert_eq!(parse_graph_edges(&json).unwrap(), vec![(0, 1)]);
        assert_eq!(graph_to_edges(&g), "0 1\n");
    }

    #[test]
    fn svg_marks_roots_and_axes() {
        let ps = PointSet::from_ints(&[(0, 0), (3, 4)]).unwrap();
        let g = GeometricGraph::complete(&ps);
        let svg = graph_to_svg(&g, &[1], Some(Direction::new(1, 2).unwrap()));
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches(r#"fill="black""#).count(), 1);
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        // Point 1 is higher, so it is drawn nearer the top.
        assert!(svg.contains(r#"cx="372.000" cy="24.000""#));
    }
}
