//! Rooted and k-rooted y-monotone spanning graphs.
//!
//! With one root the optimum is greedy: every non-root point needs a
//! neighbour whose y lies between the root's (inclusive) and its own, and the
//! cheapest such edges are pairwise distinct, so taking each point's nearest
//! band candidate is optimal. For `1 < k < n` the instance splits at the root
//! levels into a piece below the lowest root, a piece above the highest root
//! and `k - 1` two-rooted strips; each strip is solved by the union of the two
//! single-root optima, which costs at most twice the strip optimum.

use thiserror::Error;

use crate::geom::PointSet;
use crate::graph::{Edge, GeometricGraph, GraphError, RootedPointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootedError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("expected {expected} roots, found {found}")]
    RootCount {
        expected: &'static str,
        found: usize,
    },
    #[error("root {0} is not an extreme point in y")]
    RootNotExtreme(usize),
}

/// A subset of the original point set with its roots (in increasing y).
/// Indices refer to the original set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subproblem {
    pub members: Vec<usize>,
    pub roots: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripDecomposition {
    /// Points with `y <= y(r_1)`, rooted at `r_1`.
    pub below: Subproblem,
    /// Points with `y >= y(r_k)`, rooted at `r_k`.
    pub above: Subproblem,
    /// Points with `y(r_i) <= y <= y(r_{i+1})`, rooted at both.
    pub strips: Vec<Subproblem>,
}

impl StripDecomposition {
    pub fn subproblems(&self) -> impl Iterator<Item = &Subproblem> {
        std::iter::once(&self.below)
            .chain(self.strips.iter())
            .chain(std::iter::once(&self.above))
    }
}

/// Nearest-band edges for `members` with a single `root`. Each non-root `p`
/// joins the closest `q` with `y(q)` between `y(root)` inclusive and `y(p)`;
/// equidistant candidates resolve to the smaller index.
pub fn greedy_rooted_edges(points: &PointSet, members: &[usize], root: usize) -> Vec<Edge> {
    let y = |i: usize| points.lattice(i).y;
    let yr = y(root);
    let mut edges = Vec::with_capacity(members.len().saturating_sub(1));
    for &p in members.iter().filter(|&&p| p != root) {
        let yp = y(p);
        let in_band = |q: usize| {
            let yq = y(q);
            if yp > yr {
                yr <= yq && yq < yp
            } else {
                yp < yq && yq <= yr
            }
        };
        let nearest = members
            .iter()
            .copied()
            .filter(|&q| q != p && in_band(q))
            .min_by_key(|&q| (points.lattice_dist2(p, q), q))
            .expect("the root is always a band candidate");
        edges.push(Edge::new(p, nearest));
    }
    edges
}

/// Exact minimum-cost rooted y-monotone spanning graph (a tree).
pub fn rooted_y_mmsg(rps: &RootedPointSet) -> Result<GeometricGraph<'_>, RootedError> {
    if rps.k() != 1 {
        return Err(RootedError::RootCount {
            expected: "1",
            found: rps.k(),
        });
    }
    let points = rps.points();
    let members: Vec<usize> = (0..points.len()).collect();
    let mut g = GeometricGraph::empty(points);
    g.extend(greedy_rooted_edges(points, &members, rps.roots()[0]));
    Ok(g)
}

fn two_rooted_edges(points: &PointSet, members: &[usize], low: usize, high: usize) -> Vec<Edge> {
    let mut edges = greedy_rooted_edges(points, members, low);
    edges.extend(greedy_rooted_edges(points, members, high));
    edges
}

/// Union of the two single-root optima when the roots are the lowest and highest points.
pub fn two_rooted_2approx(rps: &RootedPointSet) -> Result<GeometricGraph<'_>, RootedError> {
    if rps.k() != 2 {
        return Err(RootedError::RootCount {
            expected: "2",
            found: rps.k(),
        });
    }
    let points = rps.points();
    let (low, high) = (rps.roots()[0], rps.roots()[1]);
    let y = |i: usize| points.lattice(i).y;
    if (0..points.len()).any(|p| y(p) < y(low)) {
        return Err(RootedError::RootNotExtreme(low));
    }
    if (0..points.len()).any(|p| y(p) > y(high)) {
        return Err(RootedError::RootNotExtreme(high));
    }
    let members: Vec<usize> = (0..points.len()).collect();
    let mut g = GeometricGraph::empty(points);
    g.extend(two_rooted_edges(points, &members, low, high));
    Ok(g)
}

/// Splits a k-rooted instance, `1 < k < n`, at the root levels.
pub fn strip_decompose(rps: &RootedPointSet) -> Result<StripDecomposition, RootedError> {
    let n = rps.points().len();
    let k = rps.k();
    if k < 2 || k >= n {
        return Err(RootedError::RootCount {
            expected: "between 2 and n - 1",
            found: k,
        });
    }
    let points = rps.points();
    let roots = rps.roots();
    let y = |i: usize| points.lattice(i).y;
    let band = |lo: i128, hi: i128| -> Vec<usize> {
        (0..n).filter(|&p| lo <= y(p) && y(p) <= hi).collect()
    };
    let (first, last) = (roots[0], roots[k - 1]);
    Ok(StripDecomposition {
        below: Subproblem {
            members: band(i128::MIN, y(first)),
            roots: vec![first],
        },
        above: Subproblem {
            members: band(y(last), i128::MAX),
            roots: vec![last],
        },
        strips: roots
            .windows(2)
            .map(|w| Subproblem {
                members: band(y(w[0]), y(w[1])),
                roots: vec![w[0], w[1]],
            })
            .collect(),
    })
}

/// k-rooted y-monotone spanning graph within twice the optimum cost.
///
/// Exact for `k = 1` (greedy) and `k = n` (the y-sorted path).
pub fn k_rooted_2approx(rps: &RootedPointSet) -> Result<GeometricGraph<'_>, RootedError> {
    let points = rps.points();
    let n = points.len();
    match rps.k() {
        1 => rooted_y_mmsg(rps),
        k if k == n => {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| points.lattice(i).y);
            let mut g = GeometricGraph::empty(points);
            g.extend(order.windows(2).map(|w| Edge::new(w[0], w[1])));
            Ok(g)
        }
        _ => {
            let parts = strip_decompose(rps)?;
            let mut g = GeometricGraph::empty(points);
            g.extend(greedy_rooted_edges(
                points,
                &parts.below.members,
                parts.below.roots[0],
            ));
            g.extend(greedy_rooted_edges(
                points,
                &parts.above.members,
                parts.above.roots[0],
            ));
            for strip in &parts.strips {
                g.extend(two_rooted_edges(
                    points,
                    &strip.members,
                    strip.roots[0],
                    strip.roots[1],
                ));
            }
            Ok(g)
        }
    }
}
