//! Rectangle of influence graphs.
//!
//! For fixed axes the minimum-cost xy-monotone spanning graph and the
//! fewest-edges xy-monotone spanning graph both equal the rectangle of
//! influence graph: `p` and `q` are adjacent exactly when the closed
//! rectangle spanned by them holds no other point.

use crate::geom::{Direction, Frame, PointSet};
use crate::graph::{Edge, GeometricGraph};

/// Symmetric table of `#{r : r in rect(p, q)}` over `r != p, q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionCounts {
    n: usize,
    table: Vec<u32>,
}

impl InclusionCounts {
    pub(crate) fn zeros(n: usize) -> Self {
        InclusionCounts {
            n,
            table: vec![0; n * n],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, p: usize, q: usize) -> u32 {
        self.table[p * self.n + q]
    }

    pub(crate) fn set(&mut self, p: usize, q: usize, value: u32) {
        self.table[p * self.n + q] = value;
        self.table[q * self.n + p] = value;
    }

    pub(crate) fn increment(&mut self, p: usize, q: usize) -> u32 {
        let v = self.get(p, q) + 1;
        self.set(p, q, v);
        v
    }

    pub(crate) fn decrement(&mut self, p: usize, q: usize) -> u32 {
        let v = self.get(p, q) - 1;
        self.set(p, q, v);
        v
    }

    pub fn is_visible(&self, p: usize, q: usize) -> bool {
        p != q && self.get(p, q) == 0
    }

    /// Pairs `(p, q)`, `p < q`, with an empty rectangle.
    pub fn visible_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |p| (p + 1..self.n).map(move |q| (p, q)))
            .filter(|&(p, q)| self.get(p, q) == 0)
    }
}

/// Fenwick tree over compressed ranks.
struct Fenwick {
    tree: Vec<u32>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
        }
    }

    fn add(&mut self, rank: usize) {
        let mut i = rank + 1;
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of inserted ranks `<= rank`.
    fn prefix(&self, rank: usize) -> u32 {
        let mut i = rank + 1;
        let mut sum = 0;
        while i > 0 {
            sum += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        sum
    }
}

/// Inclusion counts in `O(n^2 log n)`: for each `p`, every other point is
/// mapped into each closed quadrant around `p` and rectangle counts become
/// 2D dominance counts, answered with a sweep over one coordinate and a
/// Fenwick tree over the ranks of the other.
///
/// Ties in `u` or `v` are handled with closed semantics, so the counts are
/// also exact at event directions.
pub fn inclusion_counts(points: &PointSet, d: Direction) -> InclusionCounts {
    counts_in_frame(&points.frame(d))
}

pub(crate) fn counts_in_frame(frame: &Frame) -> InclusionCounts {
    let n = frame.len();
    let mut counts = InclusionCounts::zeros(n);
    let mut done = vec![false; n];
    let mut quadrant: Vec<(i128, i128, usize)> = Vec::with_capacity(n);
    let mut ranks: Vec<i128> = Vec::with_capacity(n);
    for p in 0..n {
        let (up, vp) = (frame.u(p), frame.v(p));
        done.iter_mut().for_each(|x| *x = false);
        for (su, sv) in [(1i128, 1i128), (1, -1), (-1, 1), (-1, -1)] {
            quadrant.clear();
            quadrant.extend((0..n).filter(|&r| r != p).filter_map(|r| {
                let a = su * (frame.u(r) - up);
                let b = sv * (frame.v(r) - vp);
                (a >= 0 && b >= 0).then_some((a, b, r))
            }));
            if quadrant.is_empty() {
                continue;
            }
            quadrant.sort_unstable();
            ranks.clear();
            ranks.extend(quadrant.iter().map(|t| t.1));
            ranks.sort_unstable();
            ranks.dedup();
            let mut fenwick = Fenwick::new(ranks.len());
            let mut start = 0;
            while start < quadrant.len() {
                let mut end = start;
                while end < quadrant.len() && quadrant[end].0 == quadrant[start].0 {
                    fenwick.add(ranks.binary_search(&quadrant[end].1).unwrap());
                    end += 1;
                }
                for &(_, b, q) in &quadrant[start..end] {
                    if !done[q] {
                        done[q] = true;
                        // Every r dominated by q, minus q itself.
                        let c = fenwick.prefix(ranks.binary_search(&b).unwrap()) - 1;
                        counts.table[p * n + q] = c;
                    }
                }
                start = end;
            }
        }
    }
    debug_assert!((0..n).all(|p| (0..n).all(|q| counts.get(p, q) == counts.get(q, p))));
    counts
}

/// Direct `O(n^3)` evaluation of the closed-rectangle counts.
pub fn inclusion_counts_naive(points: &PointSet, d: Direction) -> InclusionCounts {
    let frame = points.frame(d);
    let n = frame.len();
    let mut counts = InclusionCounts::zeros(n);
    for p in 0..n {
        for q in p + 1..n {
            let c = (0..n)
                .filter(|&r| r != p && r != q && frame.rect_contains(p, q, r))
                .count();
            counts.set(p, q, c as u32);
        }
    }
    counts
}

/// Graph of all rectangularly visible pairs in frame `d`.
pub fn rectangle_of_influence_graph(points: &PointSet, d: Direction) -> GeometricGraph<'_> {
    let counts = inclusion_counts(points, d);
    let mut g = GeometricGraph::empty(points);
    g.extend(counts.visible_pairs().map(|(p, q)| Edge::new(p, q)));
    g
}

/// The same graph from the triple rule: `{p, q}` is an edge iff no third point
/// `r` makes `p, r, q` monotone in both rotated coordinates.
pub fn rig_by_monotone_triples(points: &PointSet, d: Direction) -> GeometricGraph<'_> {
    let frame = points.frame(d);
    let n = points.len();
    let monotone = |a: i128, b: i128, c: i128| (a <= b && b <= c) || (a >= b && b >= c);
    let mut g = GeometricGraph::empty(points);
    for p in 0..n {
        for q in p + 1..n {
            let blocked = (0..n).any(|r| {
                r != p
                    && r != q
                    && monotone(frame.u(p), frame.u(r), frame.u(q))
                    && monotone(frame.v(p), frame.v(r), frame.v(q))
            });
            if !blocked {
                g.extend([Edge::new(p, q)]);
            }
        }
    }
    g
}

#[derive(Debug, Clone)]
pub struct XyMmsg<'p> {
    pub graph: GeometricGraph<'p>,
    pub cost: f64,
    pub edge_count: usize,
}

/// Minimum-cost (equivalently fewest-edges) xy-monotone spanning graph in frame `d`.
pub fn xy_mmsg(points: &PointSet, d: Direction) -> XyMmsg<'_> {
    let graph = rectangle_of_influence_graph(points, d);
    XyMmsg {
        cost: graph.cost(),
        edge_count: graph.edge_count(),
        graph,
    }
}
