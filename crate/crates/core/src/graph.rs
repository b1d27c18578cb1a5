//! Geometric graphs over point sets and the monotone-connectivity checks.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::geom::{Direction, EventSchedule, Frame, GeomError, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a vertex outside the point set")]
    EdgeOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("points {0} and {1} share a rotated coordinate")]
    TiedCoordinate(usize, usize),
    #[error("points {0} and {1} share a y coordinate")]
    TiedY(usize, usize),
    #[error("invalid root set: {0}")]
    InvalidRoots(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Undirected edge stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    pub fn new(i: usize, j: usize) -> Self {
        Edge {
            a: i.min(j),
            b: i.max(j),
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricGraph<'p> {
    points: &'p PointSet,
    edges: BTreeSet<Edge>,
}

impl<'p> GeometricGraph<'p> {
    pub fn empty(points: &'p PointSet) -> Self {
        GeometricGraph {
            points,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(
        points: &'p PointSet,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(points);
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn complete(points: &'p PointSet) -> Self {
        let n = points.len();
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| Edge::new(i, j)))
            .collect();
        GeometricGraph { points, edges }
    }

    /// Adds `{i, j}`; returns whether the edge was new.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<bool, GraphError> {
        let n = self.points.len();
        if i >= n || j >= n {
            return Err(GraphError::EdgeOutOfRange(i, j));
        }
        if i == j {
            return Err(GraphError::SelfLoop(i));
        }
        Ok(self.edges.insert(Edge::new(i, j)))
    }

    pub fn points(&self) -> &'p PointSet {
        self.points
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// Edges as sorted `(i, j)` pairs with `i < j`.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.a, e.b)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&Edge::new(i, j))
    }

    /// Sum of Euclidean edge lengths.
    pub fn cost(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| self.points.distance(e.a, e.b))
            .sum()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.points.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        adj
    }

    /// Edge-set union; both graphs must share the same point set.
    pub fn union(&self, other: &GeometricGraph<'p>) -> GeometricGraph<'p> {
        debug_assert!(std::ptr::eq(self.points, other.points));
        GeometricGraph {
            points: self.points,
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn extend(&mut self, edges: impl IntoIterator<Item = Edge>) {
        self.edges.extend(edges);
    }
}

/// A point set with `k >= 1` designated roots and pairwise distinct y coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedPointSet {
    points: PointSet,
    roots: Vec<usize>,
}

impl RootedPointSet {
    pub fn new(
        points: PointSet,
        roots: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GraphError> {
        let n = points.len();
        let mut roots: Vec<usize> = roots.into_iter().collect();
        if roots.is_empty() {
            return Err(GraphError::InvalidRoots(
                "at least one root is required".into(),
            ));
        }
        if let Some(&r) = roots.iter().find(|&&r| r >= n) {
            return Err(GraphError::InvalidRoots(format!(
                "root {r} is out of range"
            )));
        }
        let frame = points.frame(Direction::STANDARD);
        if let Some((a, b)) = frame.v_tie() {
            return Err(GraphError::TiedY(a.min(b), a.max(b)));
        }
        roots.sort_by_key(|&r| frame.v(r));
        if roots.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::InvalidRoots("roots must be distinct".into()));
        }
        Ok(RootedPointSet { points, roots })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// Roots in increasing y order.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn k(&self) -> usize {
        self.roots.len()
    }

    pub fn is_root(&self, i: usize) -> bool {
        self.roots.contains(&i)
    }
}

/// Fixed-width bit rows.
#[derive(Clone)]
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        Bits {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn union_with(&mut self, other: &Bits) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Every pair is joined by a path strictly monotone in `v` (the `y'` coordinate).
pub fn is_y_monotone_connected(g: &GeometricGraph, d: Direction) -> Result<bool, GraphError> {
    let n = g.vertex_count();
    let frame = g.points().frame(d);
    if let Some((a, b)) = frame.v_tie() {
        return Err(GraphError::TiedCoordinate(a, b));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| frame.v(i));
    let adj = g.adjacency();
    // reach[p] = points reachable from p moving strictly upward.
    let mut reach = vec![Bits::new(n); n];
    for (rank, &p) in order.iter().enumerate().rev() {
        let mut row = Bits::new(n);
        row.set(p);
        for &q in &adj[p] {
            if frame.v(q) > frame.v(p) {
                row.union_with(&reach[q]);
            }
        }
        // Everything above p must be reachable.
        if row.count() != n - rank {
            return Ok(false);
        }
        reach[p] = row;
    }
    Ok(true)
}

/// Sign pattern of `b - a` in both rotated coordinates.
fn step_signs(frame: &Frame, a: usize, b: usize) -> (i8, i8) {
    (
        (frame.u(b) - frame.u(a)).signum() as i8,
        (frame.v(b) - frame.v(a)).signum() as i8,
    )
}

/// A step with signs `step` may be used on a path heading in direction `target`:
/// each component is either flat or agrees with the target sign.
pub(crate) fn step_compatible(step: (i8, i8), target: (i8, i8)) -> bool {
    (step.0 == 0 || step.0 == target.0) && (step.1 == 0 || step.1 == target.1)
}

fn signature_index(sig: (i8, i8)) -> usize {
    ((sig.0 + 1) * 3 + (sig.1 + 1)) as usize
}

/// Every pair `(p, q)` is joined by a path that is monotone in both rotated
/// coordinates. Monotonicity is non-strict, matching the closed-rectangle
/// convention: at event directions the one tied pair may share a coordinate.
pub fn is_xy_monotone_connected(g: &GeometricGraph, d: Direction) -> bool {
    let frame = g.points().frame(d);
    xy_connected_in_frame(g, &frame)
}

pub(crate) fn xy_connected_in_frame(g: &GeometricGraph, frame: &Frame) -> bool {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut seen = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut stamp = 0usize;
    for p in 0..n {
        let mut pending = [false; 9];
        for q in 0..n {
            if q != p {
                pending[signature_index(step_signs(frame, p, q))] = true;
            }
        }
        for (sig_idx, _) in pending.iter().enumerate().filter(|(_, &on)| on) {
            let target = ((sig_idx / 3) as i8 - 1, (sig_idx % 3) as i8 - 1);
            stamp += 1;
            seen[p] = stamp;
            queue.clear();
            queue.push_back(p);
            while let Some(a) = queue.pop_front() {
                for &b in &adj[a] {
                    if seen[b] != stamp && step_compatible(step_signs(frame, a, b), target) {
                        seen[b] = stamp;
                        queue.push_back(b);
                    }
                }
            }
            let all_reached =
                (0..n).all(|q| q == p || step_signs(frame, p, q) != target || seen[q] == stamp);
            if !all_reached {
                return false;
            }
        }
    }
    true
}

/// Local characterisation of k-rooted `y'`-monotone graphs: the single-root
/// band rule for `k = 1`, otherwise the six clauses on band neighbours.
/// Linear in `|E|` after sorting the roots.
pub fn is_k_rooted_y_monotone(
    g: &GeometricGraph,
    roots: &[usize],
    d: Direction,
) -> Result<bool, GraphError> {
    let n = g.vertex_count();
    if roots.is_empty() || roots.iter().any(|&r| r >= n) {
        return Err(GraphError::InvalidRoots(format!("{roots:?}")));
    }
    let frame = g.points().frame(d);
    if let Some((a, b)) = frame.v_tie() {
        return Err(GraphError::TiedCoordinate(a, b));
    }
    let v = |i: usize| frame.v(i);
    let mut roots = roots.to_vec();
    roots.sort_by_key(|&r| v(r));
    roots.dedup();
    let adj = g.adjacency();
    let has_neighbor = |p: usize, lo: i128, lo_closed: bool, hi: i128, hi_closed: bool| {
        adj[p].iter().any(|&q| {
            let y = v(q);
            (if lo_closed { y >= lo } else { y > lo }) && (if hi_closed { y <= hi } else { y < hi })
        })
    };

    if roots.len() == 1 {
        let r = roots[0];
        let yr = v(r);
        return Ok((0..n).filter(|&p| p != r).all(|p| {
            let yp = v(p);
            if yp > yr {
                has_neighbor(p, yr, true, yp, false)
            } else {
                has_neighbor(p, yp, false, yr, true)
            }
        }));
    }

    let k = roots.len();
    let root_v: Vec<i128> = roots.iter().map(|&r| v(r)).collect();
    let mut is_root = vec![false; n];
    for &r in &roots {
        is_root[r] = true;
    }
    for (p, &root) in is_root.iter().enumerate() {
        let yp = v(p);
        let ok = if root {
            let i = root_v.binary_search(&yp).expect("root present");
            let down = i == 0 || has_neighbor(p, root_v[i - 1], true, yp, false);
            let up = i == k - 1 || has_neighbor(p, yp, false, root_v[i + 1], true);
            down && up
        } else if yp < root_v[0] {
            has_neighbor(p, yp, false, root_v[0], true)
        } else if yp > root_v[k - 1] {
            has_neighbor(p, root_v[k - 1], true, yp, false)
        } else {
            // Strictly inside the band (r_i, r_{i+1}).
            let i = root_v.partition_point(|&y| y < yp) - 1;
            has_neighbor(p, root_v[i], true, yp, false)
                && has_neighbor(p, yp, false, root_v[i + 1], true)
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scans the sufficient directions of `g`'s vertex set and returns the first
/// one in which `g` is xy-monotone.
pub fn is_uniform_2d_monotone(g: &GeometricGraph) -> Result<Option<Direction>, GeomError> {
    if g.vertex_count() < 2 {
        return Ok(Some(Direction::STANDARD));
    }
    let schedule = EventSchedule::with_coincident_events(g.points())?;
    Ok(schedule
        .sufficient()
        .iter()
        .map(|s| s.direction)
        .find(|&d| is_xy_monotone_connected(g, d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(c: &[(&str, &str)]) -> PointSet {
        PointSet::from_strs(c).unwrap()
    }

    #[test]
    fn cost_examples() {
        let ps = PointSet::from_ints(&[(0, 0), (3, 4), (1, 0), (1, 2)]).unwrap();
        assert_eq!(GeometricGraph::empty(&ps).cost(), 0.0);
        assert_eq!(
            GeometricGraph::from_edges(&ps, [(0, 1)]).unwrap().cost(),
            5.0
        );
        assert_eq!(
            GeometricGraph::from_edges(&ps, [(0, 2), (2, 3)])
                .unwrap()
                .cost(),
            3.0
        );
    }

    #[test]
    fn edge_validation() {
        let ps = PointSet::from_ints(&[(0, 0), (1, 1)]).unwrap();
        assert_eq!(
            GeometricGraph::from_edges(&ps, [(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            GeometricGraph::from_edges(&ps, [(0, 2)]),
            Err(GraphError::EdgeOutOfRange(0, 2))
        );
        let g = GeometricGraph::from_edges(&ps, [(1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn y_monotone_examples() {
        let ps = PointSet::from_ints(&[(0, 0), (1, 2), (0, 3)]).unwrap();
        let path = GeometricGraph::from_edges(&ps, [(0, 1), (1, 2)]).unwrap();
        assert!(is_y_monotone_connected(&path, Direction::STANDARD).unwrap());

        let ps = PointSet::from_ints(&[(0, 0), (3, 1), (1, 2)]).unwrap();
        let g = GeometricGraph::from_edges(&ps, [(0, 2), (1, 2)]).unwrap();
        assert!(!is_y_monotone_connected(&g, Direction::STANDARD).unwrap());
        assert!(
            is_y_monotone_connected(&GeometricGraph::complete(&ps), Direction::STANDARD).unwrap()
        );

        let tied = PointSet::from_ints(&[(0, 0), (1, 0)]).unwrap();
        assert_eq!(
            is_y_monotone_connected(&GeometricGraph::complete(&tied), Direction::STANDARD),
            Err(GraphError::TiedCoordinate(0, 1))
        );
    }

    #[test]
    fn xy_monotone_examples() {
        let two = PointSet::from_ints(&[(0, 0), (1, 1)]).unwrap();
        assert!(is_xy_monotone_connected(
            &GeometricGraph::complete(&two),
            Direction::STANDARD
        ));

        let ps = set(&[("0", "0"), ("2", "2"), ("1", "1.5")]);
        let chain = GeometricGraph::from_edges(&ps, [(0, 2), (2, 1)]).unwrap();
        assert!(is_xy_monotone_connected(&chain, Direction::STANDARD));

        let ps = PointSet::from_ints(&[(0, 0), (3, 1), (1, 3)]).unwrap();
        let wedge = GeometricGraph::from_edges(&ps, [(0, 1), (0, 2)]).unwrap();
        assert!(!is_xy_monotone_connected(&wedge, Direction::STANDARD));
        assert!(!is_y_monotone_connected(&wedge, Direction::STANDARD).unwrap());
    }

    #[test]
    fn xy_monotone_allows_flat_step_for_tied_pair() {
        // u ties between 0 and 1 in the standard frame; only the direct edge joins them.
        let ps = PointSet::from_ints(&[(0, 0), (0, 2), (1, 1)]).unwrap();
        let g = GeometricGraph::from_edges(&ps, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(is_xy_monotone_connected(&g, Direction::STANDARD));
        let g = GeometricGraph::from_edges(&ps, [(0, 2), (1, 2)]).unwrap();
        assert!(!is_xy_monotone_connected(&g, Direction::STANDARD));
    }

    #[test]
    fn k_rooted_examples() {
        let ps = PointSet::from_ints(&[(0, 0), (2, 1), (-1, 2), (1, 3)]).unwrap();
        let path = GeometricGraph::from_edges(&ps, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(is_k_rooted_y_monotone(&path, &[0, 3], Direction::STANDARD).unwrap());

        // Star centred on the lower root: interior points have no neighbour above them.
        let ps = PointSet::from_ints(&[(0, 0), (2, 1), (-1, 2), (1, 3)]).unwrap();
        let star = GeometricGraph::from_edges(&ps, [(1, 0), (1, 2), (1, 3)]).unwrap();
        assert!(!is_k_rooted_y_monotone(&star, &[1, 3], Direction::STANDARD).unwrap());
        let star = GeometricGraph::from_edges(&ps, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!is_k_rooted_y_monotone(&star, &[0, 3], Direction::STANDARD).unwrap());

        let isolated = GeometricGraph::from_edges(&ps, [(0, 1), (1, 3)]).unwrap();
        assert!(!is_k_rooted_y_monotone(&isolated, &[0], Direction::STANDARD).unwrap());
        assert!(
            is_k_rooted_y_monotone(&GeometricGraph::complete(&ps), &[2], Direction::STANDARD)
                .unwrap()
        );
    }

    #[test]
    fn uniform_examples() {
        let two = PointSet::from_ints(&[(0, 0), (1, 2)]).unwrap();
        let g = GeometricGraph::complete(&two);
        let first = EventSchedule::new(&two).unwrap().sufficient()[0].direction;
        assert_eq!(is_uniform_2d_monotone(&g).unwrap(), Some(first));

        let ps = PointSet::from_ints(&[(0, 0), (3, 1), (1, 3)]).unwrap();
        assert!(is_uniform_2d_monotone(&GeometricGraph::complete(&ps))
            .unwrap()
            .is_some());
        // The wedge at (0,0) is acute, so (0,0) never sits inside the box of the
        // other two and no frame works.
        let wedge = GeometricGraph::from_edges(&ps, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(is_uniform_2d_monotone(&wedge).unwrap(), None);

        let ps = PointSet::from_ints(&[(0, 0), (3, 1), (-2, 3)]).unwrap();
        let wedge = GeometricGraph::from_edges(&ps, [(0, 1), (0, 2)]).unwrap();
        let witness = is_uniform_2d_monotone(&wedge)
            .unwrap()
            .expect("obtuse wedge is uniform");
        assert!(is_xy_monotone_connected(&wedge, witness));
        assert!(!is_xy_monotone_connected(&wedge, Direction::STANDARD));
    }

    #[test]
    fn rooted_point_set_validation() {
        let ps = PointSet::from_ints(&[(0, 0), (1, 2), (3, 1)]).unwrap();
        let r = RootedPointSet::new(ps.clone(), [1, 2]).unwrap();
        assert_eq!(r.roots(), &[2, 1]);
        assert!(RootedPointSet::new(ps.clone(), []).is_err());
        assert!(RootedPointSet::new(ps.clone(), [1, 1]).is_err());
        assert!(RootedPointSet::new(ps, [5]).is_err());
        let tied = PointSet::from_ints(&[(0, 0), (1, 0)]).unwrap();
        assert_eq!(RootedPointSet::new(tied, [0]), Err(GraphError::TiedY(0, 1)));
    }
}
