//! Brute-force ground truth for small instances.
//!
//! Everything here checks monotone paths directly on bitmask adjacency and
//! never consults inclusion counts or the local rooted clauses, so it can be
//! used to test those.

use rayon::prelude::*;
use thiserror::Error;

use crate::geom::{Direction, EventSchedule, Frame, GeomError, PointSet};
use crate::graph::{Edge, GeometricGraph, RootedPointSet};
use crate::rig::rectangle_of_influence_graph;
use crate::Objective;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_points: usize,
    pub max_edge_subsets: u64,
    pub samples: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_points: 7,
            max_edge_subsets: 1 << 21,
            samples: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{points} points and {edges} candidate edges exceed the oracle budget")]
    BudgetExceeded { points: usize, edges: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

fn check_budget(n: usize, budget: &OracleBudget) -> Result<(), OracleError> {
    let m = n * n.saturating_sub(1) / 2;
    let too_many = m >= 64 || (1u64 << m) > budget.max_edge_subsets;
    if n > budget.max_points || n > 32 || too_many {
        return Err(OracleError::BudgetExceeded {
            points: n,
            edges: m,
        });
    }
    Ok(())
}

fn sign(x: i128) -> i8 {
    x.signum() as i8
}

fn signature_slot(s: (i8, i8)) -> usize {
    ((s.0 + 1) * 3 + (s.1 + 1)) as usize
}

/// Step masks for xy-monotone reachability in one frame.
struct XyMasks {
    /// `step[a][s]`: vertices `b` such that `a -> b` never moves against signature `s`.
    step: Vec<[u32; 9]>,
    /// `target[p][s]`: vertices `q` whose offset from `p` has signature `s`.
    target: Vec<[u32; 9]>,
}

impl XyMasks {
    fn new(frame: &Frame) -> Self {
        let n = frame.len();
        let signs =
            |a: usize, b: usize| (sign(frame.u(b) - frame.u(a)), sign(frame.v(b) - frame.v(a)));
        let mut step = vec![[0u32; 9]; n];
        let mut target = vec![[0u32; 9]; n];
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a) {
                let s = signs(a, b);
                target[a][signature_slot(s)] |= 1 << b;
                for sx in -1..=1i8 {
                    for sy in -1..=1i8 {
                        if (s.0 == 0 || s.0 == sx) && (s.1 == 0 || s.1 == sy) {
                            step[a][signature_slot((sx, sy))] |= 1 << b;
                        }
                    }
                }
            }
        }
        XyMasks { step, target }
    }

    fn reach(&self, adj: &[u32], p: usize, slot: usize) -> u32 {
        let mut reached = 1u32 << p;
        let mut frontier = reached;
        while frontier != 0 {
            let a = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let next = adj[a] & self.step[a][slot] & !reached;
            reached |= next;
            frontier |= next;
        }
        reached
    }

    fn connected(&self, adj: &[u32]) -> bool {
        (0..adj.len()).all(|p| {
            (0..9).all(|slot| {
                let want = self.target[p][slot];
                want == 0 || self.reach(adj, p, slot) & want == want
            })
        })
    }

    fn pair_connected(&self, adj: &[u32], p: usize, q: usize) -> bool {
        let slot = (0..9)
            .find(|&s| self.target[p][s] >> q & 1 == 1)
            .expect("distinct vertices");
        self.reach(adj, p, slot) >> q & 1 == 1
    }
}

fn adjacency(n: usize, pairs: &[(usize, usize)], mask: u64) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    let mut rest = mask;
    while rest != 0 {
        let e = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (a, b) = pairs[e];
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    adj
}

/// Every root reaches every member along edges with strictly monotone y.
struct RootedMasks {
    up: Vec<u32>,
    down: Vec<u32>,
    roots: Vec<usize>,
    members: u32,
}

impl RootedMasks {
    fn reach(&self, adj: &[u32], r: usize, dir: &[u32]) -> u32 {
        let mut reached = 1u32 << r;
        let mut frontier = reached;
        while frontier != 0 {
            let a = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let next = adj[a] & dir[a] & !reached;
            reached |= next;
            frontier |= next;
        }
        reached
    }

    fn connected(&self, adj: &[u32]) -> bool {
        self.roots.iter().all(|&r| {
            let all = self.reach(adj, r, &self.up) | self.reach(adj, r, &self.down);
            all & self.members == self.members
        })
    }
}

struct Search<'a, F> {
    pairs: &'a [(usize, usize)],
    weights: Vec<f64>,
    order: Vec<usize>,
    objective: Objective,
    vertices: u32,
    feasible: F,
    best: Option<(f64, u64)>,
}

impl<F: Fn(u64) -> bool> Search<'_, F> {
    fn value(&self, mask: u64) -> f64 {
        match self.objective {
            Objective::Edges => mask.count_ones() as f64,
            Objective::Cost => (0..self.pairs.len())
                .filter(|&e| mask >> e & 1 == 1)
                .map(|e| self.weights[e])
                .sum(),
        }
    }

    fn lower_bound(&self, included: u64, undecided: u64, partial: f64) -> f64 {
        let mut covered = 0u32;
        let mut cheapest = [f64::INFINITY; 32];
        for e in 0..self.pairs.len() {
            let (a, b) = self.pairs[e];
            if included >> e & 1 == 1 {
                covered |= 1 << a | 1 << b;
            } else if undecided >> e & 1 == 1 {
                let w = match self.objective {
                    Objective::Edges => 1.0,
                    Objective::Cost => self.weights[e],
                };
                cheapest[a] = cheapest[a].min(w);
                cheapest[b] = cheapest[b].min(w);
            }
        }
        let mut open = self.vertices & !covered;
        let mut extra = 0.0;
        while open != 0 {
            let v = open.trailing_zeros() as usize;
            open &= open - 1;
            extra += cheapest[v] / 2.0;
        }
        match self.objective {
            Objective::Edges => partial + extra.ceil(),
            Objective::Cost => partial + extra,
        }
    }

    fn worse_than_best(&self, bound: f64) -> bool {
        match self.best {
            Some((best, _)) => bound > best + 1e-12 * best.abs(),
            None => false,
        }
    }

    fn offer(&mut self, mask: u64) {
        let value = self.value(mask);
        let better = match self.best {
            None => true,
            Some((best, best_mask)) => {
                let tol = 1e-12 * best.abs();
                if value < best - tol {
                    true
                } else if value <= best + tol {
                    self.edge_list(mask) < self.edge_list(best_mask)
                } else {
                    false
                }
            }
        };
        if better {
            self.best = Some((value, mask));
        }
    }

    fn edge_list(&self, mask: u64) -> Vec<(usize, usize)> {
        let mut list: Vec<_> = (0..self.pairs.len())
            .filter(|&e| mask >> e & 1 == 1)
            .map(|e| self.pairs[e])
            .collect();
        list.sort_unstable();
        list
    }

    fn run(&mut self, depth: usize, included: u64, undecided: u64, partial: f64) {
        if !(self.feasible)(included | undecided) {
            return;
        }
        if self.worse_than_best(self.lower_bound(included, undecided, partial)) {
            return;
        }
        if depth == self.order.len() {
            self.offer(included);
            return;
        }
        let e = self.order[depth];
        let rest = undecided & !(1 << e);
        self.run(depth + 1, included, rest, partial);
        let w = match self.objective {
            Objective::Edges => 1.0,
            Objective::Cost => self.weights[e],
        };
        self.run(depth + 1, included | 1 << e, rest, partial + w);
    }
}

/// Optimal feasible subset of `pairs`; ties go to the lexicographically
/// smallest sorted edge list.
fn minimise(
    points: &PointSet,
    pairs: &[(usize, usize)],
    vertices: u32,
    objective: Objective,
    feasible: impl Fn(u64) -> bool,
) -> u64 {
    let weights: Vec<f64> = pairs.iter().map(|&(a, b)| points.distance(a, b)).collect();
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
    let all = if pairs.is_empty() {
        0
    } else {
        u64::MAX >> (64 - pairs.len())
    };
    let mut search = Search {
        pairs,
        weights,
        order,
        objective,
        vertices,
        feasible,
        best: None,
    };
    search.run(0, 0, all, 0.0);
    search.best.map(|(_, mask)| mask).unwrap_or(0)
}

fn graph_from_mask<'p>(
    points: &'p PointSet,
    pairs: &[(usize, usize)],
    mask: u64,
) -> GeometricGraph<'p> {
    let mut g = GeometricGraph::empty(points);
    g.extend(
        (0..pairs.len())
            .filter(|&e| mask >> e & 1 == 1)
            .map(|e| Edge::new(pairs[e].0, pairs[e].1)),
    );
    g
}

fn all_pairs(members: &[usize]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            pairs.push((a.min(b), a.max(b)));
        }
    }
    pairs
}

/// Minimum xy-monotone spanning graph in the frame of `d` by exhaustive search.
pub fn brute_min_xy_spanning<'p>(
    points: &'p PointSet,
    d: Direction,
    objective: Objective,
    budget: &OracleBudget,
) -> Result<GeometricGraph<'p>, OracleError> {
    let n = points.len();
    check_budget(n, budget)?;
    let members: Vec<usize> = (0..n).collect();
    let pairs = all_pairs(&members);
    let masks = XyMasks::new(&points.frame(d));
    let vertices = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let best = minimise(points, &pairs, vertices, objective, |mask| {
        masks.connected(&adjacency(n, &pairs, mask))
    });
    Ok(graph_from_mask(points, &pairs, best))
}

/// Minimum-cost graph on `members` in which every root reaches every member
/// by a y-monotone path.
pub fn brute_min_rooted_subset<'p>(
    points: &'p PointSet,
    members: &[usize],
    roots: &[usize],
    budget: &OracleBudget,
) -> Result<GeometricGraph<'p>, OracleError> {
    let n = points.len();
    check_budget(members.len(), budget)?;
    if n > 32 {
        return Err(OracleError::BudgetExceeded {
            points: n,
            edges: members.len(),
        });
    }
    let pairs = all_pairs(members);
    let y = |i: usize| points.lattice(i).y;
    let mut up = vec![0u32; n];
    let mut down = vec![0u32; n];
    for &a in members {
        for &b in members {
            if y(b) > y(a) {
                up[a] |= 1 << b;
            } else if y(b) < y(a) {
                down[a] |= 1 << b;
            }
        }
    }
    let member_mask = members.iter().fold(0u32, |m, &i| m | 1 << i);
    let masks = RootedMasks {
        up,
        down,
        roots: roots.to_vec(),
        members: member_mask,
    };
    let best = minimise(points, &pairs, member_mask, Objective::Cost, |mask| {
        masks.connected(&adjacency(n, &pairs, mask))
    });
    Ok(graph_from_mask(points, &pairs, best))
}

/// Minimum-cost k-rooted y-monotone spanning graph by exhaustive search.
pub fn brute_min_k_rooted<'p>(
    rps: &'p RootedPointSet,
    budget: &OracleBudget,
) -> Result<GeometricGraph<'p>, OracleError> {
    let members: Vec<usize> = (0..rps.points().len()).collect();
    brute_min_rooted_subset(rps.points(), &members, rps.roots(), budget)
}

/// Best directions found by a sampled scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub cost_direction: Direction,
    pub cost: f64,
    pub edges_direction: Direction,
    pub edge_count: usize,
}

/// `samples` integer directions at evenly spaced angles in `[0, pi/2)`,
/// offset by half a step.
pub fn sample_directions(samples: usize) -> Vec<Direction> {
    (0..samples)
        .map(|k| {
            let phi = (k as f64 + 0.5) / samples as f64 * std::f64::consts::FRAC_PI_2;
            Direction::from_angle(phi).expect("finite angle")
        })
        .collect()
}

/// Evaluates the rectangle of influence graph at `samples` evenly spread
/// directions and at every sufficient direction, keeping the best of each
/// objective. Ties keep the earliest candidate.
pub fn sampled_angle_scan(points: &PointSet, samples: usize) -> Result<ScanResult, GeomError> {
    let mut candidates = sample_directions(samples);
    candidates.extend(
        EventSchedule::with_coincident_events(points)?
            .sufficient()
            .iter()
            .map(|s| s.direction),
    );
    candidates.push(Direction::STANDARD);
    let evaluated: Vec<(usize, f64, usize)> = candidates
        .par_iter()
        .enumerate()
        .map(|(i, &d)| {
            let g = rectangle_of_influence_graph(points, d);
            (i, g.cost(), g.edge_count())
        })
        .collect();
    let by_cost = evaluated
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        .expect("at least one candidate");
    let by_edges = evaluated
        .iter()
        .min_by_key(|e| (e.2, e.0))
        .expect("at least one candidate");
    Ok(ScanResult {
        cost_direction: candidates[by_cost.0],
        cost: by_cost.1,
        edges_direction: candidates[by_edges.0],
        edge_count: by_edges.2,
    })
}

/// Every pair is joined by a path that is xy-monotone in some frame, the
/// frame chosen per pair among the sufficient directions.
pub fn brute_is_2d_monotone(
    g: &GeometricGraph,
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    let points = g.points();
    let n = points.len();
    if n > budget.max_points || n > 32 {
        return Err(OracleError::BudgetExceeded {
            points: n,
            edges: g.edge_count(),
        });
    }
    if n < 2 {
        return Ok(true);
    }
    let schedule = EventSchedule::with_coincident_events(points)?;
    let frames: Vec<XyMasks> = schedule
        .sufficient()
        .iter()
        .map(|s| XyMasks::new(&points.frame(s.direction)))
        .collect();
    let mut adj = vec![0u32; n];
    for e in g.edges() {
        adj[e.a()] |= 1 << e.b();
        adj[e.b()] |= 1 << e.a();
    }
    Ok((0..n).all(|p| (p + 1..n).all(|q| frames.iter().any(|m| m.pair_connected(&adj, p, q)))))
}
