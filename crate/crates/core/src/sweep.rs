//! Rotational sweep over the sufficient Cartesian systems.
//!
//! The sweep keeps the inclusion counter of every pair and the visibility
//! flag derived from it. Crossing the event of segment `pq` can only change
//! whether `q` lies in `rect(p, r)` or `p` lies in `rect(q, r)`, so each
//! transition re-evaluates those `2(n - 2)` memberships in the old and the new
//! frame and applies the difference. With `n(n-1)` systems this is `O(n^3)`.

use std::collections::HashSet;

use thiserror::Error;

use crate::geom::{Direction, EventSchedule, Frame, GeomError, PointSet};
use crate::graph::{Edge, GeometricGraph};
use crate::rig::{counts_in_frame, rectangle_of_influence_graph, InclusionCounts};
use crate::Objective;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("the sweep needs at least two points")]
    TooFewPoints,
    #[error("no sufficient system left to advance to")]
    CursorExhausted,
}

/// Counters, visibility flags and running totals at one sufficient system.
#[derive(Debug, Clone)]
pub struct SweepState {
    counts: InclusionCounts,
    visible: Vec<bool>,
    running_units: i128,
    running_edges: usize,
    cursor: usize,
}

impl SweepState {
    pub fn counts(&self) -> &InclusionCounts {
        &self.counts
    }

    pub fn is_visible(&self, p: usize, q: usize) -> bool {
        self.visible[p * self.counts.len() + q]
    }

    pub fn running_edges(&self) -> usize {
        self.running_edges
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn visible_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.counts.len();
        (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .filter(|&(p, q)| self.is_visible(p, q))
            .collect()
    }
}

/// Edge lengths quantised to a fixed grid so that running totals are exact
/// integers: the same edge set always yields the same total, whatever the
/// order of updates.
#[derive(Debug, Clone)]
struct Lengths {
    n: usize,
    units: Vec<i128>,
    quantum: f64,
}

impl Lengths {
    fn new(points: &PointSet) -> Self {
        let n = points.len();
        let mut raw = vec![0.0; n * n];
        let mut longest = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                let len = points.distance(p, q);
                raw[p * n + q] = len;
                raw[q * n + p] = len;
                longest = longest.max(len);
            }
        }
        let quantum = if longest > 0.0 {
            longest / (1u64 << 50) as f64
        } else {
            1.0
        };
        let units = raw.iter().map(|l| (l / quantum).round() as i128).collect();
        Lengths { n, units, quantum }
    }

    fn get(&self, p: usize, q: usize) -> i128 {
        self.units[p * self.n + q]
    }
}

/// Incremental sweep over the sufficient systems of a point set.
#[derive(Debug, Clone)]
pub struct Sweep<'p> {
    points: &'p PointSet,
    schedule: EventSchedule,
    frame: Frame,
    lengths: Lengths,
    state: SweepState,
}

impl<'p> Sweep<'p> {
    /// Starts at the first sufficient system; the input must be in general position.
    pub fn new(points: &'p PointSet) -> Result<Self, SweepError> {
        if points.len() < 2 {
            return Err(SweepError::TooFewPoints);
        }
        let schedule = EventSchedule::new(points)?;
        Self::with_schedule(points, schedule)
    }

    /// Starts a sweep over an explicit schedule, e.g. one built with
    /// [`EventSchedule::with_coincident_events`].
    pub fn with_schedule(
        points: &'p PointSet,
        schedule: EventSchedule,
    ) -> Result<Self, SweepError> {
        if points.len() < 2 || schedule.is_empty() {
            return Err(SweepError::TooFewPoints);
        }
        let frame = points.frame(schedule.sufficient()[0].direction);
        let counts = counts_in_frame(&frame);
        let lengths = Lengths::new(points);
        let n = points.len();
        let mut visible = vec![false; n * n];
        let mut running_units = 0;
        let mut running_edges = 0;
        for (p, q) in counts.visible_pairs() {
            visible[p * n + q] = true;
            visible[q * n + p] = true;
            running_units += lengths.get(p, q);
            running_edges += 1;
        }
        Ok(Sweep {
            points,
            schedule,
            frame,
            lengths,
            state: SweepState {
                counts,
                visible,
                running_units,
                running_edges,
                cursor: 0,
            },
        })
    }

    pub fn state(&self) -> &SweepState {
        &self.state
    }

    pub fn schedule(&self) -> &EventSchedule {
        &self.schedule
    }

    pub fn cursor(&self) -> usize {
        self.state.cursor
    }

    pub fn direction(&self) -> Direction {
        self.frame.direction()
    }

    pub fn is_finished(&self) -> bool {
        self.state.cursor + 1 >= self.schedule.len()
    }

    /// Sum of the visible pairs' lengths.
    pub fn running_cost(&self) -> f64 {
        self.state.running_units as f64 * self.lengths.quantum
    }

    /// Moves to the next sufficient system in `O(n)` per crossed event.
    pub fn advance(&mut self) -> Result<(), SweepError> {
        if self.is_finished() {
            return Err(SweepError::CursorExhausted);
        }
        let k = self.state.cursor;
        let next = self
            .points
            .frame(self.schedule.sufficient()[k + 1].direction);
        let n = self.points.len();
        let events = self.schedule.transition_events(k);
        if let [event] = events {
            let (p, q) = event.pair;
            for r in (0..n).filter(|&r| r != p && r != q) {
                self.update_membership(&next, q, p, r);
                self.update_membership(&next, p, q, r);
            }
        } else {
            // Several segments share this angle; a membership may be touched by
            // more than one of them and must be diffed only once.
            let mut seen = HashSet::new();
            let pairs: Vec<(usize, usize)> = events.iter().map(|e| e.pair).collect();
            for (p, q) in pairs {
                for r in (0..n).filter(|&r| r != p && r != q) {
                    for (x, y) in [(q, p), (p, q)] {
                        if seen.insert((x, y.min(r), y.max(r))) {
                            self.update_membership(&next, x, y, r);
                        }
                    }
                }
            }
        }
        self.frame = next;
        self.state.cursor += 1;
        Ok(())
    }

    /// Re-evaluates whether `x` lies in `rect(y, z)` and adjusts counter and flags.
    fn update_membership(&mut self, next: &Frame, x: usize, y: usize, z: usize) {
        let before = self.frame.rect_contains(y, z, x);
        let after = next.rect_contains(y, z, x);
        if before == after {
            return;
        }
        let n = self.points.len();
        let st = &mut self.state;
        if after {
            if st.counts.increment(y, z) == 1 {
                st.visible[y * n + z] = false;
                st.visible[z * n + y] = false;
                st.running_units -= self.lengths.get(y, z);
                st.running_edges -= 1;
            }
        } else if st.counts.decrement(y, z) == 0 {
            st.visible[y * n + z] = true;
            st.visible[z * n + y] = true;
            st.running_units += self.lengths.get(y, z);
            st.running_edges += 1;
        }
    }

    /// Checks the incremental state against counts recomputed from scratch.
    pub fn matches_recomputation(&self) -> bool {
        let fresh = counts_in_frame(&self.frame);
        let n = self.points.len();
        fresh == self.state.counts
            && (0..n).all(|p| {
                (0..n).all(|q| p == q || self.state.is_visible(p, q) == fresh.is_visible(p, q))
            })
            && self.state.running_edges == fresh.visible_pairs().count()
    }
}

/// Best graph found by a sweep.
#[derive(Debug, Clone)]
pub struct UniformSolution<'p> {
    pub direction: Direction,
    /// Index of the winning system in the sufficient list.
    pub cursor: usize,
    pub graph: GeometricGraph<'p>,
    pub cost: f64,
}

impl UniformSolution<'_> {
    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }
}

/// Runs a full sweep and returns the winning system under `objective`,
/// recomputed from scratch. Ties go to the smallest cursor.
pub fn sweep_optimum<'p>(
    points: &'p PointSet,
    schedule: EventSchedule,
    objective: Objective,
) -> Result<UniformSolution<'p>, SweepError> {
    if points.len() < 2 {
        let graph = GeometricGraph::empty(points);
        return Ok(UniformSolution {
            direction: Direction::STANDARD,
            cursor: 0,
            graph,
            cost: 0.0,
        });
    }
    let mut sweep = Sweep::with_schedule(points, schedule)?;
    let score = |s: &Sweep| match objective {
        Objective::Cost => s.state.running_units,
        Objective::Edges => s.state.running_edges as i128,
    };
    let mut best = (score(&sweep), 0usize);
    while !sweep.is_finished() {
        sweep.advance()?;
        let current = score(&sweep);
        if current < best.0 {
            best = (current, sweep.cursor());
        }
    }
    let direction = sweep.schedule().sufficient()[best.1].direction;
    let graph = rectangle_of_influence_graph(points, direction);
    Ok(UniformSolution {
        direction,
        cursor: best.1,
        cost: graph.cost(),
        graph,
    })
}

/// Minimum-cost uniform 2D-monotone spanning graph.
pub fn ummsg(points: &PointSet) -> Result<UniformSolution<'_>, SweepError> {
    sweep_optimum(points, EventSchedule::new(points)?, Objective::Cost)
}

/// Uniform 2D-monotone spanning graph with the fewest edges.
pub fn least_edges_uniform(points: &PointSet) -> Result<UniformSolution<'_>, SweepError> {
    sweep_optimum(points, EventSchedule::new(points)?, Objective::Edges)
}

/// Edge set of the rectangle of influence graph at the sweep's current system.
pub fn current_graph<'p>(sweep: &Sweep<'p>) -> GeometricGraph<'p> {
    let mut g = GeometricGraph::empty(sweep.points);
    g.extend(
        sweep
            .state
            .visible_pairs()
            .into_iter()
            .map(|(p, q)| Edge::new(p, q)),
    );
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rig::inclusion_counts;

    #[test]
    fn two_points() {
        let ps = PointSet::from_ints(&[(0, 0), (3, 4)]).unwrap();
        let mut sweep = Sweep::new(&ps).unwrap();
        assert_eq!(sweep.cursor(), 0);
        assert_eq!(sweep.state().running_edges(), 1);
        sweep.advance().unwrap();
        assert!(sweep.state().is_visible(0, 1));
        assert_eq!(sweep.advance(), Err(SweepError::CursorExhausted));

        let best = ummsg(&ps).unwrap();
        assert_eq!((best.cost, best.edge_count()), (5.0, 1));
        assert_eq!(least_edges_uniform(&ps).unwrap().edge_count(), 1);
    }

    #[test]
    fn init_matches_first_system() {
        let ps = PointSet::from_ints(&[(0, 0), (3, 1), (1, 3)]).unwrap();
        let sweep = Sweep::new(&ps).unwrap();
        let first = sweep.schedule().sufficient()[0].direction;
        assert_eq!(sweep.state().counts(), &inclusion_counts(&ps, first));
        assert!(sweep.matches_recomputation());
    }

    #[test]
    fn boundary_crossing_removes_visibility() {
        // When y' turns parallel to segment ab, a lands on the side of rect(p, b).
        // p = 0, a = 1, b = 2.
        let ps = PointSet::from_ints(&[(0, 0), (2, 1), (3, 5)]).unwrap();
        let schedule = EventSchedule::new(&ps).unwrap();
        let at = schedule.cursor_of_pair(1, 2).unwrap();
        let mut sweep = Sweep::new(&ps).unwrap();
        while sweep.cursor() + 1 < at {
            sweep.advance().unwrap();
        }
        assert_eq!(sweep.state().counts().get(0, 2), 0);
        assert!(sweep.state().is_visible(0, 2));
        sweep.advance().unwrap();
        assert_eq!(sweep.cursor(), at);
        assert_eq!(sweep.state().counts().get(0, 2), 1);
        assert!(!sweep.state().is_visible(0, 2));
        assert!(sweep.matches_recomputation());
    }

    #[test]
    fn full_pass_matches_recomputation() {
        let ps = PointSet::from_ints(&[(0, 0), (7, 2), (3, 9), (12, 5), (5, 4), (1, 13)]).unwrap();
        let mut sweep = Sweep::new(&ps).unwrap();
        assert!(sweep.matches_recomputation());
        while !sweep.is_finished() {
            sweep.advance().unwrap();
            assert!(sweep.matches_recomputation(), "cursor {}", sweep.cursor());
        }
        assert_eq!(sweep.cursor(), 2 * 15 - 1);
    }

    #[test]
    fn coincident_events_are_merged() {
        // Right angles at 1 make several segments share event angles.
        let ps = PointSet::from_ints(&[(0, 0), (4, 0), (4, 3), (1, 5), (7, 6)]).unwrap();
        let schedule = EventSchedule::with_coincident_events(&ps).unwrap();
        let mut sweep = Sweep::with_schedule(&ps, schedule).unwrap();
        assert!(sweep.matches_recomputation());
        while !sweep.is_finished() {
            sweep.advance().unwrap();
            assert!(sweep.matches_recomputation(), "cursor {}", sweep.cursor());
        }
    }

    #[test]
    fn degenerate_input_is_rejected() {
        let ps = PointSet::from_ints(&[(0, 0), (1, 0), (2, 0)]).unwrap();
        assert!(matches!(
            ummsg(&ps),
            Err(SweepError::Geom(GeomError::DegenerateInput(_)))
        ));
    }
}
