//! Exact planar primitives: point sets, axis directions, rotated frames, the
//! closed-rectangle predicate and the schedule of event directions swept by
//! the uniform solvers.
//!
//! Coordinates are ingested as exact rationals and rescaled by the common
//! denominator onto an `i128` lattice. Every ordering, containment and angle
//! test is a sign test on lattice integers; only Euclidean lengths use `f64`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::{parse_rational, ParseRationalError};

/// Largest magnitude allowed for a lattice coordinate.
pub const MAX_LATTICE_COORD: i128 = 1 << 60;
/// Largest magnitude allowed for a direction component.
pub const MAX_DIRECTION_COMPONENT: i128 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("coordinates exceed the exact lattice range (|x|, |y| times common denominator must stay below 2^60)")]
    CoordinateRange,
    #[error("direction must be a nonzero vector with components below 2^62 after reduction")]
    InvalidDirection,
    #[error("input is not in general position: {0}")]
    DegenerateInput(String),
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
    pub index: usize,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational, index: usize) -> Self {
        Point { x, y, index }
    }
}

/// Lattice image of a point: the coordinates times the set's common denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i128,
    pub y: i128,
}

/// An indexed point set together with its exact integer lattice image.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
    lattice: Vec<LatticePoint>,
    scale: BigInt,
    scale_f64: f64,
}

// `scale_f64` is a finite function of `scale`.
impl Eq for PointSet {}

impl PointSet {
    pub fn new(coords: Vec<(BigRational, BigRational)>) -> Result<Self, GeomError> {
        let scale = coords.iter().fold(BigInt::one(), |acc, (x, y)| {
            acc.lcm(x.denom()).lcm(y.denom())
        });
        let to_lattice = |c: &BigRational| -> Result<i128, GeomError> {
            let scaled = c.numer() * (&scale / c.denom());
            scaled
                .to_i128()
                .filter(|v| v.abs() <= MAX_LATTICE_COORD)
                .ok_or(GeomError::CoordinateRange)
        };
        let mut lattice = Vec::with_capacity(coords.len());
        for (x, y) in &coords {
            lattice.push(LatticePoint {
                x: to_lattice(x)?,
                y: to_lattice(y)?,
            });
        }
        let points = coords
            .into_iter()
            .enumerate()
            .map(|(index, (x, y))| Point { x, y, index })
            .collect();
        let scale_f64 = scale.to_f64().ok_or(GeomError::CoordinateRange)?;
        Ok(PointSet {
            points,
            lattice,
            scale,
            scale_f64,
        })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self, GeomError> {
        Self::new(
            coords
                .iter()
                .map(|&(x, y)| {
                    (
                        BigRational::from_integer(x.into()),
                        BigRational::from_integer(y.into()),
                    )
                })
                .collect(),
        )
    }

    /// Builds a point set from decimal or `num/den` literals.
    pub fn from_strs(coords: &[(&str, &str)]) -> Result<Self, GeomError> {
        let mut parsed = Vec::with_capacity(coords.len());
        for (x, y) in coords {
            parsed.push((parse_rational(x)?, parse_rational(y)?));
        }
        Self::new(parsed)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn lattice(&self, i: usize) -> LatticePoint {
        self.lattice[i]
    }

    /// Common denominator used to map coordinates onto the lattice.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Vector from point `i` to point `j` on the lattice.
    pub fn lattice_delta(&self, i: usize, j: usize) -> (i128, i128) {
        let (a, b) = (self.lattice[i], self.lattice[j]);
        (b.x - a.x, b.y - a.y)
    }

    /// Exact squared distance on the lattice (in lattice units).
    pub fn lattice_dist2(&self, i: usize, j: usize) -> i128 {
        let (dx, dy) = self.lattice_delta(i, j);
        dx * dx + dy * dy
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let (dx, dy) = self.lattice_delta(i, j);
        (dx as f64).hypot(dy as f64) / self.scale_f64
    }

    pub fn x_f64(&self, i: usize) -> f64 {
        self.lattice[i].x as f64 / self.scale_f64
    }

    pub fn y_f64(&self, i: usize) -> f64 {
        self.lattice[i].y as f64 / self.scale_f64
    }

    /// Rotated coordinates of every point in frame `d`.
    pub fn frame(&self, d: Direction) -> Frame {
        Frame {
            direction: d,
            coords: self.lattice.iter().map(|&p| d.project(p)).collect(),
        }
    }
}

/// The `y'` axis of a Cartesian system. The paired `x'` axis is `(dy, -dx)`.
///
/// Stored gcd-reduced and quarter-turn normalised so that `dx > 0, dy >= 0`
/// or `(dx, dy) = (0, 1)`; every predicate is invariant under positive scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Direction {
    dx: i128,
    dy: i128,
}

impl Direction {
    /// The standard axes.
    pub const STANDARD: Direction = Direction { dx: 0, dy: 1 };

    pub fn new(dx: i128, dy: i128) -> Result<Self, GeomError> {
        if dx == 0 && dy == 0 {
            return Err(GeomError::InvalidDirection);
        }
        let g = dx.gcd(&dy);
        let (mut x, mut y) = (dx / g, dy / g);
        while !((x > 0 && y >= 0) || (x == 0 && y > 0)) {
            (x, y) = (y, -x);
        }
        if x.abs() > MAX_DIRECTION_COMPONENT || y.abs() > MAX_DIRECTION_COMPONENT {
            return Err(GeomError::InvalidDirection);
        }
        Ok(Direction { dx: x, dy: y })
    }

    pub fn from_rational(dx: &BigRational, dy: &BigRational) -> Result<Self, GeomError> {
        let l = dx.denom().lcm(dy.denom());
        let x = dx.numer() * (&l / dx.denom());
        let y = dy.numer() * (&l / dy.denom());
        let g = x.gcd(&y);
        if g.is_zero() {
            return Err(GeomError::InvalidDirection);
        }
        let x = (x / &g).to_i128().ok_or(GeomError::InvalidDirection)?;
        let y = (y / &g).to_i128().ok_or(GeomError::InvalidDirection)?;
        Self::new(x, y)
    }

    /// Standard axes rotated counterclockwise by `degrees`, rounded to a
    /// rational vector with nine significant decimals.
    pub fn from_degrees(degrees: f64) -> Result<Self, GeomError> {
        let theta = degrees.to_radians();
        let dx = (-theta.sin() * 1e9).round() as i128;
        let dy = (theta.cos() * 1e9).round() as i128;
        Self::new(dx, dy)
    }

    /// A rational direction whose `y'` axis makes angle `radians` with the x axis.
    pub fn from_angle(radians: f64) -> Result<Self, GeomError> {
        let dx = (radians.cos() * 1e9).round() as i128;
        let dy = (radians.sin() * 1e9).round() as i128;
        Self::new(dx, dy)
    }

    pub fn dx(&self) -> i128 {
        self.dx
    }

    pub fn dy(&self) -> i128 {
        self.dy
    }

    pub fn x_axis(&self) -> (i128, i128) {
        (self.dy, -self.dx)
    }

    /// Representative with angle in `[0, pi/2)`; differs from `self` only for `(0, 1)`.
    pub fn quarter_turn_reduced(self) -> Direction {
        if self.dx == 0 {
            Direction { dx: self.dy, dy: 0 }
        } else {
            self
        }
    }

    /// Orders two directions by the angle of their `[0, pi/2)` representatives.
    pub fn cmp_angle(&self, other: &Direction) -> Ordering {
        let a = self.quarter_turn_reduced();
        let b = other.quarter_turn_reduced();
        let cross = a.dx * b.dy - a.dy * b.dx;
        0.cmp(&cross)
    }

    /// Angle of the `[0, pi/2)` representative, for display only.
    pub fn angle(&self) -> f64 {
        let r = self.quarter_turn_reduced();
        (r.dy as f64).atan2(r.dx as f64)
    }

    /// `(u, v)` of a lattice point: `v` along `y'`, `u` along `x'`.
    pub fn project(&self, p: LatticePoint) -> (i128, i128) {
        (p.x * self.dy - p.y * self.dx, p.x * self.dx + p.y * self.dy)
    }

    pub fn as_rational(&self) -> (BigRational, BigRational) {
        (
            BigRational::from_integer(BigInt::from(self.dx)),
            BigRational::from_integer(BigInt::from(self.dy)),
        )
    }
}

impl Default for Direction {
    fn default() -> Self {
        Direction::STANDARD
    }
}

/// Direction of the segment `i -> j`, quarter-turn reduced into `[0, pi/2)`.
pub fn segment_event_direction(
    points: &PointSet,
    i: usize,
    j: usize,
) -> Result<Direction, GeomError> {
    let (dx, dy) = points.lattice_delta(i, j);
    Direction::new(dx, dy)
        .map(Direction::quarter_turn_reduced)
        .map_err(|_| GeomError::DegenerateInput(format!("points {i} and {j} coincide")))
}

/// Exact rotated coordinates `(u, v)` of `p` in frame `d`.
pub fn rotated_coords(p: &Point, d: Direction) -> (BigRational, BigRational) {
    let (dx, dy) = d.as_rational();
    let u = &p.x * &dy - &p.y * &dx;
    let v = &p.x * &dx + &p.y * &dy;
    (u, v)
}

fn between<T: Ord>(a: &T, b: &T, r: &T) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= r && r <= hi
}

/// Whether `r` lies in the closed rectangle with opposite corners `a`, `b` in frame `d`.
pub fn closed_rect_contains(a: &Point, b: &Point, r: &Point, d: Direction) -> bool {
    let (ua, va) = rotated_coords(a, d);
    let (ub, vb) = rotated_coords(b, d);
    let (ur, vr) = rotated_coords(r, d);
    between(&ua, &ub, &ur) && between(&va, &vb, &vr)
}

/// Rotated lattice coordinates of a whole point set in one frame.
#[derive(Debug, Clone)]
pub struct Frame {
    direction: Direction,
    coords: Vec<(i128, i128)>,
}

impl Frame {
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn u(&self, i: usize) -> i128 {
        self.coords[i].0
    }

    pub fn v(&self, i: usize) -> i128 {
        self.coords[i].1
    }

    pub fn coords(&self) -> &[(i128, i128)] {
        &self.coords
    }

    /// Closed-rectangle membership of `r` in the box spanned by `a` and `b`.
    #[inline]
    pub fn rect_contains(&self, a: usize, b: usize, r: usize) -> bool {
        let (ua, va) = self.coords[a];
        let (ub, vb) = self.coords[b];
        let (ur, vr) = self.coords[r];
        between(&ua, &ub, &ur) && between(&va, &vb, &vr)
    }

    /// First pair of points sharing a `v` coordinate, if any.
    pub fn v_tie(&self) -> Option<(usize, usize)> {
        first_tie(self.coords.iter().map(|c| c.1))
    }

    pub fn u_tie(&self) -> Option<(usize, usize)> {
        first_tie(self.coords.iter().map(|c| c.0))
    }
}

fn first_tie(values: impl Iterator<Item = i128>) -> Option<(usize, usize)> {
    let mut keyed: Vec<(i128, usize)> = values.enumerate().map(|(i, v)| (v, i)).collect();
    keyed.sort_unstable();
    keyed
        .windows(2)
        .find(|w| w[0].0 == w[1].0)
        .map(|w| (w[0].1, w[1].1))
}

/// One event direction and the pair whose segment generates it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Event {
    pub direction: Direction,
    pub pair: (usize, usize),
}

/// A Cartesian system visited by the sweep. Event systems carry the range of
/// events that share their direction; in-between systems carry an empty range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub direction: Direction,
    pub events: Range<usize>,
}

impl System {
    pub fn is_event(&self) -> bool {
        !self.events.is_empty()
    }
}

/// Event directions of a point set, sorted by angle, and the sufficient
/// systems interleaving each event with a direction strictly inside the
/// following gap.
#[derive(Debug, Clone)]
pub struct EventSchedule {
    events: Vec<Event>,
    sufficient: Vec<System>,
}

impl EventSchedule {
    /// Schedule for a point set in general position; shared event angles are rejected.
    pub fn new(points: &PointSet) -> Result<Self, GeomError> {
        let schedule = Self::with_coincident_events(points)?;
        if let Some(sys) = schedule.sufficient.iter().find(|s| s.events.len() > 1) {
            let pairs: Vec<_> = schedule.events[sys.events.clone()]
                .iter()
                .map(|e| e.pair)
                .collect();
            return Err(GeomError::DegenerateInput(format!(
                "segments {pairs:?} are parallel or perpendicular"
            )));
        }
        Ok(schedule)
    }

    /// Schedule that merges events sharing an angle into a single event system.
    /// Only coincident points are rejected.
    pub fn with_coincident_events(points: &PointSet) -> Result<Self, GeomError> {
        let n = points.len();
        let mut events = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                events.push(Event {
                    direction: segment_event_direction(points, i, j)?,
                    pair: (i, j),
                });
            }
        }
        events.sort_by(|a, b| {
            a.direction
                .cmp_angle(&b.direction)
                .then(a.pair.cmp(&b.pair))
        });

        let mut groups: Vec<Range<usize>> = Vec::new();
        let mut start = 0;
        for k in 1..=events.len() {
            if k == events.len() || events[k].direction != events[start].direction {
                groups.push(start..k);
                start = k;
            }
        }

        let mut sufficient = Vec::with_capacity(2 * groups.len());
        for (g, range) in groups.iter().enumerate() {
            let here = events[range.start].direction;
            let next = match groups.get(g + 1) {
                Some(r) => events[r.start].direction,
                None => Direction::STANDARD,
            };
            let mid = Direction::new(here.dx + next.dx, here.dy + next.dy)?;
            sufficient.push(System {
                direction: here,
                events: range.clone(),
            });
            sufficient.push(System {
                direction: mid,
                events: 0..0,
            });
        }
        Ok(EventSchedule { events, sufficient })
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn sufficient(&self) -> &[System] {
        &self.sufficient
    }

    pub fn len(&self) -> usize {
        self.sufficient.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sufficient.is_empty()
    }

    /// Events whose direction is crossed when moving from system `k` to `k + 1`.
    pub fn transition_events(&self, k: usize) -> &[Event] {
        let here = &self.sufficient[k];
        let next = &self.sufficient[k + 1];
        let range = if next.is_event() {
            next.events.clone()
        } else {
            here.events.clone()
        };
        &self.events[range]
    }

    /// Cursor of the event system generated by the segment `{i, j}`.
    pub fn cursor_of_pair(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.sufficient
            .iter()
            .position(|s| self.events[s.events.clone()].iter().any(|e| e.pair == key))
    }
}

/// One general-position violation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicatePoints { points: [usize; 2] },
    Collinear { points: [usize; 3] },
    Parallel { segments: [[usize; 2]; 2] },
    Perpendicular { segments: [[usize; 2]; 2] },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists duplicate points, collinear triples and parallel or perpendicular
/// segment pairs. Runs in `O(n^2 log n)` plus the size of the report.
pub fn validate_general_position(points: &PointSet) -> ValidationReport {
    let n = points.len();
    let mut report = BTreeSet::new();
    let mut keyed = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            match segment_event_direction(points, i, j) {
                Ok(d) => keyed.push((d, i, j)),
                Err(_) => {
                    report.insert(Violation::DuplicatePoints { points: [i, j] });
                }
            }
        }
    }
    keyed.sort_by(|a, b| a.0.cmp_angle(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));

    let mut start = 0;
    while start < keyed.len() {
        let mut end = start + 1;
        while end < keyed.len() && keyed[end].0 == keyed[start].0 {
            end += 1;
        }
        let group = &keyed[start..end];
        for (a, &(_, i, j)) in group.iter().enumerate() {
            for &(_, k, l) in &group[a + 1..] {
                let (ux, uy) = points.lattice_delta(i, j);
                let (wx, wy) = points.lattice_delta(k, l);
                let parallel = ux * wy - uy * wx == 0;
                let shared: BTreeSet<usize> = [i, j, k, l].into_iter().collect();
                let same = |a: usize, b: usize| points.lattice(a) == points.lattice(b);
                let only_duplicates = match shared.len() {
                    3 => {
                        let ends: Vec<usize> = [i, j, k, l]
                            .into_iter()
                            .filter(|&v| [i, j].contains(&v) != [k, l].contains(&v))
                            .collect();
                        same(ends[0], ends[1])
                    }
                    _ => (same(i, k) && same(j, l)) || (same(i, l) && same(j, k)),
                };
                if only_duplicates {
                    continue;
                }
                let violation = if parallel && shared.len() == 3 {
                    let v: Vec<usize> = shared.into_iter().collect();
                    Violation::Collinear {
                        points: [v[0], v[1], v[2]],
                    }
                } else if parallel {
                    Violation::Parallel {
                        segments: [[i, j], [k, l]],
                    }
                } else {
                    Violation::Perpendicular {
                        segments: [[i, j], [k, l]],
                    }
                };
                report.insert(violation);
            }
        }
        start = end;
    }
    ValidationReport {
        violations: report.into_iter().collect(),
    }
}
