//! Seeded random point sets in general position.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geom::{validate_general_position, Direction, PointSet};

/// Coordinates are multiples of `1 / RESOLUTION` in `[0, 1]`.
pub const RESOLUTION: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("k = {k} exceeds n = {n}")]
    TooManyRoots { n: usize, k: usize },
    #[error("no general-position set of {0} points found within the retry limit")]
    GenerationFailed(usize),
}

/// A generated instance: points and the indices chosen as roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub points: PointSet,
    pub roots: Vec<usize>,
}

/// `n` points in general position with pairwise distinct y, `k` of them
/// marked as roots. Identical arguments give identical output.
pub fn generate(n: usize, k: usize, seed: u64) -> Result<Generated, GenerateError> {
    if k > n {
        return Err(GenerateError::TooManyRoots { n, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<(i64, i64)> = Vec::with_capacity(n);
    let mut angles: HashSet<Direction> = HashSet::new();
    let mut ys: HashSet<i64> = HashSet::new();
    let mut attempts = 0usize;
    let limit = 1000 * (n + 1);
    while chosen.len() < n {
        attempts += 1;
        if attempts > limit {
            return Err(GenerateError::GenerationFailed(n));
        }
        let c = (rng.gen_range(0..=RESOLUTION), rng.gen_range(0..=RESOLUTION));
        if ys.contains(&c.1) {
            continue;
        }
        let mut fresh = Vec::with_capacity(chosen.len());
        let ok = chosen.iter().all(|&(x, y)| {
            let d = match Direction::new((c.0 - x) as i128, (c.1 - y) as i128) {
                Ok(d) => d.quarter_turn_reduced(),
                Err(_) => return false,
            };
            if angles.contains(&d) || fresh.contains(&d) {
                return false;
            }
            fresh.push(d);
            true
        });
        if ok {
            angles.extend(fresh);
            ys.insert(c.1);
            chosen.push(c);
        }
    }
    let denom = BigInt::from(RESOLUTION);
    let coords = chosen
        .iter()
        .map(|&(x, y)| {
            (
                BigRational::new(x.into(), denom.clone()),
                BigRational::new(y.into(), denom.clone()),
            )
        })
        .collect();
    let points = PointSet::new(coords).expect("unit square coordinates fit the lattice");
    debug_assert!(validate_general_position(&points).is_valid());
    let mut roots = sample(&mut rng, n, k).into_vec();
    roots.sort_unstable();
    Ok(Generated { points, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RootedPointSet;

    #[test]
    fn small_sets_are_valid() {
        for seed in 0..20 {
            let g = generate(2, 0, seed).unwrap();
            assert_eq!(g.points.len(), 2);
            assert!(g.roots.is_empty());
            let g = generate(7, 2, seed).unwrap();
            assert!(validate_general_position(&g.points).is_valid());
            assert_eq!(g.roots.len(), 2);
            assert!(RootedPointSet::new(g.points, g.roots).is_ok());
        }
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(generate(12, 3, 99).unwrap(), generate(12, 3, 99).unwrap());
        assert_ne!(generate(12, 3, 99).unwrap(), generate(12, 3, 100).unwrap());
    }

    #[test]
    fn rejects_excess_roots() {
        assert_eq!(
            generate(2, 3, 0),
            Err(GenerateError::TooManyRoots { n: 2, k: 3 })
        );
    }

    #[test]
    fn larger_sets_are_valid() {
        let g = generate(60, 0, 7).unwrap();
        assert!(validate_general_position(&g.points).is_valid());
    }
}
