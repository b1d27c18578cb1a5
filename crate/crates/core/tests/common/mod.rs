#![allow(dead_code)]

use monospan::geom::{Direction, PointSet};
use monospan::graph::GeometricGraph;
use monospan::{generate, Generated};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn instance(n: usize, k: usize, seed: u64) -> Generated {
    generate(n, k, seed).expect("generation succeeds")
}

/// A direction with random small integer components and random orientation.
pub fn random_direction(rng: &mut ChaCha8Rng) -> Direction {
    let dx = rng.gen_range(-1000i128..=1000);
    let dy = rng.gen_range(1i128..=1000);
    Direction::new(dx, dy).expect("non-zero")
}

/// Every root reaches every other vertex along strictly y-increasing or
/// strictly y-decreasing edges.
pub fn roots_reach_all(g: &GeometricGraph, roots: &[usize]) -> bool {
    let points: &PointSet = g.points();
    let n = points.len();
    let adj = g.adjacency();
    let y = |i: usize| points.lattice(i).y;
    roots.iter().all(|&r| {
        let mut seen = vec![false; n];
        seen[r] = true;
        for up in [true, false] {
            let mut stack = vec![r];
            let mut local = vec![false; n];
            local[r] = true;
            while let Some(a) = stack.pop() {
                for &b in &adj[a] {
                    if !local[b] && (y(b) > y(a)) == up && y(b) != y(a) {
                        local[b] = true;
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    })
}

pub fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
