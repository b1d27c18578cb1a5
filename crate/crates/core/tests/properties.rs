mod common;

use common::{instance, roots_reach_all};
use monospan::geom::{closed_rect_contains, Direction, EventSchedule, PointSet};
use monospan::graph::{
    is_k_rooted_y_monotone, is_uniform_2d_monotone, is_xy_monotone_connected,
    is_y_monotone_connected, GeometricGraph, RootedPointSet,
};
use monospan::io::{parse_points, points_to_json, points_to_text};
use monospan::oracle::{
    brute_is_2d_monotone, brute_min_rooted_subset, brute_min_xy_spanning, OracleBudget,
};
use monospan::rig::{inclusion_counts, rectangle_of_influence_graph};
use monospan::rooted::{k_rooted_2approx, rooted_y_mmsg, strip_decompose};
use monospan::Objective;
use num_rational::BigRational;
use proptest::prelude::*;

fn direction() -> impl Strategy<Value = Direction> {
    (-50i128..=50, -50i128..=50)
        .prop_filter("non-zero", |&(x, y)| x != 0 || y != 0)
        .prop_map(|(x, y)| Direction::new(x, y).unwrap())
}

fn small_ints() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, -6i64..=6), 3..=7)
}

fn random_graph<'p>(points: &'p PointSet, mask: u64) -> GeometricGraph<'p> {
    let n = points.len();
    let mut edges = Vec::new();
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((a, b));
            }
            bit += 1;
        }
    }
    GeometricGraph::from_edges(points, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rect_membership_is_symmetric_and_scale_free(coords in small_ints(), d in direction(), num in 1i64..20, den in 1i64..20) {
        let ps = PointSet::from_ints(&coords).unwrap();
        let q = BigRational::new(num.into(), den.into());
        let (dx, dy) = d.as_rational();
        let scaled = Direction::from_rational(&(dx * &q), &(dy * &q)).unwrap();
        let p = ps.points();
        for r in p {
            let ab = closed_rect_contains(&p[0], &p[1], r, d);
            prop_assert_eq!(ab, closed_rect_contains(&p[1], &p[0], r, d));
            prop_assert_eq!(ab, closed_rect_contains(&p[0], &p[1], r, scaled));
        }
    }

    #[test]
    fn parallel_and_perpendicular_entries_reduce_alike(dx in 1i128..100, dy in 0i128..100) {
        let d = Direction::new(dx, dy).unwrap();
        let perp = Direction::new(-dy, dx).unwrap();
        prop_assert_eq!(d.quarter_turn_reduced(), perp.quarter_turn_reduced());
    }

    #[test]
    fn sufficient_list_has_full_length_and_increases(n in 2usize..20, seed in 0u64..1000) {
        let ps = instance(n, 0, seed).points;
        let s = EventSchedule::new(&ps).unwrap();
        prop_assert_eq!(s.len(), n * (n - 1));
        let dirs: Vec<Direction> = s.sufficient().iter().map(|x| x.direction).collect();
        for w in dirs.windows(2) {
            prop_assert!(w[0].cmp_angle(&w[1]).is_lt());
        }
    }

    #[test]
    fn xy_monotone_implies_y_monotone(n in 2usize..8, seed in 0u64..1000, mask in any::<u64>(), d in direction()) {
        let ps = instance(n, 0, seed).points;
        let g = random_graph(&ps, mask);
        if let Ok(y) = is_y_monotone_connected(&g, d) {
            prop_assert!(!is_xy_monotone_connected(&g, d) || y);
        }
    }

    #[test]
    fn visible_pairs_are_forced_edges(n in 2usize..8, seed in 0u64..1000, mask in any::<u64>(), d in direction()) {
        let ps = instance(n, 0, seed).points;
        let g = random_graph(&ps, mask).union(&rectangle_of_influence_graph(&ps, d));
        prop_assert!(is_xy_monotone_connected(&g, d));
        let counts = inclusion_counts(&ps, d);
        for (p, q) in counts.visible_pairs() {
            prop_assert!(g.contains(p, q));
        }
        let h = random_graph(&ps, mask);
        if is_xy_monotone_connected(&h, d) {
            for (p, q) in counts.visible_pairs() {
                prop_assert!(h.contains(p, q));
            }
        }
    }

    #[test]
    fn adding_edges_never_breaks_connectivity(n in 2usize..8, seed in 0u64..1000, mask in any::<u64>(), extra in any::<u64>(), d in direction()) {
        let ps = instance(n, 1, seed);
        let rps = RootedPointSet::new(ps.points.clone(), ps.roots.clone()).unwrap();
        let g = random_graph(rps.points(), mask);
        let bigger = g.union(&random_graph(rps.points(), extra));
        prop_assert!(!is_xy_monotone_connected(&g, d) || is_xy_monotone_connected(&bigger, d));
        if let (Ok(a), Ok(b)) = (is_y_monotone_connected(&g, d), is_y_monotone_connected(&bigger, d)) {
            prop_assert!(!a || b);
        }
        let a = is_k_rooted_y_monotone(&g, rps.roots(), Direction::STANDARD).unwrap();
        let b = is_k_rooted_y_monotone(&bigger, rps.roots(), Direction::STANDARD).unwrap();
        prop_assert!(!a || b);
        let budget = OracleBudget::default();
        prop_assert!(!brute_is_2d_monotone(&g, &budget).unwrap() || brute_is_2d_monotone(&bigger, &budget).unwrap());
    }

    #[test]
    fn uniform_implies_two_d_monotone(n in 2usize..7, seed in 0u64..1000, mask in any::<u64>()) {
        let ps = instance(n, 0, seed).points;
        let g = random_graph(&ps, mask);
        if is_uniform_2d_monotone(&g).unwrap().is_some() {
            prop_assert!(brute_is_2d_monotone(&g, &OracleBudget::default()).unwrap());
        }
    }

    #[test]
    fn oracle_objectives_agree(n in 2usize..7, seed in 0u64..1000, d in direction()) {
        let ps = instance(n, 0, seed).points;
        let budget = OracleBudget::default();
        let by_cost = brute_min_xy_spanning(&ps, d, Objective::Cost, &budget).unwrap();
        let by_edges = brute_min_xy_spanning(&ps, d, Objective::Edges, &budget).unwrap();
        prop_assert_eq!(by_cost.edge_pairs(), by_edges.edge_pairs());
    }

    #[test]
    fn greedy_gives_every_point_a_band_neighbour(n in 1usize..40, seed in 0u64..1000) {
        let g = instance(n, 1, seed);
        let rps = RootedPointSet::new(g.points, g.roots).unwrap();
        let tree = rooted_y_mmsg(&rps).unwrap();
        let root = rps.roots()[0];
        let y = |i: usize| rps.points().lattice(i).y;
        prop_assert_eq!(tree.edge_count(), n - 1);
        for p in (0..n).filter(|&p| p != root) {
            let has = tree.edges().any(|e| {
                if e.a() != p && e.b() != p {
                    return false;
                }
                let q = e.other(p);
                let (lo, hi) = if y(p) > y(root) { (y(root), y(p)) } else { (y(p), y(root)) };
                q != p && lo <= y(q) && y(q) <= hi
            });
            prop_assert!(has);
        }
        prop_assert!(roots_reach_all(&tree, rps.roots()));
    }

    #[test]
    fn approximation_passes_both_validators(n in 2usize..40, k in 1usize..6, seed in 0u64..1000) {
        let k = k.min(n);
        let g = instance(n, k, seed);
        let rps = RootedPointSet::new(g.points, g.roots).unwrap();
        let approx = k_rooted_2approx(&rps).unwrap();
        prop_assert!(is_k_rooted_y_monotone(&approx, rps.roots(), Direction::STANDARD).unwrap());
        prop_assert!(roots_reach_all(&approx, rps.roots()));
    }

    #[test]
    fn approximation_cost_bound(n in 3usize..8, k in 2usize..4, seed in 0u64..1000) {
        let k = k.min(n - 1);
        let g = instance(n, k, seed);
        let rps = RootedPointSet::new(g.points, g.roots).unwrap();
        let approx = k_rooted_2approx(&rps).unwrap();
        let parts = strip_decompose(&rps).unwrap();
        let budget = OracleBudget::default();
        let opt = |m: &[usize], r: &[usize]| brute_min_rooted_subset(rps.points(), m, r, &budget).unwrap().cost();
        let mut bound = opt(&parts.below.members, &parts.below.roots) + opt(&parts.above.members, &parts.above.roots);
        for s in &parts.strips {
            bound += 2.0 * opt(&s.members, &s.roots);
        }
        prop_assert!(approx.cost() <= bound * (1.0 + 1e-9));
    }

    #[test]
    fn point_files_round_trip(n in 0usize..20, k in 0usize..4, seed in 0u64..1000) {
        let g = instance(n, k.min(n), seed);
        let json = parse_points(&points_to_json(&g.points, &g.roots)).unwrap();
        let text = parse_points(&points_to_text(&g.points, &g.roots)).unwrap();
        prop_assert_eq!(&json.points, &g.points);
        prop_assert_eq!(&json.roots, &g.roots);
        prop_assert_eq!(text.points, g.points);
        prop_assert_eq!(text.roots, g.roots);
    }
}

#[test]
fn rotation_changes_the_graph() {
    let ps =
        PointSet::from_ints(&[(-8, 5), (5, -8), (18, 5), (3, -11), (-1, -12), (0, -16)]).unwrap();
    let a = rectangle_of_influence_graph(&ps, Direction::STANDARD);
    let b = rectangle_of_influence_graph(&ps, Direction::new(1, 1).unwrap());
    assert_ne!(a.edge_pairs(), b.edge_pairs());
}
