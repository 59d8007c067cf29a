//! Cayley graphs of balls, coned-off Cayley graphs, four-point δ estimates
//! and quasi-geodesic tests.
//!
//! Edge weights are stored doubled so cone half-edges stay integral; every
//! distance handed back to callers is halved into an exact rational.

mod coned;
mod graph;
mod hyperbolicity;

use alloc::string::String;

pub use coned::{coned_off, has_backtracking, penetration_report, ConedOffGraph, Coset, Penetration, Subgroup};
pub use graph::{cayley_graph, GraphPath, MetricGraph};
pub use hyperbolicity::{
    estimate_delta_4point, is_quasi_geodesic, max_defect_from, merge_defects, quadruple_count, scaled_defect,
    DeltaEstimate, DeltaMode, EXHAUSTIVE_VERTEX_CAP,
};

use crate::group::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("no vertex {0}")]
    NoSuchVertex(u32),
    #[error("invalid edge {a}-{b} of weight {weight}")]
    InvalidEdge { a: u32, b: u32, weight: u32 },
    #[error("vertices {0} and {1} are not connected")]
    Disconnected(u32, u32),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(u32, u32),
    #[error("empty path")]
    EmptyPath,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("subgroup oracle inconsistent: {0}")]
    InconsistentOracle(String),
    #[error("subgroups intersect nontrivially: {0}")]
    OverlappingSubgroups(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[cfg(test)]
mod tests {
    use alloc::vec;
    use alloc::vec::Vec;

    use num_rational::Rational64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::{Ball, Element, GroupModel, DEFAULT_BALL_CAP};

    fn ball(g: &GroupModel, r: u32) -> Ball {
        Ball::build(g, r, DEFAULT_BALL_CAP).unwrap()
    }

    fn idx(g: &GroupModel, b: &Ball, s: &str) -> u32 {
        b.index_of(&g.parse_element(s).unwrap()).unwrap() as u32
    }

    fn half(n: i64) -> Rational64 {
        Rational64::new(n, 2)
    }

    fn f2_coned(r: u32) -> (GroupModel, Ball, ConedOffGraph) {
        let g = GroupModel::Free { rank: 2 };
        let b = ball(&g, r);
        let h = Subgroup::Cyclic { generator: g.parse_element("a").unwrap() };
        let c = coned_off(&g, &b, &[h]).unwrap();
        (g, b, c)
    }

    #[test]
    fn cayley_graph_shapes() {
        let f2 = GroupModel::Free { rank: 2 };
        let g = cayley_graph(&f2, &ball(&f2, 2));
        assert_eq!((g.vertex_count(), g.edge_count()), (17, 16));
        assert!(g.is_connected());
        let z2 = GroupModel::FreeAbelian { rank: 2 };
        let g = cayley_graph(&z2, &ball(&z2, 1));
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 4));
        assert!(g.edges().iter().all(|e| e.2 == 2));
    }

    #[test]
    fn cyclic_six_is_a_hexagon() {
        let z6 = GroupModel::builtin("Z6").unwrap();
        let b = ball(&z6, 6);
        assert_eq!(b.len(), 6);
        let g = cayley_graph(&z6, &b);
        // direct construction: i ~ i±1 mod 6
        let mut expect: Vec<(u32, u32, u32)> = (0..6u32)
            .map(|i| {
                let a = b.index_of(&Element::Finite(i)).unwrap() as u32;
                let c = b.index_of(&Element::Finite((i + 1) % 6)).unwrap() as u32;
                (a.min(c), a.max(c), 2)
            })
            .collect();
        expect.sort_unstable();
        assert_eq!(g.edges(), expect);
        assert_eq!(g.distance(0, b.index_of(&Element::Finite(3)).unwrap() as u32).unwrap(), Rational64::from(3));
    }

    #[test]
    fn coned_distances_in_f2() {
        let (g, b, c) = f2_coned(4);
        let e = 0;
        let a4 = idx(&g, &b, "a^4");
        assert_eq!(c.distance(e, a4).unwrap(), Rational64::from(1));
        assert_eq!(c.graph().scaled_distance(e, a4).unwrap(), 2);
        assert_eq!(c.distance(a4, a4).unwrap(), Rational64::from(0));
        // b·a⁴ has length 5, so it first appears in the radius-5 ball
        assert!(b.index_of(&g.parse_element("ba^4").unwrap()).is_none());
        let (g, b, c) = f2_coned(5);
        let ba4 = idx(&g, &b, "ba^4");
        assert_eq!(c.distance(e, ba4).unwrap(), Rational64::from(2));
        assert_eq!(c.cayley_distance(e, ba4).unwrap(), Rational64::from(5));
    }

    #[test]
    fn coned_distance_a8() {
        let (g, b, c) = f2_coned(8);
        assert_eq!(c.distance(0, idx(&g, &b, "a^8")).unwrap(), Rational64::from(1));
    }

    #[test]
    fn cone_count_matches_exhaustive_cosets() {
        let g = GroupModel::free_product(vec![GroupModel::FreeAbelian { rank: 2 }, GroupModel::Free { rank: 1 }])
            .unwrap();
        let b = ball(&g, 3);
        let h = Subgroup::Factor { factor: 0 };
        let c = coned_off(&g, &b, &[h.clone()]).unwrap();
        // oracle: greedy classes under x ~ y iff x⁻¹y ∈ H
        let mut reps: Vec<&Element> = Vec::new();
        for x in b.elements() {
            if !reps.iter().any(|r| h.contains(&g, &g.mul(&g.inv(r), x)).unwrap()) {
                reps.push(x);
            }
        }
        assert_eq!(c.cone_vertex_count(), reps.len());
        let total: usize = c.cosets().iter().map(|k| k.members.len()).sum();
        assert_eq!(total, b.len());
    }

    #[test]
    fn every_coset_strategy_matches_greedy_oracle() {
        let h3 = GroupModel::heisenberg();
        let z2 = GroupModel::FreeAbelian { rank: 2 };
        let s3 = GroupModel::builtin("S3").unwrap();
        let fp = GroupModel::free_product(vec![GroupModel::builtin("Z2").unwrap(), GroupModel::Free { rank: 1 }]).unwrap();
        let cases = [
            (h3.clone(), Subgroup::Cyclic { generator: Element::nilpotent(&[0, 0], &[1]) }, 3),
            (h3, Subgroup::Cyclic { generator: Element::nilpotent(&[1, 0], &[0]) }, 3),
            (z2.clone(), Subgroup::Cyclic { generator: Element::Abelian(vec![1, 1]) }, 3),
            (s3.clone(), Subgroup::Cyclic { generator: s3.parse_element("(123)").unwrap() }, 3),
            (fp.clone(), Subgroup::Cyclic { generator: fp.parse_element("ab").unwrap() }, 4),
        ];
        for (g, h, r) in cases {
            let b = ball(&g, r);
            let c = coned_off(&g, &b, &[h.clone()]).unwrap();
            let mut reps: Vec<&Element> = Vec::new();
            for x in b.elements() {
                if !reps.iter().any(|y| h.contains(&g, &g.mul(&g.inv(y), x)).unwrap()) {
                    reps.push(x);
                }
            }
            assert_eq!(c.cone_vertex_count(), reps.len(), "{}", h.describe());
            for k in c.cosets() {
                let x = b.element(k.members[0] as usize);
                for &m in &k.members {
                    assert!(h.contains(&g, &g.mul(&g.inv(x), b.element(m as usize))).unwrap());
                }
            }
        }
    }

    #[test]
    fn overlapping_subgroups_rejected() {
        let g = GroupModel::Free { rank: 2 };
        let b = ball(&g, 2);
        let a = Subgroup::Cyclic { generator: g.parse_element("a").unwrap() };
        let a2 = Subgroup::Cyclic { generator: g.parse_element("aa").unwrap() };
        assert!(matches!(coned_off(&g, &b, &[a, a2]), Err(GraphError::OverlappingSubgroups(_))));
        let bad = Subgroup::Factor { factor: 0 };
        assert!(matches!(coned_off(&g, &b, &[bad]), Err(GraphError::InconsistentOracle(_))));
    }

    #[test]
    fn distances_form_a_metric() {
        let (_, _, c) = f2_coned(3);
        let z2 = GroupModel::FreeAbelian { rank: 2 };
        let zg = cayley_graph(&z2, &ball(&z2, 3));
        for g in [c.base(), c.graph(), &zg] {
            assert!(g.vertex_count() <= 200);
            let d = g.all_pairs().unwrap();
            let n = d.len();
            for x in 0..n {
                assert_eq!(d[x][x], 0);
                for y in 0..n {
                    assert_eq!(d[x][y], d[y][x]);
                    for z in 0..n {
                        assert!(d[x][z] <= d[x][y] + d[y][z]);
                    }
                }
            }
        }
        let dc = c.graph().all_pairs().unwrap();
        let db = c.base().all_pairs().unwrap();
        for x in 0..db.len() {
            for y in 0..db.len() {
                assert!(dc[x][y] <= db[x][y]);
            }
        }
    }

    #[test]
    fn four_point_delta() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let f2 = GroupModel::Free { rank: 2 };
        let est = estimate_delta_4point(&cayley_graph(&f2, &ball(&f2, 4)), DeltaMode::Exhaustive, &mut rng).unwrap();
        assert_eq!(est.delta, Rational64::from(0));
        assert_eq!(est.quadruples, quadruple_count(161));
        let edge = MetricGraph::from_edges(vec!["x".into(), "y".into()], &[(0, 1, 2)]).unwrap();
        assert_eq!(estimate_delta_4point(&edge, DeltaMode::Exhaustive, &mut rng).unwrap().delta, Rational64::from(0));
        // value from an independent breadth-first all-pairs scan
        let z2 = GroupModel::FreeAbelian { rank: 2 };
        let est = estimate_delta_4point(&cayley_graph(&z2, &ball(&z2, 4)), DeltaMode::Auto(0), &mut rng).unwrap();
        assert!(est.exhaustive);
        assert_eq!(est.delta, Rational64::from(4));
        let sampled =
            estimate_delta_4point(&cayley_graph(&z2, &ball(&z2, 4)), DeltaMode::Sampled(2000), &mut rng).unwrap();
        assert!(sampled.delta <= est.delta);
    }

    #[test]
    fn free_group_balls_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for rank in 1..=3 {
            let g = GroupModel::Free { rank };
            let b = ball(&g, 2);
            let est = estimate_delta_4point(&cayley_graph(&g, &b), DeltaMode::Exhaustive, &mut rng).unwrap();
            assert_eq!(est.delta, Rational64::from(0));
        }
    }

    #[test]
    fn quasi_geodesic_examples() {
        let g = GroupModel::Free { rank: 2 };
        let b = ball(&g, 3);
        let cg = cayley_graph(&g, &b);
        let target = idx(&g, &b, "abA");
        let geo = cg.shortest_path(0, target).unwrap();
        assert_eq!(geo.length(), Rational64::from(3));
        assert!(is_quasi_geodesic(&geo, Rational64::from(1), &cg).unwrap());
        let a = idx(&g, &b, "a");
        let back = GraphPath::new(&cg, vec![0, a, 0, a]).unwrap();
        assert!(!is_quasi_geodesic(&back, Rational64::from(1), &cg).unwrap());
        assert!(is_quasi_geodesic(&back, Rational64::from(2), &cg).unwrap());
        assert!(is_quasi_geodesic(&back, half(1), &cg).is_err());
        assert!(matches!(GraphPath::new(&cg, vec![0, target]), Err(GraphError::NotAdjacent(..))));
    }

    /// Independent subpath scan in floating point.
    fn quasi_oracle(d: &[Vec<u64>], vs: &[u32], k: f64) -> bool {
        for s in 0..vs.len() {
            for t in s + 1..vs.len() {
                let dist = d[vs[s] as usize][vs[t] as usize] as f64 / 2.0;
                let len = (t - s) as f64;
                if len > k * dist + k + 1e-12 || dist > k * len + k + 1e-12 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn spiral_in_z2_matches_subpath_oracle() {
        let z2 = GroupModel::FreeAbelian { rank: 2 };
        let b = ball(&z2, 4);
        let cg = cayley_graph(&z2, &b);
        let d = cg.all_pairs().unwrap();
        let steps = [(1, 0), (0, 1), (-1, 0), (-1, 0), (0, -1), (0, -1), (1, 0), (1, 0), (1, 0), (0, 1), (0, 1)];
        let mut p = (0i64, 0i64);
        let mut vs = vec![0u32];
        for (dx, dy) in steps {
            p = (p.0 + dx, p.1 + dy);
            vs.push(b.index_of(&Element::Abelian(vec![p.0, p.1])).unwrap() as u32);
        }
        let path = GraphPath::new(&cg, vs.clone()).unwrap();
        for k in [1i64, 2, 3] {
            assert_eq!(
                is_quasi_geodesic(&path, Rational64::from(k), &cg).unwrap(),
                quasi_oracle(&d, &vs, k as f64),
                "k = {k}"
            );
        }
        for k in [Rational64::new(3, 2), Rational64::new(5, 4)] {
            let kf = *k.numer() as f64 / *k.denom() as f64;
            assert_eq!(is_quasi_geodesic(&path, k, &cg).unwrap(), quasi_oracle(&d, &vs, kf));
        }
    }

    #[test]
    fn penetration_through_cone() {
        let (g, b, c) = f2_coned(4);
        let a4 = idx(&g, &b, "a^4");
        let cone = c.cosets()[c.coset_of(0, 0) as usize].cone_vertex;
        let path = GraphPath::new(c.graph(), vec![0, cone, a4]).unwrap();
        let rep = penetration_report(&path, &c).unwrap();
        assert_eq!(rep.len(), 1);
        assert_eq!((rep[0].entry, rep[0].exit), (0, a4));
        assert_eq!(rep[0].coset, c.coset_of(0, 0));
        assert_eq!(rep[0].cayley_distance, Rational64::from(4));
    }

    #[test]
    fn geodesic_avoiding_cones_has_no_penetrations() {
        let (g, b, c) = f2_coned(4);
        let t = idx(&g, &b, "bab");
        let path = GraphPath::new(c.graph(), vec![0, idx(&g, &b, "b"), idx(&g, &b, "ba"), t]).unwrap();
        // b→ba is a single step inside bH, so that step is one penetration
        let rep = penetration_report(&path, &c).unwrap();
        assert_eq!(rep.len(), 1);
        let straight = GraphPath::new(c.graph(), vec![0, idx(&g, &b, "b"), idx(&g, &b, "bb")]).unwrap();
        assert!(penetration_report(&straight, &c).unwrap().is_empty());
    }

    #[test]
    fn reports_differ_on_the_shortcut_coset() {
        let (g, b, c) = f2_coned(4);
        let bv = idx(&g, &b, "b");
        let ba2 = idx(&g, &b, "ba^2");
        let via_letters = GraphPath::new(c.graph(), vec![0, bv, idx(&g, &b, "ba"), ba2]).unwrap();
        let cone = c.cosets()[c.coset_of(0, bv) as usize].cone_vertex;
        let via_cone = GraphPath::new(c.graph(), vec![0, bv, cone, ba2]).unwrap();
        let r1 = penetration_report(&via_letters, &c).unwrap();
        let r2 = penetration_report(&via_cone, &c).unwrap();
        assert_eq!(r1.len(), 1);
        assert_eq!(r2.len(), 1);
        assert_eq!(r1[0].coset, r2[0].coset);
        assert_eq!(r1[0].coset, c.coset_of(0, bv));
        // entry at b and exit at ba² for both
        assert_eq!((r1[0].entry, r1[0].exit), (r2[0].entry, r2[0].exit));
        let direct = GraphPath::new(c.graph(), vec![0, bv]).unwrap();
        assert!(penetration_report(&direct, &c).unwrap().is_empty());
    }

    #[test]
    fn backtracking_detected() {
        let (g, b, c) = f2_coned(3);
        let a = idx(&g, &b, "a");
        let ab = idx(&g, &b, "ab");
        let aba = idx(&g, &b, "aba");
        // H, then abH, then back through the a-edge into H
        let path = GraphPath::new(c.graph(), vec![0, a, ab, aba, ab, a, 0]).unwrap();
        let rep = penetration_report(&path, &c).unwrap();
        assert!(has_backtracking(&rep));
        let once = GraphPath::new(c.graph(), vec![0, a, ab]).unwrap();
        assert!(!has_backtracking(&penetration_report(&once, &c).unwrap()));
    }

    #[test]
    fn radius_margin_recorded() {
        let g = GroupModel::Free { rank: 2 };
        let b = ball(&g, 3);
        let cg = cayley_graph(&g, &b);
        assert_eq!(cg.radius_margin(0), Some(3));
        assert_eq!(cg.radius_margin((b.len() - 1) as u32), Some(0));
    }
}
