mod common;

use common::{check_decomposition, clipped_volume};
use dynds_core::geom::{AggregateMode, BoxD, DynamicRangeTree, OrthantUnion3D, PointD, RangeTree};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn inside(p: &[i64], ranges: &[(i64, i64)]) -> bool {
    p.iter().zip(ranges).all(|(&c, &(l, h))| l <= c && c <= h)
}

#[derive(Clone, Debug)]
enum Op {
    Toggle(usize, bool),
    Query(Vec<(i64, i64)>),
}

fn scenario() -> impl Strategy<Value = (usize, Vec<(Vec<i64>, i64)>, Vec<Op>)> {
    (1usize..=4).prop_flat_map(|d| {
        let point = prop::collection::vec(0i64..8, d);
        let universe = prop::collection::vec((point, -3i64..6), 0..40);
        universe.prop_flat_map(move |u| {
            let n = u.len();
            let range = (0i64..9, 0i64..9).prop_map(|(a, b)| (a.min(b), a.max(b)));
            let op = prop_oneof![
                (0..n.max(1), any::<bool>()).prop_map(|(k, f)| Op::Toggle(k, f)),
                prop::collection::vec(range, d).prop_map(Op::Query),
            ];
            (Just(d), Just(u), prop::collection::vec(op, 0..120))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn range_tree_matches_active_set_scan((d, universe, ops) in scenario()) {
        let pts: Vec<(PointD, i64)> = universe.iter().map(|(c, v)| (PointD::ints(c), *v)).collect();
        let mut count = RangeTree::build(&pts, AggregateMode::Count).unwrap();
        let mut max = RangeTree::build(&pts, AggregateMode::Max).unwrap();
        let mut empt = RangeTree::build(&pts, AggregateMode::Emptiness).unwrap();
        let mut active = vec![false; universe.len()];
        for op in ops {
            match op {
                Op::Toggle(k, f) => {
                    if k >= universe.len() {
                        prop_assert!(count.toggle(k, f).is_err());
                        continue;
                    }
                    count.toggle(k, f).unwrap();
                    max.toggle(k, f).unwrap();
                    empt.toggle(k, f).unwrap();
                    active[k] = f;
                }
                Op::Query(r) => {
                    let hits: Vec<usize> = (0..universe.len()).filter(|&k| active[k] && inside(&universe[k].0, &r)).collect();
                    let before = count.visits();
                    prop_assert_eq!(count.count_raw(&r).unwrap(), hits.len() as u64);
                    prop_assert!((count.visits() - before) as f64 <= count.visit_bound());
                    prop_assert_eq!(empt.empty_raw(&r), hits.is_empty());
                    let expect = hits.iter().map(|&k| (universe[k].1, std::cmp::Reverse(k))).max();
                    let got = max.max_raw(&r).unwrap();
                    prop_assert_eq!(got.map(|(v, k)| (v, std::cmp::Reverse(k as usize))), expect);
                    if let Some((v, k)) = got {
                        prop_assert!(active[k as usize] && inside(&universe[k as usize].0, &r));
                        prop_assert_eq!(v, universe[k as usize].1);
                    }
                    let _ = d;
                }
            }
        }
    }

    #[test]
    fn dynamic_tree_matches_multiset(ops in prop::collection::vec((any::<bool>(), 0i64..10, 0i64..10, 0i64..5), 0..200)) {
        let mut t = DynamicRangeTree::new(2, 1, AggregateMode::Max).unwrap();
        let mut live: Vec<(u64, i64, i64, i64)> = Vec::new();
        for (ins, x, y, v) in ops {
            if ins || live.is_empty() {
                let h = t.insert(&[x, y], v).unwrap();
                live.push((h, x, y, v));
            } else {
                let idx = (x as usize * 7 + y as usize) % live.len();
                let (h, ..) = live.swap_remove(idx);
                t.remove(h).unwrap();
            }
            let r = [(x.min(y), x.max(y)), (0, y)];
            let expect = live
                .iter()
                .filter(|e| inside(&[e.1, e.2], &r))
                .map(|e| (e.3, std::cmp::Reverse(e.0)))
                .max();
            prop_assert_eq!(t.max_raw(&r).unwrap().map(|(v, h)| (v, std::cmp::Reverse(h))), expect);
        }
    }
}

#[test]
fn fifty_random_points_fifty_boxes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts: Vec<(PointD, i64)> = (0..50).map(|_| (PointD::ints(&[rng.gen_range(0..30), rng.gen_range(0..30)]), 1)).collect();
    let mut t = RangeTree::build(&pts, AggregateMode::Count).unwrap();
    for k in 0..50 {
        t.toggle(k, true).unwrap();
    }
    for _ in 0..50 {
        let (a, b, c, d) = (rng.gen_range(0..30), rng.gen_range(0..30), rng.gen_range(0..30), rng.gen_range(0..30));
        let r = [(a.min(b), a.max(b)), (c.min(d), c.max(d))];
        let bx = BoxD::closed_raw(&r, 1).unwrap();
        let scan = pts.iter().filter(|(p, _)| bx.contains(p)).count() as u64;
        assert_eq!(t.count(&bx).unwrap(), scan);
    }
}

#[test]
fn random_toggle_sequence_against_active_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pts: Vec<(PointD, i64)> = (0..64).map(|i| (PointD::ints(&[rng.gen_range(0..16), rng.gen_range(0..16), rng.gen_range(0..16)]), i)).collect();
    let mut t = RangeTree::build(&pts, AggregateMode::Count).unwrap();
    let mut active = [false; 64];
    for _ in 0..200 {
        let k = rng.gen_range(0..64);
        let f = rng.gen_bool(0.6);
        t.toggle(k, f).unwrap();
        active[k] = f;
    }
    for _ in 0..100 {
        let r: Vec<(i64, i64)> = (0..3)
            .map(|_| {
                let (a, b) = (rng.gen_range(0..16), rng.gen_range(0..16));
                (a.min(b), a.max(b))
            })
            .collect();
        let scan = (0..64).filter(|&k| active[k] && inside(&pts[k].0.raw_coords(), &r)).count() as u64;
        assert_eq!(t.count_raw(&r).unwrap(), scan);
    }
}

#[test]
fn hundred_random_max_queries() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pts: Vec<(PointD, i64)> = (0..100).map(|_| (PointD::ints(&[rng.gen_range(0..50), rng.gen_range(0..50)]), rng.gen_range(0..20))).collect();
    let mut t = RangeTree::build(&pts, AggregateMode::Max).unwrap();
    for k in 0..100 {
        t.toggle(k, true).unwrap();
    }
    for _ in 0..100 {
        let (a, b, c, d) = (rng.gen_range(0..50), rng.gen_range(0..50), rng.gen_range(0..50), rng.gen_range(0..50));
        let bx = BoxD::closed_raw(&[(a.min(b), a.max(b)), (c.min(d), c.max(d))], 1).unwrap();
        let best = pts.iter().filter(|(p, _)| bx.contains(p)).map(|(_, v)| *v).max();
        let got = t.max(&bx).unwrap();
        assert_eq!(got.map(|g| g.0), best);
        if let Some((_, w)) = got {
            assert!(bx.contains(&t.point(w)));
        }
    }
}

#[test]
fn two_corners_inclusion_exclusion() {
    let corners = [[2, 1, 1], [1, 2, 1]];
    let boxes = OrthantUnion3D::new(corners.iter().map(|c| PointD::ints(c)).collect()).decompose().unwrap();
    let vol: i64 = boxes.iter().map(|b| clipped_volume(b, 0, 3)).sum();
    assert_eq!(vol, 3);
}

#[test]
fn forty_random_corners_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let corners: Vec<[i64; 3]> = (0..40).map(|_| [rng.gen_range(0..=20), rng.gen_range(0..=20), rng.gen_range(0..=20)]).collect();
    check_decomposition(&corners, &mut rng).unwrap();
}

#[test]
fn orthant_decomposition_invariants_on_many_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..100 {
        let n = rng.gen_range(0..30);
        let hi = if case % 3 == 0 { 5 } else { 20 };
        let corners: Vec<[i64; 3]> = (0..n).map(|_| [rng.gen_range(0..=hi), rng.gen_range(0..=hi), rng.gen_range(0..=hi)]).collect();
        check_decomposition(&corners, &mut rng).unwrap();
    }
}
