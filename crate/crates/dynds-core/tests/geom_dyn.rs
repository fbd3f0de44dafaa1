use dynds_core::geom::{PointD, ScaledInt};
use dynds_core::geom_dyn::{
    default_block_size, klee_unit_oracle, skyline_oracle, BlockProblem, Halfspace, HalfspaceSystem, OracleBlock,
    SemiOnlineEngine, SemiOnlineOp, Skyline3dBlock,
};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_point(rng: &mut ChaCha8Rng, side: i64) -> PointD {
    PointD::ints(&[rng.gen_range(0..side), rng.gen_range(0..side), rng.gen_range(0..side)])
}

/// Random semi-online trace; deletes sit at the death indices chosen by inserts.
fn semi_online_trace(rng: &mut ChaCha8Rng, len: usize, side: i64) -> Vec<SemiOnlineOp> {
    let mut reserved = vec![false; len];
    let mut trace = Vec::with_capacity(len);
    for i in 0..len {
        if reserved[i] {
            trace.push(SemiOnlineOp::Delete);
            continue;
        }
        if rng.gen_bool(0.4) {
            trace.push(SemiOnlineOp::Query);
            continue;
        }
        let free: Vec<usize> = (i + 1..len).filter(|&j| !reserved[j]).collect();
        let death = if free.is_empty() || rng.gen_bool(0.3) { usize::MAX } else { free[rng.gen_range(0..free.len())] };
        if death != usize::MAX {
            reserved[death] = true;
        }
        trace.push(SemiOnlineOp::Insert { point: random_point(rng, side), death });
    }
    trace
}

/// Skyline size after every query, by replaying the trace directly.
fn replay_skyline(trace: &[SemiOnlineOp]) -> Vec<usize> {
    let mut live: Vec<(usize, PointD)> = Vec::new();
    let mut out = Vec::new();
    for (i, op) in trace.iter().enumerate() {
        match op {
            SemiOnlineOp::Insert { point, death } => live.push((*death, point.clone())),
            SemiOnlineOp::Delete => live.retain(|(d, _)| *d != i),
            SemiOnlineOp::Query => {
                let pts: Vec<PointD> = live.iter().map(|(_, p)| p.clone()).collect();
                out.push(skyline_oracle(&pts).unwrap());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn semi_online_skyline_matches_oracle(seed in any::<u64>(), len in 0usize..120, side in 2i64..9, which in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let trace = semi_online_trace(&mut rng, len, side);
        let block = [Some(1), None, Some(len.max(1))][which];
        let mut engine = SemiOnlineEngine::new(Skyline3dBlock::new(), block).unwrap();
        let got = engine.run(&trace).unwrap();
        prop_assert_eq!(got, replay_skyline(&trace));
        prop_assert!(engine.max_buffer() <= 2 * engine.block_size(&trace).unwrap());
    }
}

#[test]
fn engine_with_oracle_block_matches_replay() {
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let trace = semi_online_trace(&mut rng, 60, 5);
        let expect = replay_skyline(&trace);
        for block in [Some(1), None, Some(60)] {
            let mut engine = SemiOnlineEngine::new(OracleBlock::new(skyline_oracle), block).unwrap();
            assert_eq!(engine.run(&trace).unwrap(), expect, "seed {seed} block {block:?}");
        }
    }
}

#[test]
fn engine_single_window_without_deletes() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let trace: Vec<SemiOnlineOp> = (0..300)
        .map(|i| if i % 3 == 2 { SemiOnlineOp::Query } else { SemiOnlineOp::Insert { point: random_point(&mut rng, 30), death: usize::MAX } })
        .collect();
    let mut engine = SemiOnlineEngine::new(Skyline3dBlock::new(), Some(300)).unwrap();
    assert_eq!(engine.run(&trace).unwrap(), replay_skyline(&trace));
    assert_eq!(engine.windows(), 1);
}

#[test]
fn skyline_block_random_core_and_buffer() {
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let core: Vec<PointD> = (0..60).map(|_| random_point(&mut rng, 12)).collect();
        let buffer: Vec<PointD> = (0..12).map(|_| random_point(&mut rng, 12)).collect();
        let mut p = Skyline3dBlock::new();
        let s = p.preprocess(&core).unwrap();
        let all: Vec<PointD> = core.iter().chain(&buffer).cloned().collect();
        assert_eq!(p.block_query(&s, &buffer).unwrap(), skyline_oracle(&all).unwrap());
        assert_eq!(p.block_query(&s, &[]).unwrap(), skyline_oracle(&core).unwrap());
    }
}

#[test]
fn skyline_counters_within_bounds() {
    const C: f64 = 64.0;
    for e in 6..=12u32 {
        let n = 1usize << e;
        let mut rng = ChaCha8Rng::seed_from_u64(e as u64);
        let side = 4 * n as i64;
        // Points near the plane x + y + z = side keep the skyline large.
        let near_plane = |rng: &mut ChaCha8Rng| {
            let x = rng.gen_range(0..side);
            let y = rng.gen_range(0..side - x);
            PointD::ints(&[x, y, side - x - y - rng.gen_range(0..3)])
        };
        let b = default_block_size(n, 1.0, 1.0);
        let log3 = (n as f64).log2().powi(3);
        let core: Vec<PointD> = (0..n).map(|_| near_plane(&mut rng)).collect();
        let buffer: Vec<PointD> = (0..b).map(|_| near_plane(&mut rng)).collect();
        let mut p = Skyline3dBlock::new();
        let s = p.preprocess(&core).unwrap();
        let before = p.visits();
        p.block_query(&s, &buffer).unwrap();
        let cost = (p.visits() - before) as f64;
        assert!(cost <= C * b as f64 * log3, "n={n}: block query cost {cost}");

        let mut trace = Vec::new();
        for i in 0..2 * n {
            trace.push(match i % 4 {
                3 => SemiOnlineOp::Query,
                _ => SemiOnlineOp::Insert { point: near_plane(&mut rng), death: usize::MAX },
            });
        }
        let mut engine = SemiOnlineEngine::new(Skyline3dBlock::new(), None).unwrap();
        engine.run(&trace).unwrap();
        let per_op = engine.problem.visits() as f64 / trace.len() as f64;
        assert!(per_op <= C * (n as f64).sqrt() * log3, "n={n}: per-op cost {per_op}");
    }
}

/// Union volume by inclusion–exclusion over all non-empty subsets.
fn inclusion_exclusion(corners: &[Vec<i64>], side: i64, scale: i64) -> Ratio<i128> {
    let d = corners.first().map_or(0, Vec::len);
    let mut total: i128 = 0;
    for mask in 1u32..(1 << corners.len()) {
        let members: Vec<&Vec<i64>> = (0..corners.len()).filter(|&i| mask >> i & 1 == 1).map(|i| &corners[i]).collect();
        let mut vol: i128 = 1;
        for ax in 0..d {
            let hi = members.iter().map(|c| c[ax]).min().unwrap();
            let lo = members.iter().map(|c| c[ax] - side).max().unwrap();
            vol *= (hi - lo).max(0) as i128;
        }
        total += if members.len() % 2 == 1 { vol } else { -vol };
    }
    Ratio::new(total, (scale as i128).pow(d as u32))
}

#[test]
fn klee_matches_inclusion_exclusion() {
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = rng.gen_range(1..=4);
        let d = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=8);
        let corners: Vec<Vec<i64>> = (0..m).map(|_| (0..d).map(|_| rng.gen_range(0..4 * scale)).collect()).collect();
        let pts: Vec<PointD> = corners.iter().map(|c| PointD::from_raw(c, scale).unwrap()).collect();
        let side = ScaledInt::from_int(1, scale).unwrap();
        assert_eq!(klee_unit_oracle(&pts, side).unwrap(), inclusion_exclusion(&corners, scale, scale), "seed {seed}");
    }
}

#[test]
fn klee_monotone_and_disjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let one = ScaledInt::from_int(1, 1).unwrap();
    let mut cubes = Vec::new();
    let mut last = Ratio::from_integer(0);
    for _ in 0..30 {
        cubes.push(PointD::ints(&[rng.gen_range(0..6), rng.gen_range(0..6), rng.gen_range(0..6)]));
        let v = klee_unit_oracle(&cubes, one).unwrap();
        assert!(v >= last);
        last = v;
    }
    let disjoint: Vec<PointD> = (0..7).map(|i| PointD::ints(&[2 * i, 0, 5 * i])).collect();
    assert_eq!(klee_unit_oracle(&disjoint, one).unwrap(), Ratio::from_integer(7));
}

#[derive(Clone, Debug)]
enum HsOp {
    AddH(Vec<i64>, i64, bool),
    DelH(usize),
    AddQ(Vec<i64>),
    DelQ(usize),
    Min,
}

fn hs_trace() -> impl Strategy<Value = Vec<HsOp>> {
    let v3 = || prop::collection::vec(-3i64..=3, 3);
    let op = prop_oneof![
        3 => (v3(), -8i64..=8, any::<bool>()).prop_map(|(n, o, s)| HsOp::AddH(n, o, s)),
        1 => any::<prop::sample::Index>().prop_map(|i| HsOp::DelH(i.index(usize::MAX))),
        3 => v3().prop_map(HsOp::AddQ),
        1 => any::<prop::sample::Index>().prop_map(|i| HsOp::DelQ(i.index(usize::MAX))),
        2 => Just(HsOp::Min),
    ];
    prop::collection::vec(op, 0..200)
}

fn recount_min(hs: &[Halfspace], qs: &[PointD]) -> Option<u64> {
    qs.iter().map(|q| hs.iter().filter(|h| h.contains(q).unwrap()).count() as u64).min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn halfspace_system_matches_recount(ops in hs_trace()) {
        let scale = 2;
        let mut sys = HalfspaceSystem::new(3, scale).unwrap();
        let (mut hs, mut qs): (Vec<Halfspace>, Vec<PointD>) = (Vec::new(), Vec::new());
        for op in ops {
            match op {
                HsOp::AddH(n, o, s) => {
                    let h = Halfspace::new(n, ScaledInt::new(o, scale).unwrap(), s);
                    sys.insert_halfspace(h.clone()).unwrap();
                    hs.push(h);
                }
                HsOp::DelH(i) if !hs.is_empty() => {
                    let h = hs.swap_remove(i % hs.len());
                    sys.delete_halfspace(&h).unwrap();
                }
                HsOp::AddQ(c) => {
                    let q = PointD::from_raw(&c, scale).unwrap();
                    sys.insert_point(&q).unwrap();
                    qs.push(q);
                }
                HsOp::DelQ(i) if !qs.is_empty() => {
                    let q = qs.swap_remove(i % qs.len());
                    sys.delete_point(&q).unwrap();
                }
                HsOp::Min => {
                    prop_assert_eq!(sys.query_min().ok(), recount_min(&hs, &qs));
                }
                _ => {}
            }
        }
    }
}

#[test]
fn halfspace_min_is_translation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let t: Vec<i64> = (0..3).map(|_| rng.gen_range(-5..=5)).collect();
        let mut a = HalfspaceSystem::new(3, 2).unwrap();
        let mut b = HalfspaceSystem::new(3, 2).unwrap();
        for _ in 0..20 {
            let n: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
            let o = rng.gen_range(-6..=6);
            let strict = rng.gen_bool(0.5);
            let shift: i64 = n.iter().zip(&t).map(|(x, y)| x * y).sum();
            a.insert_halfspace(Halfspace::new(n.clone(), ScaledInt::new(o, 2).unwrap(), strict)).unwrap();
            b.insert_halfspace(Halfspace::new(n, ScaledInt::new(o + shift, 2).unwrap(), strict)).unwrap();
        }
        for _ in 0..15 {
            let q: Vec<i64> = (0..3).map(|_| rng.gen_range(-6..=6)).collect();
            let moved: Vec<i64> = q.iter().zip(&t).map(|(x, y)| x + y).collect();
            a.insert_point(&PointD::from_raw(&q, 2).unwrap()).unwrap();
            b.insert_point(&PointD::from_raw(&moved, 2).unwrap()).unwrap();
            assert_eq!(a.count_of(&PointD::from_raw(&q, 2).unwrap()), b.count_of(&PointD::from_raw(&moved, 2).unwrap()));
        }
        assert_eq!(a.query_min().unwrap(), b.query_min().unwrap());
    }
}
