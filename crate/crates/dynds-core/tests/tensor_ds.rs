use std::collections::BTreeSet;

use dynds_core::tensor_ds::{
    langerman_oracle, oumv_batched_driver, oumv_bruteforce, CountingHyperclique, EagerErickson, EricksonSolver,
    HypercliqueSolver, LangermanDS, LazyErickson, LazyHyperclique, OuMvInstance, OuMvSolver, ScanSolver, Tensor,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tensor(rng: &mut ChaCha8Rng, d: usize, n: usize, lo: i64, hi: i64) -> Tensor {
    let len = n.pow(d as u32);
    Tensor::from_vec(d, n, (0..len).map(|_| rng.gen_range(lo..=hi)).collect()).unwrap()
}

fn random_index(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Vec<usize> {
    (0..d).map(|_| rng.gen_range(1..=n)).collect()
}

#[test]
fn zero_tensor_has_zero_prefix() {
    for d in 1..=3 {
        let mut ds = LangermanDS::build(Tensor::zeros(d, 5).unwrap(), None).unwrap();
        assert!(ds.query());
    }
    let ones = Tensor::from_vec(2, 3, vec![1; 9]).unwrap();
    assert!(!LangermanDS::build(ones, None).unwrap().query());
}

#[test]
fn random_tensors_match_prefix_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..500 {
        let d = rng.gen_range(1..=2);
        let n = rng.gen_range(1..=12);
        let t = random_tensor(&mut rng, d, n, -3, 3);
        let b = if rng.gen_bool(0.5) { None } else { Some(rng.gen_range(1..=n)) };
        let expect = langerman_oracle(&t).unwrap();
        let mut ds = LangermanDS::build(t, b).unwrap();
        ds.check_consistency().unwrap();
        assert_eq!(ds.query(), expect);
    }
}

#[test]
fn three_dimensional_build_recovers_prefix_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let t = random_tensor(&mut rng, 3, 3, -9, 9);
    let p = t.prefix_sums().unwrap();
    let ds = LangermanDS::build(t, None).unwrap();
    for off in 0..p.len() {
        let x = p.index_of(off);
        assert_eq!(ds.prefix_at(&x).unwrap(), p.values()[off]);
    }
}

#[test]
fn updates_on_nine_by_nine_stay_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let t = random_tensor(&mut rng, 2, 9, -2, 2);
    let mut ds = LangermanDS::build(t, Some(3)).unwrap();
    for _ in 0..200 {
        let z = random_index(&mut rng, 2, 9);
        ds.update(&z, rng.gen_range(-2..=2)).unwrap();
        ds.check_consistency().unwrap();
        assert_eq!(ds.query(), langerman_oracle(ds.tensor()).unwrap());
    }
}

#[test]
fn update_to_same_value_is_invisible() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let t = random_tensor(&mut rng, 2, 6, -2, 2);
    let mut ds = LangermanDS::build(t.clone(), None).unwrap();
    let v = t.get(&[3, 4]).unwrap();
    ds.update(&[3, 4], v).unwrap();
    assert_eq!(ds.tensor(), &t);
    ds.check_consistency().unwrap();
    assert!(ds.update(&[0, 1], 1).is_err());
    assert!(ds.update(&[7, 1], 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn update_traces_match_prefix_scan(
        d in 1usize..=2,
        n in 1usize..=8,
        b in prop::option::of(1usize..=8),
        seed in any::<u64>(),
        steps in 0usize..40,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tensor(&mut rng, d, n, -2, 2);
        let mut ds = LangermanDS::build(t, b).unwrap();
        prop_assert_eq!(ds.query(), langerman_oracle(ds.tensor()).unwrap());
        for _ in 0..steps {
            let z = random_index(&mut rng, d, n);
            ds.update(&z, rng.gen_range(-2..=2)).unwrap();
            prop_assert_eq!(ds.query(), langerman_oracle(ds.tensor()).unwrap());
        }
        ds.check_consistency().unwrap();
    }
}

#[test]
fn update_cost_within_bound() {
    const C: f64 = 8.0;
    let cases: &[(usize, &[usize])] = &[(1, &[4, 8, 16, 32, 64]), (2, &[9, 27])];
    for &(d, sizes) in cases {
        for &n in sizes {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            let t = random_tensor(&mut rng, d, n, -3, 3);
            let mut ds = LangermanDS::build(t, None).unwrap();
            let updates = 100;
            let before = ds.visits();
            for _ in 0..updates {
                let z = random_index(&mut rng, d, n);
                let v = ds.tensor().get(&z).unwrap() + rng.gen_range(1..=3);
                ds.update(&z, v).unwrap();
            }
            let per = (ds.visits() - before) as f64 / updates as f64;
            let nf = n as f64;
            let bound = C * nf.powf((d * d) as f64 / (d + 1) as f64) * nf.log2().max(1.0).powi(d as i32);
            assert!(per <= bound, "d={d} n={n}: {per} visits per update > {bound}");
        }
    }
}

#[test]
fn erickson_variants_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let t = random_tensor(&mut rng, 3, 5, -20, 20);
    let mut lazy = LazyErickson::new(t.clone());
    let mut eager = EagerErickson::new(t);
    for _ in 0..300 {
        let (axis, x) = (rng.gen_range(1..=3), rng.gen_range(1..=5));
        lazy.increment_axis(axis, x).unwrap();
        eager.increment_axis(axis, x).unwrap();
        assert_eq!(lazy.query_max(), eager.query_max());
    }
    for _ in 0..20 {
        let x = random_index(&mut rng, 3, 5);
        assert_eq!(lazy.value(&x).unwrap(), eager.value(&x).unwrap());
    }
}

#[test]
fn erickson_uniform_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let t = random_tensor(&mut rng, 2, 4, -5, 5);
    let base_max = *t.values().iter().max().unwrap();
    let mut eager = EagerErickson::new(t.clone());
    for axis in 1..=2 {
        for x in 1..=4 {
            eager.increment_axis(axis, x).unwrap();
        }
    }
    assert_eq!(eager.query_max(), base_max + 2);

    let shifted = Tensor::from_vec(2, 4, t.values().iter().map(|v| v + 7).collect()).unwrap();
    let (mut a, mut b) = (LazyErickson::new(t), LazyErickson::new(shifted));
    for _ in 0..30 {
        let (axis, x) = (rng.gen_range(1..=2), rng.gen_range(1..=4));
        a.increment_axis(axis, x).unwrap();
        b.increment_axis(axis, x).unwrap();
        assert_eq!(a.query_max() + 7, b.query_max());
    }
}

fn random_edge(rng: &mut ChaCha8Rng, k: usize, n: usize) -> Vec<usize> {
    let mut e = BTreeSet::new();
    while e.len() < k {
        e.insert(rng.gen_range(0..n));
    }
    e.into_iter().collect()
}

#[test]
fn hyperclique_variants_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for trial in 0..10 {
        let s = trial % 8;
        let mut lazy = LazyHyperclique::new(3, 8, s).unwrap();
        let mut counting = CountingHyperclique::new(3, 8, s).unwrap();
        let mut edges: BTreeSet<Vec<usize>> = BTreeSet::new();
        for step in 0..100 {
            let e = random_edge(&mut rng, 3, 8);
            if edges.remove(&e) {
                lazy.delete_edge(&e).unwrap();
                let before = counting.count(s);
                counting.delete_edge(&e).unwrap();
                assert!(counting.count(s) <= before);
            } else {
                edges.insert(e.clone());
                lazy.insert_edge(&e).unwrap();
                counting.insert_edge(&e).unwrap();
            }
            if step % 2 == 0 {
                assert_eq!(lazy.query_s(), counting.query_s());
            }
        }
        assert_eq!(counting.recount(), (0..8).map(|v| counting.count(v)).collect::<Vec<_>>());
    }
}

#[test]
fn witnessed_clique_deletions_never_raise_count() {
    let mut g = CountingHyperclique::new(2, 5, 0).unwrap();
    let all: Vec<[usize; 2]> = (0..5).flat_map(|a| (a + 1..5).map(move |b| [a, b])).collect();
    for e in &all {
        g.insert_edge(e).unwrap();
    }
    assert_eq!(g.count(0), 6);
    let mut last = g.count(0);
    for e in &all {
        g.delete_edge(e).unwrap();
        assert!(g.count(0) <= last);
        last = g.count(0);
    }
    assert_eq!(last, 0);
}

fn random_instance(rng: &mut ChaCha8Rng, k: usize, n: usize, queries: usize) -> OuMvInstance {
    let mut m = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=n) {
        m.insert((0..k).map(|_| rng.gen_range(1..=n)).collect());
    }
    let queries = (0..queries)
        .map(|_| (0..k).map(|_| (1..=n).filter(|_| rng.gen_bool(0.3)).collect()).collect())
        .collect();
    OuMvInstance { k, n, m, queries }
}

fn product_enumeration(inst: &OuMvInstance) -> Vec<bool> {
    inst.queries
        .iter()
        .map(|u| {
            let mut tuples: Vec<Vec<usize>> = vec![vec![]];
            for s in u {
                tuples = tuples.iter().flat_map(|t| s.iter().map(move |&v| [t.clone(), vec![v]].concat())).collect();
            }
            tuples.iter().any(|t| inst.m.contains(t))
        })
        .collect()
}

#[test]
fn oumv_bruteforce_matches_product_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let inst = random_instance(&mut rng, 3, 6, 10);
        assert_eq!(oumv_bruteforce(&inst), product_enumeration(&inst));
    }
    let single = OuMvInstance {
        k: 2,
        n: 2,
        m: [vec![1, 1]].into_iter().collect(),
        queries: vec![vec![[1].into(), [1].into()], vec![[2].into(), [1].into()]],
    };
    assert_eq!(oumv_bruteforce(&single), vec![true, false]);
    let empty = OuMvInstance { m: BTreeSet::new(), ..single };
    assert_eq!(oumv_bruteforce(&empty), vec![false, false]);
}

/// Inner solver that refuses to answer more than `budget` queries between rebuilds.
struct Budgeted {
    inner: ScanSolver,
    left: usize,
}

impl OuMvSolver for Budgeted {
    fn query(&mut self, u: &[BTreeSet<usize>]) -> bool {
        assert!(self.left > 0, "solver used past its phase");
        self.left -= 1;
        self.inner.query(u)
    }
}

#[test]
fn batched_driver_matches_bruteforce_for_all_splits() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=8);
        let inst = random_instance(&mut rng, k, n, 12);
        let expect = oumv_bruteforce(&inst);
        for sub in 1..=n {
            let phase = rng.gen_range(1..=n);
            let run = oumv_batched_driver(&inst, sub, phase, |_, _, m| Budgeted {
                inner: ScanSolver::new(m.clone()),
                left: phase,
            })
            .unwrap();
            assert_eq!(run.answers, expect, "k={k} n={n} sub={sub} phase={phase}");
            assert_eq!(run.rebuilds as usize, inst.queries.len().saturating_sub(1) / phase);
        }
        let whole = oumv_batched_driver(&inst, n, n, |_, _, m| ScanSolver::new(m.clone())).unwrap();
        let mut direct = ScanSolver::new(inst.m.clone());
        let direct: Vec<bool> =
            inst.queries.iter().map(|u| u.iter().all(|s| !s.is_empty()) && direct.query(u)).collect();
        assert_eq!(whole.answers, direct);
    }
}
