//! Seeded random traces of valid operations for every problem.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use dynds_core::geom_dyn::SemiOnlineOp;
use dynds_core::reductions::targets::{to_semi_online, ReplayOp};
use dynds_core::PointD;

use crate::trace::{Op, OpKind, OpTrace, Problem};

/// Random trace of about `3·size` operations; every operation is valid.
pub fn random_trace(problem: Problem, rng: &mut ChaCha8Rng, size: usize) -> OpTrace {
    let size = size.max(1);
    let mut t = OpTrace::new(problem);
    let ops = 3 * size;
    match problem {
        Problem::RangeMode => range_mode(&mut t, rng, ops),
        Problem::SequenceMode => sequence(&mut t, rng, ops),
        Problem::CommonColors => common(&mut t, rng, size, ops),
        Problem::ColorCount => color_count(&mut t, rng, ops),
        Problem::Klee => klee(&mut t, rng, ops),
        Problem::Halfspace => halfspace(&mut t, rng, ops),
        Problem::Skyline => skyline(&mut t, rng, ops),
        Problem::Langerman => langerman(&mut t, rng, ops),
        Problem::Erickson => erickson(&mut t, rng, ops),
        Problem::Hyperclique => hyperclique(&mut t, rng, ops),
    }
    t
}

fn push(t: &mut OpTrace, kind: OpKind, args: Vec<i64>) {
    t.ops.push(Op::new(kind, args));
}

fn range(rng: &mut ChaCha8Rng, hi: i64) -> (i64, i64) {
    let (a, b) = (rng.gen_range(0..=hi), rng.gen_range(0..=hi));
    (a.min(b), a.max(b))
}

fn range_mode(t: &mut OpTrace, rng: &mut ChaCha8Rng, ops: usize) {
    let d = rng.gen_range(1..=2);
    t.header.dim = Some(d);
    t.header.capacity = Some(ops);
    if rng.gen_bool(0.5) {
        t.header.threshold = Some(rng.gen_range(1..=4));
    }
    let mut live: Vec<Vec<i64>> = Vec::new();
    for _ in 0..ops {
        let roll = rng.gen_range(0..10);
        if live.is_empty() || roll < 4 {
            let mut p: Vec<i64> = (0..d).map(|_| rng.gen_range(0..8)).collect();
            p.push(rng.gen_range(0..5));
            live.push(p.clone());
            push(t, OpKind::Ins, p);
        } else if roll < 6 {
            let p = live.swap_remove(rng.gen_range(0..live.len()));
            push(t, OpKind::Del, p);
        } else {
            let args = (0..d).flat_map(|_| {
                let (a, b) = range(rng, 8);
                [a, b]
            });
            push(t, OpKind::Qry, args.collect());
        }
    }
}

fn sequence(t: &mut OpTrace, rng: &mut ChaCha8Rng, ops: usize) {
    t.header.capacity = Some(ops);
    let mut len = 0i64;
    for _ in 0..ops {
        let roll = rng.gen_range(0..10);
        if len == 0 || roll < 4 {
            push(t, OpKind::Sins, vec![rng.gen_range(1..=len + 1), rng.gen_range(0..5)]);
            len += 1;
        } else if roll < 6 {
            push(t, OpKind::Sdel, vec![rng.gen_range(1..=len)]);
            len -= 1;
        } else {
            let l = rng.gen_range(1..=len);
            push(t, OpKind::Sqry, vec![l, rng.gen_range(l..=len)]);
        }
    }
}

fn common(t: &mut OpTrace, rng: &mut ChaCha8Rng, size: usize, ops: usize) {
    let colors = rng.gen_range(1..=6);
    let a: Vec<i64> = (0..size.max(2)).map(|_| rng.gen_range(1..=colors)).collect();
    let m = a.len() as i64;
    if rng.gen_bool(0.5) {
        t.header.threshold = Some(rng.gen_range(1..=4));
    }
    for _ in 0..ops {
        if rng.gen_bool(0.5) {
            let c = *a.choose(rng).expect("non-empty array");
            push(t, if rng.gen_bool(0.6) { OpKind::Con } else { OpKind::Coff }, vec![c]);
        } else {
            let (l1, r1) = range(rng, m - 1);
            let (l2, r2) = range(rng, m - 1);
            push(t, OpKind::Cqry, vec![l1 + 1, r1 + 1, l2 + 1, r2 + 1]);
        }
    }
    t.header.array = Some(a);
}

fn color_count(t: &mut OpTrace, rng: &mut ChaCha8Rng, ops: usize) {
    t.header.capacity = Some(ops);
    t.header.threshold = Some(rng.gen_range(1..=6));
    let mut live: Vec<Vec<i64>> = Vec::new();
    for _ in 0..ops {
        let roll = rng.gen_range(0..10);
        if live.is_empty() || roll < 4 {
            let p = vec![rng.gen_range(0..8), rng.gen_range(0..8), rng.gen_range(0..5)];
            live.push(p.clone());
            push(t, OpKind::Pins, p);
        } else if roll < 6 {
            let p = live.swap_remove(rng.gen_range(0..live.len()));
            push(t, OpKind::Pdel, p);
        } else {
            let (x1, x2) = range(rng, 8);
            let (y1, y2) = range(rng, 8);
            push(t, OpKind::Pqry, vec![x1, x2, y1, y2]);
        }
    }
}

fn klee(t: &mut OpTrace, rng: &mut ChaCha8Rng, ops: usize) {
    let d = rng.gen_range(1..=3);
    t.header.dim = Some(d);
    t.header.scale = Some(rng.gen_range(1..=2));
    t.header.side = Some(rng.gen_range(1..=3));
    let mut live: Vec<Vec<i64>> = Vec::new();
    for _ in 0..ops {
        let roll = rng.gen_range(0..10);
        if live.is_empty() || roll < 5 {
            let p: Vec<i64> = (0..d).map(|_| rng.gen_range(0..7)).collect();
            live.push(p.clone());
            push(t, OpKind::Kins, p);
        } else if roll < 7 {
            let p = live.swap_remove(rng.gen_range(0..live.len()));
            push(t, OpKind::Kdel, p);
        } else {
            push(t, OpKind::Kvol, vec![]);
        }
    }
}

fn halfspace(t: &mut OpTrace, rng: &mut ChaCha8Rng, ops: usize) {
    let d = rng.gen_range(1..=3);
    t.header.dim = Some(d);
    t.header.scale = Some(rng.gen_range(1..=2));
    let (mut hs, mut pts): (Vec<Vec<i64>>, Vec<Vec<i64>>) = (Vec::new(), Vec::new());
    for _ in 0..ops {
        match rng.gen_range(0..10) {
            0..=2 => {
                let mut h: Vec<i64> = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
                h.push(rng.gen_range(-5..=5));
                h.push(rng.gen_range(0..=1));
                hs.push(h.clone());
                push(t, OpKind::Hins, h);
            }
            3 if !hs.is_empty() => {
                let h = hs.swap_remove(rng.gen_range(0..hs.len()));
                push(t, OpKind::Hdel, h);
            }
            4 | 5 => {
                let p: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
                pts.push(p.clone());
                push(t, OpKind::Hpin, p);
            }
            6 if !pts.is_empty() => {
                let p = pts.swap_remove(rng.gen_range(0..pts.len()));
                push(t, OpKind::Hpdel, p);
            }
            _ => push(t, OpKind::Hmin, vec![]),
        }
    }
}

fn skyline(t: &mut OpTrace, rng: &mut ChaCha8Rng, ops: usize) {
    let d = 3;
    if rng.gen_bool(0.5) {
        t.header.threshold = Some(rng.gen_range(1..=5));
    }
    let mut replay = Vec::with_capacity(ops);
    let mut live: Vec<PointD> = Vec::new();
    for _ in 0..ops {
        let roll = rng.gen_range(0..10);
        if live.is_empty() || roll < 5 {
            let p = PointD::ints(&(0..d).map(|_| rng.gen_range(0..5)).collect::<Vec<_>>());
            live.push(p.clone());
            replay.push(ReplayOp::Insert(p));
        } else if roll < 7 {
            replay.push(ReplayOp::Delete(live.swap_remove(rng.gen_range(0..live.len()))));
        } else {
            replay.push(ReplayOp::Query);
        }
    }
    let trace = to_semi_online(&[], &replay).expect("deletes follow their inserts");
    for op in trace {
        match op {
            SemiOnlineOp::Insert { point, death } => {
                let mut args = point.raw_coords();
                args.push(death as i64);
                push(t, OpKind::Soins, args);
            }
            SemiOnlineOp::Delete => push(t, OpKind::Sodel, vec![]),
            SemiOnlineOp::Query => push(t, OpKind::Soqry, vec![]),
        }
    }
}

fn langerman(t: &mut OpTrace, rng: &mut ChaCha8Rng, ops: usize) {
    let d = rng.gen_range(1..=2);
    let n = rng.gen_range(1..=6);
    t.header.dim = Some(d);
    t.header.capacity = Some(n);
    if rng.gen_bool(0.5) {
        t.header.threshold = Some(rng.gen_range(1..=n));
    }
    for _ in 0..ops {
        if rng.gen_bool(0.6) {
            let mut args: Vec<i64> = (0..d).map(|_| rng.gen_range(1..=n as i64)).collect();
            args.push(rng.gen_range(-2..=2));
            push(t, OpKind::Lset, args);
        } else {
            push(t, OpKind::Lqry, vec![]);
        }
    }
}

fn erickson(t: &mut OpTrace, rng: &mut ChaCha8Rng, ops: usize) {
    let d = rng.gen_range(1..=3);
    let n = rng.gen_range(1..=4);
    t.header.dim = Some(d);
    t.header.capacity = Some(n);
    for _ in 0..ops {
        if rng.gen_bool(0.6) {
            push(t, OpKind::Einc, vec![rng.gen_range(1..=d as i64), rng.gen_range(1..=n as i64)]);
        } else {
            push(t, OpKind::Emax, vec![]);
        }
    }
}

fn hyperclique(t: &mut OpTrace, rng: &mut ChaCha8Rng, ops: usize) {
    let k = rng.gen_range(1..=3);
    let n = rng.gen_range(k + 1..=k + 3);
    t.header.dim = Some(k);
    t.header.capacity = Some(n);
    t.header.source = Some(rng.gen_range(0..n));
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut cur = Vec::new();
    fn subsets(start: i64, n: i64, k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            subsets(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    subsets(0, n as i64, k, &mut cur, &mut all);
    let mut present = vec![false; all.len()];
    for _ in 0..ops {
        if rng.gen_bool(0.7) {
            let i = rng.gen_range(0..all.len());
            let mut e = all[i].clone();
            e.shuffle(rng);
            push(t, if present[i] { OpKind::Hedel } else { OpKind::Heins }, e);
            present[i] = !present[i];
        } else {
            push(t, OpKind::Hsq, vec![]);
        }
    }
}
