//! Brute-force reference implementations used as oracles. Everything here
//! works from the order matrix alone, with plain vectors instead of the
//! library's bitsets and precomputed tables.

#![allow(dead_code)]

use omql_core::{Elem, OmpPoset, RelationKind, TenseOp, TimeFrame, Valuation};
use rand::Rng;

pub fn elems(p: &OmpPoset) -> Vec<Elem> {
    p.elems().collect()
}

pub fn upper(p: &OmpPoset, b: &[Elem]) -> Vec<Elem> {
    elems(p)
        .into_iter()
        .filter(|&x| b.iter().all(|&y| p.leq(y, x)))
        .collect()
}

pub fn lower(p: &OmpPoset, b: &[Elem]) -> Vec<Elem> {
    elems(p)
        .into_iter()
        .filter(|&x| b.iter().all(|&y| p.leq(x, y)))
        .collect()
}

pub fn minimal(p: &OmpPoset, b: &[Elem]) -> Vec<Elem> {
    b.iter()
        .copied()
        .filter(|&x| !b.iter().any(|&y| y != x && p.leq(y, x)))
        .collect()
}

pub fn maximal(p: &OmpPoset, b: &[Elem]) -> Vec<Elem> {
    b.iter()
        .copied()
        .filter(|&x| !b.iter().any(|&y| y != x && p.leq(x, y)))
        .collect()
}

pub fn sorted(mut v: Vec<Elem>) -> Vec<Elem> {
    v.sort();
    v.dedup();
    v
}

/// x ∧ y when it exists.
pub fn meet(p: &OmpPoset, x: Elem, y: Elem) -> Option<Elem> {
    match maximal(p, &lower(p, &[x, y])).as_slice() {
        [m] => Some(*m),
        _ => None,
    }
}

pub fn join(p: &OmpPoset, x: Elem, y: Elem) -> Option<Elem> {
    match minimal(p, &upper(p, &[x, y])).as_slice() {
        [m] => Some(*m),
        _ => None,
    }
}

/// x ⊙ y = { z ∧ y : z ∈ Min U(x, y′) }
pub fn odot(p: &OmpPoset, x: Elem, y: Elem) -> Vec<Elem> {
    let mu = minimal(p, &upper(p, &[x, p.inv(y)]));
    sorted(
        mu.into_iter()
            .map(|z| meet(p, z, y).expect("meet exists"))
            .collect(),
    )
}

/// x → y = { x′ ∨ z : z ∈ Max L(x, y) }
pub fn imp(p: &OmpPoset, x: Elem, y: Elem) -> Vec<Elem> {
    let ml = maximal(p, &lower(p, &[x, y]));
    sorted(
        ml.into_iter()
            .map(|z| join(p, p.inv(x), z).expect("join exists"))
            .collect(),
    )
}

pub fn rel(p: &OmpPoset, kind: RelationKind, b: &[Elem], c: &[Elem]) -> bool {
    let le = |x: &Elem, y: &Elem| p.leq(*x, *y);
    match kind {
        RelationKind::All => b.iter().all(|x| c.iter().all(|y| le(x, y))),
        RelationKind::ExistsUpper => b.iter().all(|x| c.iter().any(|y| le(x, y))),
        RelationKind::ExistsLower => c.iter().all(|y| b.iter().any(|x| le(x, y))),
        RelationKind::SomePair => b.iter().any(|x| c.iter().any(|y| le(x, y))),
    }
}

/// Tense operator value at every time point, over the values `vals(t)`
/// available at t (a single element for valuations, a union for families).
pub fn tense_sets(
    p: &OmpPoset,
    f: &TimeFrame,
    op: TenseOp,
    vals: &dyn Fn(usize) -> Vec<Elem>,
) -> Vec<Vec<Elem>> {
    (0..f.len())
        .map(|s| {
            let fiber: Vec<usize> = (0..f.len())
                .filter(|&t| match op {
                    TenseOp::P | TenseOp::H => f.related(t, s),
                    TenseOp::F | TenseOp::G => f.related(s, t),
                })
                .collect();
            let b = sorted(fiber.iter().flat_map(|&t| vals(t)).collect());
            sorted(match op {
                TenseOp::P | TenseOp::F => minimal(p, &upper(p, &b)),
                TenseOp::H | TenseOp::G => maximal(p, &lower(p, &b)),
            })
        })
        .collect()
}

pub fn tense(p: &OmpPoset, f: &TimeFrame, op: TenseOp, q: &Valuation) -> Vec<Vec<Elem>> {
    tense_sets(p, f, op, &|t| vec![q.at(t)])
}

/// Serial random frame on `m` points: random edges, then a successor and a
/// predecessor added wherever one is missing.
#[allow(clippy::needless_range_loop)]
pub fn random_serial_frame<R: Rng>(m: usize, density: f64, rng: &mut R) -> TimeFrame {
    let mut rel = vec![vec![false; m]; m];
    for row in rel.iter_mut() {
        for cell in row.iter_mut() {
            *cell = rng.gen_bool(density);
        }
    }
    for s in 0..m {
        if !rel[s].iter().any(|&b| b) {
            let t = rng.gen_range(0..m);
            rel[s][t] = true;
        }
        if !(0..m).any(|t| rel[t][s]) {
            let t = rng.gen_range(0..m);
            rel[t][s] = true;
        }
    }
    let names = (1..=m).map(|i| i.to_string()).collect();
    TimeFrame::new(names, rel).expect("square relation")
}

pub fn random_subset<R: Rng>(p: &OmpPoset, max: usize, rng: &mut R) -> Vec<Elem> {
    let all = elems(p);
    let k = rng.gen_range(1..=max);
    sorted((0..k).map(|_| all[rng.gen_range(0..all.len())]).collect())
}

pub fn random_valuation<R: Rng>(p: &OmpPoset, m: usize, rng: &mut R) -> Valuation {
    let all = elems(p);
    Valuation::new((0..m).map(|_| all[rng.gen_range(0..all.len())]).collect())
}

pub fn names(p: &OmpPoset, v: &[Elem]) -> Vec<String> {
    v.iter().map(|&e| p.name(e).to_string()).collect()
}
