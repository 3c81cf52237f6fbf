//! Transfer between ⊙-laws and →-laws: a hypothesis quantified over
//! set-valuations x and valuations q implies a ⊑-conclusion over valuations.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::universe::{self, count_valuations, Coverage, Source};
use super::{frame_label, LawReport, Status, Witness};
use crate::connectives::{imp_setval, odot_setval};
use crate::error::{OmqlError, Result};
use crate::frame::TimeFrame;
use crate::order::{first_violation, Comparison, RelationKind};
use crate::poset::OmpPoset;
use crate::subset::Subset;
use crate::tense::{tense, tense_phi, TenseOp};
use crate::valuation::{SetValuation, Valuation};

/// Set-valuation spaces up to this size are enumerated in full.
const EXHAUSTIVE_SETVAL_CAP: u128 = 4096;
/// Valuation spaces up to this size are used in full for q and p.
const FULL_VALUATION_CAP: u128 = 64;
const DEFAULT_Q_SAMPLE: usize = 24;
const DEFAULT_X_SAMPLE: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// ⊙-hypothesis, →-conclusion.
    I,
    /// →-hypothesis, ⊙-conclusion.
    II,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::I => "i",
            Direction::II => "ii",
        })
    }
}

impl FromStr for Direction {
    type Err = OmqlError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" | "1" | "I" => Ok(Direction::I),
            "ii" | "2" | "II" => Ok(Direction::II),
            _ => Err(OmqlError::Type(format!(
                "unknown direction `{s}`, expected i or ii"
            ))),
        }
    }
}

/// Valuations p, q and set-valuations x to quantify over.
#[derive(Debug, Clone)]
pub struct Theorem14Universe {
    pub valuations: Vec<Valuation>,
    pub set_valuations: Vec<SetValuation>,
    pub coverage: Coverage,
}

/// Builds the universe. Tiny spaces are exhaustive. Otherwise x ranges over
/// every singleton-valued set-valuation (when A^T fits under `cap`), every
/// constant two-element set-valuation and seeded random ones, and q over a
/// seeded sample; the checks add the derived instances p→q or p⊙q.
pub fn theorem14_universe(
    poset: &OmpPoset,
    m: usize,
    source: Source,
    cap: u128,
) -> Result<Theorem14Universe> {
    let n = poset.len();
    let vals = count_valuations(n, m);
    let setvals = count_valuations((1usize << n.min(60)) - 1, m);
    let small = setvals <= EXHAUSTIVE_SETVAL_CAP && vals <= cap;
    if small && !matches!(source, Source::Sampled { .. }) {
        let valuations = universe::all_valuations(poset, m);
        let set_valuations = universe::all_setvaluations(poset, m);
        let count = (valuations.len() * set_valuations.len()) as u64;
        return Ok(Theorem14Universe {
            valuations,
            set_valuations,
            coverage: Coverage::Exhaustive { count },
        });
    }
    if source == Source::Exhaustive {
        return Err(OmqlError::Capacity {
            size: setvals,
            cap: EXHAUSTIVE_SETVAL_CAP,
            advice: "the set-valuation space is too large; use sampling",
        });
    }
    let (q_count, x_count, seed) = match source {
        Source::Sampled { count, seed } => (DEFAULT_Q_SAMPLE.min(count.max(1)), count, seed),
        _ => (DEFAULT_Q_SAMPLE, DEFAULT_X_SAMPLE, universe::DEFAULT_SEED),
    };
    let mut rng = universe::rng(seed);
    let valuations = if vals <= FULL_VALUATION_CAP {
        universe::all_valuations(poset, m)
    } else {
        (0..q_count)
            .map(|_| universe::random_valuation(poset, m, &mut rng))
            .collect()
    };
    let mut set_valuations: Vec<SetValuation> = if vals <= cap {
        universe::all_valuations(poset, m)
            .iter()
            .map(|q| q.lift(poset))
            .collect()
    } else {
        (0..x_count)
            .map(|_| universe::random_valuation(poset, m, &mut rng).lift(poset))
            .collect()
    };
    for a in poset.elems() {
        for b in poset.elems().filter(|&b| b > a) {
            let pair = Subset::from_elems(n, [a, b]);
            set_valuations.push(SetValuation::constant(m, pair)?);
        }
    }
    for _ in 0..x_count {
        set_valuations.push(universe::random_setvaluation(poset, m, 3, &mut rng));
    }
    Ok(Theorem14Universe {
        coverage: Coverage::Sampled {
            count: (valuations.len() * set_valuations.len()) as u64,
            seed,
        },
        valuations,
        set_valuations,
    })
}

#[derive(Debug, Clone)]
pub struct Theorem14Report {
    pub direction: Direction,
    pub ops: (TenseOp, TenseOp, TenseOp),
    pub hypothesis: LawReport,
    pub conclusion: LawReport,
}

impl Theorem14Report {
    /// Vacuous when the hypothesis fails, otherwise the conclusion's status.
    pub fn status(&self) -> Status {
        if self.hypothesis.status == Status::Fail {
            Status::Vacuous
        } else {
            self.conclusion.status
        }
    }

    pub fn lines(&self) -> Vec<String> {
        let (x, y, z) = self.ops;
        let head = format!(
            "({}) X={x} Y={y} Z={z}: {}",
            self.direction,
            match self.status() {
                Status::Pass => "pass",
                Status::Vacuous => "vacuous",
                Status::Fail => "FAIL",
            }
        );
        vec![
            head,
            format!("  hypothesis: {}", self.hypothesis.line()),
            format!("  conclusion: {}", self.conclusion.line()),
        ]
    }
}

fn render(poset: &OmpPoset, x: &SetValuation) -> String {
    format!("({})", x.render(poset).join(", "))
}

struct Ctx<'a> {
    poset: &'a OmpPoset,
    frame: &'a TimeFrame,
}

impl Ctx<'_> {
    fn fail(
        &self,
        bindings: Vec<(&str, String)>,
        t: usize,
        lhs: &SetValuation,
        rel: RelationKind,
        rhs: &SetValuation,
    ) -> Witness {
        Witness {
            bindings: bindings
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            time: Some(self.frame.name(t).to_string()),
            detail: format!(
                "{} {} {} fails",
                self.poset.fmt_subset(lhs.at(t)),
                rel.symbol(),
                self.poset.fmt_subset(rhs.at(t))
            ),
        }
    }
}

/// Scans outer × inner in order; returns instances checked and the first
/// witness.
fn scan<A: Sync, B: Sync>(
    outer: &[A],
    inner: &[B],
    check: impl Fn(&A, &B) -> Result<Option<Witness>> + Sync,
) -> Result<(u64, Option<Witness>)> {
    let found = outer
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            for (j, b) in inner.iter().enumerate() {
                if let Some(w) = check(a, b)? {
                    return Ok(Some((i, j, w)));
                }
            }
            Ok(None)
        })
        .find_map_first(|r: Result<Option<(usize, usize, Witness)>>| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        None => Ok(((outer.len() * inner.len()) as u64, None)),
        Some(Err(e)) => Err(e),
        Some(Ok(None)) => unreachable!("filtered above"),
        Some(Ok(Some((i, j, w)))) => Ok(((i * inner.len() + j + 1) as u64, Some(w))),
    }
}

/// Evaluates hypothesis and conclusion of one direction for (X, Y, Z).
pub fn check_theorem14(
    poset: &OmpPoset,
    frame: &TimeFrame,
    direction: Direction,
    (x_op, y_op, z_op): (TenseOp, TenseOp, TenseOp),
    uni: &Theorem14Universe,
) -> Result<Theorem14Report> {
    frame.require_serial()?;
    let m = frame.len();
    for q in &uni.valuations {
        q.check(poset, m)?;
    }
    for x in &uni.set_valuations {
        x.check(poset, m)?;
    }
    let ctx = Ctx { poset, frame };
    let label = frame_label(frame);
    let vals = &uni.valuations;

    // Derived instances: p→q for (i), p⊙q for (ii).
    let mut xs = uni.set_valuations.clone();
    if !uni.coverage.is_exhaustive() {
        for p in vals {
            for q in vals {
                let (ps, qs) = (p.lift(poset), q.lift(poset));
                xs.push(match direction {
                    Direction::I => imp_setval(poset, &ps, &qs)?,
                    Direction::II => odot_setval(poset, &ps, &qs)?,
                });
            }
        }
    }
    let hyp_cov = match &uni.coverage {
        Coverage::Sampled { seed, .. } => Coverage::Sampled {
            count: (xs.len() * vals.len()) as u64,
            seed: *seed,
        },
        c => c.clone(),
    };
    let concl_cov = match &uni.coverage {
        Coverage::Exhaustive { .. } => Coverage::Exhaustive {
            count: (vals.len() * vals.len()) as u64,
        },
        Coverage::Sampled { seed, .. } => Coverage::Sampled {
            count: (vals.len() * vals.len()) as u64,
            seed: *seed,
        },
        c => c.clone(),
    };
    let y_of: Vec<SetValuation> = vals
        .iter()
        .map(|q| tense(poset, frame, y_op, q))
        .collect::<Result<_>>()?;
    let y_at = |q: &Valuation| -> Result<SetValuation> { tense(poset, frame, y_op, q) };
    let lifts: Vec<SetValuation> = vals.iter().map(|q| q.lift(poset)).collect();
    let idx: Vec<usize> = (0..vals.len()).collect();
    let some = RelationKind::SomePair;

    let (hyp_text, concl_text, hyp, concl) = match direction {
        Direction::I => {
            let i = RelationKind::indexed(z_op.index());
            let x_phi: Vec<SetValuation> = xs
                .par_iter()
                .map(|x| tense_phi(poset, frame, x_op, x))
                .collect::<Result<_>>()?;
            let xi: Vec<usize> = (0..xs.len()).collect();
            let hyp = scan(&xi, &idx, |&a, &b| {
                let lhs = odot_setval(poset, &x_phi[a], &y_of[b])?;
                let rhs = tense_phi(poset, frame, z_op, &odot_setval(poset, &xs[a], &lifts[b])?)?;
                Ok(
                    first_violation(poset, Comparison::Rel(i), &lhs, &rhs).map(|t| {
                        ctx.fail(
                            vec![("x", render(poset, &xs[a])), ("q", vals[b].render(poset))],
                            t,
                            &lhs,
                            i,
                            &rhs,
                        )
                    }),
                )
            })?;
            let concl = scan(&idx, &idx, |&a, &b| {
                let lhs = tense_phi(
                    poset,
                    frame,
                    x_op,
                    &imp_setval(poset, &lifts[a], &lifts[b])?,
                )?;
                let rhs = imp_setval(poset, &y_of[a], &tense(poset, frame, z_op, &vals[b])?)?;
                Ok(
                    first_violation(poset, Comparison::Rel(some), &lhs, &rhs).map(|t| {
                        ctx.fail(
                            vec![("p", vals[a].render(poset)), ("q", vals[b].render(poset))],
                            t,
                            &lhs,
                            some,
                            &rhs,
                        )
                    }),
                )
            })?;
            (
                format!("{x_op}(φ(x))⊙{y_op}(q) {} {z_op}(φ(x⊙q))", i.symbol()),
                format!("{x_op}(φ(p→q)) ⊑ {y_op}(p)→{z_op}(q)"),
                hyp,
                concl,
            )
        }
        Direction::II => {
            let i = RelationKind::indexed(x_op.index());
            let z_phi: Vec<SetValuation> = xs
                .par_iter()
                .map(|x| tense_phi(poset, frame, z_op, x))
                .collect::<Result<_>>()?;
            let xi: Vec<usize> = (0..xs.len()).collect();
            let hyp = scan(&xi, &idx, |&a, &b| {
                let lhs = tense_phi(poset, frame, x_op, &imp_setval(poset, &lifts[b], &xs[a])?)?;
                let rhs = imp_setval(poset, &y_of[b], &z_phi[a])?;
                Ok(
                    first_violation(poset, Comparison::Rel(i), &lhs, &rhs).map(|t| {
                        ctx.fail(
                            vec![("p", vals[b].render(poset)), ("x", render(poset, &xs[a]))],
                            t,
                            &lhs,
                            i,
                            &rhs,
                        )
                    }),
                )
            })?;
            let concl = scan(&idx, &idx, |&a, &b| {
                let lhs = odot_setval(
                    poset,
                    &tense(poset, frame, x_op, &vals[a])?,
                    &y_at(&vals[b])?,
                )?;
                let rhs = tense_phi(
                    poset,
                    frame,
                    z_op,
                    &odot_setval(poset, &lifts[a], &lifts[b])?,
                )?;
                Ok(
                    first_violation(poset, Comparison::Rel(some), &lhs, &rhs).map(|t| {
                        ctx.fail(
                            vec![("p", vals[a].render(poset)), ("q", vals[b].render(poset))],
                            t,
                            &lhs,
                            some,
                            &rhs,
                        )
                    }),
                )
            })?;
            (
                format!("{x_op}(φ(p→x)) {} {y_op}(p)→{z_op}(φ(x))", i.symbol()),
                format!("{x_op}(p)⊙{y_op}(q) ⊑ {z_op}(φ(p⊙q))"),
                hyp,
                concl,
            )
        }
    };

    let finish = |text: String, cov: Coverage, (n, w): (u64, Option<Witness>)| {
        let r = LawReport::new(text, label.clone(), cov).checked(n);
        match w {
            Some(w) => r.failed(w),
            None => r,
        }
    };
    Ok(Theorem14Report {
        direction,
        ops: (x_op, y_op, z_op),
        hypothesis: finish(hyp_text, hyp_cov, hyp),
        conclusion: finish(concl_text, concl_cov, concl),
    })
}
