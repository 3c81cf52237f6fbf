//! Composition laws relating X and Y*X on reflexive frames.

use std::fmt;

use rayon::prelude::*;

use super::dynamic::{merge, violation, witness};
use super::universe::{self, Source};
use super::{frame_label, LawReport, Witness};
use crate::error::Result;
use crate::frame::TimeFrame;
use crate::order::RelationKind;
use crate::poset::OmpPoset;
use crate::tense::{tense, tense_family, TenseOp};
use crate::valuation::{phi, SetValuation, Valuation};

/// One side of a composition law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Term {
    /// Identity: q itself, as singletons.
    Id,
    Op(TenseOp),
    /// (outer * inner)
    Star(TenseOp, TenseOp),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Id => f.write_str("id"),
            Term::Op(x) => write!(f, "{x}"),
            Term::Star(y, x) => write!(f, "{y}*{x}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositionLaw {
    pub lhs: Term,
    pub rel: RelationKind,
    pub rhs: Term,
}

impl fmt::Display for CompositionLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.lhs, self.rel.symbol(), self.rhs)
    }
}

/// The twelve X-vs-Y*X laws followed by the sixteen sandwich instances
/// H*X, G*X ≤ X ≤ P*X, F*X.
pub fn composition_laws() -> Vec<CompositionLaw> {
    use RelationKind::{All, ExistsLower as L2, ExistsUpper as L1};
    use TenseOp::*;
    let law = |lhs, rel, rhs| CompositionLaw { lhs, rel, rhs };
    let op = Term::Op;
    let st = Term::Star;
    let mut laws = vec![
        law(op(P), L2, st(P, F)),
        law(op(F), L2, st(F, P)),
        law(op(H), L1, st(H, P)),
        law(op(G), L1, st(G, P)),
        law(st(P, H), L2, op(P)),
        law(st(F, H), L2, op(F)),
        law(op(H), L1, st(H, F)),
        law(op(G), L1, st(G, F)),
        law(st(P, G), L2, op(P)),
        law(st(F, G), L2, op(F)),
        law(st(H, G), L1, op(H)),
        law(st(G, H), L1, op(G)),
    ];
    for x in TenseOp::ALL {
        laws.push(law(st(H, x), All, op(x)));
        laws.push(law(st(G, x), All, op(x)));
        laws.push(law(op(x), All, st(P, x)));
        laws.push(law(op(x), All, st(F, x)));
    }
    laws
}

/// All X(q) and Y*X(q) for one q.
struct Table {
    id: SetValuation,
    ops: Vec<SetValuation>,
    stars: Vec<SetValuation>,
}

fn op_index(x: TenseOp) -> usize {
    TenseOp::ALL.iter().position(|&y| y == x).expect("listed")
}

impl Table {
    fn build(poset: &OmpPoset, frame: &TimeFrame, q: &Valuation) -> Result<Table> {
        let ops = TenseOp::ALL
            .iter()
            .map(|&x| tense(poset, frame, x, q))
            .collect::<Result<Vec<_>>>()?;
        let mut stars = Vec::with_capacity(16);
        for &y in &TenseOp::ALL {
            for x in &ops {
                stars.push(tense_family(poset, frame, y, &phi(x))?);
            }
        }
        Ok(Table {
            id: q.lift(poset),
            ops,
            stars,
        })
    }

    fn get(&self, t: Term) -> &SetValuation {
        match t {
            Term::Id => &self.id,
            Term::Op(x) => &self.ops[op_index(x)],
            Term::Star(y, x) => &self.stars[op_index(y) * 4 + op_index(x)],
        }
    }
}

/// Evaluates `laws` over a valuation universe. The frame must be reflexive.
pub fn check_composition_laws(
    poset: &OmpPoset,
    frame: &TimeFrame,
    laws: &[CompositionLaw],
    source: Source,
    cap: u128,
) -> Result<Vec<LawReport>> {
    frame.require_reflexive()?;
    let uni = universe::valuation_universe(poset, frame.len(), source, cap)?;
    let label = frame_label(frame);

    // Per q, the first failure (if any) of every law.
    let per_q: Vec<Vec<Option<Witness>>> = uni
        .valuations
        .par_iter()
        .map(|q| {
            let table = Table::build(poset, frame, q)?;
            Ok(laws
                .iter()
                .map(|law| {
                    violation(poset, law.rel, table.get(law.lhs), table.get(law.rhs))
                        .map(|d| witness(poset, frame, &[("q", q)], d))
                })
                .collect())
        })
        .collect::<Result<_>>()?;

    Ok(laws
        .iter()
        .enumerate()
        .map(|(i, law)| {
            let outcomes = per_q.iter().map(|row| (1, row[i].clone())).collect();
            merge(
                LawReport::new(law.to_string(), label.clone(), uni.coverage.clone()),
                outcomes,
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::verify::universe::DEFAULT_VALUATION_CAP;

    #[test]
    fn twenty_eight_laws() {
        let laws = composition_laws();
        assert_eq!(laws.len(), 28);
        assert_eq!(laws[0].to_string(), "P≤₂P*F");
        assert_eq!(laws[12].to_string(), "H*P≤P");
    }

    #[test]
    fn boolean_chain_exhaustive() {
        let p = fixtures::boolean(2);
        let f = TimeFrame::chain_le(3);
        let reps = check_composition_laws(
            &p,
            &f,
            &composition_laws(),
            Source::Auto,
            DEFAULT_VALUATION_CAP,
        )
        .unwrap();
        for r in &reps {
            assert!(r.passed(), "{}", r.line());
            assert_eq!(r.checked, 64);
        }
    }

    #[test]
    fn false_law_yields_witness() {
        // P*P ≤ P fails on the worked example's r.
        let p = fixtures::fig1();
        let f = TimeFrame::chain_le(3);
        let bogus = [CompositionLaw {
            lhs: Term::Star(TenseOp::P, TenseOp::P),
            rel: RelationKind::All,
            rhs: Term::Op(TenseOp::P),
        }];
        let reps = check_composition_laws(
            &p,
            &f,
            &bogus,
            Source::Sampled {
                count: 200,
                seed: 3,
            },
            0,
        )
        .unwrap();
        let w = reps[0].witness.as_ref().expect("fails with witness");
        assert!(w.time.is_some());
    }

    #[test]
    fn irreflexive_frame_rejected() {
        let p = fixtures::boolean(1);
        assert!(check_composition_laws(
            &p,
            &TimeFrame::chain_lt(2),
            &composition_laws(),
            Source::Auto,
            10
        )
        .is_err());
    }
}
