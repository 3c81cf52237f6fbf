//! The dynamic-pair axioms (P1)-(P3) for (P, G) and (F, H).

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::universe::{self, valuation_index, valuations_below, Coverage, Source};
use super::{frame_label, LawReport, Witness};
use crate::error::{OmqlError, Result};
use crate::frame::TimeFrame;
use crate::order::{first_violation, Comparison, RelationKind};
use crate::poset::OmpPoset;
use crate::tense::{star, tense, TenseOp};
use crate::valuation::{SetValuation, Valuation};

/// Number of p ≤ q drawn per q when the universe is sampled.
const BELOW_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynamicPair {
    /// (P, G)
    PG,
    /// (F, H)
    FH,
}

impl DynamicPair {
    /// (sometime, always)
    pub fn ops(self) -> (TenseOp, TenseOp) {
        match self {
            DynamicPair::PG => (TenseOp::P, TenseOp::G),
            DynamicPair::FH => (TenseOp::F, TenseOp::H),
        }
    }
}

impl fmt::Display for DynamicPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, a) = self.ops();
        write!(f, "({s},{a})")
    }
}

impl FromStr for DynamicPair {
    type Err = OmqlError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace(['(', ')', ','], "").as_str() {
            "PG" => Ok(DynamicPair::PG),
            "FH" => Ok(DynamicPair::FH),
            _ => Err(OmqlError::Type(format!(
                "unknown dynamic pair `{s}`, expected PG or FH"
            ))),
        }
    }
}

/// First time point where `lhs kind rhs` fails, with a rendered detail.
pub(crate) fn violation(
    poset: &OmpPoset,
    kind: RelationKind,
    lhs: &SetValuation,
    rhs: &SetValuation,
) -> Option<(usize, String)> {
    first_violation(poset, Comparison::Rel(kind), lhs, rhs).map(|t| {
        let detail = format!(
            "{} {} {} fails",
            poset.fmt_subset(lhs.at(t)),
            kind.symbol(),
            poset.fmt_subset(rhs.at(t))
        );
        (t, detail)
    })
}

pub(crate) fn witness(
    poset: &OmpPoset,
    frame: &TimeFrame,
    vals: &[(&str, &Valuation)],
    (t, detail): (usize, String),
) -> Witness {
    Witness {
        bindings: vals
            .iter()
            .map(|(k, v)| (k.to_string(), v.render(poset)))
            .collect(),
        time: Some(frame.name(t).to_string()),
        detail,
    }
}

/// Checks (P1), (P2) and (P3) for `pair`; one report per axiom.
pub fn check_dynamic_pair(
    pair: DynamicPair,
    poset: &OmpPoset,
    frame: &TimeFrame,
    source: Source,
    cap: u128,
) -> Result<Vec<LawReport>> {
    frame.require_serial()?;
    let m = frame.len();
    let (some, always) = pair.ops();
    let uni = universe::valuation_universe(poset, m, source, cap)?;
    let label = frame_label(frame);

    // (P1) on the constant valuations 1 and 0.
    let one = Valuation::constant(m, poset.top());
    let zero = Valuation::constant(m, poset.bottom());
    let mut p1 = LawReport::new(
        format!("{pair} P1: {always}(1)=1, {some}(0)=0"),
        frame_label(frame),
        Coverage::Instance,
    )
    .checked(2);
    for (op, q) in [(always, &one), (some, &zero)] {
        let got = tense(poset, frame, op, q)?;
        if got != q.lift(poset) {
            let t = (0..m)
                .find(|&t| got.at(t) != q.lift(poset).at(t))
                .unwrap_or(0);
            p1 = p1.failed(Witness {
                bindings: vec![("q".into(), q.render(poset))],
                time: Some(frame.name(t).to_string()),
                detail: format!("{op}(q) = {}", poset.fmt_subset(got.at(t))),
            });
            break;
        }
    }

    // Operator values per universe member, reused by (P2) and (P3).
    let values: Vec<(SetValuation, SetValuation)> = uni
        .valuations
        .par_iter()
        .map(|q| {
            Ok((
                tense(poset, frame, always, q)?,
                tense(poset, frame, some, q)?,
            ))
        })
        .collect::<Result<_>>()?;

    // (P2) monotonicity over pairs p ≤ q.
    let exhaustive = uni.coverage.is_exhaustive();
    let n = poset.len();
    let p2_outcomes: Vec<(u64, Option<Witness>)> = uni
        .valuations
        .par_iter()
        .enumerate()
        .map(|(qi, q)| -> Result<(u64, Option<Witness>)> {
            let (aq, sq) = &values[qi];
            let below: Vec<Valuation> = if exhaustive {
                valuations_below(poset, q)
            } else {
                let mut r = universe::rng(qi as u64 ^ 0x5eed);
                (0..BELOW_SAMPLES)
                    .map(|_| universe::random_below(poset, q, &mut r))
                    .collect()
            };
            let mut count = 0;
            for p in &below {
                count += 1;
                let (ap, sp) = if exhaustive {
                    values[valuation_index(n, p)].clone()
                } else {
                    (
                        tense(poset, frame, always, p)?,
                        tense(poset, frame, some, p)?,
                    )
                };
                let bad = violation(poset, RelationKind::ExistsUpper, &ap, aq)
                    .map(|(t, d)| (t, format!("{always}(p) vs {always}(q): {d}")))
                    .or_else(|| {
                        violation(poset, RelationKind::ExistsLower, &sp, sq)
                            .map(|(t, d)| (t, format!("{some}(p) vs {some}(q): {d}")))
                    });
                if let Some(d) = bad {
                    return Ok((count, Some(witness(poset, frame, &[("p", p), ("q", q)], d))));
                }
            }
            Ok((count, None))
        })
        .collect::<Result<_>>()?;
    let mut p2 = LawReport::new(
        format!("{pair} P2: p≤q ⇒ {always}(p)≤₁{always}(q), {some}(p)≤₂{some}(q)"),
        label.clone(),
        uni.coverage.clone(),
    );
    p2 = merge(p2, p2_outcomes);

    // (P3) q ≤₁ (always*some)(q) and (some*always)(q) ≤₂ q.
    let p3_outcomes: Vec<(u64, Option<Witness>)> = uni
        .valuations
        .par_iter()
        .map(|q| -> Result<(u64, Option<Witness>)> {
            let qs = q.lift(poset);
            let up = star(poset, frame, always, some, q)?;
            let down = star(poset, frame, some, always, q)?;
            let bad = violation(poset, RelationKind::ExistsUpper, &qs, &up)
                .map(|(t, d)| (t, format!("q vs ({always}*{some})(q): {d}")))
                .or_else(|| {
                    violation(poset, RelationKind::ExistsLower, &down, &qs)
                        .map(|(t, d)| (t, format!("({some}*{always})(q) vs q: {d}")))
                });
            Ok((1, bad.map(|d| witness(poset, frame, &[("q", q)], d))))
        })
        .collect::<Result<_>>()?;
    let p3 = merge(
        LawReport::new(
            format!("{pair} P3: q≤₁({always}*{some})(q), ({some}*{always})(q)≤₂q"),
            label,
            uni.coverage.clone(),
        ),
        p3_outcomes,
    );
    Ok(vec![p1, p2, p3])
}

/// Folds per-item outcomes in universe order: counts up to and including
/// the first failure.
pub(crate) fn merge(mut report: LawReport, outcomes: Vec<(u64, Option<Witness>)>) -> LawReport {
    let mut checked = 0;
    for (n, w) in outcomes {
        checked += n;
        if let Some(w) = w {
            report = report.failed(w);
            break;
        }
    }
    report.checked(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::verify::universe::DEFAULT_VALUATION_CAP;

    #[test]
    fn two_element_chain_passes() {
        let p = fixtures::boolean(1);
        for m in 1..=3 {
            let f = TimeFrame::chain_le(m);
            for pair in [DynamicPair::PG, DynamicPair::FH] {
                let reps =
                    check_dynamic_pair(pair, &p, &f, Source::Auto, DEFAULT_VALUATION_CAP).unwrap();
                assert!(reps.iter().all(|r| r.passed()), "{:?}", reps);
            }
        }
    }

    #[test]
    fn non_serial_frame_rejected() {
        let p = fixtures::boolean(1);
        let f = TimeFrame::chain_lt(3);
        assert!(matches!(
            check_dynamic_pair(DynamicPair::PG, &p, &f, Source::Auto, 100),
            Err(OmqlError::Precondition(_))
        ));
    }

    #[test]
    fn sampled_fig1_passes() {
        let p = fixtures::fig1();
        let f = TimeFrame::chain_le(4);
        let src = Source::Sampled {
            count: 100,
            seed: 1,
        };
        let reps = check_dynamic_pair(DynamicPair::FH, &p, &f, src, 10).unwrap();
        assert!(reps.iter().all(|r| r.passed()));
        assert_eq!(reps[2].verdict(), "supported");
    }

    #[test]
    fn pair_parsing() {
        assert_eq!("(P,G)".parse::<DynamicPair>().unwrap(), DynamicPair::PG);
        assert_eq!("fh".parse::<DynamicPair>().unwrap(), DynamicPair::FH);
        assert!("PH".parse::<DynamicPair>().is_err());
    }
}
