//! Rebuilding a time-preference relation from the tense operators of a
//! frame.
//!
//! Two constructions are offered. [`Mode::Star`] relates s to t when, for
//! every valuation q,
//!
//! ```text
//! G(q)(s) ≤ q(t) ≤ F(q)(s)   and   H(q)(t) ≤ q(s) ≤ P(q)(t)
//! ```
//!
//! and [`Mode::Bar`] asks the same of every X(q) in place of q, with the
//! outer operators composed through φ. All comparisons use the all-pairs
//! relation, elements read as singletons.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{OmqlError, Result};
use crate::frame::TimeFrame;
use crate::order::{holds, Comparison, RelationKind};
use crate::poset::OmpPoset;
use crate::tense::{tense, tense_family, TenseOp};
use crate::valuation::{phi, SetValuation, Valuation};
use crate::verify::universe::{valuation_universe, Coverage, Source};
use crate::verify::{LawReport, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Star,
    Bar,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Star => "star",
            Mode::Bar => "bar",
        })
    }
}

impl FromStr for Mode {
    type Err = OmqlError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(Mode::Star),
            "bar" => Ok(Mode::Bar),
            _ => Err(OmqlError::Type(format!(
                "unknown mode `{s}`, expected star or bar"
            ))),
        }
    }
}

/// One family of equivalence claims, e.g. every `P(q)(s) ≈₂ P*(q)(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub claim: String,
    /// The operator the claim is indexed by (X for star, Y for bar).
    pub op: TenseOp,
    pub checked: u64,
    pub failures: u64,
    /// First failing instance.
    pub witness: Option<Witness>,
}

impl LedgerEntry {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub mode: Mode,
    /// The reconstructed relation, same time points as the input frame.
    pub frame: TimeFrame,
    pub coverage: Coverage,
    /// R is contained in the reconstructed relation.
    pub contains_original: bool,
    /// Pairs of the reconstructed relation missing from R.
    pub extra: Vec<(usize, usize)>,
    pub ledger: Vec<LedgerEntry>,
}

impl ReconstructionResult {
    pub fn relation(&self) -> &[Vec<bool>] {
        self.frame.matrix()
    }

    /// Ledger entries are definitive only under exhaustive quantification.
    pub fn definitive(&self) -> bool {
        self.coverage.is_exhaustive()
    }

    /// The relation as a 0/1 matrix with time names on both axes.
    pub fn matrix_lines(&self) -> Vec<String> {
        let names = self.frame.names();
        let mut out = vec![format!("\t{}", names.join("\t"))];
        for (s, row) in self.relation().iter().enumerate() {
            let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            out.push(format!("{}\t{}", names[s], cells.join("\t")));
        }
        out
    }
}

fn universe(
    poset: &OmpPoset,
    frame: &TimeFrame,
    source: Source,
    cap: u128,
) -> Result<(Vec<Valuation>, Coverage)> {
    // Without an explicit sample size the quantifier must be exhaustive.
    let source = match source {
        Source::Auto => Source::Exhaustive,
        s => s,
    };
    let u = valuation_universe(poset, frame.len(), source, cap)?;
    Ok((u.valuations, u.coverage))
}

fn all_below(poset: &OmpPoset, b: &crate::Subset, c: &crate::Subset) -> bool {
    holds(poset, RelationKind::All, b, c)
}

/// Cells (s, t) that survive one valuation's constraints.
type Mask = Vec<Vec<bool>>;

fn and_masks(mut a: Mask, b: Mask) -> Mask {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x &= y;
        }
    }
    a
}

/// Sandwich conditions for one set-valuation v standing in for q:
/// `g(s) ≤ v(t) ≤ f(s)` and `h(t) ≤ v(s) ≤ p(t)`.
fn sandwich_mask(poset: &OmpPoset, v: &SetValuation, [p, f, h, g]: [&SetValuation; 4]) -> Mask {
    let m = v.len();
    (0..m)
        .map(|s| {
            (0..m)
                .map(|t| {
                    all_below(poset, g.at(s), v.at(t))
                        && all_below(poset, v.at(t), f.at(s))
                        && all_below(poset, h.at(t), v.at(s))
                        && all_below(poset, v.at(s), p.at(t))
                })
                .collect()
        })
        .collect()
}

fn ops_of(poset: &OmpPoset, frame: &TimeFrame, q: &Valuation) -> Result<[SetValuation; 4]> {
    Ok([
        tense(poset, frame, TenseOp::P, q)?,
        tense(poset, frame, TenseOp::F, q)?,
        tense(poset, frame, TenseOp::H, q)?,
        tense(poset, frame, TenseOp::G, q)?,
    ])
}

fn full_mask(m: usize) -> Mask {
    vec![vec![true; m]; m]
}

fn finish(
    poset: &OmpPoset,
    frame: &TimeFrame,
    mode: Mode,
    relation: Mask,
    vals: &[Valuation],
    coverage: Coverage,
) -> Result<ReconstructionResult> {
    let rebuilt = frame.with_relation(relation)?;
    let m = frame.len();
    let mut extra = Vec::new();
    for s in 0..m {
        for t in 0..m {
            if rebuilt.related(s, t) && !frame.related(s, t) {
                extra.push((s, t));
            }
        }
    }
    let ledger = if rebuilt.is_serial() {
        ledger(poset, frame, &rebuilt, mode, vals)?
    } else {
        Vec::new()
    };
    Ok(ReconstructionResult {
        mode,
        contains_original: frame.relation_subset_of(rebuilt.matrix()),
        frame: rebuilt,
        coverage,
        extra,
        ledger,
    })
}

/// R* from the operators of `frame`, quantified over `source`.
pub fn build_r_star(
    poset: &OmpPoset,
    frame: &TimeFrame,
    source: Source,
    cap: u128,
) -> Result<ReconstructionResult> {
    frame.require_serial()?;
    let (vals, coverage) = universe(poset, frame, source, cap)?;
    let m = frame.len();
    let relation = vals
        .par_iter()
        .map(|q| {
            let [p, f, h, g] = ops_of(poset, frame, q)?;
            Ok(sandwich_mask(poset, &q.lift(poset), [&p, &f, &h, &g]))
        })
        .try_reduce(|| full_mask(m), |a, b| Ok(and_masks(a, b)))?;
    finish(poset, frame, Mode::Star, relation, &vals, coverage)
}

/// Y*X for all Y (outer, rows) and X (inner, columns) given X(q).
fn compositions(
    poset: &OmpPoset,
    outer: &TimeFrame,
    inner: &[SetValuation; 4],
) -> Result<Vec<[SetValuation; 4]>> {
    inner
        .iter()
        .map(|x| {
            let fam = phi(x);
            Ok([
                tense_family(poset, outer, TenseOp::P, &fam)?,
                tense_family(poset, outer, TenseOp::F, &fam)?,
                tense_family(poset, outer, TenseOp::H, &fam)?,
                tense_family(poset, outer, TenseOp::G, &fam)?,
            ])
        })
        .collect()
}

/// R̄ from the operators of `frame`, quantified over `source`.
pub fn build_r_bar(
    poset: &OmpPoset,
    frame: &TimeFrame,
    source: Source,
    cap: u128,
) -> Result<ReconstructionResult> {
    frame.require_serial()?;
    let (vals, coverage) = universe(poset, frame, source, cap)?;
    let m = frame.len();
    let relation = vals
        .par_iter()
        .map(|q| {
            let xs = ops_of(poset, frame, q)?;
            let comp = compositions(poset, frame, &xs)?;
            let mut mask = full_mask(m);
            for (x, [p, f, h, g]) in xs.iter().zip(&comp) {
                mask = and_masks(mask, sandwich_mask(poset, x, [p, f, h, g]));
            }
            Ok(mask)
        })
        .try_reduce(|| full_mask(m), |a, b| Ok(and_masks(a, b)))?;
    finish(poset, frame, Mode::Bar, relation, &vals, coverage)
}

const OPS: [TenseOp; 4] = [TenseOp::P, TenseOp::F, TenseOp::H, TenseOp::G];

fn equiv_of(op: TenseOp) -> Comparison {
    if op.index() == 1 {
        Comparison::Equiv1
    } else {
        Comparison::Equiv2
    }
}

/// Per-instance outcomes: for each ledger family, (checked, failures,
/// first witness).
type Tally = Vec<(u64, u64, Option<Witness>)>;

fn merge_tally(mut a: Tally, b: Tally) -> Tally {
    for (x, y) in a.iter_mut().zip(b) {
        x.0 += y.0;
        x.1 += y.1;
        if x.2.is_none() {
            x.2 = y.2;
        }
    }
    a
}

fn ledger(
    poset: &OmpPoset,
    frame: &TimeFrame,
    rebuilt: &TimeFrame,
    mode: Mode,
    vals: &[Valuation],
) -> Result<Vec<LedgerEntry>> {
    let m = frame.len();
    let sym = |op: TenseOp| if op.index() == 1 { "≈₁" } else { "≈₂" };
    let claims: Vec<String> = OPS
        .iter()
        .map(|&op| match mode {
            Mode::Star => format!("{op}(q)(s) {} {op}*(q)(s)", sym(op)),
            Mode::Bar => format!("({op}*X)(q)(s) {} ({op}̄*X)(q)(s)", sym(op)),
        })
        .collect();
    // Pairs (original, rebuilt) to compare, tagged by ledger family.
    let tallies: Vec<Tally> = vals
        .par_iter()
        .map(|q| {
            let orig = ops_of(poset, frame, q)?;
            let mut pairs: Vec<(usize, String, SetValuation, SetValuation)> = Vec::new();
            match mode {
                Mode::Star => {
                    let new = ops_of(poset, rebuilt, q)?;
                    for (k, (a, b)) in orig.into_iter().zip(new).enumerate() {
                        pairs.push((k, String::new(), a, b));
                    }
                }
                Mode::Bar => {
                    let a = compositions(poset, frame, &orig)?;
                    let b = compositions(poset, rebuilt, &orig)?;
                    for (xi, (ra, rb)) in a.into_iter().zip(b).enumerate() {
                        for (yi, (va, vb)) in ra.into_iter().zip(rb).enumerate() {
                            pairs.push((yi, format!("X={}", OPS[xi]), va, vb));
                        }
                    }
                }
            }
            let mut tally: Tally = vec![(0, 0, None); 4];
            for (k, note, a, b) in pairs {
                for s in 0..m {
                    tally[k].0 += 1;
                    if !crate::order::compare_sets(poset, equiv_of(OPS[k]), a.at(s), b.at(s)) {
                        tally[k].1 += 1;
                        if tally[k].2.is_none() {
                            tally[k].2 = Some(Witness {
                                bindings: vec![("q".into(), q.render(poset))],
                                time: Some(frame.name(s).to_string()),
                                detail: format!(
                                    "{}{} vs {}",
                                    if note.is_empty() {
                                        String::new()
                                    } else {
                                        format!("{note}: ")
                                    },
                                    poset.fmt_subset(a.at(s)),
                                    poset.fmt_subset(b.at(s))
                                ),
                            });
                        }
                    }
                }
            }
            Ok(tally)
        })
        .collect::<Result<_>>()?;
    let total = tallies.into_iter().fold(vec![(0, 0, None); 4], merge_tally);
    Ok(OPS
        .iter()
        .zip(claims)
        .zip(total)
        .map(|((&op, claim), (checked, failures, witness))| LedgerEntry {
            claim,
            op,
            checked,
            failures,
            witness,
        })
        .collect())
}

/// Re-derives the operators from the reconstructed relation and checks
/// containment and every ledger family from scratch.
pub fn verify_reconstruction(
    result: &ReconstructionResult,
    poset: &OmpPoset,
    frame: &TimeFrame,
    source: Source,
    cap: u128,
) -> Result<Vec<LawReport>> {
    let (vals, coverage) = universe(poset, frame, source, cap)?;
    let label = format!("|T|={}", frame.len());
    let name = match result.mode {
        Mode::Star => "R*",
        Mode::Bar => "R̄",
    };
    let mut reports = Vec::new();
    let mut containment = LawReport::new(
        format!("R ⊆ {name}"),
        label.clone(),
        result.coverage.clone(),
    )
    .checked((frame.len() * frame.len()) as u64);
    if !frame.relation_subset_of(result.relation()) {
        let (s, t) = (0..frame.len())
            .flat_map(|s| (0..frame.len()).map(move |t| (s, t)))
            .find(|&(s, t)| frame.related(s, t) && !result.frame.related(s, t))
            .expect("non-containment has a witness");
        containment = containment.failed(Witness {
            bindings: vec![],
            time: None,
            detail: format!(
                "({}, {}) ∈ R but not in {name}",
                frame.name(s),
                frame.name(t)
            ),
        });
    }
    reports.push(containment);
    if !result.frame.is_serial() {
        return Err(OmqlError::Precondition(format!("{name} is not serial")));
    }
    for entry in ledger(poset, frame, &result.frame, result.mode, &vals)? {
        let r = LawReport::new(entry.claim.clone(), label.clone(), coverage.clone())
            .checked(entry.checked);
        reports.push(match entry.witness {
            Some(w) => r.failed(w),
            None => r,
        });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn one_point_frame_is_recovered() {
        let p = fixtures::fig1();
        let f = TimeFrame::chain_le(1);
        for build in [build_r_star, build_r_bar] {
            let r = build(&p, &f, Source::Auto, 1000).unwrap();
            assert_eq!(r.relation(), f.matrix());
            assert!(r.contains_original && r.extra.is_empty());
        }
    }

    #[test]
    fn total_relation_ledger_is_exact() {
        let p = fixtures::boolean(2);
        let f = TimeFrame::total(3);
        let r = build_r_star(&p, &f, Source::Auto, 1000).unwrap();
        assert!(r.ledger.iter().all(|e| e.holds()));
        for q in crate::verify::universe::all_valuations(&p, 3) {
            for op in OPS {
                assert_eq!(
                    tense(&p, &f, op, &q).unwrap(),
                    tense(&p, &r.frame, op, &q).unwrap()
                );
            }
        }
    }

    #[test]
    fn cap_exceeded_without_sampling() {
        let p = fixtures::fig1();
        let f = TimeFrame::chain_le(5);
        assert!(matches!(
            build_r_star(&p, &f, Source::Auto, 100_000),
            Err(OmqlError::Capacity { .. })
        ));
    }

    #[test]
    fn verify_reports_proved() {
        let p = fixtures::boolean(2);
        let f = TimeFrame::chain_le(3);
        for build in [build_r_star, build_r_bar] {
            let r = build(&p, &f, Source::Auto, 1000).unwrap();
            let reps = verify_reconstruction(&r, &p, &f, Source::Auto, 1000).unwrap();
            assert_eq!(reps.len(), 5);
            for rep in reps {
                assert_eq!(rep.verdict(), "proved on fixture", "{}", rep.line());
            }
        }
    }
}
