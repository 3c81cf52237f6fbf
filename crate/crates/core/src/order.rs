//! The four comparison relations between non-empty subsets, lifted pointwise
//! to set-valuations and quantifier-wise to valuation families.

use std::fmt;
use std::str::FromStr;

use crate::error::{OmqlError, Result};
use crate::poset::OmpPoset;
use crate::subset::Subset;
use crate::valuation::{SetValuation, Valuation, ValuationFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// B ≤ C: every b below every c.
    All,
    /// B ≤₁ C: every b has some c above it.
    ExistsUpper,
    /// B ≤₂ C: every c has some b below it.
    ExistsLower,
    /// B ⊑ C: some b below some c.
    SomePair,
}

impl RelationKind {
    pub const ALL: [RelationKind; 4] = [
        RelationKind::All,
        RelationKind::ExistsUpper,
        RelationKind::ExistsLower,
        RelationKind::SomePair,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            RelationKind::All => "≤",
            RelationKind::ExistsUpper => "≤₁",
            RelationKind::ExistsLower => "≤₂",
            RelationKind::SomePair => "⊑",
        }
    }

    /// ≤₁ for the "always" operators H and G, ≤₂ for P and F.
    pub fn indexed(i: u8) -> RelationKind {
        match i {
            1 => RelationKind::ExistsUpper,
            _ => RelationKind::ExistsLower,
        }
    }
}

/// Any relation an inequality may be stated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Rel(RelationKind),
    /// ≈₁
    Equiv1,
    /// ≈₂
    Equiv2,
    /// Extensional equality of the set values.
    Equal,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Rel(k) => k.symbol(),
            Comparison::Equiv1 => "≈₁",
            Comparison::Equiv2 => "≈₂",
            Comparison::Equal => "=",
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Comparison {
    type Err = OmqlError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "le" | "all" | "≤" => Comparison::Rel(RelationKind::All),
            "le1" | "≤₁" => Comparison::Rel(RelationKind::ExistsUpper),
            "le2" | "≤₂" => Comparison::Rel(RelationKind::ExistsLower),
            "sq" | "some" | "⊑" => Comparison::Rel(RelationKind::SomePair),
            "eq1" | "≈₁" => Comparison::Equiv1,
            "eq2" | "≈₂" => Comparison::Equiv2,
            "eq" | "=" => Comparison::Equal,
            other => {
                return Err(OmqlError::Type(format!(
                    "unknown relation `{other}` (expected le, le1, le2, sq, eq1, eq2 or eq)"
                )))
            }
        })
    }
}

/// Unchecked subset comparison; both operands must be non-empty subsets of
/// `poset`.
pub(crate) fn holds(poset: &OmpPoset, kind: RelationKind, b: &Subset, c: &Subset) -> bool {
    match kind {
        RelationKind::All => b.iter().all(|x| c.is_subset(poset.above(x))),
        RelationKind::ExistsUpper => b.iter().all(|x| poset.above(x).intersects(c)),
        RelationKind::ExistsLower => c.iter().all(|y| poset.below(y).intersects(b)),
        RelationKind::SomePair => b.iter().any(|x| poset.above(x).intersects(c)),
    }
}

pub(crate) fn compare_sets(poset: &OmpPoset, cmp: Comparison, b: &Subset, c: &Subset) -> bool {
    match cmp {
        Comparison::Rel(k) => holds(poset, k, b, c),
        Comparison::Equiv1 => {
            holds(poset, RelationKind::ExistsUpper, b, c)
                && holds(poset, RelationKind::ExistsUpper, c, b)
        }
        Comparison::Equiv2 => {
            holds(poset, RelationKind::ExistsLower, b, c)
                && holds(poset, RelationKind::ExistsLower, c, b)
        }
        Comparison::Equal => b == c,
    }
}

fn check_operands(poset: &OmpPoset, b: &Subset, c: &Subset) -> Result<()> {
    poset.check_subset(b)?;
    poset.check_subset(c)?;
    b.require_non_empty("subset comparison")?;
    c.require_non_empty("subset comparison")
}

pub fn cmp_subsets(poset: &OmpPoset, kind: RelationKind, b: &Subset, c: &Subset) -> Result<bool> {
    check_operands(poset, b, c)?;
    Ok(holds(poset, kind, b, c))
}

/// Any [`Comparison`] between two subsets.
pub fn compare_subsets(poset: &OmpPoset, cmp: Comparison, b: &Subset, c: &Subset) -> Result<bool> {
    check_operands(poset, b, c)?;
    Ok(compare_sets(poset, cmp, b, c))
}

/// ≈₁ (`index` = 1) or ≈₂ (`index` = 2).
pub fn equiv(poset: &OmpPoset, index: u8, b: &Subset, c: &Subset) -> Result<bool> {
    let cmp = match index {
        1 => Comparison::Equiv1,
        2 => Comparison::Equiv2,
        _ => return Err(OmqlError::Type(format!("no equivalence ≈{index}"))),
    };
    compare_subsets(poset, cmp, b, c)
}

/// Pointwise lifting: x R y iff x(t) R y(t) at every time point.
pub fn cmp_setvaluations(
    poset: &OmpPoset,
    cmp: Comparison,
    x: &SetValuation,
    y: &SetValuation,
) -> Result<bool> {
    if x.len() != y.len() {
        return Err(OmqlError::TimeMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    for t in 0..x.len() {
        check_operands(poset, x.at(t), y.at(t))?;
    }
    Ok(setval_holds(poset, cmp, x, y))
}

pub(crate) fn setval_holds(
    poset: &OmpPoset,
    cmp: Comparison,
    x: &SetValuation,
    y: &SetValuation,
) -> bool {
    first_violation(poset, cmp, x, y).is_none()
}

/// The first time point at which the pointwise comparison fails.
pub(crate) fn first_violation(
    poset: &OmpPoset,
    cmp: Comparison,
    x: &SetValuation,
    y: &SetValuation,
) -> Option<usize> {
    (0..x.len()).find(|&t| !compare_sets(poset, cmp, x.at(t), y.at(t)))
}

/// Family comparison. Members are exact valuations ordered pointwise; the
/// quantifier pattern of `kind` is applied over the members:
/// ≤ is ∀p∀q, ≤₁ is ∀p∃q, ≤₂ is ∀q∃p and ⊑ is ∃p∃q, each with p ∈ B, q ∈ C
/// and p ≤ q.
pub fn cmp_families(
    poset: &OmpPoset,
    kind: RelationKind,
    b: &ValuationFamily,
    c: &ValuationFamily,
    cap: u128,
) -> Result<bool> {
    if b.time_len() != c.time_len() {
        return Err(OmqlError::TimeMismatch {
            expected: b.time_len(),
            found: c.time_len(),
        });
    }
    // ≤ between two products reduces to the factors, no enumeration needed.
    if let (RelationKind::All, ValuationFamily::Product(x), ValuationFamily::Product(y)) =
        (kind, b, c)
    {
        return Ok(setval_holds(
            poset,
            Comparison::Rel(RelationKind::All),
            x,
            y,
        ));
    }
    let bs = b.enumerate(cap)?;
    let cs = c.enumerate(cap)?;
    let le = |p: &Valuation, q: &Valuation| p.leq(poset, q);
    Ok(match kind {
        RelationKind::All => bs.iter().all(|p| cs.iter().all(|q| le(p, q))),
        RelationKind::ExistsUpper => bs.iter().all(|p| cs.iter().any(|q| le(p, q))),
        RelationKind::ExistsLower => cs.iter().all(|q| bs.iter().any(|p| le(p, q))),
        RelationKind::SomePair => bs.iter().any(|p| cs.iter().any(|q| le(p, q))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::subset::non_empty_subsets;
    use RelationKind::*;

    #[test]
    fn fig1_examples() {
        let p = fixtures::fig1();
        let s = |names: &[&str]| p.subset(names.iter().copied()).unwrap();
        assert!(cmp_subsets(&p, ExistsUpper, &s(&["a", "b"]), &s(&["f'", "i'"])).unwrap());
        assert!(cmp_subsets(&p, All, &s(&["c"]), &s(&["c"])).unwrap());
        assert!(cmp_subsets(&p, SomePair, &s(&["0", "f"]), &s(&["d"])).unwrap());

        assert!(equiv(&p, 1, &s(&["a", "b"]), &s(&["a", "b"])).unwrap());
        assert!(equiv(&p, 2, &s(&["f'", "i'", "1"]), &s(&["f'", "i'"])).unwrap());
        assert!(!equiv(&p, 1, &s(&["a"]), &s(&["b"])).unwrap());
        assert!(equiv(&p, 3, &s(&["a"]), &s(&["b"])).is_err());
    }

    #[test]
    fn empty_operands_rejected() {
        let p = fixtures::fig1();
        let a = p.subset(["a"]).unwrap();
        assert!(matches!(
            cmp_subsets(&p, All, &p.empty_set(), &a),
            Err(OmqlError::EmptyOperand(_))
        ));
    }

    #[test]
    fn example1_pointwise_rows() {
        let p = fixtures::fig1();
        let sv = |cols: &[&[&str]]| {
            SetValuation::new(
                cols.iter()
                    .map(|c| p.subset(c.iter().copied()).unwrap())
                    .collect(),
            )
            .unwrap()
        };
        let lhs = sv(&[&["b'"], &["f", "i"], &["f", "i"]]);
        let rhs = sv(&[&["b'"], &["i"], &["i"]]);
        let le2 = Comparison::Rel(ExistsLower);
        assert!(cmp_setvaluations(&p, le2, &lhs, &rhs).unwrap());
        assert!(!cmp_setvaluations(&p, le2, &rhs, &lhs).unwrap());

        let lhs = sv(&[&["f", "i"], &["a'"], &["a'"]]);
        let rhs = sv(&[&["a'", "b'"], &["a'", "b'"], &["a'"]]);
        let le1 = Comparison::Rel(ExistsUpper);
        assert!(cmp_setvaluations(&p, le1, &lhs, &rhs).unwrap());
        assert!(cmp_setvaluations(&p, le1, &lhs, &lhs).unwrap());

        let short = sv(&[&["a"]]);
        assert!(matches!(
            cmp_setvaluations(&p, le1, &lhs, &short),
            Err(OmqlError::TimeMismatch { .. })
        ));
    }

    #[test]
    fn singletons_collapse_to_element_order() {
        let p = fixtures::fig1();
        for a in p.elems() {
            for b in p.elems() {
                let (sa, sb) = (p.singleton(a), p.singleton(b));
                for k in RelationKind::ALL {
                    assert_eq!(holds(&p, k, &sa, &sb), p.leq(a, b));
                }
            }
        }
    }

    /// Exhaustive over every pair/triple of non-empty subsets of the
    /// 4-element Boolean algebra plus the 5-element diamond M3.
    #[test]
    fn quasiorder_and_equivalence_laws_exhaustive() {
        for p in [fixtures::boolean(2), fixtures::diamond3()] {
            let subsets: Vec<Subset> = non_empty_subsets(p.len()).collect();
            for b in &subsets {
                for k in [ExistsUpper, ExistsLower] {
                    assert!(holds(&p, k, b, b));
                }
                for c in &subsets {
                    if holds(&p, All, b, c) {
                        assert!(holds(&p, ExistsUpper, b, c) && holds(&p, ExistsLower, b, c));
                    }
                    for cmp in [Comparison::Equiv1, Comparison::Equiv2] {
                        assert_eq!(compare_sets(&p, cmp, b, c), compare_sets(&p, cmp, c, b));
                    }
                    for d in &subsets {
                        for k in [ExistsUpper, ExistsLower] {
                            if holds(&p, k, b, c) && holds(&p, k, c, d) {
                                assert!(holds(&p, k, b, d));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn family_comparisons() {
        let p = fixtures::fig1();
        let q = Valuation::from_names(&p, &["a", "b'"]).unwrap();
        let fam = ValuationFamily::singleton(q.clone());
        for k in RelationKind::ALL {
            assert!(cmp_families(&p, k, &fam, &fam, 100).unwrap());
        }
        let x = SetValuation::new(vec![
            p.subset(["0", "a"]).unwrap(),
            p.subset(["b'", "d"]).unwrap(),
        ])
        .unwrap();
        let phi = ValuationFamily::Product(x);
        assert!(cmp_families(&p, ExistsUpper, &phi, &fam, 100).unwrap());
        assert!(cmp_families(&p, All, &phi, &fam, 100).unwrap());
        assert!(!cmp_families(&p, All, &fam, &phi, 100).unwrap());
        assert!(cmp_families(&p, ExistsLower, &phi, &fam, 100).unwrap());
        assert!(cmp_families(&p, ExistsUpper, &fam, &phi, 100).unwrap());
    }
}
