//! Tense operators P, F, H, G over a time frame, their lifting to valuation
//! families, and `*`-composition through φ.

use std::fmt;
use std::str::FromStr;

use crate::error::{OmqlError, Result};
use crate::frame::TimeFrame;
use crate::order::RelationKind;
use crate::poset::OmpPoset;
use crate::subset::Subset;
use crate::valuation::{phi, phi_explicit, SetValuation, Valuation, ValuationFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TenseOp {
    /// "it has at some time been the case"
    P,
    /// "it will at some time be the case"
    F,
    /// "it has always been the case"
    H,
    /// "it will always be the case"
    G,
}

impl TenseOp {
    pub const ALL: [TenseOp; 4] = [TenseOp::P, TenseOp::F, TenseOp::H, TenseOp::G];

    /// Looks at { t | t R s } rather than { t | s R t }.
    pub fn is_past(self) -> bool {
        matches!(self, TenseOp::P | TenseOp::H)
    }

    /// Takes Max L of the fiber rather than Min U.
    pub fn is_always(self) -> bool {
        matches!(self, TenseOp::H | TenseOp::G)
    }

    /// 1 for H and G, 2 for P and F.
    pub fn index(self) -> u8 {
        if self.is_always() {
            1
        } else {
            2
        }
    }

    /// ≤₁ for H and G, ≤₂ for P and F.
    pub fn relation(self) -> RelationKind {
        RelationKind::indexed(self.index())
    }

    pub fn symbol(self) -> char {
        match self {
            TenseOp::P => 'P',
            TenseOp::F => 'F',
            TenseOp::H => 'H',
            TenseOp::G => 'G',
        }
    }

    fn fiber(self, frame: &TimeFrame, s: usize) -> Result<&[usize]> {
        let times = if self.is_past() {
            frame.past(s)
        } else {
            frame.future(s)
        };
        if times.is_empty() {
            return Err(OmqlError::EmptyFiber {
                op: self.symbol(),
                direction: if self.is_past() { "past" } else { "future" },
                time: frame.name(s).to_string(),
            });
        }
        Ok(times)
    }

    fn close(self, poset: &OmpPoset, values: &Subset) -> Subset {
        if self.is_always() {
            poset.max_lower(values)
        } else {
            poset.min_upper(values)
        }
    }
}

impl fmt::Display for TenseOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for TenseOp {
    type Err = OmqlError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(TenseOp::P),
            "F" | "f" => Ok(TenseOp::F),
            "H" | "h" => Ok(TenseOp::H),
            "G" | "g" => Ok(TenseOp::G),
            other => Err(OmqlError::Type(format!("unknown tense operator `{other}`"))),
        }
    }
}

/// X(q)(s) for every s: Min U (P, F) or Max L (H, G) of q over the fiber.
pub fn tense(
    poset: &OmpPoset,
    frame: &TimeFrame,
    op: TenseOp,
    q: &Valuation,
) -> Result<SetValuation> {
    q.check(poset, frame.len())?;
    let values = (0..frame.len())
        .map(|s| {
            let fiber = op.fiber(frame, s)?;
            let vals = Subset::from_elems(poset.len(), fiber.iter().map(|&t| q.at(t)));
            Ok(op.close(poset, &vals))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SetValuation::from_parts_unchecked(values))
}

/// X(B)(s) over the union of all member values on the fiber. A product
/// family φ(x) is never expanded: its fiber values are ⋃ x(t).
pub fn tense_family(
    poset: &OmpPoset,
    frame: &TimeFrame,
    op: TenseOp,
    family: &ValuationFamily,
) -> Result<SetValuation> {
    if family.time_len() != frame.len() {
        return Err(OmqlError::TimeMismatch {
            expected: frame.len(),
            found: family.time_len(),
        });
    }
    let values = (0..frame.len())
        .map(|s| {
            let fiber = op.fiber(frame, s)?;
            Ok(op.close(poset, &family.values_at(poset, fiber)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SetValuation::from_parts_unchecked(values))
}

/// X(φ(x)).
pub fn tense_phi(
    poset: &OmpPoset,
    frame: &TimeFrame,
    op: TenseOp,
    x: &SetValuation,
) -> Result<SetValuation> {
    x.check(poset, frame.len())?;
    tense_family(poset, frame, op, &phi(x))
}

/// (outer * inner)(q) = outer(φ(inner(q))).
pub fn star(
    poset: &OmpPoset,
    frame: &TimeFrame,
    outer: TenseOp,
    inner: TenseOp,
    q: &Valuation,
) -> Result<SetValuation> {
    let x = tense(poset, frame, inner, q)?;
    tense_family(poset, frame, outer, &phi(&x))
}

/// [`star`] recomputed through an explicit enumeration of φ; fails if the
/// two disagree or the enumeration exceeds `cap`.
pub fn star_cross_checked(
    poset: &OmpPoset,
    frame: &TimeFrame,
    outer: TenseOp,
    inner: TenseOp,
    q: &Valuation,
    cap: u128,
) -> Result<SetValuation> {
    let x = tense(poset, frame, inner, q)?;
    let fast = tense_family(poset, frame, outer, &phi(&x))?;
    let explicit = ValuationFamily::explicit(phi_explicit(&x, cap)?)?;
    let slow = tense_family(poset, frame, outer, &explicit)?;
    if fast != slow {
        return Err(OmqlError::Malformed(format!(
            "{outer}*{inner}: product-form evaluation disagrees with enumeration"
        )));
    }
    Ok(fast)
}
