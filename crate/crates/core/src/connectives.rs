//! Inexact conjunction and implication on a finite orthomodular poset.
//!
//! `x ⊙ y = Min U(x, y′) ∧ y` and `x → y = x′ ∨ Max L(x, y)`, both
//! set-valued. Every meet/join taken here exists in an orthomodular poset, so
//! a partiality error out of these functions means the poset is broken.

use crate::error::{OmqlError, Result};
use crate::order::{holds, RelationKind};
use crate::poset::OmpPoset;
use crate::subset::{Elem, Subset};
use crate::valuation::{SetValuation, Valuation};

/// a ⊙ b
pub fn odot(poset: &OmpPoset, a: Elem, b: Elem) -> Result<Subset> {
    poset.check(a)?;
    poset.check(b)?;
    let pair = Subset::from_elems(poset.len(), [a, poset.inv(b)]);
    poset.pointwise_meet(b, &poset.min_upper(&pair))
}

/// a → b
pub fn imp(poset: &OmpPoset, a: Elem, b: Elem) -> Result<Subset> {
    poset.check(a)?;
    poset.check(b)?;
    let pair = Subset::from_elems(poset.len(), [a, b]);
    poset.pointwise_join(poset.inv(a), &poset.max_lower(&pair))
}

fn lift(
    poset: &OmpPoset,
    b: &Subset,
    c: &Subset,
    op: fn(&OmpPoset, Elem, Elem) -> Result<Subset>,
    what: &'static str,
) -> Result<Subset> {
    poset.check_subset(b)?;
    poset.check_subset(c)?;
    b.require_non_empty(what)?;
    c.require_non_empty(what)?;
    let mut out = poset.empty_set();
    for x in b.iter() {
        for y in c.iter() {
            out.union_with(&op(poset, x, y)?);
        }
    }
    Ok(out)
}

/// B ⊙ C = ⋃ { b ⊙ c | b ∈ B, c ∈ C }
pub fn odot_sets(poset: &OmpPoset, b: &Subset, c: &Subset) -> Result<Subset> {
    lift(poset, b, c, odot, "⊙")
}

/// B → C = ⋃ { b → c | b ∈ B, c ∈ C }
pub fn imp_sets(poset: &OmpPoset, b: &Subset, c: &Subset) -> Result<Subset> {
    lift(poset, b, c, imp, "→")
}

fn lift_time(
    poset: &OmpPoset,
    x: &SetValuation,
    y: &SetValuation,
    op: fn(&OmpPoset, &Subset, &Subset) -> Result<Subset>,
) -> Result<SetValuation> {
    if x.len() != y.len() {
        return Err(OmqlError::TimeMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let values = x
        .values()
        .iter()
        .zip(y.values())
        .map(|(a, b)| op(poset, a, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(SetValuation::from_parts_unchecked(values))
}

/// (x ⊙ y)(t) = x(t) ⊙ y(t)
pub fn odot_setval(poset: &OmpPoset, x: &SetValuation, y: &SetValuation) -> Result<SetValuation> {
    lift_time(poset, x, y, odot_sets)
}

/// (x → y)(t) = x(t) → y(t)
pub fn imp_setval(poset: &OmpPoset, x: &SetValuation, y: &SetValuation) -> Result<SetValuation> {
    lift_time(poset, x, y, imp_sets)
}

/// Both sides of the residuation law: `(B ⊙ C ⊑ D, B ⊑ C → D)`.
pub fn check_adjointness(
    poset: &OmpPoset,
    b: &Subset,
    c: &Subset,
    d: &Subset,
) -> Result<(bool, bool)> {
    poset.check_subset(d)?;
    d.require_non_empty("adjointness")?;
    let lhs = holds(poset, RelationKind::SomePair, &odot_sets(poset, b, c)?, d);
    let rhs = holds(poset, RelationKind::SomePair, b, &imp_sets(poset, c, d)?);
    Ok((lhs, rhs))
}

/// (x → y) ⊙ x = Max L(x, y), as sets.
pub fn check_divisibility(poset: &OmpPoset, x: Elem, y: Elem) -> Result<bool> {
    let lhs = odot_sets(poset, &imp(poset, x, y)?, &poset.singleton(x))?;
    let rhs = poset.max_lower(&Subset::from_elems(poset.len(), [x, y]));
    Ok(lhs == rhs)
}

fn check_times(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(OmqlError::TimeMismatch {
            expected: a,
            found: b,
        })
    }
}

/// `(p ≤ q → (p ⊙ q), (p → q) ⊙ p ≤ q)`, with ≤ the all-pairs relation.
pub fn lemma3_check(poset: &OmpPoset, p: &Valuation, q: &Valuation) -> Result<(bool, bool)> {
    check_times(p.len(), q.len())?;
    let (ps, qs) = (p.lift(poset), q.lift(poset));
    let first = imp_setval(poset, &qs, &odot_setval(poset, &ps, &qs)?)?;
    let second = odot_setval(poset, &imp_setval(poset, &ps, &qs)?, &ps)?;
    let all = RelationKind::All;
    let i = (0..p.len()).all(|t| holds(poset, all, ps.at(t), first.at(t)));
    let ii = (0..p.len()).all(|t| holds(poset, all, second.at(t), qs.at(t)));
    Ok((i, ii))
}

/// The four comparisons of the set-valued residuation bounds, plus whether
/// the closed forms `p → (x ⊙ p) = ⋃ Min U(q, p′)` and
/// `(p → x) ⊙ p = ⋃ Max L(p, q)` (unions over q ∈ x) agree with direct
/// evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma4Outcome {
    /// x ≤₁ p → (x ⊙ p)
    pub upper_le1: bool,
    /// x ≤₂ p → (x ⊙ p)
    pub upper_le2: bool,
    /// (p → x) ⊙ p ≤₁ x
    pub lower_le1: bool,
    /// (p → x) ⊙ p ≤₂ x
    pub lower_le2: bool,
    pub closed_forms_match: bool,
}

impl Lemma4Outcome {
    pub fn all(&self) -> bool {
        self.upper_le1
            && self.upper_le2
            && self.lower_le1
            && self.lower_le2
            && self.closed_forms_match
    }
}

pub fn lemma4_check(poset: &OmpPoset, x: &SetValuation, p: &Valuation) -> Result<Lemma4Outcome> {
    check_times(x.len(), p.len())?;
    let ps = p.lift(poset);
    let upper = imp_setval(poset, &ps, &odot_setval(poset, x, &ps)?)?;
    let lower = odot_setval(poset, &imp_setval(poset, &ps, x)?, &ps)?;

    let mut closed = true;
    for t in 0..x.len() {
        let pt = p.at(t);
        let mut up = poset.empty_set();
        let mut down = poset.empty_set();
        for q in x.at(t).iter() {
            up.union_with(&poset.min_upper(&Subset::from_elems(poset.len(), [q, poset.inv(pt)])));
            down.union_with(&poset.max_lower(&Subset::from_elems(poset.len(), [pt, q])));
        }
        closed &= &up == upper.at(t) && &down == lower.at(t);
    }

    let pointwise = |a: &SetValuation, b: &SetValuation, k| {
        (0..a.len()).all(|t| holds(poset, k, a.at(t), b.at(t)))
    };
    Ok(Lemma4Outcome {
        upper_le1: pointwise(x, &upper, RelationKind::ExistsUpper),
        upper_le2: pointwise(x, &upper, RelationKind::ExistsLower),
        lower_le1: pointwise(&lower, x, RelationKind::ExistsUpper),
        lower_le2: pointwise(&lower, x, RelationKind::ExistsLower),
        closed_forms_match: closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(p: &OmpPoset, s: &Subset) -> Vec<String> {
        p.subset_names(s)
    }

    #[test]
    fn fig1_golden_values() {
        let p = fixtures::fig1();
        let e = |n: &str| p.element(n).unwrap();
        assert_eq!(names(&p, &odot(&p, e("i'"), e("b'")).unwrap()), ["d"]);
        assert_eq!(names(&p, &imp(&p, e("i'"), e("b'")).unwrap()), ["b'"]);
        for y in p.elems() {
            assert_eq!(imp(&p, p.bottom(), y).unwrap(), p.singleton(p.top()));
        }

        let s = |n: &[&str]| p.subset(n.iter().copied()).unwrap();
        assert_eq!(
            names(&p, &odot_sets(&p, &s(&["i'"]), &s(&["f", "i"])).unwrap()),
            ["0", "f"]
        );
        assert_eq!(
            names(&p, &imp_sets(&p, &s(&["a", "b"]), &s(&["f", "i"])).unwrap()),
            ["a'", "b'"]
        );
        assert_eq!(
            names(&p, &odot_sets(&p, &s(&["a", "b"]), &s(&["a'"])).unwrap()),
            ["0", "e", "h"]
        );
    }

    #[test]
    fn units_and_idempotence() {
        let p = fixtures::fig1();
        for x in p.elems() {
            let sx = p.singleton(x);
            assert_eq!(odot(&p, x, x).unwrap(), sx);
            assert_eq!(odot(&p, x, p.top()).unwrap(), sx);
            assert_eq!(odot(&p, p.top(), x).unwrap(), sx);
            assert_eq!(odot_sets(&p, &sx, &p.singleton(p.top())).unwrap(), sx);
        }
    }

    #[test]
    fn example1_pointwise() {
        let p = fixtures::fig1();
        let pv = Valuation::from_names(&p, &["i'", "i'", "f'"]).unwrap();
        let qv = Valuation::from_names(&p, &["b'", "a'", "a'"]).unwrap();
        let conj = odot_setval(&p, &pv.lift(&p), &qv.lift(&p)).unwrap();
        assert_eq!(
            conj.as_exact(),
            Some(Valuation::from_names(&p, &["d", "e", "h"]).unwrap())
        );
        let impl_ = imp_setval(&p, &pv.lift(&p), &qv.lift(&p)).unwrap();
        assert_eq!(
            impl_.as_exact(),
            Some(Valuation::from_names(&p, &["b'", "a'", "a'"]).unwrap())
        );
        let one = Valuation::constant(3, p.top()).lift(&p);
        assert_eq!(odot_setval(&p, &pv.lift(&p), &one).unwrap(), pv.lift(&p));
        assert!(odot_setval(&p, &pv.lift(&p), &Valuation::constant(2, p.top()).lift(&p)).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let p = fixtures::fig1();
        let e = |n: &str| p.element(n).unwrap();
        let lhs = odot_sets(
            &p,
            &imp(&p, e("i'"), e("b'")).unwrap(),
            &p.singleton(e("i'")),
        )
        .unwrap();
        assert_eq!(names(&p, &lhs), ["d"]);
        assert!(check_divisibility(&p, e("i'"), e("b'")).unwrap());
        for x in p.elems() {
            assert!(check_divisibility(&p, x, x).unwrap());
        }
    }

    #[test]
    fn adjointness_examples() {
        let p = fixtures::fig1();
        let one = p.singleton(p.top());
        assert_eq!(
            check_adjointness(&p, &one, &one, &one).unwrap(),
            (true, true)
        );
        let e = |n: &str| p.singleton(p.element(n).unwrap());
        let (l, r) = check_adjointness(&p, &e("a"), &e("b'"), &e("0")).unwrap();
        assert_eq!(l, r);
        assert!(check_adjointness(&p, &p.empty_set(), &one, &one).is_err());
    }

    #[test]
    fn valuation_checks_on_worked_example() {
        let p = fixtures::fig1();
        let pv = Valuation::from_names(&p, &["i'", "i'", "f'"]).unwrap();
        let qv = Valuation::from_names(&p, &["b'", "a'", "a'"]).unwrap();
        assert_eq!(lemma3_check(&p, &pv, &qv).unwrap(), (true, true));
        let one = Valuation::constant(3, p.top());
        assert_eq!(lemma3_check(&p, &one, &one).unwrap(), (true, true));

        let x = SetValuation::constant(3, p.subset(["a", "b"]).unwrap()).unwrap();
        let ip = Valuation::constant(3, p.element("i'").unwrap());
        assert!(lemma4_check(&p, &x, &ip).unwrap().all());
        assert!(lemma4_check(&p, &qv.lift(&p), &pv).unwrap().all());
    }
}
