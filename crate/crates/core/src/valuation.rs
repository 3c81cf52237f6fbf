//! Exact and inexact proposition histories, and families of histories.

use std::collections::BTreeSet;

use crate::error::{OmqlError, Result};
use crate::poset::OmpPoset;
use crate::subset::{Elem, Subset};

/// Default cap on explicit φ enumeration.
pub const DEFAULT_PHI_CAP: u128 = 1_000_000;

/// An exact history q ∈ A^T.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(Vec<Elem>);

impl Valuation {
    pub fn new(values: Vec<Elem>) -> Self {
        Valuation(values)
    }

    pub fn constant(m: usize, value: Elem) -> Self {
        Valuation(vec![value; m])
    }

    /// Parses one element name per time point.
    pub fn from_names(poset: &OmpPoset, names: &[&str]) -> Result<Self> {
        names
            .iter()
            .map(|n| poset.element(n))
            .collect::<Result<Vec<_>>>()
            .map(Valuation)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, t: usize) -> Elem {
        self.0[t]
    }

    pub fn values(&self) -> &[Elem] {
        &self.0
    }

    /// Identifies q with the set-valuation t ↦ {q(t)}.
    pub fn lift(&self, poset: &OmpPoset) -> SetValuation {
        SetValuation(self.0.iter().map(|&e| poset.singleton(e)).collect())
    }

    /// p ≤ q pointwise.
    pub fn leq(&self, poset: &OmpPoset, other: &Valuation) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| poset.leq(a, b))
    }

    /// p′(t) = p(t)′.
    pub fn prime(&self, poset: &OmpPoset) -> Valuation {
        Valuation(self.0.iter().map(|&e| poset.inv(e)).collect())
    }

    pub fn check(&self, poset: &OmpPoset, m: usize) -> Result<()> {
        if self.len() != m {
            return Err(OmqlError::TimeMismatch {
                expected: m,
                found: self.len(),
            });
        }
        self.0.iter().try_for_each(|&e| poset.check(e).map(|_| ()))
    }

    pub fn render(&self, poset: &OmpPoset) -> String {
        let parts: Vec<&str> = self.0.iter().map(|&e| poset.name(e)).collect();
        format!("({})", parts.join(", "))
    }
}

/// An inexact history x ∈ (2^A∖{∅})^T.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetValuation(Vec<Subset>);

impl SetValuation {
    /// Rejects empty values.
    pub fn new(values: Vec<Subset>) -> Result<Self> {
        if values.iter().any(Subset::is_empty) {
            return Err(OmqlError::EmptyOperand("set-valuation"));
        }
        Ok(SetValuation(values))
    }

    pub(crate) fn from_parts_unchecked(values: Vec<Subset>) -> Self {
        debug_assert!(values.iter().all(|s| !s.is_empty()));
        SetValuation(values)
    }

    pub fn constant(m: usize, value: Subset) -> Result<Self> {
        SetValuation::new(vec![value; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, t: usize) -> &Subset {
        &self.0[t]
    }

    pub fn values(&self) -> &[Subset] {
        &self.0
    }

    /// The valuation this set-valuation stands for when every value is a
    /// singleton.
    pub fn as_exact(&self) -> Option<Valuation> {
        self.0
            .iter()
            .map(Subset::as_singleton)
            .collect::<Option<Vec<_>>>()
            .map(Valuation)
    }

    /// x′(t) = { a′ | a ∈ x(t) }.
    pub fn prime(&self, poset: &OmpPoset) -> SetValuation {
        SetValuation(self.0.iter().map(|s| poset.inv_set(s)).collect())
    }

    /// |φ(x)| = ∏ |x(t)|, saturating.
    pub fn product_size(&self) -> u128 {
        self.0
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128))
    }

    pub fn check(&self, poset: &OmpPoset, m: usize) -> Result<()> {
        if self.len() != m {
            return Err(OmqlError::TimeMismatch {
                expected: m,
                found: self.len(),
            });
        }
        self.0.iter().try_for_each(|s| poset.check_subset(s))
    }

    pub fn render(&self, poset: &OmpPoset) -> Vec<String> {
        self.0.iter().map(|s| poset.fmt_subset(s)).collect()
    }
}

/// A non-empty set of valuations B ∈ 2^(A^T)∖{∅}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValuationFamily {
    /// Sorted, deduplicated, non-empty.
    Explicit(Vec<Valuation>),
    /// φ(x) = { q | q(t) ∈ x(t) for all t }, kept unexpanded.
    Product(SetValuation),
}

impl ValuationFamily {
    pub fn explicit(members: Vec<Valuation>) -> Result<Self> {
        let set: BTreeSet<Valuation> = members.into_iter().collect();
        if set.is_empty() {
            return Err(OmqlError::EmptyOperand("valuation family"));
        }
        let members: Vec<Valuation> = set.into_iter().collect();
        let m = members[0].len();
        if let Some(bad) = members.iter().find(|q| q.len() != m) {
            return Err(OmqlError::TimeMismatch {
                expected: m,
                found: bad.len(),
            });
        }
        Ok(ValuationFamily::Explicit(members))
    }

    pub fn singleton(q: Valuation) -> Self {
        ValuationFamily::Explicit(vec![q])
    }

    pub fn time_len(&self) -> usize {
        match self {
            ValuationFamily::Explicit(v) => v[0].len(),
            ValuationFamily::Product(x) => x.len(),
        }
    }

    /// Number of member valuations, saturating.
    pub fn size(&self) -> u128 {
        match self {
            ValuationFamily::Explicit(v) => v.len() as u128,
            ValuationFamily::Product(x) => x.product_size(),
        }
    }

    pub fn contains(&self, q: &Valuation) -> bool {
        match self {
            ValuationFamily::Explicit(v) => v.binary_search(q).is_ok(),
            ValuationFamily::Product(x) => {
                q.len() == x.len() && (0..q.len()).all(|t| x.at(t).contains(q.at(t)))
            }
        }
    }

    /// { q(t) | q ∈ B, t ∈ times }.
    pub fn values_at(&self, poset: &OmpPoset, times: &[usize]) -> Subset {
        let mut acc = poset.empty_set();
        match self {
            ValuationFamily::Explicit(v) => {
                for q in v {
                    for &t in times {
                        acc.insert(q.at(t));
                    }
                }
            }
            ValuationFamily::Product(x) => {
                for &t in times {
                    acc.union_with(x.at(t));
                }
            }
        }
        acc
    }

    /// Members as an explicit list, failing above `cap`.
    pub fn enumerate(&self, cap: u128) -> Result<Vec<Valuation>> {
        match self {
            ValuationFamily::Explicit(v) => Ok(v.clone()),
            ValuationFamily::Product(x) => phi_explicit(x, cap),
        }
    }

    /// The explicit form of this family, failing above `cap`.
    pub fn to_explicit(&self, cap: u128) -> Result<ValuationFamily> {
        Ok(ValuationFamily::Explicit(self.enumerate(cap)?))
    }

    /// B′ = { q′ | q ∈ B }.
    pub fn prime(&self, poset: &OmpPoset) -> ValuationFamily {
        match self {
            ValuationFamily::Explicit(v) => {
                let set: BTreeSet<Valuation> = v.iter().map(|q| q.prime(poset)).collect();
                ValuationFamily::Explicit(set.into_iter().collect())
            }
            ValuationFamily::Product(x) => ValuationFamily::Product(x.prime(poset)),
        }
    }

    /// Extensional equality; product forms are expanded up to `cap`.
    pub fn same_members(&self, other: &ValuationFamily, cap: u128) -> Result<bool> {
        if let (ValuationFamily::Product(a), ValuationFamily::Product(b)) = (self, other) {
            return Ok(a == b);
        }
        Ok(self.enumerate(cap)? == other.enumerate(cap)?)
    }
}

/// φ(x), intensional.
pub fn phi(x: &SetValuation) -> ValuationFamily {
    ValuationFamily::Product(x.clone())
}

/// φ(x) enumerated in lexicographic order of element indices.
pub fn phi_explicit(x: &SetValuation, cap: u128) -> Result<Vec<Valuation>> {
    let size = x.product_size();
    if size > cap {
        return Err(OmqlError::Capacity {
            size,
            cap,
            advice: "evaluate tense operators on the intensional φ image instead",
        });
    }
    let factors: Vec<Vec<Elem>> = x.values().iter().map(|s| s.iter().collect()).collect();
    let mut out = Vec::with_capacity(size as usize);
    let mut idx = vec![0usize; factors.len()];
    loop {
        out.push(Valuation(
            idx.iter().zip(&factors).map(|(&i, f)| f[i]).collect(),
        ));
        let mut k = factors.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < factors[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn phi_of_singletons_is_the_valuation() {
        let p = fixtures::fig1();
        let q = Valuation::from_names(&p, &["i'", "a", "1"]).unwrap();
        let fam = phi_explicit(&q.lift(&p), 10).unwrap();
        assert_eq!(fam, vec![q]);
    }

    #[test]
    fn phi_product_size() {
        let p = fixtures::fig1();
        let x = SetValuation::new(vec![
            p.subset(["a", "b"]).unwrap(),
            p.subset(["c"]).unwrap(),
        ])
        .unwrap();
        let fam = phi_explicit(&x, 10).unwrap();
        assert_eq!(fam.len(), 2);
        assert!(fam.iter().all(|q| phi(&x).contains(q)));
        assert!(matches!(
            phi_explicit(&x, 1),
            Err(OmqlError::Capacity {
                size: 2,
                cap: 1,
                ..
            })
        ));
    }

    #[test]
    fn prime_of_example_valuation() {
        let p = fixtures::fig1();
        let q = Valuation::from_names(&p, &["i'", "i'", "f'"]).unwrap();
        let expect = Valuation::from_names(&p, &["i", "i", "f"]).unwrap();
        assert_eq!(q.prime(&p), expect);
        assert_eq!(q.prime(&p).prime(&p), q);
    }

    #[test]
    fn empty_inputs_rejected() {
        let p = fixtures::fig1();
        assert!(SetValuation::new(vec![p.empty_set()]).is_err());
        assert!(ValuationFamily::explicit(vec![]).is_err());
    }
}
