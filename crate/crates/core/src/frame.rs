//! Finite time frames (T, R).

use std::collections::HashMap;

use crate::error::{OmqlError, Result};

/// A finite set of named time points with a preference relation; `s R t`
/// reads "s is before t".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeFrame {
    names: Vec<String>,
    rel: Vec<Vec<bool>>,
    /// past[s] = { t | t R s }
    past: Vec<Vec<usize>>,
    /// future[s] = { t | s R t }
    future: Vec<Vec<usize>>,
}

impl TimeFrame {
    pub fn new(names: Vec<String>, rel: Vec<Vec<bool>>) -> Result<Self> {
        let m = names.len();
        if m == 0 {
            return Err(OmqlError::Malformed("time set is empty".into()));
        }
        if rel.len() != m || rel.iter().any(|r| r.len() != m) {
            return Err(OmqlError::Malformed(format!(
                "relation matrix is not {m}x{m}"
            )));
        }
        let mut seen = HashMap::new();
        for name in &names {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(OmqlError::Malformed(format!(
                    "duplicate time point `{name}`"
                )));
            }
        }
        let past = (0..m)
            .map(|s| (0..m).filter(|&t| rel[t][s]).collect())
            .collect();
        let future = (0..m)
            .map(|s| (0..m).filter(|&t| rel[s][t]).collect())
            .collect();
        Ok(TimeFrame {
            names,
            rel,
            past,
            future,
        })
    }

    /// Builds a frame from `(before, after)` index pairs.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let m = names.len();
        let mut rel = vec![vec![false; m]; m];
        for &(s, t) in pairs {
            if s >= m || t >= m {
                return Err(OmqlError::Malformed(format!(
                    "relation pair ({s}, {t}) outside a time set of {m} points"
                )));
            }
            rel[s][t] = true;
        }
        TimeFrame::new(names, rel)
    }

    /// The reflexive chain 1 ≤ 2 ≤ … ≤ m.
    pub fn chain_le(m: usize) -> Self {
        let names = (1..=m).map(|i| i.to_string()).collect();
        let rel = (0..m).map(|s| (0..m).map(|t| s <= t).collect()).collect();
        TimeFrame::new(names, rel).expect("chain frame is well-formed")
    }

    /// The strict chain 1 < 2 < … < m (not serial).
    pub fn chain_lt(m: usize) -> Self {
        let names = (1..=m).map(|i| i.to_string()).collect();
        let rel = (0..m).map(|s| (0..m).map(|t| s < t).collect()).collect();
        TimeFrame::new(names, rel).expect("chain frame is well-formed")
    }

    /// T × T.
    pub fn total(m: usize) -> Self {
        let names = (1..=m).map(|i| i.to_string()).collect();
        TimeFrame::new(names, vec![vec![true; m]; m]).expect("total frame is well-formed")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn time(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| OmqlError::UnknownTime(name.to_string()))
    }

    pub fn related(&self, s: usize, t: usize) -> bool {
        self.rel[s][t]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.rel
    }

    /// { t | t R s }
    pub fn past(&self, s: usize) -> &[usize] {
        &self.past[s]
    }

    /// { t | s R t }
    pub fn future(&self, s: usize) -> &[usize] {
        &self.future[s]
    }

    /// Every point has an R-predecessor and an R-successor.
    pub fn is_serial(&self) -> bool {
        (0..self.len()).all(|s| !self.past[s].is_empty() && !self.future[s].is_empty())
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|s| self.rel[s][s])
    }

    pub fn is_transitive(&self) -> bool {
        let m = self.len();
        (0..m).all(|r| {
            (0..m).all(|s| !self.rel[r][s] || (0..m).all(|t| !self.rel[s][t] || self.rel[r][t]))
        })
    }

    pub fn is_quasiorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    /// Same time points, different relation.
    pub fn with_relation(&self, rel: Vec<Vec<bool>>) -> Result<Self> {
        TimeFrame::new(self.names.clone(), rel)
    }

    /// R ⊆ other.R, pointwise on the matrices.
    pub fn relation_subset_of(&self, other: &[Vec<bool>]) -> bool {
        self.rel
            .iter()
            .zip(other)
            .all(|(a, b)| a.iter().zip(b).all(|(&x, &y)| !x || y))
    }

    pub(crate) fn require_serial(&self) -> Result<()> {
        if self.is_serial() {
            Ok(())
        } else {
            Err(OmqlError::Precondition("time frame is not serial".into()))
        }
    }

    pub(crate) fn require_reflexive(&self) -> Result<()> {
        if self.is_reflexive() {
            Ok(())
        } else {
            Err(OmqlError::Precondition(
                "time frame is not reflexive".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_properties() {
        let le = TimeFrame::chain_le(3);
        assert!(le.is_serial() && le.is_reflexive() && le.is_transitive() && le.is_quasiorder());
        let lt = TimeFrame::chain_lt(3);
        assert!(!lt.is_serial());
        assert!(!lt.is_reflexive());
        assert!(lt.is_transitive());
        assert_eq!(le.past(2), &[0, 1, 2]);
        assert_eq!(le.future(0), &[0, 1, 2]);
    }

    #[test]
    fn tiny_frames() {
        let empty = TimeFrame::new(vec!["s".into()], vec![vec![false]]).unwrap();
        assert!(!empty.is_serial());
        let one = TimeFrame::from_pairs(vec!["1".into(), "2".into()], &[(0, 1)]).unwrap();
        assert!(!one.is_reflexive());
        assert!(TimeFrame::new(vec![], vec![]).is_err());
        assert!(TimeFrame::from_pairs(vec!["1".into()], &[(0, 3)]).is_err());
    }

    #[test]
    fn reflexive_implies_serial_on_all_two_point_frames() {
        for mask in 0u32..16 {
            let rel = (0..2)
                .map(|s| (0..2).map(|t| mask & (1 << (2 * s + t)) != 0).collect())
                .collect();
            let f = TimeFrame::new(vec!["1".into(), "2".into()], rel).unwrap();
            assert!(!f.is_reflexive() || f.is_serial());
        }
    }
}
