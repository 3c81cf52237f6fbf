//! Bitset subsets of a finite poset's carrier.
//!
//! A [`Subset`] knows the size of the universe it was built for, so mixing
//! subsets of differently sized posets is caught instead of silently
//! truncated. One machine word covers universes up to 64 elements; larger
//! carriers spill into further words.

use std::fmt;

use crate::error::{OmqlError, Result};

/// Index of an element inside the poset that issued it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    /// Raw index in declaration order.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn new(index: usize) -> Self {
        Elem(index as u32)
    }
}

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD).max(1)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    universe: u32,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Subset {
            universe: universe as u32,
            words: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Subset::empty(universe);
        for i in 0..universe {
            s.words[i / WORD] |= 1 << (i % WORD);
        }
        s
    }

    pub fn singleton(universe: usize, e: Elem) -> Self {
        let mut s = Subset::empty(universe);
        s.insert(e);
        s
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(universe: usize, elems: I) -> Self {
        let mut s = Subset::empty(universe);
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Size of the carrier this subset lives in.
    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    pub fn contains(&self, e: Elem) -> bool {
        let i = e.index();
        i < self.universe() && self.words[i / WORD] & (1 << (i % WORD)) != 0
    }

    /// Inserts `e`; panics if `e` lies outside the universe.
    pub fn insert(&mut self, e: Elem) {
        let i = e.index();
        assert!(
            i < self.universe(),
            "element {i} outside universe of {}",
            self.universe
        );
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, e: Elem) {
        let i = e.index();
        if i < self.universe() {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_singleton(&self) -> bool {
        self.len() == 1
    }

    /// The unique member of a singleton.
    pub fn as_singleton(&self) -> Option<Elem> {
        if self.is_singleton() {
            self.first()
        } else {
            None
        }
    }

    pub fn first(&self) -> Option<Elem> {
        self.iter().next()
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> SubsetIter<'_> {
        SubsetIter {
            words: &self.words,
            word: 0,
            current: self.words[0],
        }
    }

    pub fn union_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub(crate) fn check_universe(&self, expected: usize) -> Result<()> {
        if self.universe() == expected {
            Ok(())
        } else {
            Err(OmqlError::UniverseMismatch {
                expected,
                found: self.universe(),
            })
        }
    }

    pub(crate) fn require_non_empty(&self, what: &'static str) -> Result<()> {
        if self.is_empty() {
            Err(OmqlError::EmptyOperand(what))
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}

pub struct SubsetIter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for SubsetIter<'_> {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(Elem::new(self.word * WORD + bit));
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

/// Enumerates every non-empty subset of a universe of `n` elements, in
/// increasing binary order. Intended for small `n` only.
pub fn non_empty_subsets(n: usize) -> impl Iterator<Item = Subset> {
    assert!(n < 31, "powerset enumeration needs n < 31");
    (1u32..(1u32 << n)).map(move |mask| {
        Subset::from_elems(n, (0..n).filter(|i| mask & (1 << i) != 0).map(Elem::new))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiword_round_trip() {
        let n = 130;
        let members = [0usize, 63, 64, 127, 129];
        let s = Subset::from_elems(n, members.iter().map(|&i| Elem::new(i)));
        assert_eq!(s.len(), 5);
        let back: Vec<usize> = s.iter().map(Elem::index).collect();
        assert_eq!(back, members);
        assert_eq!(Subset::full(n).len(), n);
    }

    #[test]
    fn set_algebra() {
        let a = Subset::from_elems(8, [Elem(1), Elem(2)]);
        let b = Subset::from_elems(8, [Elem(2), Elem(3)]);
        assert_eq!(a.intersection(&b), Subset::singleton(8, Elem(2)));
        assert_eq!(a.union(&b).len(), 3);
        assert!(Subset::singleton(8, Elem(2)).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.intersection(&b).as_singleton(), Some(Elem(2)));
    }

    #[test]
    fn powerset_count() {
        assert_eq!(non_empty_subsets(4).count(), 15);
        assert!(non_empty_subsets(4).all(|s| !s.is_empty()));
    }

    #[test]
    #[should_panic]
    fn insert_out_of_range_panics() {
        Subset::empty(3).insert(Elem(3));
    }
}
