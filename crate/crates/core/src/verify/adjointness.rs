//! Residuation, divisibility and unit laws of the connectives.

use rayon::prelude::*;

use super::universe::Coverage;
use super::{LawReport, Witness};
use crate::connectives::{check_adjointness, check_divisibility, odot};
use crate::error::Result;
use crate::poset::OmpPoset;
use crate::subset::{non_empty_subsets, Subset};

/// Posets up to this size get all non-empty subset triples by default.
const SUBSET_TRIPLES_MAX: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjointnessUniverse {
    /// Subsets for posets with at most six elements, singletons otherwise.
    Auto,
    /// Singleton triples ({b}, {c}, {d}).
    Elements,
    /// All non-empty subset triples.
    Subsets,
}

/// B ⊙ C ⊑ D ⇔ B ⊑ C → D over every triple of the chosen universe.
pub fn check_adjointness_lemma(
    poset: &OmpPoset,
    universe: AdjointnessUniverse,
) -> Result<LawReport> {
    let subsets = match universe {
        AdjointnessUniverse::Subsets => true,
        AdjointnessUniverse::Elements => false,
        AdjointnessUniverse::Auto => poset.len() <= SUBSET_TRIPLES_MAX,
    };
    let sets: Vec<Subset> = if subsets {
        non_empty_subsets(poset.len()).collect()
    } else {
        poset.elems().map(|e| poset.singleton(e)).collect()
    };
    let k = sets.len();
    let kind = if subsets {
        "subset triples"
    } else {
        "element triples"
    };
    let report = LawReport::new(
        "B⊙C⊑D ⇔ B⊑C→D",
        format!("{} elements, {kind}", poset.len()),
        Coverage::Exhaustive {
            count: (k * k * k) as u64,
        },
    );
    let found = (0..k * k * k)
        .into_par_iter()
        .map(|i| {
            let (b, c, d) = (&sets[i / (k * k)], &sets[(i / k) % k], &sets[i % k]);
            let (l, r) = check_adjointness(poset, b, c, d)?;
            Ok((l != r).then(|| Witness {
                bindings: vec![
                    ("B".into(), poset.fmt_subset(b)),
                    ("C".into(), poset.fmt_subset(c)),
                    ("D".into(), poset.fmt_subset(d)),
                ],
                time: None,
                detail: format!("left side {l}, right side {r}"),
            }))
        })
        .find_map_first(|r: Result<Option<Witness>>| r.transpose());
    let report = report.checked((k * k * k) as u64);
    Ok(match found {
        None => report,
        Some(w) => report.failed(w?),
    })
}

/// (x → y) ⊙ x = Max L(x, y) for every pair of elements.
pub fn check_divisibility_sweep(poset: &OmpPoset) -> Result<LawReport> {
    let n = poset.len();
    let report = LawReport::new(
        "(x→y)⊙x = Max L(x,y)",
        format!("{n} elements"),
        Coverage::Exhaustive {
            count: (n * n) as u64,
        },
    )
    .checked((n * n) as u64);
    for x in poset.elems() {
        for y in poset.elems() {
            if !check_divisibility(poset, x, y)? {
                return Ok(report.failed(Witness {
                    bindings: vec![
                        ("x".into(), poset.name(x).into()),
                        ("y".into(), poset.name(y).into()),
                    ],
                    time: None,
                    detail: String::new(),
                }));
            }
        }
    }
    Ok(report)
}

/// x ⊙ x = {x} and x ⊙ 1 = 1 ⊙ x = {x} for every element.
pub fn check_units(poset: &OmpPoset) -> Result<LawReport> {
    let n = poset.len();
    let report = LawReport::new(
        "x⊙x = x⊙1 = 1⊙x = x",
        format!("{n} elements"),
        Coverage::Exhaustive { count: n as u64 },
    )
    .checked(n as u64);
    let one = poset.top();
    for x in poset.elems() {
        let want = poset.singleton(x);
        for (l, r) in [(x, x), (x, one), (one, x)] {
            let got = odot(poset, l, r)?;
            if got != want {
                return Ok(report.failed(Witness {
                    bindings: vec![("x".into(), poset.name(x).into())],
                    time: None,
                    detail: format!(
                        "{}⊙{} = {}",
                        poset.name(l),
                        poset.name(r),
                        poset.fmt_subset(&got)
                    ),
                }));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn boolean_subset_triples() {
        let r = check_adjointness_lemma(&fixtures::boolean(2), AdjointnessUniverse::Auto).unwrap();
        assert!(r.passed(), "{}", r.line());
        assert_eq!(r.checked, 15 * 15 * 15);
    }

    #[test]
    fn fig1_connective_laws() {
        let p = fixtures::fig1();
        let r = check_adjointness_lemma(&p, AdjointnessUniverse::Auto).unwrap();
        assert!(r.passed() && r.checked == 8000, "{}", r.line());
        assert!(check_divisibility_sweep(&p).unwrap().passed());
        assert!(check_units(&p).unwrap().passed());
    }
}
