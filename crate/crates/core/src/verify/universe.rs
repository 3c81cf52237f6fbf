//! Universes of valuations and set-valuations to quantify over.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{OmqlError, Result};
use crate::poset::OmpPoset;
use crate::subset::{Elem, Subset};
use crate::valuation::{SetValuation, Valuation};

/// Default cap on the number of valuations enumerated exhaustively.
pub const DEFAULT_VALUATION_CAP: u128 = 100_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLE: usize = 1000;

/// How to choose the valuations a law is checked on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Exhaustive under the cap, otherwise [`DEFAULT_SAMPLE`] samples with
    /// [`DEFAULT_SEED`].
    Auto,
    Exhaustive,
    Sampled {
        count: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive {
        count: u64,
    },
    Sampled {
        count: u64,
        seed: u64,
    },
    /// A single explicit instance.
    Instance,
}

impl Coverage {
    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Coverage::Exhaustive { .. })
    }
}

impl fmt::Display for Coverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coverage::Exhaustive { count } => write!(f, "exhaustive over {count}"),
            Coverage::Sampled { count, seed } => write!(f, "sampled {count}, seed {seed}"),
            Coverage::Instance => write!(f, "instance"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ValuationUniverse {
    pub valuations: Vec<Valuation>,
    pub coverage: Coverage,
}

/// n^m, saturating.
pub fn count_valuations(n: usize, m: usize) -> u128 {
    (0..m).fold(1u128, |acc, _| acc.saturating_mul(n as u128))
}

/// All of A^T in lexicographic order, time point 0 most significant.
pub fn all_valuations(poset: &OmpPoset, m: usize) -> Vec<Valuation> {
    let n = poset.len();
    let total = count_valuations(n, m) as usize;
    (0..total)
        .map(|mut k| {
            let mut vals = vec![Elem::new(0); m];
            for t in (0..m).rev() {
                vals[t] = Elem::new(k % n);
                k /= n;
            }
            Valuation::new(vals)
        })
        .collect()
}

/// Position of `q` in [`all_valuations`].
pub(crate) fn valuation_index(n: usize, q: &Valuation) -> usize {
    q.values().iter().fold(0, |acc, e| acc * n + e.index())
}

pub fn random_valuation<R: Rng>(poset: &OmpPoset, m: usize, rng: &mut R) -> Valuation {
    Valuation::new(
        (0..m)
            .map(|_| Elem::new(rng.gen_range(0..poset.len())))
            .collect(),
    )
}

/// A set-valuation whose values have between 1 and `max_factor` elements.
pub fn random_setvaluation<R: Rng>(
    poset: &OmpPoset,
    m: usize,
    max_factor: usize,
    rng: &mut R,
) -> SetValuation {
    let values = (0..m)
        .map(|_| {
            let k = rng.gen_range(1..=max_factor.min(poset.len()));
            let mut s = poset.empty_set();
            while s.len() < k {
                s.insert(Elem::new(rng.gen_range(0..poset.len())));
            }
            s
        })
        .collect();
    SetValuation::new(values).expect("values are non-empty")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn valuation_universe(
    poset: &OmpPoset,
    m: usize,
    source: Source,
    cap: u128,
) -> Result<ValuationUniverse> {
    let total = count_valuations(poset.len(), m);
    let sampled = |count: usize, seed: u64| {
        let mut r = rng(seed);
        ValuationUniverse {
            valuations: (0..count)
                .map(|_| random_valuation(poset, m, &mut r))
                .collect(),
            coverage: Coverage::Sampled {
                count: count as u64,
                seed,
            },
        }
    };
    match source {
        Source::Exhaustive if total > cap => Err(OmqlError::Capacity {
            size: total,
            cap,
            advice: "use sampling instead",
        }),
        Source::Exhaustive => Ok(exhaustive(poset, m)),
        Source::Auto if total <= cap => Ok(exhaustive(poset, m)),
        Source::Auto => Ok(sampled(DEFAULT_SAMPLE, DEFAULT_SEED)),
        Source::Sampled { count, seed } => Ok(sampled(count, seed)),
    }
}

fn exhaustive(poset: &OmpPoset, m: usize) -> ValuationUniverse {
    let valuations = all_valuations(poset, m);
    ValuationUniverse {
        coverage: Coverage::Exhaustive {
            count: valuations.len() as u64,
        },
        valuations,
    }
}

/// Every valuation p with p ≤ q pointwise.
pub(crate) fn valuations_below(poset: &OmpPoset, q: &Valuation) -> Vec<Valuation> {
    let factors: Vec<Vec<Elem>> = q
        .values()
        .iter()
        .map(|&e| poset.below(e).iter().collect())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; factors.len()];
    loop {
        out.push(Valuation::new(
            idx.iter().zip(&factors).map(|(&i, f)| f[i]).collect(),
        ));
        let mut k = factors.len();
        loop {
            if k == 0 {
                return out;
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

/// A random p ≤ q.
pub(crate) fn random_below<R: Rng>(poset: &OmpPoset, q: &Valuation, rng: &mut R) -> Valuation {
    Valuation::new(
        q.values()
            .iter()
            .map(|&e| {
                let below: Vec<Elem> = poset.below(e).iter().collect();
                below[rng.gen_range(0..below.len())]
            })
            .collect(),
    )
}

/// Every non-empty subset as a set-valuation factor, for tiny posets.
pub(crate) fn all_setvaluations(poset: &OmpPoset, m: usize) -> Vec<SetValuation> {
    let factors: Vec<Subset> = crate::subset::non_empty_subsets(poset.len()).collect();
    let k = factors.len();
    let total = count_valuations(k, m) as usize;
    (0..total)
        .map(|mut idx| {
            let mut vals = vec![factors[0].clone(); m];
            for t in (0..m).rev() {
                vals[t] = factors[idx % k].clone();
                idx /= k;
            }
            SetValuation::new(vals).expect("non-empty factors")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn exhaustive_order_and_index() {
        let p = fixtures::boolean(2);
        let all = all_valuations(&p, 3);
        assert_eq!(all.len(), 64);
        for (i, q) in all.iter().enumerate() {
            assert_eq!(valuation_index(4, q), i);
        }
    }

    #[test]
    fn auto_switches_to_sampling() {
        let p = fixtures::fig1();
        let u = valuation_universe(&p, 3, Source::Auto, DEFAULT_VALUATION_CAP).unwrap();
        assert_eq!(u.coverage, Coverage::Exhaustive { count: 8000 });
        let u = valuation_universe(&p, 5, Source::Auto, DEFAULT_VALUATION_CAP).unwrap();
        assert!(matches!(
            u.coverage,
            Coverage::Sampled {
                seed: DEFAULT_SEED,
                ..
            }
        ));
        assert!(valuation_universe(&p, 5, Source::Exhaustive, DEFAULT_VALUATION_CAP).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = fixtures::fig1();
        let src = Source::Sampled { count: 50, seed: 7 };
        let a = valuation_universe(&p, 4, src, 10).unwrap();
        let b = valuation_universe(&p, 4, src, 10).unwrap();
        assert_eq!(a.valuations, b.valuations);
    }

    #[test]
    fn below_enumeration() {
        let p = fixtures::fig1();
        let q = Valuation::from_names(&p, &["a'", "0"]).unwrap();
        let below = valuations_below(&p, &q);
        assert_eq!(below.len(), 6);
        assert!(below.iter().all(|x| x.leq(&p, &q)));
    }
}
