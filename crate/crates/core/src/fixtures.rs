//! Built-in posets and valuations used by the demo, the tests and the CLI.

use crate::format::{parse_omp, parse_poset};
use crate::poset::OmpPoset;
use crate::valuation::Valuation;

/// The 20-element orthomodular poset that is not a lattice.
pub const FIG1_SRC: &str = include_str!("../fixtures/fig1.omp");
pub const BOOL1_SRC: &str = include_str!("../fixtures/bool1.omp");
pub const BOOL2_SRC: &str = include_str!("../fixtures/bool2.omp");
pub const BOOL3_SRC: &str = include_str!("../fixtures/bool3.omp");
pub const CHAIN3_SRC: &str = include_str!("../fixtures/chain3.tf");

pub fn fig1() -> OmpPoset {
    parse_omp(FIG1_SRC).expect("fig1 fixture is orthomodular")
}

pub fn bool3_file() -> OmpPoset {
    parse_omp(BOOL3_SRC).expect("bool3 fixture is orthomodular")
}

/// The Boolean algebra 2^n with element index equal to its bitmask, so that
/// meet is `&`, join is `|` and complement is `!` within `n` bits.
///
/// Names list the atoms in the element (`a`, `ab`, …), with `0` and `1` for
/// the bounds.
pub fn boolean(n: usize) -> OmpPoset {
    assert!((1..=6).contains(&n), "boolean fixture supports 1..=6 atoms");
    let size = 1usize << n;
    let full = size - 1;
    let names = (0..size)
        .map(|m| match m {
            0 => "0".to_string(),
            m if m == full => "1".to_string(),
            m => (0..n)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| (b'a' + i as u8) as char)
                .collect(),
        })
        .collect();
    let leq = (0..size)
        .map(|a| (0..size).map(|b| a & !b == 0).collect())
        .collect();
    let inv = (0..size).map(|m| full & !m).collect();
    OmpPoset::from_matrix(names, leq, inv).expect("boolean algebra is well-formed")
}

/// M3 with complements swapping two atoms and fixing the third. Bounded with
/// an antitone involution but not complemented; used for order-level tests.
pub fn diamond3() -> OmpPoset {
    parse_poset(
        "element 0\nelement a\nelement b\nelement c\nelement 1\n\
         cover 0 a\ncover 0 b\ncover 0 c\ncover a 1\ncover b 1\ncover c 1\n\
         inv 0 1\ninv a b\ninv c c\n",
    )
    .expect("diamond is well-formed")
}

/// p and q of the worked example on the reflexive chain of three points.
pub fn example1_valuations(poset: &OmpPoset) -> (Valuation, Valuation) {
    let p = Valuation::from_names(poset, &["i'", "i'", "f'"]).expect("fig1 names");
    let q = Valuation::from_names(poset, &["b'", "a'", "a'"]).expect("fig1 names");
    (p, q)
}

/// r = (a, b, b), the witness that P*P differs from P.
pub fn p_star_p_witness(poset: &OmpPoset) -> Valuation {
    Valuation::from_names(poset, &["a", "b", "b"]).expect("fig1 names")
}

/// Resolves a built-in poset by name: `fig1`, `bool1`..`bool6`.
pub fn builtin(name: &str) -> Option<OmpPoset> {
    match name {
        "fig1" => Some(fig1()),
        "bool1" => Some(parse_omp(BOOL1_SRC).expect("bool1 fixture")),
        "bool2" => Some(parse_omp(BOOL2_SRC).expect("bool2 fixture")),
        "bool3" => Some(bool3_file()),
        _ => name
            .strip_prefix("bool")
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|k| (1..=6).contains(k))
            .map(boolean),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_shape() {
        let p = fig1();
        assert_eq!(p.len(), 20);
        let atoms: Vec<_> = p
            .elems()
            .filter(|&x| x != p.bottom() && p.below(x).len() == 2)
            .collect();
        assert_eq!(atoms.len(), 9);
        for a in atoms {
            // each atom sits below exactly four coatoms and the top
            assert_eq!(p.above(a).len(), 6);
        }
    }

    #[test]
    fn boolean_names() {
        let b = boolean(3);
        assert_eq!(b.names(), ["0", "a", "b", "ab", "c", "ac", "bc", "1"]);
        assert_eq!(b.name(b.inv(b.element("a").unwrap())), "bc");
        assert!(builtin("bool5").is_some());
        assert!(builtin("bool9").is_none());
    }
}
