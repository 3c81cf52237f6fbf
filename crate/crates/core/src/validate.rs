//! Axiom checker for orthomodular posets.

use std::fmt;

use crate::poset::OmpPoset;
use crate::subset::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Reflexive,
    Antisymmetric,
    Transitive,
    /// 0 ≤ x ≤ 1 for the declared bounds.
    Bounded,
    /// a″ = a
    Involution,
    /// a ≤ b ⇒ b′ ≤ a′
    Antitone,
    /// a ∨ a′ = 1 and a ∧ a′ = 0
    Complementation,
    /// x ≤ y′ ⇒ x ∨ y exists
    OrthogonalJoin,
    /// x ≤ y ⇒ y = x ∨ (y ∧ x′)
    OrthomodularLaw,
    /// x ≤ y ⇒ x = y ∧ (x ∨ y′)
    OrthomodularDual,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::Reflexive,
        Axiom::Antisymmetric,
        Axiom::Transitive,
        Axiom::Bounded,
        Axiom::Involution,
        Axiom::Antitone,
        Axiom::Complementation,
        Axiom::OrthogonalJoin,
        Axiom::OrthomodularLaw,
        Axiom::OrthomodularDual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexive => "reflexive",
            Axiom::Antisymmetric => "antisymmetric",
            Axiom::Transitive => "transitive",
            Axiom::Bounded => "bounded",
            Axiom::Involution => "involution",
            Axiom::Antitone => "antitone",
            Axiom::Complementation => "complementation",
            Axiom::OrthogonalJoin => "orthogonal-join",
            Axiom::OrthomodularLaw => "orthomodular-law",
            Axiom::OrthomodularDual => "orthomodular-dual",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    /// First offending element(s), in declaration order.
    pub witness: Vec<Elem>,
    pub violations: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, axiom: Axiom) -> Option<&AxiomFailure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }

    /// One line per axiom, `pass` or `FAIL` with witness names.
    pub fn lines(&self, poset: &OmpPoset) -> Vec<String> {
        Axiom::ALL
            .iter()
            .map(|&ax| match self.failed(ax) {
                None => format!("{ax}: pass"),
                Some(f) => {
                    let w: Vec<&str> = f.witness.iter().map(|&e| poset.name(e)).collect();
                    format!(
                        "{ax}: FAIL ({} violation(s), witness {})",
                        f.violations,
                        w.join(" ")
                    )
                }
            })
            .collect()
    }

    /// Short human-readable summary of the first failure.
    pub fn summary(&self, poset: &OmpPoset) -> String {
        match self.failures.first() {
            None => "all axioms hold".into(),
            Some(f) => {
                let w: Vec<&str> = f.witness.iter().map(|&e| poset.name(e)).collect();
                format!("{} fails at {}", f.axiom, w.join(", "))
            }
        }
    }
}

#[derive(Default)]
struct Collector {
    failures: Vec<AxiomFailure>,
}

impl Collector {
    fn record(&mut self, axiom: Axiom, witness: &[Elem]) {
        match self.failures.iter_mut().find(|f| f.axiom == axiom) {
            Some(f) => f.violations += 1,
            None => self.failures.push(AxiomFailure {
                axiom,
                witness: witness.to_vec(),
                violations: 1,
            }),
        }
    }
}

/// Checks every orthomodular-poset axiom and reports the first witness of
/// each failure.
pub fn validate_omp(poset: &OmpPoset) -> ValidationReport {
    let mut c = Collector::default();
    let elems: Vec<Elem> = poset.elems().collect();
    let (zero, one) = (poset.bottom(), poset.top());

    for &a in &elems {
        if !poset.leq(a, a) {
            c.record(Axiom::Reflexive, &[a]);
        }
        if !poset.leq(zero, a) || !poset.leq(a, one) {
            c.record(Axiom::Bounded, &[a]);
        }
        if poset.inv(poset.inv(a)) != a {
            c.record(Axiom::Involution, &[a]);
        }
        let ai = poset.inv(a);
        if poset.join(a, ai) != Some(one) || poset.meet(a, ai) != Some(zero) {
            c.record(Axiom::Complementation, &[a]);
        }
    }

    for &a in &elems {
        for &b in &elems {
            let le = poset.leq(a, b);
            if a != b && le && poset.leq(b, a) {
                c.record(Axiom::Antisymmetric, &[a, b]);
            }
            if le && !poset.above(b).is_subset(poset.above(a)) {
                let w = poset
                    .above(b)
                    .iter()
                    .find(|&x| !poset.leq(a, x))
                    .expect("non-subset has a witness");
                c.record(Axiom::Transitive, &[a, b, w]);
            }
            if le && !poset.leq(poset.inv(b), poset.inv(a)) {
                c.record(Axiom::Antitone, &[a, b]);
            }
            if poset.leq(a, poset.inv(b)) && poset.join(a, b).is_none() {
                c.record(Axiom::OrthogonalJoin, &[a, b]);
            }
            if le {
                let law = poset.meet(b, poset.inv(a)).and_then(|m| poset.join(a, m));
                if law != Some(b) {
                    c.record(Axiom::OrthomodularLaw, &[a, b]);
                }
                let dual = poset.join(a, poset.inv(b)).and_then(|j| poset.meet(b, j));
                if dual != Some(a) {
                    c.record(Axiom::OrthomodularDual, &[a, b]);
                }
            }
        }
    }

    let mut failures = c.failures;
    failures.sort_by_key(|f| f.axiom);
    ValidationReport { failures }
}
