//! Model-level verification of the operator laws.
//!
//! Every check walks a universe of valuations (exhaustive when small enough,
//! seeded sampling otherwise) and produces [`LawReport`]s. A failing report
//! always carries a witness.

mod adjointness;
mod dynamic;
pub mod expr;
mod laws;
mod theorem14;
pub mod universe;

use std::fmt;

pub use adjointness::{
    check_adjointness_lemma, check_divisibility_sweep, check_units, AdjointnessUniverse,
};
pub use dynamic::{check_dynamic_pair, DynamicPair};
pub use expr::{eval_inequality, is_proper, Bindings, Env, Expr, Value};
pub use laws::{check_composition_laws, composition_laws, CompositionLaw, Term};
pub use theorem14::{
    check_theorem14, theorem14_universe, Direction, Theorem14Report, Theorem14Universe,
};
pub use universe::{valuation_universe, Coverage, Source, ValuationUniverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The law is conditional and its hypothesis does not hold.
    Vacuous,
}

/// A concrete counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Rendered inputs, e.g. `("q", "(a, b', 1)")`.
    pub bindings: Vec<(String, String)>,
    pub time: Option<String>,
    pub detail: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self
            .bindings
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{}", b.join(" "))?;
        if let Some(t) = &self.time {
            write!(f, " at t={t}")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub universe: String,
    pub coverage: Coverage,
    pub status: Status,
    /// Instances evaluated before the verdict.
    pub checked: u64,
    pub witness: Option<Witness>,
}

impl LawReport {
    pub(crate) fn new(
        law: impl Into<String>,
        universe: impl Into<String>,
        coverage: Coverage,
    ) -> Self {
        LawReport {
            law: law.into(),
            universe: universe.into(),
            coverage,
            status: Status::Pass,
            checked: 0,
            witness: None,
        }
    }

    pub(crate) fn failed(mut self, witness: Witness) -> Self {
        self.status = Status::Fail;
        self.witness = Some(witness);
        self
    }

    pub(crate) fn checked(mut self, n: u64) -> Self {
        self.checked = n;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// True unless the law failed with its hypothesis met.
    pub fn acceptable(&self) -> bool {
        self.status != Status::Fail
    }

    /// "proved on fixture" for an exhaustive pass, "supported" for a sampled
    /// one.
    pub fn verdict(&self) -> &'static str {
        match (self.status, &self.coverage) {
            (Status::Pass, Coverage::Exhaustive { .. }) => "proved on fixture",
            (Status::Pass, Coverage::Instance) => "holds",
            (Status::Pass, Coverage::Sampled { .. }) => "supported",
            (Status::Vacuous, _) => "vacuous",
            (Status::Fail, _) => "FAIL",
        }
    }

    /// Single summary line.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{}: {} [{}; {}; {} checked]",
            self.law,
            self.verdict(),
            self.universe,
            self.coverage,
            self.checked
        );
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness: {w}"));
        }
        s
    }
}

pub(crate) fn frame_label(frame: &crate::TimeFrame) -> String {
    format!("|T|={}", frame.len())
}
