//! Tense logic on finite orthomodular posets.
//!
//! The crate evaluates the inexact connectives ⊙ and → of a finite
//! orthomodular poset, the tense operators P, F, H, G over a finite time
//! frame, their composition through the transformation φ, and checks the
//! laws these operators satisfy. It can also rebuild a time-preference
//! relation from the operators a frame induces.
//!
//! ```
//! use omql_core::{fixtures, tense::{tense, TenseOp}, TimeFrame};
//!
//! let a = fixtures::fig1();
//! let (p, _) = fixtures::example1_valuations(&a);
//! let h = tense(&a, &TimeFrame::chain_le(3), TenseOp::H, &p).unwrap();
//! assert_eq!(h.render(&a), ["i'", "i'", "{a,b}"]);
//! ```

pub mod connectives;
pub mod demo;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod frame;
pub mod order;
pub mod poset;
pub mod reconstruct;
pub mod subset;
pub mod tense;
pub mod validate;
pub mod valuation;
pub mod verify;

pub use error::{OmqlError, Result};
pub use frame::TimeFrame;
pub use order::{Comparison, RelationKind};
pub use poset::{OmpPoset, PosetBuilder};
pub use subset::{Elem, Subset};
pub use tense::TenseOp;
pub use validate::{validate_omp, ValidationReport};
pub use valuation::{phi, SetValuation, Valuation, ValuationFamily};
