//! Rota-Baxter rewriting for pre-Lie algebras.

pub mod algebra_file;
pub mod cli;
pub mod envelope;
pub mod error;
pub mod expr;
pub mod gsb;
pub mod poly;
pub mod prelie;
pub mod reduce;
pub mod report;
pub mod rules;
pub mod sample;
pub mod suite;
pub mod word;

pub use error::{Error, Result};
pub use poly::{Coeff, Polynomial};
pub use prelie::{build_hat, HatElem, HatLie, PreLieAlgebra};
pub use rules::{FamilySet, RuleFamily, RuleMatch};
pub use word::{Atom, Letter, StarWord, Word};
