//! Tetravalent modal logic.
//!
//! Four-valued matrix semantics over `{0, n, b, 1}`, a signed n-sequent calculus generated
//! from the truth tables, its translation into two-sided sequents, a cut-free two-sided
//! prover with proof transformations, a Hilbert-style single-conclusion calculus with a
//! bounded cut-free search, and natural deduction with translations to and from sequents.

pub mod algebra;
mod bits;
pub mod check;
pub mod g;
mod layout;
pub mod matrix;
pub mod nd;
pub mod sequent;
pub mod sc;
pub mod signed;
pub mod syntax;
pub mod two;

pub use matrix::{countermodel, degree_consequence, eval, m4, matrix_consequence, LogicalMatrix, TruthValue, Valuation};
pub use sequent::Sequent;
pub use syntax::{parse, Formula, Style};
