//! Split matrix algebras `M_n(F_q)` for small `q`: subspaces, one-sided
//! ideals, annihilators, quotient algebras and the chain bijections, all
//! small enough to check exhaustively.

pub mod bijection;
pub mod enumerate;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod quotient;

pub use enumerate::{count_flags, enumerate_subspaces, gaussian_binomial, gaussian_multinomial, Budget, BUDGET_ENV};
pub use field::FiniteField;
pub use ideal::{IdealRep, Side};
pub use linalg::{Mat, Subspace};
pub use quotient::{QuotientAlgebra, QuotientMode};
