//! Unique differences in subsets of 𝔽_p.
//!
//! * [`fp`]: sets, difference and sum tables, unique difference/sum detection.
//! * [`search`]: exhaustive computation of `f(p)` and `g(p)`.
//! * [`certificate`]: linear systems of sets without a unique difference,
//!   Smith Normal Form certificates and determinant bounds.
//! * [`cyclotomic`]: ℤ[ζ_m], the group ring ℤ[ζ_r][C_p] and Weil numbers.

pub mod certificate;
pub mod cyclotomic;
pub mod fp;
pub mod matrix;
pub mod search;

pub use fp::{
    diff_table, is_prime, sum_table, unique_difference, unique_sum, DiffTable, FpElem, FpError,
    GenSet, Prime, ResidueSet, SetLiteral, SymSet, Witness,
};
pub use matrix::IntMatrix;
pub use search::{compute_f, compute_g, ExtremalKind, ExtremalResult, SearchConfig, SearchError};
