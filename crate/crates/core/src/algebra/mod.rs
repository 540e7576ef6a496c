//! Exact integer and rational algebra: matrices, polynomials, factorization and
//! root-location counts. Nothing in here rounds.

mod factor;
mod matrix;
mod poly;
mod roots;

pub use factor::{expand_factors, factor_rational, is_irreducible, Factor, DEFAULT_DEGREE_BOUND};
pub use matrix::{hermite_normal_form, integer_kernel, IntegerMatrix};
pub(crate) use matrix::parse_matrix_lines;
pub use poly::{poly_gcd, square_free_decomposition, IntegerPolynomial, RationalPolynomial};
pub(crate) use poly::bigint_json;
pub use roots::{
    cyclotomic, disk_root_counts, real_root_count, root_of_unity_divisors, sturm_count, totient,
    unit_circle_root_count, DiskCounts,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("matrix must have at least one row")]
    EmptyMatrix,
    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("polynomial has zero constant term (eigenvalue 0)")]
    ZeroConstantTerm,
    #[error("interval is empty")]
    EmptyInterval,
    #[error("interval endpoint is a root; perturb the endpoint")]
    EndpointRoot,
    #[error("factorization of degree {degree} exceeds the configured bound {bound}")]
    UnsupportedDegree { degree: usize, bound: usize },
    #[error("coefficients too large for the factor search")]
    FactorSearchBudget,
    #[error("parse error: {0}")]
    Parse(String),
}

impl AlgebraError {
    /// Bounds and budgets, as opposed to malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            AlgebraError::UnsupportedDegree { .. } | AlgebraError::FactorSearchBudget
        )
    }
}
