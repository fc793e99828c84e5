//! Structure and dimension of solution sets of polynomial matrix equations.
//!
//! For a monic real polynomial f(x) = x^n + a_{n-1} x^{n-1} + ... + a_0 and
//! a size m >= 2, the solution set S of
//!
//! ```text
//! X^n + a_{n-1} X^{n-1} + ... + a_1 X + a_0 I = O
//! ```
//!
//! over real m x m matrices is a union of similarity orbits of real Jordan
//! canonical forms: X solves the equation exactly when every Jordan block of
//! X at a real root r of f has size at most the multiplicity of r, and every
//! complex block at a root pair p +/- qi has size at most the pair's
//! multiplicity. Each admissible form J contributes one stratum, the orbit
//! {C^-1 J C}, whose dimension is m^2 minus the dimension of the centralizer
//! of J; the covering dimension of S is the largest stratum dimension, or -1
//! when S is empty (no real roots and m odd).
//!
//! The crate computes this stratification exactly: polynomial arithmetic and
//! root isolation run over arbitrary-precision rationals, centralizer
//! dimensions come from a closed formula over block partitions, and an
//! independent oracle (the rank of the commutator map A -> JA - AJ)
//! cross-checks every orbit dimension. A sampling layer produces explicit
//! solutions by exact or floating-point conjugation, verifies them against
//! the equation, and classifies arbitrary solutions back into their strata
//! through rank profiles of (X - rI)^k.
//!
//! # Example
//!
//! ```
//! use matstrata::{parse_polynomial, solution_set_report};
//!
//! let p = parse_polynomial("x^2 (x - 1)").unwrap();
//! let report = solution_set_report(&p, 3).unwrap();
//! assert_eq!(report.dim_s, 6);
//! assert_eq!(report.strata.len(), 6);
//! ```

pub mod cli;
pub mod error;
pub mod jordan;
pub mod matrix;
pub mod orbit;
pub mod poly;
pub mod rat;
pub mod roots;
pub mod strata;
pub mod suite;

pub use error::{Error, Result};
pub use jordan::{canonical_matrix, enumerate_annihilating_forms, JordanBlock, RealJordanForm};
pub use matrix::{matrix_evaluate, matrix_from_json, matrix_to_json, Matrix, RatMatrix};
pub use orbit::{
    ad_rank, classify_solution, empirical_dimension, sample_solutions, verify_solution,
    ClassificationResult, RankMode, SampleConfig, SampleMode, Verification,
};
pub use poly::Polynomial;
pub use roots::{root_analysis, ComplexPair, RealRoot, RealRootValue, RootData};
pub use strata::{
    centralizer_dimension, orbit_dimension, report_to_json, solution_set_report, subset_dimension,
    SolutionSetReport, Stratum,
};

/// Parses a monic polynomial from an expression such as `"x^3 - x"` or an
/// ascending coefficient list such as `"0,-1,0,1"`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    Polynomial::parse(text)
}
