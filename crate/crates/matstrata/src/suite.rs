//! The nine worked 3x3 examples with their known dimensions and strata,
//! plus dimension checks for differences of solution sets.

use crate::error::Result;
use crate::jordan::canonical_matrix;
use crate::matrix::{matrix_evaluate_exact, matrix_evaluate_f64, Matrix};
use crate::poly::Polynomial;
use crate::strata::{solution_set_report, subset_dimension};

/// One example: a polynomial, the size, and the published answers.
#[derive(Debug, Clone, Copy)]
pub struct ExampleCase {
    pub name: &'static str,
    pub polynomial: &'static str,
    pub m: usize,
    pub expected_dim: i64,
    pub expected_strata: usize,
}

/// The reference suite over 3x3 matrices.
pub const EXAMPLE_CASES: [ExampleCase; 9] = [
    ExampleCase { name: "S_1", polynomial: "x^2 + 1", m: 3, expected_dim: -1, expected_strata: 0 },
    ExampleCase { name: "S_2", polynomial: "x", m: 3, expected_dim: 0, expected_strata: 1 },
    ExampleCase { name: "S_3", polynomial: "x - 1", m: 3, expected_dim: 0, expected_strata: 1 },
    ExampleCase { name: "S_4", polynomial: "x^2", m: 3, expected_dim: 4, expected_strata: 2 },
    ExampleCase {
        name: "S_5",
        polynomial: "x^2 (x - 1)",
        m: 3,
        expected_dim: 6,
        expected_strata: 6,
    },
    ExampleCase { name: "S_6", polynomial: "x^2 - 1", m: 3, expected_dim: 4, expected_strata: 4 },
    ExampleCase { name: "S_7", polynomial: "x^3 - x", m: 3, expected_dim: 6, expected_strata: 10 },
    ExampleCase { name: "S_8", polynomial: "x^3 + x", m: 3, expected_dim: 6, expected_strata: 2 },
    ExampleCase { name: "S_9", polynomial: "x^3", m: 3, expected_dim: 6, expected_strata: 3 },
];

/// Computed results for one example, next to the published values.
#[derive(Debug, Clone)]
pub struct ExampleOutcome {
    pub name: &'static str,
    pub polynomial: String,
    pub m: usize,
    pub expected_dim: i64,
    pub actual_dim: i64,
    pub expected_strata: usize,
    pub actual_strata: usize,
}

impl ExampleOutcome {
    /// The suite gate: the computed dimension equals the published one.
    pub fn pass(&self) -> bool {
        self.actual_dim == self.expected_dim
    }

    /// One printable PASS/FAIL line.
    pub fn line(&self) -> String {
        format!(
            "{} {}  dim {} (expected {}), {} strata, f = {}, m = {}",
            self.name,
            if self.pass() { "PASS" } else { "FAIL" },
            self.actual_dim,
            self.expected_dim,
            self.actual_strata,
            self.polynomial,
            self.m,
        )
    }
}

/// Runs the whole suite and returns one outcome per example.
pub fn run_examples() -> Result<Vec<ExampleOutcome>> {
    EXAMPLE_CASES
        .iter()
        .map(|case| {
            let p = Polynomial::parse(case.polynomial)?;
            let report = solution_set_report(&p, case.m)?;
            Ok(ExampleOutcome {
                name: case.name,
                polynomial: case.polynomial.to_string(),
                m: case.m,
                expected_dim: case.expected_dim,
                actual_dim: report.dim_s,
                expected_strata: case.expected_strata,
                actual_strata: report.strata.len(),
            })
        })
        .collect()
}

/// A difference of solution sets: the strata of `minuend` that are not
/// contained in any of the `removed` polynomials' solution sets.
#[derive(Debug, Clone, Copy)]
pub struct DifferenceCase {
    pub label: &'static str,
    pub minuend: &'static str,
    pub removed: &'static [&'static str],
    pub expected_dim: i64,
}

/// Published difference dimensions over 3x3 matrices.
pub const DIFFERENCE_CASES: [DifferenceCase; 4] = [
    DifferenceCase {
        label: "S_5 \\ (S_3 u S_4)",
        minuend: "x^2 (x - 1)",
        removed: &["x - 1", "x^2"],
        expected_dim: 6,
    },
    DifferenceCase {
        label: "S_7 \\ (S_2 u S_6)",
        minuend: "x^3 - x",
        removed: &["x", "x^2 - 1"],
        expected_dim: 6,
    },
    DifferenceCase {
        label: "S_8 \\ (S_1 u S_2)",
        minuend: "x^3 + x",
        removed: &["x^2 + 1", "x"],
        expected_dim: 6,
    },
    DifferenceCase {
        label: "S_9 \\ (S_2 u S_4)",
        minuend: "x^3",
        removed: &["x", "x^2"],
        expected_dim: 6,
    },
];

/// Whether q(J) = O, exactly for rational J and within 1e-9 in max-norm
/// otherwise.
pub fn annihilates(q: &Polynomial, j: &Matrix) -> bool {
    match j {
        Matrix::Exact(jm) => matrix_evaluate_exact(q, jm).is_zero(),
        Matrix::Float(jf) => matrix_evaluate_f64(q, jf).abs().max() < 1e-9,
    }
}

/// Dimension of the difference: strata of the minuend survive when their
/// canonical matrix is annihilated by none of the removed polynomials, and
/// the dimension of the surviving selection is taken.
pub fn difference_dimension(case: &DifferenceCase, m: usize) -> Result<i64> {
    let p = Polynomial::parse(case.minuend)?;
    let report = solution_set_report(&p, m)?;
    let removed: Vec<Polynomial> =
        case.removed.iter().map(|text| Polynomial::parse(text)).collect::<Result<_>>()?;
    let keep: Vec<String> = report
        .strata
        .iter()
        .filter(|s| {
            let j = canonical_matrix(&s.form, &report.roots);
            !removed.iter().any(|q| annihilates(q, &j))
        })
        .map(|s| s.stratum_id.clone())
        .collect();
    subset_dimension(&report, &keep)
}
