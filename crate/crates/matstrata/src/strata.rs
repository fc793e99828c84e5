//! Stratification of the solution set: centralizer and orbit dimensions per
//! canonical form, and the full report with the covering dimension of S.
//!
//! The centralizer dimension of a form is the classical commutant formula:
//! the sum over each real root of sum_{i,j} min(lambda_i, lambda_j) over its
//! block sizes, plus twice the same sum per complex pair. The orbit through
//! the form has dimension m^2 minus that, and dim S is the maximum over the
//! strata (-1 when S is empty). Tests gate the formula against the exact
//! commutator-rank oracle, not against any table.

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::jordan::{canonical_matrix, enumerate_annihilating_forms, RealJordanForm};
use crate::matrix::matrix_to_json;
use crate::poly::Polynomial;
use crate::roots::{root_analysis, RootData};

/// One orbit stratum S(J): the form, its dimensions, and its stable ID.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub form: RealJordanForm,
    pub centralizer_dim: usize,
    pub orbit_dim: usize,
    pub stratum_id: String,
}

/// The complete stratification of the solution set for one (polynomial, m).
#[derive(Debug, Clone)]
pub struct SolutionSetReport {
    pub polynomial: Polynomial,
    pub m: usize,
    pub roots: RootData,
    pub strata: Vec<Stratum>,
    pub dim_s: i64,
    pub empty: bool,
}

impl SolutionSetReport {
    pub fn stratum(&self, id: &str) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.stratum_id == id)
    }
}

fn min_sum(sizes: &[usize]) -> usize {
    let mut total = 0;
    for a in sizes {
        for b in sizes {
            total += a.min(b);
        }
    }
    total
}

/// Dimension of the centralizer group G_J of the form's canonical matrix.
pub fn centralizer_dimension(form: &RealJordanForm) -> usize {
    let real: usize = form.real_segments().iter().map(|(_, sizes)| min_sum(sizes)).sum();
    let complex: usize = form.complex_segments().iter().map(|(_, sizes)| min_sum(sizes)).sum();
    real + 2 * complex
}

/// Dimension of the similarity orbit S(J) inside m x m matrices.
pub fn orbit_dimension(form: &RealJordanForm, m: usize) -> usize {
    assert_eq!(form.m(), m, "form size must match m");
    m * m - centralizer_dimension(form)
}

/// Computes the full stratification and dim S for the equation polynomial.
pub fn solution_set_report(p: &Polynomial, m: usize) -> Result<SolutionSetReport> {
    if m < 2 {
        return Err(Error::MatrixTooSmall(m));
    }
    let roots = root_analysis(p)?;
    let forms = enumerate_annihilating_forms(&roots, m);
    let strata: Vec<Stratum> = forms
        .into_iter()
        .map(|form| {
            let centralizer_dim = centralizer_dimension(&form);
            let orbit_dim = m * m - centralizer_dim;
            let stratum_id = form.key();
            Stratum { form, centralizer_dim, orbit_dim, stratum_id }
        })
        .collect();
    let empty = strata.is_empty();
    let dim_s = strata.iter().map(|s| s.orbit_dim as i64).max().unwrap_or(-1);
    Ok(SolutionSetReport { polynomial: p.clone(), m, roots, strata, dim_s, empty })
}

/// Covering dimension of the union of the selected strata: max orbit
/// dimension, or -1 for the empty selection.
pub fn subset_dimension(report: &SolutionSetReport, stratum_ids: &[String]) -> Result<i64> {
    let mut dim = -1i64;
    for id in stratum_ids {
        let stratum = report.stratum(id).ok_or_else(|| Error::UnknownStratum(id.clone()))?;
        dim = dim.max(stratum.orbit_dim as i64);
    }
    Ok(dim)
}

// ---------------------------------------------------------------------------
// JSON report. Serialization goes through dedicated structs so field order
// follows the declared schema and output is byte-stable.
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ReportJson {
    polynomial: String,
    m: usize,
    empty: bool,
    dim: i64,
    strata: Vec<StratumJson>,
}

#[derive(Serialize)]
struct StratumJson {
    id: String,
    blocks: Vec<BlockJson>,
    centralizer_dim: usize,
    orbit_dim: usize,
    representative: Value,
}

#[derive(Serialize)]
struct BlockJson {
    root: String,
    size: usize,
    value: String,
}

fn block_rows(form: &RealJordanForm, roots: &RootData) -> Vec<BlockJson> {
    form.blocks()
        .iter()
        .map(|block| match *block {
            crate::jordan::JordanBlock::Real { root_id, size } => BlockJson {
                root: format!("r{root_id}"),
                size,
                value: roots.real_roots()[root_id].value.to_string(),
            },
            crate::jordan::JordanBlock::Complex { pair_id, size } => BlockJson {
                root: format!("c{pair_id}"),
                size,
                value: roots.complex_pairs()[pair_id].to_string(),
            },
        })
        .collect()
}

fn report_struct(report: &SolutionSetReport) -> ReportJson {
    ReportJson {
        polynomial: report.polynomial.to_string(),
        m: report.m,
        empty: report.empty,
        dim: report.dim_s,
        strata: report
            .strata
            .iter()
            .map(|s| StratumJson {
                id: s.stratum_id.clone(),
                blocks: block_rows(&s.form, &report.roots),
                centralizer_dim: s.centralizer_dim,
                orbit_dim: s.orbit_dim,
                representative: matrix_to_json(&canonical_matrix(&s.form, &report.roots)),
            })
            .collect(),
    }
}

/// Pretty-printed JSON report with the stable schema.
pub fn report_to_json(report: &SolutionSetReport) -> String {
    serde_json::to_string_pretty(&report_struct(report)).expect("report serializes")
}
