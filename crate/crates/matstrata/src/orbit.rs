//! Orbit laboratory: explicit solutions by conjugation, verification against
//! the equation, numeric/exact classification into strata, and the
//! commutator-map rank oracle for orbit dimensions.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jordan::{canonical_matrix, RealJordanForm};
use crate::matrix::{float_rank, matrix_evaluate_exact, matrix_evaluate_f64, Matrix, RatMatrix};
use crate::poly::Polynomial;
use crate::rat::{big, ratio, rational_to_f64};
use crate::roots::RootData;
use crate::strata::SolutionSetReport;

/// Relative singular-value cutoff used for numeric ranks in classification.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Default residual tolerance for float verification.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-9;

/// Default eigenvalue-matching tolerance for classification.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-6;

/// Conjugators are redrawn until their condition number sits below this
/// comfort bound: float residuals grow like the square of the condition
/// number, and this target keeps them orders of magnitude under the
/// default verify tolerance.
const CONDITION_TARGET: f64 = 1e2;

/// Hard validity bound: a draw above this condition estimate is rejected.
const CONDITION_LIMIT: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    Exact,
    Float,
}

/// Deterministic sampling configuration; the sample at index i depends only
/// on (seed, i).
#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    pub entry_range: BigRational,
    pub mode: SampleMode,
}

impl SampleConfig {
    pub fn new(
        seed: u64,
        count: usize,
        entry_range: BigRational,
        mode: SampleMode,
    ) -> Result<Self> {
        let cfg = Self { seed, count, entry_range, mode };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn exact(seed: u64, count: usize) -> Self {
        Self { seed, count, entry_range: big(1), mode: SampleMode::Exact }
    }

    pub fn float(seed: u64, count: usize) -> Self {
        Self { seed, count, entry_range: big(1), mode: SampleMode::Float }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 1 {
            return Err(Error::InvalidSampleConfig("count must be at least 1".into()));
        }
        if !self.entry_range.is_positive() {
            return Err(Error::InvalidSampleConfig("entry range must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of checking F_s(X) = O. `exact` marks an exact-arithmetic test,
/// where `residual` is 0.0 precisely when the equation holds.
#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub is_solution: bool,
    pub residual: f64,
    pub exact: bool,
}

/// Result of classifying a solution into the stratification.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationResult {
    /// Stratum key, or "unrecognized".
    pub stratum_id: String,
    pub eigenvalue_matches: Vec<EigenvalueMatch>,
    pub rank_profiles: Vec<RankProfile>,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenvalueMatch {
    pub re: f64,
    pub im: f64,
    pub root: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankProfile {
    pub root: String,
    /// rank((X - rI)^k), or rank(q(X)^k) for pairs, for k = 1..=m.
    pub ranks: Vec<usize>,
}

/// Draws `cfg.count` random points of the orbit of the form's canonical
/// matrix: X_i = C_i^{-1} J C_i with C_i invertible. Sample i depends only
/// on (seed, i), so any prefix of a longer run is reproduced exactly.
pub fn sample_solutions(
    form: &RealJordanForm,
    roots: &RootData,
    cfg: &SampleConfig,
) -> Result<Vec<Matrix>> {
    cfg.validate()?;
    match cfg.mode {
        SampleMode::Exact => {
            if !form.is_exact(roots) {
                return Err(Error::ExactSamplingUnavailable(form.key()));
            }
            let j = match canonical_matrix(form, roots) {
                Matrix::Exact(j) => j,
                Matrix::Float(_) => unreachable!("exact form gives exact matrix"),
            };
            (0..cfg.count).map(|i| sample_exact(&j, cfg, i as u64).map(Matrix::Exact)).collect()
        }
        SampleMode::Float => {
            let j = canonical_matrix(form, roots).to_f64();
            (0..cfg.count).map(|i| sample_float(&j, cfg, i as u64).map(Matrix::Float)).collect()
        }
    }
}

fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Conjugator entries live on the rational grid k/16 * entry_range with
/// k in [-16, 16]; singular draws are rejected.
fn sample_exact(j: &RatMatrix, cfg: &SampleConfig, index: u64) -> Result<RatMatrix> {
    let m = j.size();
    let mut rng = stream_rng(cfg.seed, index);
    for _ in 0..100 {
        let mut c = RatMatrix::zeros(m);
        for row in 0..m {
            for col in 0..m {
                let k: i64 = rng.random_range(-16..=16);
                c[(row, col)] = ratio(k, 16) * &cfg.entry_range;
            }
        }
        if c.det().is_zero() {
            continue;
        }
        let inv = c.inverse().expect("nonzero determinant");
        return Ok(inv.mul(&j.mul(&c)));
    }
    Err(Error::ConjugatorRejected(100))
}

fn sample_float(j: &DMatrix<f64>, cfg: &SampleConfig, index: u64) -> Result<DMatrix<f64>> {
    let m = j.nrows();
    let range = rational_to_f64(&cfg.entry_range);
    let mut rng = stream_rng(cfg.seed, index);
    let mut fallback: Option<(f64, DMatrix<f64>)> = None;
    for _ in 0..200 {
        let c = DMatrix::from_fn(m, m, |_, _| rng.random_range(-range..=range));
        let sv = c.clone().svd(false, false).singular_values;
        let sigma_max = sv.max();
        let sigma_min = sv.min();
        if sigma_min <= 0.0 {
            continue;
        }
        let cond = sigma_max / sigma_min;
        if cond < CONDITION_TARGET {
            return conjugate_float(j, &c).ok_or(Error::ConjugatorRejected(200));
        }
        if cond < CONDITION_LIMIT && fallback.as_ref().is_none_or(|(best, _)| cond < *best) {
            fallback = Some((cond, c));
        }
    }
    match fallback {
        Some((_, c)) => conjugate_float(j, &c).ok_or(Error::ConjugatorRejected(200)),
        None => Err(Error::ConjugatorRejected(200)),
    }
}

fn conjugate_float(j: &DMatrix<f64>, c: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let jc = j * c;
    c.clone().lu().solve(&jc)
}

/// Tests F_s(X) = O: exactly for rational X, within a scaled tolerance for
/// float X (`tol * max(1, ||X||_max)^degree`, compensating power growth).
pub fn verify_solution(p: &Polynomial, x: &Matrix, tol: f64) -> Verification {
    match x {
        Matrix::Exact(xm) => {
            let value = matrix_evaluate_exact(p, xm);
            let zero = value.is_zero();
            Verification {
                is_solution: zero,
                residual: if zero { 0.0 } else { rational_to_f64(&value.max_abs()) },
                exact: true,
            }
        }
        Matrix::Float(xm) => {
            let value = matrix_evaluate_f64(p, xm);
            let residual = value.abs().max();
            let scale = xm.abs().max().max(1.0).powi(p.degree() as i32);
            Verification { is_solution: residual <= tol * scale, residual, exact: false }
        }
    }
}

/// Classifies a solution into the report's strata by rank-partition
/// recovery: for each relevant root r, the ranks of (X - rI)^k (or of
/// q(X)^k for a pair) determine the block partition at that root. Rational
/// X with exact roots is classified in exact arithmetic; float inputs gate
/// roots by eigenvalue matching within `tol` first.
pub fn classify_solution(
    x: &Matrix,
    report: &SolutionSetReport,
    tol: f64,
) -> Result<ClassificationResult> {
    let m = x.size();
    if m != report.m {
        return Err(Error::SizeMismatch { expected: report.m, got: m });
    }
    let roots = &report.roots;
    let residual = verify_solution(&report.polynomial, x, tol).residual;
    let exact_input = x.is_exact();

    let (eigenvalue_matches, matched_real, matched_pairs) =
        match_eigenvalues(x, roots, tol, exact_input)?;

    // Exact inputs profile every root; float inputs only the matched ones.
    let real_ids: Vec<usize> =
        if exact_input { (0..roots.real_roots().len()).collect() } else { matched_real };
    let pair_ids: Vec<usize> =
        if exact_input { (0..roots.complex_pairs().len()).collect() } else { matched_pairs };

    let mut rank_profiles = Vec::new();
    let mut real_segments: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut complex_segments: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut consistent = true;
    let mut total = 0usize;

    for &i in &real_ids {
        let ranks = real_root_ranks(x, roots, i, m);
        match partition_from_ranks(m, &ranks, 1) {
            Some(partition) => {
                total += partition.iter().sum::<usize>();
                if !partition.is_empty() {
                    real_segments.push((i, partition));
                }
            }
            None => consistent = false,
        }
        rank_profiles.push(RankProfile { root: format!("r{i}"), ranks });
    }
    for &i in &pair_ids {
        let ranks = pair_ranks(x, roots, i, m);
        match partition_from_ranks(m, &ranks, 2) {
            Some(partition) => {
                total += 2 * partition.iter().sum::<usize>();
                if !partition.is_empty() {
                    complex_segments.push((i, partition));
                }
            }
            None => consistent = false,
        }
        rank_profiles.push(RankProfile { root: format!("c{i}"), ranks });
    }

    let stratum_id = if consistent && total == m {
        let form = RealJordanForm::new(m, real_segments, complex_segments);
        let key = form.key();
        if report.stratum(&key).is_some() {
            key
        } else {
            "unrecognized".to_string()
        }
    } else {
        "unrecognized".to_string()
    };

    Ok(ClassificationResult { stratum_id, eigenvalue_matches, rank_profiles, residual })
}

/// Matches numeric eigenvalues to roots by nearest distance. Float inputs
/// reject the match when two roots sit within 2*tol of one eigenvalue.
fn match_eigenvalues(
    x: &Matrix,
    roots: &RootData,
    tol: f64,
    exact_input: bool,
) -> Result<(Vec<EigenvalueMatch>, Vec<usize>, Vec<usize>)> {
    #[derive(Clone, Copy, PartialEq)]
    enum RootRef {
        Real(usize),
        Pair(usize),
    }
    fn label(root: RootRef) -> String {
        match root {
            RootRef::Real(i) => format!("r{i}"),
            RootRef::Pair(i) => format!("c{i}"),
        }
    }
    let mut candidates: Vec<(RootRef, f64, f64)> = Vec::new();
    for (i, r) in roots.real_roots().iter().enumerate() {
        candidates.push((RootRef::Real(i), r.value.approx(), 0.0));
    }
    for (i, pair) in roots.complex_pairs().iter().enumerate() {
        candidates.push((RootRef::Pair(i), pair.p, pair.q));
    }

    let eigen = x.to_f64().complex_eigenvalues();
    let mut matches = Vec::new();
    let mut matched_real = Vec::new();
    let mut matched_pairs = Vec::new();
    for z in eigen.iter() {
        // Pairs are matched against whichever of p +/- qi is closer.
        let mut dists: Vec<(f64, RootRef)> = candidates
            .iter()
            .map(|&(root, p, q)| (((z.re - p).powi(2) + (z.im.abs() - q).powi(2)).sqrt(), root))
            .collect();
        dists.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (d1, root) = dists[0];
        if !exact_input && dists.len() > 1 {
            let (d2, runner_up) = dists[1];
            if d1 <= 2.0 * tol && d2 <= 2.0 * tol {
                return Err(Error::AmbiguousEigenvalue {
                    value: format!("{} + {}i", z.re, z.im),
                    first: label(root),
                    second: label(runner_up),
                });
            }
        }
        if d1 <= tol {
            match root {
                RootRef::Real(i) => matched_real.push(i),
                RootRef::Pair(i) => matched_pairs.push(i),
            }
            matches.push(EigenvalueMatch { re: z.re, im: z.im, root: label(root) });
        }
    }
    matched_real.sort_unstable();
    matched_real.dedup();
    matched_pairs.sort_unstable();
    matched_pairs.dedup();
    Ok((matches, matched_real, matched_pairs))
}

fn real_root_ranks(x: &Matrix, roots: &RootData, i: usize, m: usize) -> Vec<usize> {
    let root = &roots.real_roots()[i];
    match (x.as_exact(), root.value.exact()) {
        (Some(xm), Some(r)) => {
            let shifted = xm.add_scalar_diag(&-r.clone());
            exact_power_ranks(&shifted, m)
        }
        _ => {
            let xf = x.to_f64();
            let shifted = &xf - DMatrix::identity(m, m) * root.value.approx();
            float_power_ranks(&shifted, m)
        }
    }
}

fn pair_ranks(x: &Matrix, roots: &RootData, i: usize, m: usize) -> Vec<usize> {
    let pair = &roots.complex_pairs()[i];
    match (x.as_exact(), &pair.exact) {
        (Some(xm), Some((p, q))) => {
            // q(X) = X^2 - 2pX + (p^2 + q^2) I
            let two_p = BigRational::from_integer(2.into()) * p;
            let norm = p * p + q * q;
            let quad = xm.mul(xm).sub(&xm.scale(&two_p)).add_scalar_diag(&norm);
            exact_power_ranks(&quad, m)
        }
        _ => {
            let xf = x.to_f64();
            let norm = pair.p * pair.p + pair.q * pair.q;
            let quad = &xf * &xf - &xf * (2.0 * pair.p) + DMatrix::identity(m, m) * norm;
            float_power_ranks(&quad, m)
        }
    }
}

fn exact_power_ranks(a: &RatMatrix, m: usize) -> Vec<usize> {
    let mut ranks = Vec::with_capacity(m);
    let mut power = a.clone();
    for _ in 0..m {
        ranks.push(power.rank());
        power = power.mul(a);
    }
    ranks
}

fn float_power_ranks(a: &DMatrix<f64>, m: usize) -> Vec<usize> {
    let mut ranks = Vec::with_capacity(m);
    let mut power = a.clone();
    for _ in 0..m {
        ranks.push(float_rank(&power, DEFAULT_RANK_TOL));
        power = &power * a;
    }
    ranks
}

/// Recovers a block partition from the rank sequence of powers: with
/// `ranks[k-1] = rank(A^k)`, the number of blocks of size >= k is
/// `(ranks[k-2] - ranks[k-1]) / unit`. Returns `None` when the sequence is
/// not a valid profile (numerically inconsistent input).
fn partition_from_ranks(m: usize, ranks: &[usize], unit: usize) -> Option<Vec<usize>> {
    let mut ge = Vec::with_capacity(ranks.len());
    let mut prev = m;
    for &r in ranks {
        if r > prev {
            return None;
        }
        let drop = prev - r;
        if !drop.is_multiple_of(unit) {
            return None;
        }
        ge.push(drop / unit);
        prev = r;
    }
    // Counts of blocks with size >= k must not increase with k.
    if ge.windows(2).any(|w| w[1] > w[0]) {
        return None;
    }
    let mut partition = Vec::new();
    for k in (1..=ge.len()).rev() {
        let exactly = ge[k - 1] - ge.get(k).copied().unwrap_or(0);
        for _ in 0..exactly {
            partition.push(k);
        }
    }
    Some(partition)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    Float,
}

/// Rank of the commutator map ad_J : M -> JM - MJ on m x m matrices; equals
/// dim S(J), with m^2 minus it equal to dim G_J. Exact mode requires a
/// rational matrix and is authoritative; float mode counts singular values
/// above `tol * sigma_max`.
pub fn ad_rank(j: &Matrix, mode: RankMode, tol: f64) -> Result<usize> {
    match (mode, j) {
        (RankMode::Exact, Matrix::Exact(jm)) => Ok(ad_matrix_exact(jm).rank()),
        (RankMode::Exact, Matrix::Float(_)) => Err(Error::ExactRankOnFloat),
        (RankMode::Float, _) => Ok(float_rank(&ad_matrix_f64(&j.to_f64()), tol)),
    }
}

/// The m^2 x m^2 matrix of M -> JM - MJ, rows and columns indexed row-major.
fn ad_matrix_exact(j: &RatMatrix) -> RatMatrix {
    let m = j.size();
    let mut a = RatMatrix::zeros(m * m);
    for i in 0..m {
        for jj in 0..m {
            let row = i * m + jj;
            for k in 0..m {
                // (JM)_{i,jj} picks up J[i,k] * M[k,jj].
                a[(row, k * m + jj)] += &j[(i, k)];
                // (MJ)_{i,jj} picks up M[i,k] * J[k,jj].
                a[(row, i * m + k)] -= &j[(k, jj)];
            }
        }
    }
    a
}

fn ad_matrix_f64(j: &DMatrix<f64>) -> DMatrix<f64> {
    let m = j.nrows();
    let mut a = DMatrix::<f64>::zeros(m * m, m * m);
    for i in 0..m {
        for jj in 0..m {
            let row = i * m + jj;
            for k in 0..m {
                a[(row, k * m + jj)] += j[(i, k)];
                a[(row, i * m + k)] -= j[(k, jj)];
            }
        }
    }
    a
}

/// Samples orbit points and returns the modal float ad-rank: an empirical
/// estimate of the orbit dimension, independent of the centralizer formula.
pub fn empirical_dimension(
    form: &RealJordanForm,
    roots: &RootData,
    cfg: &SampleConfig,
    tol: f64,
) -> Result<usize> {
    let samples = sample_solutions(form, roots, cfg)?;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for x in &samples {
        let rank = ad_rank(x, RankMode::Float, tol)?;
        *counts.entry(rank).or_insert(0) += 1;
    }
    let mut best = (0usize, 0usize);
    for (&rank, &count) in &counts {
        if count > best.1 {
            best = (rank, count);
        }
    }
    Ok(best.0)
}
