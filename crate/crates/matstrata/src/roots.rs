//! Real-root analysis of the equation polynomial: square-free structure,
//! exact recognition of rational roots, Sturm-sequence isolation of the
//! irrational ones, and extraction of complex-conjugate pairs.
//!
//! Every real root is either `Exact` (a rational, recognized exactly) or
//! `Isolated` (a certified interval with rational endpoints containing
//! exactly one root of a named square-free factor). Complex roots are kept
//! as conjugate pairs `p +/- qi` with `q > 0`, exact when the pair is the
//! root of a rational quadratic whose discriminant is minus a rational
//! square.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, RatPoly};
use crate::rat::{format_rational, rational_sqrt, rational_to_f64};

/// Where a real root lives: an exact rational, or a certified isolating
/// interval for an irrational root of `factor`.
#[derive(Debug, Clone)]
pub enum RealRootValue {
    Exact(BigRational),
    Isolated { factor: RatPoly, lo: BigRational, hi: BigRational, approx: f64 },
}

impl RealRootValue {
    pub fn approx(&self) -> f64 {
        match self {
            RealRootValue::Exact(r) => rational_to_f64(r),
            RealRootValue::Isolated { approx, .. } => *approx,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            RealRootValue::Exact(r) => Some(r),
            RealRootValue::Isolated { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RealRootValue::Exact(_))
    }
}

impl std::fmt::Display for RealRootValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RealRootValue::Exact(r) => write!(f, "{}", format_rational(r)),
            RealRootValue::Isolated { approx, .. } => write!(f, "~{approx:.12}"),
        }
    }
}

/// A real root of the equation polynomial together with its multiplicity.
#[derive(Debug, Clone)]
pub struct RealRoot {
    pub value: RealRootValue,
    pub multiplicity: usize,
}

/// A conjugate pair `p +/- qi`, `q > 0`, with its multiplicity. The exact
/// form is present when the pair generates a rational quadratic factor
/// `x^2 - 2px + (p^2 + q^2)` with rational `q`.
#[derive(Debug, Clone)]
pub struct ComplexPair {
    pub p: f64,
    pub q: f64,
    pub exact: Option<(BigRational, BigRational)>,
    pub multiplicity: usize,
}

impl ComplexPair {
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }
}

impl std::fmt::Display for ComplexPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.exact {
            Some((p, q)) => write!(f, "{} +/- {}i", format_rational(p), format_rational(q)),
            None => write!(f, "~{:.12} +/- {:.12}i", self.p, self.q),
        }
    }
}

/// Complete root structure of the equation polynomial. Real roots are sorted
/// increasing; pairs are sorted by `(p, q)`.
#[derive(Debug, Clone)]
pub struct RootData {
    real_roots: Vec<RealRoot>,
    complex_pairs: Vec<ComplexPair>,
    squarefree: Vec<(Polynomial, usize)>,
    degree: usize,
}

impl RootData {
    pub fn real_roots(&self) -> &[RealRoot] {
        &self.real_roots
    }

    pub fn complex_pairs(&self) -> &[ComplexPair] {
        &self.complex_pairs
    }

    pub fn squarefree(&self) -> &[(Polynomial, usize)] {
        &self.squarefree
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn has_real_root(&self) -> bool {
        !self.real_roots.is_empty()
    }

    /// Every root (real or pair) recognized exactly.
    pub fn all_exact(&self) -> bool {
        self.real_roots.iter().all(|r| r.value.is_exact())
            && self.complex_pairs.iter().all(ComplexPair::is_exact)
    }
}

/// Computes the full root structure of `p`.
pub fn root_analysis(p: &Polynomial) -> Result<RootData> {
    let squarefree = p.squarefree_decompose();
    let mut pending: Vec<(PendingRoot, usize)> = Vec::new();
    let mut pairs: Vec<ComplexPair> = Vec::new();
    for (factor, mult) in &squarefree {
        let analyzed = analyze_factor(factor.as_ratpoly())?;
        for root in analyzed.roots {
            pending.push((root, *mult));
        }
        for (pf, qf, exact) in analyzed.pairs {
            pairs.push(ComplexPair { p: pf, q: qf, exact, multiplicity: *mult });
        }
    }

    separate_intervals(&mut pending);
    pending.sort_by(|(a, _), (b, _)| compare_separated(a, b));
    let real_roots: Vec<RealRoot> = pending
        .into_iter()
        .map(|(root, multiplicity)| RealRoot { value: root.into_value(), multiplicity })
        .collect();

    pairs.sort_by(|a, b| a.p.total_cmp(&b.p).then(a.q.total_cmp(&b.q)));

    let counted: usize = real_roots.iter().map(|r| r.multiplicity).sum::<usize>()
        + 2 * pairs.iter().map(|c| c.multiplicity).sum::<usize>();
    if counted != p.degree() {
        return Err(Error::PairExtraction(format!(
            "root multiplicities sum to {counted}, expected degree {}",
            p.degree()
        )));
    }

    Ok(RootData { real_roots, complex_pairs: pairs, squarefree, degree: p.degree() })
}

// ---------------------------------------------------------------------------
// Per-factor analysis. The factor is monic, square-free, with rational
// coefficients, so its real roots are simple and its rational roots all have
// denominator dividing the lcm D of the coefficient denominators.
// ---------------------------------------------------------------------------

#[derive(Debug)]
enum PendingRoot {
    Exact(BigRational),
    Isolated { factor: RatPoly, lo: BigRational, hi: BigRational },
}

impl PendingRoot {
    fn into_value(self) -> RealRootValue {
        match self {
            PendingRoot::Exact(r) => RealRootValue::Exact(r),
            PendingRoot::Isolated { factor, lo, hi } => {
                let approx = (rational_to_f64(&lo) + rational_to_f64(&hi)) / 2.0;
                RealRootValue::Isolated { factor, lo, hi, approx }
            }
        }
    }
}

/// A complex pair (p, q) as floats, plus the exact values when available.
type PairCandidate = (f64, f64, Option<(BigRational, BigRational)>);

struct FactorAnalysis {
    roots: Vec<PendingRoot>,
    pairs: Vec<PairCandidate>,
}

fn analyze_factor(f: &RatPoly) -> Result<FactorAnalysis> {
    let deg = f.degree().expect("factor is nonzero");
    let chain = sturm_chain(f);
    let bound = cauchy_bound(f);
    let intervals = isolate_roots(f, &chain, -bound.clone(), bound);

    let mut denom_lcm = BigInt::one();
    for c in f.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let spacing = BigRational::new(BigInt::one(), denom_lcm.clone() * BigInt::from(2));

    let mut roots = Vec::new();
    let mut exact_values = Vec::new();
    for (mut lo, mut hi) in intervals {
        let mut checked = false;
        let mut found: Option<BigRational> = None;
        for _ in 0..4096 {
            if !checked && (&hi - &lo) < spacing {
                found = rational_candidate(f, &lo, &hi, &denom_lcm);
                checked = true;
                if found.is_some() {
                    break;
                }
            }
            if checked && precise_enough(&lo, &hi) {
                break;
            }
            match bisect(f, &lo, &hi) {
                Bisection::Root(r) => {
                    found = Some(r);
                    break;
                }
                Bisection::Narrowed(l, h) => {
                    lo = l;
                    hi = h;
                }
            }
        }
        match found {
            Some(r) => {
                exact_values.push(r.clone());
                roots.push(PendingRoot::Exact(r));
            }
            None => roots.push(PendingRoot::Isolated { factor: f.clone(), lo, hi }),
        }
    }

    let real_count = roots.len();
    let pair_count = (deg - real_count) / 2;
    let mut pairs = Vec::new();
    if pair_count > 0 {
        if let Some(pair) = exact_pair(f, &exact_values, real_count) {
            pairs.push(pair);
        } else {
            pairs = float_pairs(f, pair_count)?;
        }
    }

    Ok(FactorAnalysis { roots, pairs })
}

/// When dividing out the rational roots leaves a quadratic with no real
/// roots, the one remaining pair is exact in `p`, and exact in `q` too when
/// `q^2` is a perfect rational square.
fn exact_pair(
    f: &RatPoly,
    exact_values: &[BigRational],
    real_count: usize,
) -> Option<PairCandidate> {
    if real_count != exact_values.len() {
        return None;
    }
    let mut w = f.clone();
    for r in exact_values {
        w = w.exact_div(&RatPoly::linear_root(r))?;
    }
    if w.degree() != Some(2) {
        return None;
    }
    let b = w.coeff(1);
    let c = w.coeff(0);
    let p = -b / BigRational::from_integer(BigInt::from(2));
    let q2 = c - &p * &p;
    if !q2.is_positive() {
        // Real roots of the quadratic; handled by the caller's float path.
        return None;
    }
    let p_f = rational_to_f64(&p);
    match rational_sqrt(&q2) {
        Some(q) => {
            let q_f = rational_to_f64(&q);
            Some((p_f, q_f, Some((p, q))))
        }
        None => Some((p_f, rational_to_f64(&q2).sqrt(), None)),
    }
}

/// All complex roots of a square-free polynomial by the Weierstrass
/// (Durand-Kerner) simultaneous iteration. A QR eigensolver on the
/// companion matrix would be the textbook route, but polynomials whose
/// roots share one modulus (x^6 + 1, say) can stall it; the staggered
/// start below breaks that symmetry and the iteration count is capped.
fn all_complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let bound = 1.0 + monic[..deg].iter().fold(0.0, |acc: f64, c| acc.max(c.abs()));
    let radius = (bound / 2.0).max(0.5);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / deg as f64 + 0.7;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let (value, _) = horner_complex_scaled(&monic, z[i]);
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = value / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

/// Complex-pair candidates of the square-free factor, polished by Newton's
/// method on the factor itself.
fn float_pairs(f: &RatPoly, pair_count: usize) -> Result<Vec<PairCandidate>> {
    let coeffs = f.coeffs_f64();
    let mut candidates: Vec<Complex64> =
        all_complex_roots(&coeffs).into_iter().filter(|z| z.im > 0.0).collect();
    candidates.sort_by(|a, b| b.im.total_cmp(&a.im));
    if candidates.len() < pair_count {
        return Err(Error::PairExtraction(format!(
            "found {} candidate pairs, expected {pair_count}",
            candidates.len()
        )));
    }
    candidates.truncate(pair_count);

    let dcoeffs = f.derivative().coeffs_f64();
    let mut out = Vec::with_capacity(pair_count);
    for z0 in candidates {
        let z = newton_polish(&coeffs, &dcoeffs, z0);
        let (value, scale) = horner_complex_scaled(&coeffs, z);
        if value.norm() > 1e-8 * scale.max(1.0) {
            return Err(Error::PairExtraction(format!(
                "polished root {z} has residual {} above tolerance",
                value.norm()
            )));
        }
        out.push((z.re, z.im.abs(), None));
    }
    Ok(out)
}

fn newton_polish(coeffs: &[f64], dcoeffs: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..60 {
        let (value, scale) = horner_complex_scaled(coeffs, z);
        if value.norm() <= 1e-15 * scale.max(1.0) {
            break;
        }
        let (deriv, _) = horner_complex_scaled(dcoeffs, z);
        if deriv.norm() == 0.0 {
            break;
        }
        z -= value / deriv;
    }
    z
}

/// Horner evaluation together with the magnitude sum, a natural scale for
/// judging residuals.
fn horner_complex_scaled(coeffs: &[f64], z: Complex64) -> (Complex64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    let r = z.norm();
    let mut power = 1.0f64;
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    for c in coeffs {
        scale += c.abs() * power;
        power *= r;
    }
    (acc, scale)
}

// ---------------------------------------------------------------------------
// Sturm machinery: sign-preserving primitive chain, variation counts,
// bisection-based isolation with nudged split points so that interval
// endpoints are never roots.
// ---------------------------------------------------------------------------

/// Scales to an integer polynomial and strips the (positive) content;
/// multiplying by a positive rational preserves signs everywhere.
fn normalize_signs(f: &RatPoly) -> RatPoly {
    if f.is_zero() {
        return RatPoly::zero();
    }
    let ints = f.to_int_scaled();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    let coeffs = ints.into_iter().map(|c| BigRational::from_integer(c / &content)).collect();
    RatPoly::from_coeffs(coeffs)
}

fn sturm_chain(f: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![normalize_signs(f), normalize_signs(&f.derivative())];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, rem) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(normalize_signs(&rem.neg()));
    }
    chain.pop();
    chain
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut variations = 0;
    for f in chain {
        let s = sign_of(&f.eval(x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            variations += 1;
        }
        last = s;
    }
    variations
}

/// Strict upper bound on root magnitudes of a monic-up-to-scale polynomial.
fn cauchy_bound(f: &RatPoly) -> BigRational {
    let lead = f.leading().expect("nonzero").abs();
    let mut max = BigRational::zero();
    for c in &f.coeffs()[..f.coeffs().len() - 1] {
        let a = c.abs() / &lead;
        if a > max {
            max = a;
        }
    }
    max + BigRational::one()
}

/// A split point strictly inside `(lo, hi)` where `f` does not vanish.
fn nonroot_split(f: &RatPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
    let deg = f.degree().unwrap_or(0);
    let step = (hi - lo) / BigRational::from_integer(BigInt::from(4 * (deg as i64 + 2)));
    for k in 0..=(deg as i64 + 1) {
        for sgn in [1i64, -1] {
            let cand = &mid + &step * BigRational::from_integer(BigInt::from(sgn * k));
            if !f.eval(&cand).is_zero() {
                return cand;
            }
            if k == 0 {
                break;
            }
        }
    }
    unreachable!("a square-free polynomial cannot vanish at deg+2 distinct points")
}

/// Isolating intervals `(lo, hi)` with `f` nonzero at both endpoints and
/// exactly one root strictly inside, in increasing order.
fn isolate_roots(
    f: &RatPoly,
    chain: &[RatPoly],
    lo: BigRational,
    hi: BigRational,
) -> Vec<(BigRational, BigRational)> {
    let mut out = Vec::new();
    let mut stack =
        vec![(lo.clone(), hi.clone(), sign_variations(chain, &lo), sign_variations(chain, &hi))];
    // Depth-first with the left half pushed last keeps the output sorted.
    while let Some((lo, hi, v_lo, v_hi)) = stack.pop() {
        let count = v_lo.saturating_sub(v_hi);
        match count {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = nonroot_split(f, &lo, &hi);
                let v_mid = sign_variations(chain, &mid);
                stack.push((mid.clone(), hi, v_mid, v_hi));
                stack.push((lo, mid, v_lo, v_mid));
            }
        }
    }
    out
}

enum Bisection {
    Root(BigRational),
    Narrowed(BigRational, BigRational),
}

/// One bisection step on an interval containing exactly one simple root with
/// `f` nonzero at both endpoints.
fn bisect(f: &RatPoly, lo: &BigRational, hi: &BigRational) -> Bisection {
    let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
    let s_mid = sign_of(&f.eval(&mid));
    if s_mid == 0 {
        return Bisection::Root(mid);
    }
    let s_lo = sign_of(&f.eval(lo));
    if s_lo != s_mid {
        Bisection::Narrowed(lo.clone(), mid)
    } else {
        Bisection::Narrowed(mid, hi.clone())
    }
}

fn precise_enough(lo: &BigRational, hi: &BigRational) -> bool {
    let width = rational_to_f64(&(hi - lo));
    let mid = (rational_to_f64(lo) + rational_to_f64(hi)) / 2.0;
    width <= 1e-14 * mid.abs().max(1.0)
}

/// The at-most-two candidates `k / D` inside the interval; a rational root
/// of the factor must have this form.
fn rational_candidate(
    f: &RatPoly,
    lo: &BigRational,
    hi: &BigRational,
    denom_lcm: &BigInt,
) -> Option<BigRational> {
    let d = BigRational::from_integer(denom_lcm.clone());
    let mut k = (lo * &d).ceil().to_integer();
    let k_max = (hi * &d).floor().to_integer();
    while k <= k_max {
        let cand = BigRational::new(k.clone(), denom_lcm.clone());
        if f.eval(&cand).is_zero() {
            return Some(cand);
        }
        k += BigInt::one();
    }
    None
}

/// Refines intervals until every pair of pending roots is separated, so that
/// interval order equals root order.
fn separate_intervals(pending: &mut [(PendingRoot, usize)]) {
    let n = pending.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = split_two(pending, i, j);
            separate_pair(&mut a.0, &mut b.0);
        }
    }
}

fn split_two<T>(slice: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert!(i < j);
    let (left, right) = slice.split_at_mut(j);
    (&mut left[i], &mut right[0])
}

fn refine_once(factor: &RatPoly, lo: &mut BigRational, hi: &mut BigRational) {
    match bisect(factor, lo, hi) {
        Bisection::Root(_) => unreachable!("isolated roots are irrational"),
        Bisection::Narrowed(l, h) => {
            *lo = l;
            *hi = h;
        }
    }
}

fn separate_pair(a: &mut PendingRoot, b: &mut PendingRoot) {
    loop {
        match (&mut *a, &mut *b) {
            (PendingRoot::Exact(_), PendingRoot::Exact(_)) => return,
            (PendingRoot::Exact(r), PendingRoot::Isolated { factor, lo, hi })
            | (PendingRoot::Isolated { factor, lo, hi }, PendingRoot::Exact(r)) => {
                if &*r <= lo || &*r >= hi {
                    return;
                }
                refine_once(factor, lo, hi);
            }
            (
                PendingRoot::Isolated { factor: fa, lo: la, hi: ha },
                PendingRoot::Isolated { factor: fb, lo: lb, hi: hb },
            ) => {
                if &*ha <= lb || &*hb <= la {
                    return;
                }
                refine_once(fa, la, ha);
                refine_once(fb, lb, hb);
            }
        }
    }
}

/// Total order on separated pending roots, matching the order of the real
/// numbers they denote.
fn compare_separated(a: &PendingRoot, b: &PendingRoot) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match (a, b) {
        (PendingRoot::Exact(x), PendingRoot::Exact(y)) => x.cmp(y),
        (PendingRoot::Exact(x), PendingRoot::Isolated { lo, .. }) => {
            if x <= lo {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        (PendingRoot::Isolated { lo, .. }, PendingRoot::Exact(y)) => {
            if y <= lo {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
        (PendingRoot::Isolated { hi: ha, .. }, PendingRoot::Isolated { lo: lb, .. }) => {
            if ha <= lb {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    }
}
