//! Acceptance gate: one test per criterion, each printing a PASS line with
//! the numbers it checked (visible under --nocapture; the per-test ok/FAILED
//! line is the machine-readable verdict).

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use matstrata::jordan::{canonical_matrix, RealJordanForm};
use matstrata::orbit::{
    ad_rank, classify_solution, sample_solutions, verify_solution, RankMode, SampleConfig,
};
use matstrata::poly::{Polynomial, RatPoly};
use matstrata::rat::{big, ratio};
use matstrata::roots::RootData;
use matstrata::strata::{centralizer_dimension, orbit_dimension, solution_set_report};
use matstrata::suite::{difference_dimension, run_examples, DIFFERENCE_CASES, EXAMPLE_CASES};

#[test]
fn criterion_1_golden_suite() {
    let start = Instant::now();
    let outcomes = run_examples().unwrap();
    for (case, outcome) in EXAMPLE_CASES.iter().zip(&outcomes) {
        assert_eq!(outcome.actual_dim, case.expected_dim, "{}", outcome.line());
        assert_eq!(outcome.actual_strata, case.expected_strata, "{}", outcome.line());
    }

    // The fifth example lists its six strata explicitly.
    let report = solution_set_report(&Polynomial::parse("x^2 (x - 1)").unwrap(), 3).unwrap();
    let names: BTreeSet<String> =
        report.strata.iter().map(|s| s.form.display_name(&report.roots)).collect();
    let expected: BTreeSet<String> =
        ["J(0,0,0)", "J_1(0,0,0)", "J(1,1,1)", "J(0,0,1)", "J(0,1,1)", "J_1(0,0,1)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
    assert_eq!(names, expected);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "golden suite took {elapsed:?}");
    println!("criterion 1 PASS: nine example dimensions and strata counts exact in {elapsed:?}");
}

#[test]
fn criterion_2_difference_dimensions() {
    for case in &DIFFERENCE_CASES {
        let dim = difference_dimension(case, 3).unwrap();
        assert_eq!(dim, case.expected_dim, "{}", case.label);
    }
    println!("criterion 2 PASS: all four difference dimensions equal 6");
}

#[test]
fn criterion_3_centralizer_table() {
    // The seven 3x3 type shapes, in order: J(a,b,c), J(a,a,b), J_1(a,a,b),
    // J(a,a,a), J_1(a,a,a), J_2(a,a,a), J_c(a,p,q).
    let types: [(RealJordanForm, &str); 7] = [
        (
            RealJordanForm::new(3, vec![(0, vec![1]), (1, vec![1]), (2, vec![1])], vec![]),
            "J(a,b,c)",
        ),
        (RealJordanForm::new(3, vec![(0, vec![1, 1]), (1, vec![1])], vec![]), "J(a,a,b)"),
        (RealJordanForm::new(3, vec![(0, vec![2]), (1, vec![1])], vec![]), "J_1(a,a,b)"),
        (RealJordanForm::new(3, vec![(0, vec![1, 1, 1])], vec![]), "J(a,a,a)"),
        (RealJordanForm::new(3, vec![(0, vec![2, 1])], vec![]), "J_1(a,a,a)"),
        (RealJordanForm::new(3, vec![(0, vec![3])], vec![]), "J_2(a,a,a)"),
        (RealJordanForm::new(3, vec![(0, vec![1])], vec![(0, vec![1])]), "J_c(a,p,q)"),
    ];
    let expected_centralizers = [3, 5, 3, 9, 5, 3, 3];
    let expected_orbits = [6, 4, 6, 0, 4, 6, 6];
    for ((form, name), (c, o)) in
        types.iter().zip(expected_centralizers.iter().zip(&expected_orbits))
    {
        assert_eq!(centralizer_dimension(form), *c, "centralizer of {name}");
        assert_eq!(orbit_dimension(form, 3), *o, "orbit of {name}");
    }
    println!("criterion 3 PASS: centralizers (3,5,3,9,5,3,3), orbits (6,4,6,0,4,6,6)");
}

#[test]
fn criterion_4_rank_oracle_equivalence() {
    let start = Instant::now();
    let corpus: [&str; 26] = [
        "x",
        "x - 1",
        "x + 2",
        "x - 1/2",
        "x^2",
        "x^2 - 1",
        "x^2 - 4",
        "(x - 1)^2",
        "(x + 3)^2",
        "x (x - 1)",
        "x (x + 1/3)",
        "x^3",
        "x^3 - x",
        "x^2 (x - 1)",
        "(x - 1)^2 (x + 1)",
        "(x - 2)^3",
        "x (x - 1) (x - 2)",
        "x^4",
        "x^4 - x^2",
        "(x - 1)^2 (x + 1)^2",
        "x^2 (x - 1) (x + 1)",
        "x (x - 1) (x - 2) (x - 3)",
        "x^3 (x - 1)^2",
        "(x - 1/2)^2 (x + 1/2)",
        "x^5 - x^3",
        "x^2 (x - 1)^2 (x + 1)^2",
    ];
    let mut strata_checked = 0usize;
    for text in corpus {
        let p = Polynomial::parse(text).unwrap();
        assert!(p.degree() <= 6);
        for m in 2..=5 {
            let report = solution_set_report(&p, m).unwrap();
            for stratum in &report.strata {
                let j = canonical_matrix(&stratum.form, &report.roots);
                let rank = ad_rank(&j, RankMode::Exact, 0.0).unwrap();
                assert_eq!(
                    rank, stratum.orbit_dim,
                    "oracle disagreement for {text}, m = {m}, {}",
                    stratum.stratum_id
                );
                strata_checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "oracle sweep took {elapsed:?}");
    println!(
        "criterion 4 PASS: ad-rank oracle matched the centralizer formula on {strata_checked} \
         strata from {} polynomials in {elapsed:?}",
        corpus.len()
    );
}

#[test]
fn criterion_5_distinct_roots_and_empty_sets() {
    for m in 3..=6usize {
        let mut f = RatPoly::one();
        for i in 1..=m {
            f = f.mul(&RatPoly::linear_root(&big(i as i64)));
        }
        let p = Polynomial::from_ratpoly(f).unwrap();
        let report = solution_set_report(&p, m).unwrap();
        assert_eq!(report.dim_s, (m * m - m) as i64, "m = {m}");
    }
    for m in [3usize, 5, 7] {
        let p = Polynomial::parse("x^2 + 1").unwrap();
        let report = solution_set_report(&p, m).unwrap();
        assert!(report.empty);
        assert_eq!(report.dim_s, -1, "m = {m}");
    }
    println!(
        "criterion 5 PASS: product of m distinct linear factors gives m^2 - m for m = 3..6; \
         x^2 + 1 gives -1 for odd m"
    );
}

#[test]
fn criterion_6_sampling_soundness() {
    let p = Polynomial::parse("x^2 (x - 1)").unwrap();
    let report = solution_set_report(&p, 3).unwrap();
    assert_eq!(report.strata.len(), 6);

    // 1002 exact samples spread over the six strata: exact zero residual,
    // and classification returns the originating stratum every time.
    let mut exact_total = 0usize;
    for (k, stratum) in report.strata.iter().enumerate() {
        let cfg = SampleConfig::exact(1000 + k as u64, 167);
        let samples = sample_solutions(&stratum.form, &report.roots, &cfg).unwrap();
        for x in &samples {
            let v = verify_solution(&report.polynomial, x, 0.0);
            assert!(v.exact && v.is_solution && v.residual == 0.0, "{}", stratum.stratum_id);
            let class = classify_solution(x, &report, 1e-6).unwrap();
            assert_eq!(class.stratum_id, stratum.stratum_id, "round trip failed");
            exact_total += 1;
        }
    }
    assert!(exact_total >= 1000);

    // 1000 float samples: the same six strata plus the J_c strata of
    // x (x^2 + 1); raw residuals stay under 1e-9.
    let mut float_total = 0usize;
    let mut worst: f64 = 0.0;
    for (k, stratum) in report.strata.iter().enumerate() {
        let cfg = SampleConfig::float(2000 + k as u64, 100);
        for x in &sample_solutions(&stratum.form, &report.roots, &cfg).unwrap() {
            let v = verify_solution(&report.polynomial, x, 1e-9);
            assert!(v.is_solution && !v.exact);
            assert!(v.residual < 1e-9, "residual {}", v.residual);
            worst = worst.max(v.residual);
            float_total += 1;
        }
    }
    let q = Polynomial::parse("x^3 + x").unwrap();
    let q_report = solution_set_report(&q, 3).unwrap();
    let jc = q_report.stratum("R(r0:1)|C(c0:1)").expect("J_c stratum");
    let cfg = SampleConfig::float(3000, 400);
    for x in &sample_solutions(&jc.form, &q_report.roots, &cfg).unwrap() {
        let v = verify_solution(&q, x, 1e-9);
        assert!(v.is_solution && !v.exact);
        assert!(v.residual < 1e-9, "residual {}", v.residual);
        worst = worst.max(v.residual);
        float_total += 1;
    }
    assert!(float_total >= 1000);
    println!(
        "criterion 6 PASS: {exact_total} exact samples with zero residual and 100% round-trip; \
         {float_total} float samples with residual < 1e-9 (worst {worst:.3e})"
    );
}

/// Random polynomial with known factorization: a product of rational linear
/// factors and irreducible quadratics with exact conjugate pairs. Returns
/// the polynomial and whether it has any real root.
fn random_factored(rng: &mut ChaCha8Rng, max_factors: usize) -> (Polynomial, bool) {
    let factors = rng.random_range(1..=max_factors);
    let mut f = RatPoly::one();
    let mut has_real = false;
    for _ in 0..factors {
        let exponent = rng.random_range(1..=2);
        let factor = if rng.random_bool(0.5) {
            has_real = true;
            RatPoly::linear_root(&ratio(rng.random_range(-4..=4), rng.random_range(1..=2)))
        } else {
            // x^2 - 2px + (p^2 + q^2) with q > 0: roots p +/- qi.
            let p = ratio(rng.random_range(-3..=3), 1);
            let q = ratio(rng.random_range(1..=3), 1);
            let c = &p * &p + &q * &q;
            RatPoly::from_coeffs(vec![c, -(&p + &p), big(1)])
        };
        for _ in 0..exponent {
            f = f.mul(&factor);
        }
    }
    (Polynomial::from_ratpoly(f).unwrap(), has_real)
}

/// Root-value signature of a form, stable across reports with different
/// root indexing. Values are quantized to nine decimals (as integers, so
/// that -0.0 and 0.0 agree) so that a pair recognized exactly in one report
/// and numerically in another still keys the same; the corpus only has
/// rational root coordinates.
fn form_signature(form: &RealJordanForm, roots: &RootData) -> Vec<String> {
    fn quant(v: f64) -> i64 {
        (v * 1e9).round() as i64
    }
    let mut sig: Vec<String> = form
        .real_segments()
        .iter()
        .map(|(id, sizes)| {
            format!("R {} {:?}", quant(roots.real_roots()[*id].value.approx()), sizes)
        })
        .chain(form.complex_segments().iter().map(|(id, sizes)| {
            let pair = &roots.complex_pairs()[*id];
            format!("C {} {} {:?}", quant(pair.p), quant(pair.q), sizes)
        }))
        .collect();
    sig.sort();
    sig
}

#[test]
fn criterion_7_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    // Parity, bounds, and emptiness over one batch of random cases.
    let mut parity_cases = 0usize;
    let mut bound_cases = 0usize;
    let mut empty_cases = 0usize;
    for _ in 0..220 {
        let (p, has_real) = random_factored(&mut rng, 3);
        let m = rng.random_range(2..=5);
        let report = solution_set_report(&p, m).unwrap();

        for stratum in &report.strata {
            assert_eq!(stratum.orbit_dim % 2, 0, "odd orbit dim for {p}, m = {m}");
        }
        parity_cases += 1;

        if !report.empty {
            assert!(report.dim_s >= 0, "nonempty with negative dim for {p}");
            assert!(report.dim_s <= (m * m - 1) as i64, "dim too large for {p}, m = {m}");
        }
        bound_cases += 1;

        let expected_empty = !has_real && m % 2 == 1;
        assert_eq!(report.empty, expected_empty, "emptiness mismatch for {p}, m = {m}");
        assert_eq!(report.empty, report.dim_s == -1);
        empty_cases += 1;
    }

    // Strata monotonicity: extending f by another factor can only extend
    // the stratification, and the dimension never drops.
    let mut monotone_cases = 0usize;
    for _ in 0..400 {
        let (p, _) = random_factored(&mut rng, 2);
        let (extension, _) = random_factored(&mut rng, 1);
        let product = Polynomial::from_ratpoly(p.as_ratpoly().mul(extension.as_ratpoly())).unwrap();
        if product.degree() > 8 {
            continue;
        }
        let m = rng.random_range(2..=4);
        let base = solution_set_report(&p, m).unwrap();
        let extended = solution_set_report(&product, m).unwrap();

        let extended_signatures: BTreeSet<Vec<String>> =
            extended.strata.iter().map(|s| form_signature(&s.form, &extended.roots)).collect();
        for stratum in &base.strata {
            let sig = form_signature(&stratum.form, &base.roots);
            assert!(
                extended_signatures.contains(&sig),
                "stratum {} of {p} lost after extending to {product}, m = {m}",
                stratum.stratum_id
            );
        }
        assert!(extended.dim_s >= base.dim_s, "dimension dropped for {p} -> {product}");
        monotone_cases += 1;
    }
    assert!(monotone_cases >= 200, "only {monotone_cases} monotonicity cases");

    println!(
        "criterion 7 PASS: parity on {parity_cases}, bounds on {bound_cases}, emptiness on \
         {empty_cases}, monotonicity on {monotone_cases} randomized cases"
    );
}
