//! Command-line front end: dimensions, stratification reports, sampling,
//! verification, classification, the example suite, and family sweeps.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{
    matrix_from_json, matrix_from_json_exact, matrix_from_json_f64, matrix_to_json, Matrix,
};
use crate::orbit::{
    classify_solution, sample_solutions, verify_solution, SampleConfig, SampleMode,
    DEFAULT_CLASSIFY_TOL, DEFAULT_VERIFY_TOL,
};
use crate::poly::Polynomial;
use crate::rat::{big, format_rational, parse_rational};
use crate::roots::RootData;
use crate::strata::{report_to_json, solution_set_report, SolutionSetReport};
use crate::suite::run_examples;

#[derive(Parser)]
#[command(
    name = "matstrata",
    version,
    about = "Structure and dimension of solution sets of polynomial equations over real square matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the covering dimension of the solution set
    Dim {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the full stratification report
    Strata {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Sample explicit solutions from one stratum
    Sample {
        #[command(flatten)]
        problem: Problem,
        /// Stratum id (defaults to a stratum of maximal dimension)
        #[arg(long)]
        stratum: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Half-width of the conjugator entry range, as a rational
        #[arg(long, default_value = "1")]
        entry_range: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check whether a JSON matrix satisfies the equation
    Verify {
        /// Monic polynomial: expression ("x^3 - x") or ascending coefficients ("0,-1,0,1")
        #[arg(long)]
        poly: String,
        /// Path to the matrix file (JSON array of rows)
        #[arg(long)]
        matrix: PathBuf,
        /// Residual tolerance for floating-point matrices
        #[arg(long, env = "MATSTRATA_TOL", default_value_t = DEFAULT_VERIFY_TOL)]
        tol: f64,
        /// How to read matrix entries (decimals parse exactly in exact mode)
        #[arg(long, value_enum, default_value_t)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Classify a solution matrix into its stratum
    Classify {
        #[command(flatten)]
        problem: Problem,
        /// Path to the matrix file (JSON array of rows)
        #[arg(long)]
        matrix: PathBuf,
        /// Eigenvalue-matching tolerance
        #[arg(long, env = "MATSTRATA_TOL", default_value_t = DEFAULT_CLASSIFY_TOL)]
        tol: f64,
        /// How to read matrix entries (decimals parse exactly in exact mode)
        #[arg(long, value_enum, default_value_t)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the nine-example verification suite
    Examples,
    /// Tabulate dimensions over monic integer polynomials
    Sweep {
        /// Matrix size m (>= 2)
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Largest degree to enumerate
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Coefficient bound: non-leading coefficients range over [-height, height]
        #[arg(long, default_value_t = 2)]
        height: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Args)]
struct Problem {
    /// Monic polynomial: expression ("x^3 - x") or ascending coefficients ("0,-1,0,1")
    #[arg(long)]
    poly: String,
    /// Matrix size m (>= 2)
    #[arg(long)]
    m: usize,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum InputArg {
    /// Exact when every entry is rational, float otherwise
    #[default]
    Auto,
    Exact,
    Float,
}

impl ModeArg {
    fn to_mode(self) -> SampleMode {
        match self {
            ModeArg::Exact => SampleMode::Exact,
            ModeArg::Float => SampleMode::Float,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ModeArg::Exact => "exact",
            ModeArg::Float => "float",
        }
    }
}

/// Parses arguments and runs one command, writing its report to `out`.
/// Returns the process exit code: 2 for parse/usage errors, 1 when the
/// example suite fails, 0 otherwise.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{}", e.render());
                return 2;
            }
            // --help and --version land here.
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match run_command(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn run_command(command: Command) -> Result<(String, i32)> {
    let mut s = String::new();
    let mut code = 0;
    match command {
        Command::Dim { problem, format } => {
            let report = problem.report()?;
            match format {
                Format::Text => {
                    let _ = writeln!(s, "{}", report.dim_s);
                }
                Format::Json => {
                    let json = DimJson {
                        polynomial: report.polynomial.to_string(),
                        m: report.m,
                        empty: report.empty,
                        dim: report.dim_s,
                    };
                    let _ = writeln!(s, "{}", to_pretty(&json));
                }
            }
        }
        Command::Strata { problem, format } => {
            let report = problem.report()?;
            match format {
                Format::Text => render_report(&mut s, &report),
                Format::Json => {
                    let _ = writeln!(s, "{}", report_to_json(&report));
                }
            }
        }
        Command::Sample { problem, stratum, seed, count, entry_range, mode, format } => {
            let report = problem.report()?;
            let id = match stratum {
                Some(id) => id,
                None => default_stratum(&report)?,
            };
            let chosen = report.stratum(&id).ok_or_else(|| Error::UnknownStratum(id.clone()))?;
            let range = parse_rational(&entry_range)?;
            let cfg = SampleConfig::new(seed, count, range, mode.to_mode())?;
            let samples = sample_solutions(&chosen.form, &report.roots, &cfg)?;
            match format {
                Format::Text => {
                    let _ = writeln!(s, "polynomial: {}", report.polynomial);
                    let _ = writeln!(s, "m: {}", report.m);
                    let _ = writeln!(
                        s,
                        "stratum: {}  S({})",
                        id,
                        chosen.form.display_name(&report.roots)
                    );
                    let _ = writeln!(s, "mode: {}, seed: {}, count: {}", mode.name(), seed, count);
                    for (i, x) in samples.iter().enumerate() {
                        let _ = writeln!(s, "sample {i}:");
                        render_matrix(&mut s, x);
                    }
                }
                Format::Json => {
                    let json = SampleJson {
                        polynomial: report.polynomial.to_string(),
                        m: report.m,
                        stratum: id,
                        mode: mode.name(),
                        seed,
                        count,
                        samples: samples.iter().map(matrix_to_json).collect(),
                    };
                    let _ = writeln!(s, "{}", to_pretty(&json));
                }
            }
        }
        Command::Verify { poly, matrix, tol, input, format } => {
            let p = Polynomial::parse(&poly)?;
            let x = load_matrix(&matrix, None, input)?;
            let v = verify_solution(&p, &x, tol);
            match format {
                Format::Text => {
                    let _ = writeln!(s, "is_solution: {}", v.is_solution);
                    let _ = writeln!(s, "residual: {}", v.residual);
                    let _ = writeln!(s, "exact: {}", v.exact);
                }
                Format::Json => {
                    let json = VerifyJson {
                        polynomial: p.to_string(),
                        m: x.size(),
                        is_solution: v.is_solution,
                        residual: v.residual,
                        exact: v.exact,
                    };
                    let _ = writeln!(s, "{}", to_pretty(&json));
                }
            }
        }
        Command::Classify { problem, matrix, tol, input, format } => {
            let report = problem.report()?;
            let x = load_matrix(&matrix, Some(report.m), input)?;
            let result = classify_solution(&x, &report, tol)?;
            match format {
                Format::Text => {
                    match report.stratum(&result.stratum_id) {
                        Some(st) => {
                            let _ = writeln!(
                                s,
                                "stratum: {}  S({})",
                                result.stratum_id,
                                st.form.display_name(&report.roots)
                            );
                        }
                        None => {
                            let _ = writeln!(s, "stratum: {}", result.stratum_id);
                        }
                    }
                    let _ = writeln!(s, "residual: {}", result.residual);
                    let _ = writeln!(s, "eigenvalues:");
                    for m in &result.eigenvalue_matches {
                        let _ = writeln!(s, "  {} -> {}", complex_text(m.re, m.im), m.root);
                    }
                    let _ = writeln!(s, "rank profiles:");
                    for p in &result.rank_profiles {
                        let _ = writeln!(s, "  {}: {:?}", p.root, p.ranks);
                    }
                }
                Format::Json => {
                    let json = ClassifyJson {
                        polynomial: report.polynomial.to_string(),
                        m: report.m,
                        stratum_id: &result.stratum_id,
                        eigenvalue_matches: &result.eigenvalue_matches,
                        rank_profiles: &result.rank_profiles,
                        residual: result.residual,
                    };
                    let _ = writeln!(s, "{}", to_pretty(&json));
                }
            }
        }
        Command::Examples => {
            let outcomes = run_examples()?;
            for o in &outcomes {
                let _ = writeln!(s, "{}", o.line());
            }
            if !outcomes.iter().all(|o| o.pass()) {
                code = 1;
            }
        }
        Command::Sweep { m, max_degree, height, format } => {
            if max_degree < 1 {
                return Err(Error::DegreeZero);
            }
            if height < 0 {
                return Err(Error::ParsePolynomial("height must be nonnegative".into()));
            }
            let mut total = 0usize;
            let mut rows: BTreeMap<i64, (usize, String)> = BTreeMap::new();
            for p in sweep_polynomials(max_degree, height) {
                let report = solution_set_report(&p, m)?;
                total += 1;
                let entry = rows.entry(report.dim_s).or_insert_with(|| (0, p.to_string()));
                entry.0 += 1;
            }
            match format {
                Format::Text => {
                    let _ = writeln!(
                        s,
                        "sweep: m = {m}, degree <= {max_degree}, coefficient height <= {height}"
                    );
                    let _ = writeln!(s, "polynomials: {total}");
                    for (dim, (count, example)) in &rows {
                        let _ = writeln!(s, "dim {dim}: {count} (e.g. {example})");
                    }
                }
                Format::Json => {
                    let json = SweepJson {
                        m,
                        max_degree,
                        height,
                        total,
                        dims: rows
                            .iter()
                            .map(|(dim, (count, example))| SweepRow {
                                dim: *dim,
                                count: *count,
                                example: example.clone(),
                            })
                            .collect(),
                    };
                    let _ = writeln!(s, "{}", to_pretty(&json));
                }
            }
        }
    }
    Ok((s, code))
}

impl Problem {
    fn report(&self) -> Result<SolutionSetReport> {
        let p = Polynomial::parse(&self.poly)?;
        solution_set_report(&p, self.m)
    }
}

/// A stratum of maximal dimension, used when `sample` gets no --stratum.
fn default_stratum(report: &SolutionSetReport) -> Result<String> {
    report
        .strata
        .iter()
        .find(|st| st.orbit_dim as i64 == report.dim_s)
        .map(|st| st.stratum_id.clone())
        .ok_or_else(|| {
            Error::InvalidSampleConfig("the solution set is empty; nothing to sample".into())
        })
}

fn load_matrix(path: &Path, m: Option<usize>, input: InputArg) -> Result<Matrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::ParseMatrix(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::ParseMatrix(format!("invalid JSON in {}: {e}", path.display())))?;
    match input {
        InputArg::Auto => matrix_from_json(&value, m),
        InputArg::Exact => Ok(Matrix::Exact(matrix_from_json_exact(&value, m)?)),
        InputArg::Float => Ok(Matrix::Float(matrix_from_json_f64(&value, m)?)),
    }
}

/// All monic polynomials x^d + a_{d-1} x^{d-1} + ... + a_0 with integer
/// coefficients |a_i| <= height and 1 <= d <= max_degree, in a fixed order.
fn sweep_polynomials(max_degree: usize, height: i64) -> Vec<Polynomial> {
    let mut polys = Vec::new();
    for d in 1..=max_degree {
        let mut lower = vec![-height; d];
        loop {
            let mut coeffs: Vec<_> = lower.iter().map(|&c| big(c)).collect();
            coeffs.push(big(1));
            polys.push(Polynomial::from_coefficients(coeffs).expect("monic by construction"));
            let mut i = 0;
            while i < d && lower[i] == height {
                lower[i] = -height;
                i += 1;
            }
            if i == d {
                break;
            }
            lower[i] += 1;
        }
    }
    polys
}

fn render_report(s: &mut String, report: &SolutionSetReport) {
    let _ = writeln!(s, "polynomial: {}", report.polynomial);
    let _ = writeln!(s, "m: {}", report.m);
    render_roots(s, &report.roots);
    let _ = writeln!(s, "empty: {}", report.empty);
    let _ = writeln!(s, "dim S: {}", report.dim_s);
    let _ = writeln!(s, "strata ({}):", report.strata.len());
    for st in &report.strata {
        let _ = writeln!(
            s,
            "  S({})  key {}  centralizer {}  orbit {}",
            st.form.display_name(&report.roots),
            st.stratum_id,
            st.centralizer_dim,
            st.orbit_dim,
        );
    }
}

fn render_roots(s: &mut String, roots: &RootData) {
    let _ = write!(s, "roots:");
    if roots.real_roots().is_empty() && roots.complex_pairs().is_empty() {
        let _ = writeln!(s, " none");
        return;
    }
    let _ = writeln!(s);
    for (i, r) in roots.real_roots().iter().enumerate() {
        let _ = writeln!(s, "  r{i} = {} (mult {})", r.value, r.multiplicity);
    }
    for (i, pair) in roots.complex_pairs().iter().enumerate() {
        let _ = writeln!(s, "  c{i} = {} (mult {})", pair, pair.multiplicity);
    }
}

fn render_matrix(s: &mut String, x: &Matrix) {
    match x {
        Matrix::Exact(xm) => {
            for i in 0..xm.size() {
                let row: Vec<String> =
                    (0..xm.size()).map(|j| format_rational(&xm[(i, j)])).collect();
                let _ = writeln!(s, "  [{}]", row.join(", "));
            }
        }
        Matrix::Float(xf) => {
            for i in 0..xf.nrows() {
                let row: Vec<String> = (0..xf.ncols()).map(|j| xf[(i, j)].to_string()).collect();
                let _ = writeln!(s, "  [{}]", row.join(", "));
            }
        }
    }
}

fn complex_text(re: f64, im: f64) -> String {
    if im < 0.0 {
        format!("{re} - {}i", -im)
    } else {
        format!("{re} + {im}i")
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable report")
}

#[derive(Serialize)]
struct DimJson {
    polynomial: String,
    m: usize,
    empty: bool,
    dim: i64,
}

#[derive(Serialize)]
struct SampleJson {
    polynomial: String,
    m: usize,
    stratum: String,
    mode: &'static str,
    seed: u64,
    count: usize,
    samples: Vec<Value>,
}

#[derive(Serialize)]
struct VerifyJson {
    polynomial: String,
    m: usize,
    is_solution: bool,
    residual: f64,
    exact: bool,
}

#[derive(Serialize)]
struct ClassifyJson<'a> {
    polynomial: String,
    m: usize,
    stratum_id: &'a str,
    eigenvalue_matches: &'a [crate::orbit::EigenvalueMatch],
    rank_profiles: &'a [crate::orbit::RankProfile],
    residual: f64,
}

#[derive(Serialize)]
struct SweepJson {
    m: usize,
    max_degree: usize,
    height: i64,
    total: usize,
    dims: Vec<SweepRow>,
}

#[derive(Serialize)]
struct SweepRow {
    dim: i64,
    count: usize,
    example: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (String, i32) {
        let mut out = Vec::new();
        let full: Vec<&str> = std::iter::once("matstrata").chain(args.iter().copied()).collect();
        let code = run(full, &mut out);
        (String::from_utf8(out).unwrap(), code)
    }

    fn temp_matrix_file(name: &str, contents: &str) -> PathBuf {
        let path = std::env::temp_dir().join(format!(
            "matstrata-cli-{}-{}.json",
            std::process::id(),
            name
        ));
        fs::write(&path, contents).unwrap();
        path
    }

    #[test]
    fn dim_prints_the_number() {
        let (out, code) = run_capture(&["dim", "--poly", "x^3 - x", "--m", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "6\n");
    }

    #[test]
    fn dim_of_pure_complex_quartic() {
        let (out, code) = run_capture(&["dim", "--poly", "x^2+1", "--m", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "8\n");
    }

    #[test]
    fn dim_json_has_the_fields() {
        let (out, code) = run_capture(&["dim", "--poly", "x^2+1", "--m", "3", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["dim"], -1);
        assert_eq!(v["empty"], true);
        assert_eq!(v["m"], 3);
    }

    #[test]
    fn strata_json_is_byte_stable() {
        let (a, code_a) = run_capture(&["strata", "--poly", "x^2", "--m", "3", "--format", "json"]);
        let (b, code_b) = run_capture(&["strata", "--poly", "x^2", "--m", "3", "--format", "json"]);
        assert_eq!((code_a, code_b), (0, 0));
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["dim"], 4);
        assert_eq!(v["strata"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn strata_text_mentions_each_stratum() {
        let (out, code) = run_capture(&["strata", "--poly", "x^2 (x - 1)", "--m", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("dim S: 6"));
        assert!(out.contains("S(J_1(0,0,1))"));
        assert!(out.contains("strata (6):"));
    }

    #[test]
    fn sample_output_is_deterministic() {
        let args = [
            "sample", "--poly", "x^2", "--m", "3", "--count", "3", "--seed", "11", "--format",
            "json",
        ];
        let (a, code_a) = run_capture(&args);
        let (b, code_b) = run_capture(&args);
        assert_eq!((code_a, code_b), (0, 0));
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["samples"].as_array().unwrap().len(), 3);
        // Default stratum is a maximal one.
        assert_eq!(v["stratum"], "R(r0:2,1)");
    }

    #[test]
    fn sampled_solutions_verify_via_files() {
        let (out, code) = run_capture(&[
            "sample", "--poly", "x^2", "--m", "3", "--seed", "5", "--format", "json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let path = temp_matrix_file("verify", &v["samples"][0].to_string());
        let (out, code) = run_capture(&[
            "verify",
            "--poly",
            "x^2",
            "--matrix",
            path.to_str().unwrap(),
            "--format",
            "json",
        ]);
        let _ = fs::remove_file(&path);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["is_solution"], true);
        assert_eq!(v["residual"], 0.0);
        assert_eq!(v["exact"], true);
    }

    #[test]
    fn classify_round_trips_via_files() {
        let (out, code) = run_capture(&[
            "sample",
            "--poly",
            "x^2 (x - 1)",
            "--m",
            "3",
            "--stratum",
            "R(r0:2)|R(r1:1)",
            "--seed",
            "9",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let path = temp_matrix_file("classify", &v["samples"][0].to_string());
        let (out, code) = run_capture(&[
            "classify",
            "--poly",
            "x^2 (x - 1)",
            "--m",
            "3",
            "--matrix",
            path.to_str().unwrap(),
            "--format",
            "json",
        ]);
        let _ = fs::remove_file(&path);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["stratum_id"], "R(r0:2)|R(r1:1)");
    }

    #[test]
    fn verify_rejects_non_solution() {
        let path = temp_matrix_file("reject", "[[1, 0], [0, 1]]");
        let (out, code) =
            run_capture(&["verify", "--poly", "x^2 + 1", "--matrix", path.to_str().unwrap()]);
        let _ = fs::remove_file(&path);
        assert_eq!(code, 0, "non-solutions still exit 0");
        assert!(out.contains("is_solution: false"));
    }

    #[test]
    fn examples_all_pass() {
        let (out, code) = run_capture(&["examples"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(out.lines().count(), 9);
        for (line, name) in
            out.lines().zip(["S_1", "S_2", "S_3", "S_4", "S_5", "S_6", "S_7", "S_8", "S_9"])
        {
            assert!(line.starts_with(name), "{line}");
            assert!(line.contains("PASS"), "{line}");
        }
    }

    #[test]
    fn sweep_covers_the_family() {
        let (out, code) = run_capture(&[
            "sweep",
            "--m",
            "2",
            "--max-degree",
            "1",
            "--height",
            "1",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        // x - 1, x, x + 1: single points, dimension 0.
        assert_eq!(v["total"], 3);
        assert_eq!(v["dims"][0]["dim"], 0);
        assert_eq!(v["dims"][0]["count"], 3);
    }

    #[test]
    fn sweep_text_lists_attained_dimensions() {
        let (out, code) = run_capture(&["sweep", "--m", "2", "--max-degree", "2", "--height", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("polynomials: 12"));
        // x^2 + 1 has empty solution set in odd sizes only; m = 2 gives 2.
        assert!(out.contains("dim 2:"));
    }

    #[test]
    fn parse_errors_exit_two() {
        assert_eq!(run_capture(&["dim", "--poly", "x +", "--m", "3"]).1, 2);
        assert_eq!(run_capture(&["dim", "--poly", "x", "--m", "1"]).1, 2);
        assert_eq!(run_capture(&["dim", "--poly", "x"]).1, 2);
        assert_eq!(run_capture(&["no-such-command"]).1, 2);
        assert_eq!(run_capture(&["sample", "--poly", "x", "--m", "3", "--count", "0"]).1, 2);
        assert_eq!(
            run_capture(&["sample", "--poly", "x", "--m", "3", "--stratum", "R(r0:3)"]).1,
            2
        );
    }

    #[test]
    fn help_and_version_exit_zero() {
        let (out, code) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
        assert_eq!(run_capture(&["--version"]).1, 0);
    }

    #[test]
    fn float_input_mode_and_tolerance_env_var() {
        let path = temp_matrix_file("envtol", "[[0.001, 0.0], [0.0, -0.001]]");
        // Default tolerance 1e-9: the residual of 1e-6 is too large.
        let (out, code) = run_capture(&[
            "verify",
            "--poly",
            "x^2",
            "--matrix",
            path.to_str().unwrap(),
            "--input",
            "float",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("is_solution: false"), "{out}");
        assert!(out.contains("exact: false"), "{out}");

        std::env::set_var("MATSTRATA_TOL", "0.1");
        let (out, code) = run_capture(&[
            "verify",
            "--poly",
            "x^2",
            "--matrix",
            path.to_str().unwrap(),
            "--input",
            "float",
        ]);
        std::env::remove_var("MATSTRATA_TOL");
        let _ = fs::remove_file(&path);
        assert_eq!(code, 0);
        assert!(out.contains("is_solution: true"), "{out}");
    }

    #[test]
    fn exact_input_mode_tests_annihilation_exactly() {
        // The same matrix read exactly is not a solution of x^2 = 0.
        let path = temp_matrix_file("exactin", "[[0.001, 0.0], [0.0, -0.001]]");
        let (out, code) =
            run_capture(&["verify", "--poly", "x^2", "--matrix", path.to_str().unwrap()]);
        let _ = fs::remove_file(&path);
        assert_eq!(code, 0);
        assert!(out.contains("is_solution: false"), "{out}");
        assert!(out.contains("exact: true"), "{out}");
    }

    #[test]
    fn empty_solution_set_cannot_be_sampled() {
        assert_eq!(run_capture(&["sample", "--poly", "x^2 + 1", "--m", "3"]).1, 2);
    }
}
