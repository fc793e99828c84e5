//! Real Jordan canonical forms as block multisets, and enumeration of every
//! form of size m annihilated by the equation polynomial.
//!
//! A form holds, per real root, a partition of block sizes, and per complex
//! pair, a partition of pair-block sizes (each pair block occupying twice its
//! size). Canonical ordering (real roots before pairs, by root index, sizes
//! descending) makes structural equality coincide with real similarity.

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::One;

use crate::matrix::{Matrix, RatMatrix};
use crate::rat::{format_rational, rational_to_f64};
use crate::roots::{RealRootValue, RootData};

/// One diagonal block: a Jordan block at a real root, or a rotation-style
/// block at a complex pair (real dimension `2 * size`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JordanBlock {
    Real { root_id: usize, size: usize },
    Complex { pair_id: usize, size: usize },
}

impl JordanBlock {
    /// Real dimension this block occupies on the diagonal.
    pub fn dimension(&self) -> usize {
        match *self {
            JordanBlock::Real { size, .. } => size,
            JordanBlock::Complex { size, .. } => 2 * size,
        }
    }

    pub fn size(&self) -> usize {
        match *self {
            JordanBlock::Real { size, .. } | JordanBlock::Complex { size, .. } => size,
        }
    }
}

/// A real Jordan canonical form of total size `m`, stored as per-root
/// partitions in canonical order. Two forms are similar over the reals iff
/// they are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealJordanForm {
    real: Vec<(usize, Vec<usize>)>,
    complex: Vec<(usize, Vec<usize>)>,
    m: usize,
}

impl RealJordanForm {
    /// Builds a form from per-root partitions, normalizing to canonical
    /// order. Panics if the sizes do not sum to `m` or a partition is empty.
    pub fn new(
        m: usize,
        mut real: Vec<(usize, Vec<usize>)>,
        mut complex: Vec<(usize, Vec<usize>)>,
    ) -> Self {
        for (_, sizes) in real.iter_mut().chain(complex.iter_mut()) {
            assert!(!sizes.is_empty() && sizes.iter().all(|&s| s >= 1));
            sizes.sort_unstable_by(|a, b| b.cmp(a));
        }
        real.sort_unstable_by_key(|(id, _)| *id);
        complex.sort_unstable_by_key(|(id, _)| *id);
        let total: usize = real.iter().map(|(_, s)| s.iter().sum::<usize>()).sum::<usize>()
            + 2 * complex.iter().map(|(_, s)| s.iter().sum::<usize>()).sum::<usize>();
        assert_eq!(total, m, "block sizes must fill the matrix");
        assert!(real.windows(2).all(|w| w[0].0 < w[1].0), "duplicate real root id");
        assert!(complex.windows(2).all(|w| w[0].0 < w[1].0), "duplicate pair id");
        Self { real, complex, m }
    }

    pub fn from_blocks(m: usize, blocks: impl IntoIterator<Item = JordanBlock>) -> Self {
        let mut real: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut complex: Vec<(usize, Vec<usize>)> = Vec::new();
        for block in blocks {
            let (list, id, size) = match block {
                JordanBlock::Real { root_id, size } => (&mut real, root_id, size),
                JordanBlock::Complex { pair_id, size } => (&mut complex, pair_id, size),
            };
            match list.iter_mut().find(|(i, _)| *i == id) {
                Some((_, sizes)) => sizes.push(size),
                None => list.push((id, vec![size])),
            }
        }
        Self::new(m, real, complex)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Per-real-root partitions, canonical order.
    pub fn real_segments(&self) -> &[(usize, Vec<usize>)] {
        &self.real
    }

    /// Per-pair partitions, canonical order.
    pub fn complex_segments(&self) -> &[(usize, Vec<usize>)] {
        &self.complex
    }

    /// Flat block list in canonical order.
    pub fn blocks(&self) -> Vec<JordanBlock> {
        let mut out = Vec::new();
        for (root_id, sizes) in &self.real {
            out.extend(sizes.iter().map(|&size| JordanBlock::Real { root_id: *root_id, size }));
        }
        for (pair_id, sizes) in &self.complex {
            out.extend(sizes.iter().map(|&size| JordanBlock::Complex { pair_id: *pair_id, size }));
        }
        out
    }

    /// Stable text key, e.g. `R(r0:2,1)|R(r1:1)|C(c0:1)`; the stratum ID.
    pub fn key(&self) -> String {
        let mut parts = Vec::new();
        for (id, sizes) in &self.real {
            let list: Vec<String> = sizes.iter().map(usize::to_string).collect();
            parts.push(format!("R(r{id}:{})", list.join(",")));
        }
        for (id, sizes) in &self.complex {
            let list: Vec<String> = sizes.iter().map(usize::to_string).collect();
            parts.push(format!("C(c{id}:{})", list.join(",")));
        }
        parts.join("|")
    }

    /// Human-readable name in the style `J(0,0,1)`, `J_1(0,0,1)`,
    /// `J_c(0,0,1)`: the subscript counts superdiagonal identity entries,
    /// `c` marks complex blocks, and the arguments list the diagonal
    /// eigenvalue content in canonical order.
    pub fn display_name(&self, roots: &RootData) -> String {
        let mut ones = 0usize;
        let mut args = Vec::new();
        for (root_id, sizes) in &self.real {
            let value = roots.real_roots()[*root_id].value.to_string();
            for &size in sizes {
                ones += size - 1;
                for _ in 0..size {
                    args.push(value.clone());
                }
            }
        }
        let mut has_complex = false;
        for (pair_id, sizes) in &self.complex {
            has_complex = true;
            let pair = &roots.complex_pairs()[*pair_id];
            let (p, q) = match &pair.exact {
                Some((p, q)) => (format_rational(p), format_rational(q)),
                None => (format!("~{:.6}", pair.p), format!("~{:.6}", pair.q)),
            };
            for &size in sizes {
                ones += size - 1;
                args.push(p.clone());
                args.push(q.clone());
            }
        }
        let mut name = String::from("J");
        if ones > 0 {
            name.push_str(&format!("_{ones}"));
        }
        if has_complex {
            name.push_str(if ones > 0 { "c" } else { "_c" });
        }
        format!("{name}({})", args.join(","))
    }

    /// Whether every root the form touches has an exact value, so the
    /// canonical matrix is exactly rational.
    pub fn is_exact(&self, roots: &RootData) -> bool {
        self.real.iter().all(|(id, _)| roots.real_roots()[*id].value.is_exact())
            && self.complex.iter().all(|(id, _)| roots.complex_pairs()[*id].is_exact())
    }
}

/// All canonical forms of size `m` annihilated by the polynomial behind
/// `roots`: per real root a partition with parts bounded by the root's
/// multiplicity, per pair likewise with doubled footprint, filling `m`
/// exactly. Sorted canonically; empty iff no real roots and `m` is odd.
pub fn enumerate_annihilating_forms(roots: &RootData, m: usize) -> Vec<RealJordanForm> {
    // (is_pair, id, multiplicity bound, per-part footprint)
    let mut items: Vec<(bool, usize, usize, usize)> = Vec::new();
    for (id, root) in roots.real_roots().iter().enumerate() {
        items.push((false, id, root.multiplicity, 1));
    }
    for (id, pair) in roots.complex_pairs().iter().enumerate() {
        items.push((true, id, pair.multiplicity, 2));
    }

    let mut out = Vec::new();
    let mut real_acc: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut complex_acc: Vec<(usize, Vec<usize>)> = Vec::new();
    assign(m, &items, 0, m, &mut real_acc, &mut complex_acc, &mut out);
    out.sort_unstable();
    out
}

fn assign(
    m: usize,
    items: &[(bool, usize, usize, usize)],
    idx: usize,
    remaining: usize,
    real_acc: &mut Vec<(usize, Vec<usize>)>,
    complex_acc: &mut Vec<(usize, Vec<usize>)>,
    out: &mut Vec<RealJordanForm>,
) {
    if idx == items.len() {
        if remaining == 0 {
            out.push(RealJordanForm::new(m, real_acc.clone(), complex_acc.clone()));
        }
        return;
    }
    let (is_pair, id, bound, footprint) = items[idx];
    for partition in bounded_partitions(remaining / footprint, bound) {
        let used: usize = partition.iter().sum::<usize>() * footprint;
        if !partition.is_empty() {
            let acc = if is_pair { &mut *complex_acc } else { &mut *real_acc };
            acc.push((id, partition));
        }
        let pushed = used > 0;
        assign(m, items, idx + 1, remaining - used, real_acc, complex_acc, out);
        if pushed {
            let acc = if is_pair { &mut *complex_acc } else { &mut *real_acc };
            acc.pop();
        }
    }
}

/// All partitions of every total in `0..=budget` with parts in `1..=max_part`,
/// parts descending; includes the empty partition.
pub(crate) fn bounded_partitions(budget: usize, max_part: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut current = Vec::new();
    grow_partition(budget, max_part, &mut current, &mut out);
    out
}

fn grow_partition(
    budget: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let cap = budget.min(max_part).min(current.last().copied().unwrap_or(usize::MAX));
    for part in (1..=cap).rev() {
        current.push(part);
        out.push(current.clone());
        grow_partition(budget - part, part, current, out);
        current.pop();
    }
}

/// The canonical block-diagonal matrix of a form: exact when every involved
/// root is exact, float otherwise. Real blocks are upper Jordan blocks;
/// complex blocks of size s are 2s x 2s with rotation blocks [[p,q],[-q,p]]
/// on the diagonal and 2x2 identities on the block superdiagonal.
pub fn canonical_matrix(form: &RealJordanForm, roots: &RootData) -> Matrix {
    if form.is_exact(roots) {
        Matrix::Exact(canonical_matrix_exact(form, roots))
    } else {
        Matrix::Float(canonical_matrix_f64(form, roots))
    }
}

fn canonical_matrix_exact(form: &RealJordanForm, roots: &RootData) -> RatMatrix {
    let m = form.m();
    let mut out = RatMatrix::zeros(m);
    let mut offset = 0;
    for block in form.blocks() {
        match block {
            JordanBlock::Real { root_id, size } => {
                let value = match &roots.real_roots()[root_id].value {
                    RealRootValue::Exact(r) => r.clone(),
                    RealRootValue::Isolated { .. } => unreachable!("checked by is_exact"),
                };
                for t in 0..size {
                    out[(offset + t, offset + t)] = value.clone();
                    if t + 1 < size {
                        out[(offset + t, offset + t + 1)] = BigRational::one();
                    }
                }
                offset += size;
            }
            JordanBlock::Complex { pair_id, size } => {
                let (p, q) =
                    roots.complex_pairs()[pair_id].exact.clone().expect("checked by is_exact");
                for t in 0..size {
                    let r = offset + 2 * t;
                    out[(r, r)] = p.clone();
                    out[(r + 1, r + 1)] = p.clone();
                    out[(r, r + 1)] = q.clone();
                    out[(r + 1, r)] = -q.clone();
                    if t + 1 < size {
                        out[(r, r + 2)] = BigRational::one();
                        out[(r + 1, r + 3)] = BigRational::one();
                    }
                }
                offset += 2 * size;
            }
        }
    }
    out
}

fn canonical_matrix_f64(form: &RealJordanForm, roots: &RootData) -> DMatrix<f64> {
    let m = form.m();
    let mut out = DMatrix::<f64>::zeros(m, m);
    let mut offset = 0;
    for block in form.blocks() {
        match block {
            JordanBlock::Real { root_id, size } => {
                let value = roots.real_roots()[root_id].value.approx();
                for t in 0..size {
                    out[(offset + t, offset + t)] = value;
                    if t + 1 < size {
                        out[(offset + t, offset + t + 1)] = 1.0;
                    }
                }
                offset += size;
            }
            JordanBlock::Complex { pair_id, size } => {
                let pair = &roots.complex_pairs()[pair_id];
                let (p, q) = match &pair.exact {
                    Some((p, q)) => (rational_to_f64(p), rational_to_f64(q)),
                    None => (pair.p, pair.q),
                };
                for t in 0..size {
                    let r = offset + 2 * t;
                    out[(r, r)] = p;
                    out[(r + 1, r + 1)] = p;
                    out[(r, r + 1)] = q;
                    out[(r + 1, r)] = -q;
                    if t + 1 < size {
                        out[(r, r + 2)] = 1.0;
                        out[(r + 1, r + 3)] = 1.0;
                    }
                }
                offset += 2 * size;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{matrix_evaluate_exact, matrix_evaluate_f64};
    use crate::poly::Polynomial;
    use crate::rat::big;
    use crate::roots::root_analysis;
    use std::collections::BTreeSet;

    fn forms_for(text: &str, m: usize) -> (Vec<RealJordanForm>, RootData) {
        let p = Polynomial::parse(text).unwrap();
        let roots = root_analysis(&p).unwrap();
        (enumerate_annihilating_forms(&roots, m), roots)
    }

    #[test]
    fn six_forms_for_a_double_and_simple_root() {
        let (forms, _) = forms_for("x^2 (x - 1)", 3);
        let keys: BTreeSet<String> = forms.iter().map(RealJordanForm::key).collect();
        let expected: BTreeSet<String> = [
            "R(r0:1,1,1)",       // J(0,0,0)
            "R(r0:2,1)",         // J_1(0,0,0)
            "R(r1:1,1,1)",       // J(1,1,1)
            "R(r0:1,1)|R(r1:1)", // J(0,0,1)
            "R(r0:1)|R(r1:1,1)", // J(1,1,0)
            "R(r0:2)|R(r1:1)",   // J_1(0,0,1)
        ]
        .into_iter()
        .map(String::from)
        .collect();
        assert_eq!(keys, expected);
    }

    #[test]
    fn s8_has_two_forms_and_s1_none() {
        let (forms, _) = forms_for("x (x^2 + 1)", 3);
        let keys: Vec<String> = forms.iter().map(RealJordanForm::key).collect();
        assert_eq!(keys, vec!["R(r0:1)|C(c0:1)", "R(r0:1,1,1)"]);

        let (forms, _) = forms_for("x^2 + 1", 3);
        assert!(forms.is_empty());
    }

    #[test]
    fn nilpotent_m4_partitions() {
        let (forms, _) = forms_for("x^3", 4);
        let keys: BTreeSet<String> = forms.iter().map(RealJordanForm::key).collect();
        let expected: BTreeSet<String> = ["R(r0:1,1,1,1)", "R(r0:2,1,1)", "R(r0:2,2)", "R(r0:3,1)"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(keys, expected);
    }

    #[test]
    fn emptiness_criterion() {
        for (text, m, empty) in [
            ("x^2 + 1", 3, true),
            ("x^2 + 1", 4, false),
            ("x^2 + 1", 2, false),
            ("(x^2 + 1)(x^2 + 4)", 5, true),
            ("(x^2 + 1)(x^2 + 4)", 6, false),
            ("x - 1", 5, false),
        ] {
            let (forms, roots) = forms_for(text, m);
            assert_eq!(forms.is_empty(), empty, "case {text}, m = {m}");
            assert_eq!(
                forms.is_empty(),
                !roots.has_real_root() && m % 2 == 1,
                "criterion mismatch for {text}, m = {m}"
            );
        }
    }

    #[test]
    fn canonical_matrices_match_hand_forms() {
        let (forms, roots) = forms_for("x^2", 3);
        let j1 = forms.iter().find(|f| f.key() == "R(r0:2,1)").unwrap();
        let exact = match canonical_matrix(j1, &roots) {
            Matrix::Exact(m) => m,
            Matrix::Float(_) => panic!("rational root must give exact matrix"),
        };
        let mut expected = RatMatrix::zeros(3);
        expected[(0, 1)] = big(1);
        assert_eq!(exact, expected);

        let (forms, roots) = forms_for("x (x^2 + 1)", 3);
        let jc = forms.iter().find(|f| f.key() == "R(r0:1)|C(c0:1)").unwrap();
        let exact = match canonical_matrix(jc, &roots) {
            Matrix::Exact(m) => m,
            Matrix::Float(_) => panic!("exact pair must give exact matrix"),
        };
        let mut expected = RatMatrix::zeros(3);
        expected[(1, 2)] = big(1);
        expected[(2, 1)] = big(-1);
        assert_eq!(exact, expected);
    }

    #[test]
    fn identity_form_is_identity_matrix() {
        let (forms, roots) = forms_for("x - 1", 3);
        assert_eq!(forms.len(), 1);
        let j = canonical_matrix(&forms[0], &roots);
        assert_eq!(j.as_exact().unwrap(), &RatMatrix::identity(3));
    }

    #[test]
    fn enumerated_forms_are_annihilated() {
        for (text, m) in [
            ("x^2 (x - 1)", 3),
            ("x^3", 4),
            ("x (x^2 + 1)", 3),
            ("(x^2 + 1)^2", 4),
            ("(x^2 + x + 1)^2", 4),
            ("(x^2 - 2)(x - 1)", 3),
        ] {
            let p = Polynomial::parse(text).unwrap();
            let roots = root_analysis(&p).unwrap();
            for form in enumerate_annihilating_forms(&roots, m) {
                match canonical_matrix(&form, &roots) {
                    Matrix::Exact(j) => {
                        assert!(
                            matrix_evaluate_exact(&p, &j).is_zero(),
                            "exact annihilation failed: {text}, {}",
                            form.key()
                        );
                    }
                    Matrix::Float(j) => {
                        let residual = matrix_evaluate_f64(&p, &j).abs().max();
                        assert!(
                            residual < 1e-9,
                            "float annihilation failed: {text}, {} (residual {residual})",
                            form.key()
                        );
                    }
                }
            }
        }
    }

    /// Brute force: every canonical block multiset of size m, kept iff the
    /// exact canonical matrix is annihilated. Must agree with enumeration.
    #[test]
    fn enumeration_matches_brute_force_filter() {
        for (text, m) in [
            ("x^2 (x - 1)", 3),
            ("x^2 - 1", 3),
            ("x^3 - x", 3),
            ("x^2", 2),
            ("x (x^2 + 1)", 3),
            ("(x^2 + 1) x^2", 4),
        ] {
            let p = Polynomial::parse(text).unwrap();
            let roots = root_analysis(&p).unwrap();
            // Unbounded multiplicities: all block multisets over the roots.
            let n_real = roots.real_roots().len();
            let n_pairs = roots.complex_pairs().len();
            let mut all_items: Vec<(bool, usize, usize, usize)> = Vec::new();
            for id in 0..n_real {
                all_items.push((false, id, m, 1));
            }
            for id in 0..n_pairs {
                all_items.push((true, id, m, 2));
            }
            let mut all_forms = Vec::new();
            let mut real_acc = Vec::new();
            let mut complex_acc = Vec::new();
            assign(m, &all_items, 0, m, &mut real_acc, &mut complex_acc, &mut all_forms);

            let brute: BTreeSet<String> = all_forms
                .iter()
                .filter(|form| match canonical_matrix(form, &roots) {
                    Matrix::Exact(j) => matrix_evaluate_exact(&p, &j).is_zero(),
                    Matrix::Float(_) => panic!("test corpus must have exact roots"),
                })
                .map(RealJordanForm::key)
                .collect();
            let enumerated: BTreeSet<String> =
                enumerate_annihilating_forms(&roots, m).iter().map(RealJordanForm::key).collect();
            assert_eq!(enumerated, brute, "mismatch for {text}, m = {m}");
        }
    }

    #[test]
    fn forms_subset_under_factor_extension() {
        // x^2 divides x^2 (x - 1): every form of the divisor is a form of
        // the product. Compare by value signature since root indices differ.
        let sig = |form: &RealJordanForm, roots: &RootData| -> String {
            let mut parts: Vec<String> = form
                .real_segments()
                .iter()
                .map(|(id, sizes)| {
                    format!("R{}:{sizes:?}", roots.real_roots()[*id].value.exact().unwrap())
                })
                .collect();
            parts.extend(form.complex_segments().iter().map(|(id, sizes)| {
                let (p, q) = roots.complex_pairs()[*id].exact.clone().unwrap();
                format!("C{p},{q}:{sizes:?}")
            }));
            parts.sort();
            parts.join("|")
        };
        for (small, large, m) in [
            ("x^2", "x^2 (x - 1)", 3),
            ("x", "x (x^2 + 1)", 3),
            ("x^2 + 1", "(x^2 + 1) (x - 2)", 4),
        ] {
            let (small_forms, small_roots) = forms_for(small, m);
            let (large_forms, large_roots) = forms_for(large, m);
            let small_sigs: BTreeSet<String> =
                small_forms.iter().map(|f| sig(f, &small_roots)).collect();
            let large_sigs: BTreeSet<String> =
                large_forms.iter().map(|f| sig(f, &large_roots)).collect();
            assert!(small_sigs.is_subset(&large_sigs), "{small} forms not within {large} forms");
        }
    }

    #[test]
    fn display_names_follow_block_notation() {
        let (forms, roots) = forms_for("x^2 (x - 1)", 3);
        let names: BTreeSet<String> = forms.iter().map(|f| f.display_name(&roots)).collect();
        for expected in ["J(0,0,0)", "J_1(0,0,0)", "J(1,1,1)", "J(0,0,1)", "J(0,1,1)", "J_1(0,0,1)"]
        {
            assert!(names.contains(expected), "missing {expected} in {names:?}");
        }
        let (forms, roots) = forms_for("x^3", 3);
        let names: BTreeSet<String> = forms.iter().map(|f| f.display_name(&roots)).collect();
        assert_eq!(
            names,
            ["J(0,0,0)", "J_1(0,0,0)", "J_2(0,0,0)"].into_iter().map(String::from).collect()
        );
        let (forms, roots) = forms_for("x (x^2 + 1)", 3);
        let names: BTreeSet<String> = forms.iter().map(|f| f.display_name(&roots)).collect();
        assert!(names.contains("J_c(0,0,1)"));
    }

    #[test]
    fn complex_block_of_size_two_is_annihilated() {
        let p = Polynomial::parse("(x^2 + 1)^2").unwrap();
        let roots = root_analysis(&p).unwrap();
        let forms = enumerate_annihilating_forms(&roots, 4);
        let big_block = forms.iter().find(|f| f.key() == "C(c0:2)").unwrap();
        let j = match canonical_matrix(big_block, &roots) {
            Matrix::Exact(j) => j,
            Matrix::Float(_) => panic!("pair (0,1) is exact"),
        };
        assert_eq!(j[(0, 2)], big(1));
        assert_eq!(j[(1, 3)], big(1));
        assert!(matrix_evaluate_exact(&p, &j).is_zero());
    }

    #[test]
    fn partition_helper_respects_bounds() {
        let parts = bounded_partitions(3, 2);
        let set: BTreeSet<Vec<usize>> = parts.into_iter().collect();
        let expected: BTreeSet<Vec<usize>> =
            [vec![], vec![1], vec![1, 1], vec![1, 1, 1], vec![2], vec![2, 1]].into_iter().collect();
        assert_eq!(set, expected);
    }
}
