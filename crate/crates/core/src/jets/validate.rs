//! Exact validators for the defining conditions of tangentials and
//! symmetric forms, run on candidates with generic coefficients.
//!
//! Quantifiers are discharged symbolically: "for any α" uses a free symbol,
//! "for any e ∈ D_l" uses an auxiliary nilpotent generator, and "for any
//! simple polynomial ρ" uses a generating family with free coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::candidate::{generic_input, FormCandidate, JetCandidate};
use super::jet::Variant;
use crate::error::Result;
use crate::infinitesimal::SpaceDescriptor;
use crate::linalg::Matrix;
use crate::microcube::{Microcube, SimplePoly, Tangent};
use crate::scalar::{Rational, Scalar, Symbol};
use crate::weil::WeilAlgebra;

/// Outcome of one condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub condition: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub checks: Vec<ConditionCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&ConditionCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// First failing condition whose name contains `needle`.
    pub fn failure_matching(&self, needle: &str) -> Option<&ConditionCheck> {
        self.checks
            .iter()
            .find(|c| !c.passed && c.condition.contains(needle))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{mark} {}", c.condition)?;
            if let Some(w) = &c.witness {
                write!(f, " -- {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn alpha() -> Scalar {
    Scalar::symbol("alpha")
}

fn compare(condition: String, lhs: Result<Microcube>, rhs: Result<Microcube>) -> ConditionCheck {
    let witness = match (lhs, rhs) {
        (Ok(l), Ok(r)) => l.describe_difference(&r),
        (Err(e), _) | (_, Err(e)) => Some(format!("evaluation failed: {e}")),
    };
    ConditionCheck {
        condition,
        passed: witness.is_none(),
        witness,
    }
}

fn compare_tangents(
    condition: String,
    lhs: Result<Tangent>,
    rhs: Result<Tangent>,
) -> ConditionCheck {
    compare(
        condition,
        lhs.map(|t| t.as_microcube().clone()),
        rhs.map(|t| t.as_microcube().clone()),
    )
}

fn expect_zero(condition: String, value: Result<Tangent>) -> ConditionCheck {
    let witness = match value {
        Ok(t) => t
            .direction()
            .iter()
            .enumerate()
            .find(|(_, d)| !d.is_zero())
            .map(|(i, d)| format!("component {} of the value is {d}", i + 1)),
        Err(e) => Some(format!("evaluation failed: {e}")),
    };
    ConditionCheck {
        condition,
        passed: witness.is_none(),
        witness,
    }
}

/// Simple polynomials of `d ∈ D_n` of dimension below `n`, with free
/// coefficients `c_j`: `c_k d^k + ... + c_n d^n` for `k >= 2`, and
/// `e (c_1 d + ... + c_n d^n)` with `e ∈ D_l` for `1 <= l < n`. Every simple
/// polynomial of dimension `l < n` is a specialization of one of these
/// (possibly after enlarging the scalars).
pub fn simple_test_family(n: u32) -> Vec<(String, SimplePoly)> {
    let c = |j: u32| Scalar::symbol(&format!("c{j}"));
    let mut out = Vec::new();
    let point = WeilAlgebra::point();
    for k in 2..=n {
        let coeffs: Vec<_> = (1..=n)
            .map(|j| {
                if j < k {
                    point.zero()
                } else {
                    point.constant(c(j))
                }
            })
            .collect();
        let label = (k..=n)
            .map(|j| format!("c{j} d^{j}"))
            .collect::<Vec<_>>()
            .join(" + ");
        out.push((
            label,
            SimplePoly::new(n, point.clone(), &coeffs).expect("simple polynomial"),
        ));
    }
    for l in 1..n {
        let aux = WeilAlgebra::truncated("e", l);
        let e = aux.generator(0);
        let coeffs: Vec<_> = (1..=n).map(|j| e.scale(&c(j))).collect();
        let label = format!(
            "e ({}) with e in D_{l}",
            (1..=n)
                .map(|j| format!("c{j} d^{j}"))
                .collect::<Vec<_>>()
                .join(" + ")
        );
        out.push((
            label,
            SimplePoly::new(n, aux, &coeffs).expect("simple polynomial"),
        ));
    }
    out
}

/// `(d1..dn) |-> γ(e d1, ..., e dn)` for a `D^n`-microcube over scalars
/// containing `e`.
pub fn scale_all_axes(gamma: &Microcube, e: &crate::weil::WeilElement) -> Result<Microcube> {
    let alg = gamma.algebra();
    let le = gamma.lift_aux(e);
    let images = (0..gamma.shape_algebra().num_generators())
        .map(|k| &le * &alg.generator(k))
        .collect();
    gamma.reparametrize(gamma.shape().clone(), images)
}

/// `γ ∘ pr` for the projection `D^(n+1) -> D^n` forgetting the last
/// coordinate.
fn extend_by_projection(gamma: &Microcube, n: usize) -> Result<Microcube> {
    let shape = SpaceDescriptor::Cube(n + 1);
    let alg = shape.algebra().tensor(gamma.aux());
    let images = (0..n).map(|k| alg.generator(k)).collect();
    gamma.reparametrize(shape, images)
}

/// Checks a candidate pseudotangential against the definition of a
/// tangential, including all lower orders through its projections.
pub fn validate_tangential(c: &JetCandidate) -> ValidationReport {
    let mut report = ValidationReport::default();
    tangential_checks(c, &mut report.checks);
    report
}

fn tangential_checks(c: &JetCandidate, out: &mut Vec<ConditionCheck>) {
    let n = c.order;
    let p = c.point.p();
    let tag = format!("{} order {n}", c.variant);
    let base = &c.point.base;
    let point_alg = WeilAlgebra::point();
    let gamma = generic_input(&c.shape(), &point_alg, base);

    // π ∘ f(γ) = γ, and f(γ) starts at x.
    let image = c.apply(&gamma);
    let cond = format!("{tag}: projection of f(gamma) is gamma");
    out.push(match &image {
        Ok(img) if img.base() != c.point.coordinates().as_slice() => ConditionCheck {
            condition: cond,
            passed: false,
            witness: Some(format!("f(gamma) starts at {:?}, not at x", img.base())),
        },
        Ok(img) => compare(cond, Ok(img.components(0..p)), Ok(gamma.clone())),
        Err(e) => compare(cond, Err(e.clone()), Ok(gamma.clone())),
    });

    let a = alpha();
    match c.variant {
        Variant::Line => out.push(compare(
            format!("{tag}: homogeneity f(alpha gamma) = alpha f(gamma)"),
            gamma.scale(&a).and_then(|g| c.apply(&g)),
            c.apply(&gamma).and_then(|m| m.scale(&a)),
        )),
        Variant::Cube => {
            for i in 1..=n as usize {
                out.push(compare(
                    format!("{tag}: homogeneity along axis {i}"),
                    gamma.scale_axis(&a, i).and_then(|g| c.apply(&g)),
                    c.apply(&gamma).and_then(|m| m.scale_axis(&a, i)),
                ));
            }
            for i in 1..n as usize {
                let mut sigma: Vec<usize> = (1..=n as usize).collect();
                sigma.swap(i - 1, i);
                out.push(compare(
                    format!("{tag}: symmetry under the transposition ({i} {})", i + 1),
                    gamma.permute(&sigma).and_then(|g| c.apply(&g)),
                    c.apply(&gamma).and_then(|m| m.permute(&sigma)),
                ));
            }
        }
    }
    if n == 0 {
        return;
    }

    let proj = match c.project(n - 1) {
        Ok(p) => p,
        Err(e) => {
            out.push(ConditionCheck {
                condition: format!("{tag}: projection exists"),
                passed: false,
                witness: Some(e.to_string()),
            });
            return;
        }
    };
    match c.variant {
        Variant::Line => {
            let aux = WeilAlgebra::truncated("e", n - 1);
            let e = aux.generator(0);
            let low = generic_input(&SpaceDescriptor::Line(n - 1), &aux, base);
            out.push(compare(
                format!(
                    "{tag}: f(i_e(gamma)) = i_e(pi(f)(gamma)) with e in D_{}",
                    n - 1
                ),
                low.i_d(&e).and_then(|g| c.apply(&g)),
                proj.apply(&low).and_then(|m| m.i_d(&e)),
            ));
        }
        Variant::Cube => {
            let low = generic_input(&SpaceDescriptor::Cube(n as usize - 1), &point_alg, base);
            out.push(compare(
                format!("{tag}: f(gamma . pr) = pi(f)(gamma) . pr"),
                extend_by_projection(&low, n as usize - 1).and_then(|g| c.apply(&g)),
                proj.apply(&low)
                    .and_then(|m| extend_by_projection(&m, n as usize - 1)),
            ));
        }
    }

    match c.variant {
        Variant::Line if n >= 2 => {
            for (label, rho) in simple_test_family(n) {
                let l = match rho.dimension() {
                    Ok(l) => l as u32,
                    Err(e) => {
                        out.push(ConditionCheck {
                            condition: format!("{tag}: reparametrization with rho = {label}"),
                            passed: false,
                            witness: Some(e.to_string()),
                        });
                        continue;
                    }
                };
                let low = generic_input(&SpaceDescriptor::Line(l), rho.aux(), base);
                out.push(compare(
                    format!(
                        "{tag}: reparametrization, f(gamma . rho) = pi(f)(gamma) . rho for rho = {label}"
                    ),
                    low.compose_simple(&rho).and_then(|g| c.apply(&g)),
                    c.project(l)
                        .and_then(|pf| pf.apply(&low))
                        .and_then(|m| m.compose_simple(&rho)),
                ));
            }
        }
        Variant::Cube if n >= 2 => {
            let aux = WeilAlgebra::truncated("e", n - 1);
            let e = aux.generator(0);
            let g = generic_input(&c.shape(), &aux, base);
            out.push(compare(
                format!(
                    "{tag}: f(gamma(e -)) = f(gamma)(e -) with e in D_{} (composition model)",
                    n - 1
                ),
                scale_all_axes(&g, &e).and_then(|h| c.apply(&h)),
                c.apply(&g).and_then(|m| scale_all_axes(&m, &e)),
            ));
        }
        _ => {}
    }

    if n >= 2 || c.variant == Variant::Cube {
        tangential_checks(&proj, out);
    }
}

/// Checks a candidate form against the defining conditions of a symmetric
/// `D_n`-form or `D^n`-form.
pub fn validate_form(c: &FormCandidate) -> ValidationReport {
    let mut out = Vec::new();
    let n = c.order;
    let tag = format!("{} form order {n}", c.variant);
    let base = &c.point.base;
    let point_alg = WeilAlgebra::point();
    let gamma = generic_input(&c.shape(), &point_alg, base);
    let a = alpha();
    match c.variant {
        Variant::Line => {
            out.push(compare_tangents(
                format!("{tag}: omega(alpha gamma) = alpha^{n} omega(gamma)"),
                gamma.scale(&a).and_then(|g| c.apply(&g)),
                c.apply(&gamma).map(|t| t.scale(&a.pow(n))),
            ));
            for (label, rho) in simple_test_family(n) {
                let value = rho.dimension().and_then(|l| {
                    let low = generic_input(&SpaceDescriptor::Line(l as u32), rho.aux(), base);
                    low.compose_simple(&rho).and_then(|g| c.apply(&g))
                });
                out.push(expect_zero(
                    format!("{tag}: omega(gamma . rho) = 0 for rho = {label}"),
                    value,
                ));
            }
        }
        Variant::Cube => {
            for i in 1..=n as usize {
                out.push(compare_tangents(
                    format!("{tag}: linearity along axis {i}"),
                    gamma.scale_axis(&a, i).and_then(|g| c.apply(&g)),
                    c.apply(&gamma).map(|t| t.scale(&a)),
                ));
            }
            for i in 1..n as usize {
                let mut sigma: Vec<usize> = (1..=n as usize).collect();
                sigma.swap(i - 1, i);
                out.push(compare_tangents(
                    format!("{tag}: symmetry under the transposition ({i} {})", i + 1),
                    gamma.permute(&sigma).and_then(|g| c.apply(&g)),
                    c.apply(&gamma),
                ));
            }
            if n >= 2 {
                let aux = WeilAlgebra::truncated("e", n - 1);
                let e = aux.generator(0);
                let g = generic_input(&c.shape(), &aux, base);
                out.push(expect_zero(
                    format!("{tag}: omega(gamma(e -)) = 0 with e in D_{}", n - 1),
                    scale_all_axes(&g, &e).and_then(|h| c.apply(&h)),
                ));
            }
        }
    }
    ValidationReport { checks: out }
}

/// Ansatz for [`line_form_solution_dimension`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormAnsatz {
    /// Every polynomial in the input symbols that is weighted homogeneous
    /// of degree `n`: the literal homogeneity condition.
    General,
    /// Sums over partitions `n = r_1 + ... + r_k` of symmetric `k`-linear
    /// maps evaluated at `(a_{r_1}, ..., a_{r_k})`.
    SymmetricPieces,
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(k - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, k - 1);
            out.push(p);
        }
    }
    out
}

/// Spanning polynomials of the ansatz, in the input symbols of `D_n` with
/// base dimension `p`.
fn ansatz_terms(p: usize, n: u32, ansatz: FormAnsatz) -> Vec<Scalar> {
    let shape = SpaceDescriptor::Line(n);
    let a =
        |r: u32, i: usize| Scalar::from_symbol(super::candidate::input_symbol(&shape, &[r], i + 1));
    let mut out = Vec::new();
    for parts in partitions(n, n) {
        let k = parts.len();
        // Coordinate choices: multisets for the symmetric ansatz, all tuples
        // otherwise.
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..k {
            tuples = tuples
                .into_iter()
                .flat_map(|t| (0..p).map(move |i| [t.clone(), vec![i]].concat()))
                .collect();
        }
        match ansatz {
            FormAnsatz::General => {
                let mut seen = std::collections::BTreeSet::new();
                for t in tuples {
                    let term: Scalar = parts.iter().zip(&t).map(|(&r, &i)| a(r, i)).product();
                    if seen.insert(format!("{term}")) {
                        out.push(term);
                    }
                }
            }
            FormAnsatz::SymmetricPieces => {
                for t in tuples
                    .into_iter()
                    .filter(|t| t.windows(2).all(|w| w[0] <= w[1]))
                {
                    let term: Scalar = permutations(k)
                        .iter()
                        .map(|s| {
                            parts
                                .iter()
                                .enumerate()
                                .map(|(m, &r)| a(r, t[s[m]]))
                                .product::<Scalar>()
                        })
                        .sum();
                    out.push(term);
                }
            }
        }
    }
    out
}

/// Dimension of the space of scalar-valued maps on `T^{D_n}(R^p)` drawn
/// from `ansatz` that satisfy the vanishing condition on every `γ ∘ ρ` with
/// `dim ρ < n`, by exact linear algebra over the validator's family.
pub fn line_form_solution_dimension(p: usize, n: u32, ansatz: FormAnsatz) -> Result<usize> {
    let terms = ansatz_terms(p, n, ansatz);
    let unknowns: Vec<Symbol> = (0..terms.len())
        .map(|k| Symbol::new(&format!("k{k}")))
        .collect();
    let total: Scalar = terms
        .iter()
        .zip(&unknowns)
        .map(|(m, k)| m * &Scalar::from_symbol(k.clone()))
        .sum();
    let point = super::jet::BundlePoint::origin(p, 1);
    let cand = FormCandidate {
        variant: Variant::Line,
        order: n,
        point: point.clone(),
        outputs: vec![total],
    };
    let index: BTreeMap<Symbol, usize> = unknowns
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut rows: BTreeMap<(usize, String), Vec<Rational>> = BTreeMap::new();
    for (_, rho) in simple_test_family(n) {
        let l = rho.dimension()? as u32;
        let low = generic_input(&SpaceDescriptor::Line(l), rho.aux(), &point.base);
        let value = cand.apply(&low.compose_simple(&rho)?)?;
        for (a, coeff) in value.direction()[p].coefficients().iter().enumerate() {
            for (mono, c) in coeff.terms() {
                let (ks, rest): (Vec<_>, Vec<_>) = mono
                    .factors()
                    .iter()
                    .partition(|(s, _)| index.contains_key(s));
                let row = rows
                    .entry((a, format!("{rest:?}")))
                    .or_insert_with(|| vec![Rational::from_integer(0.into()); unknowns.len()]);
                row[index[&ks[0].0]] += c;
            }
        }
    }
    if rows.is_empty() {
        return Ok(terms.len());
    }
    Ok(terms.len() - Matrix::from_rows(rows.into_values().collect()).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::form::{form_variable, SymmetricForm};
    use crate::jets::jet::{jet_from_section, BundlePoint};
    use crate::microcube::PolyMap;

    fn sym(s: &str) -> Scalar {
        Scalar::symbol(s)
    }

    #[test]
    fn family_dimensions() {
        let dims: Vec<usize> = simple_test_family(4)
            .iter()
            .map(|(_, r)| r.dimension().unwrap())
            .collect();
        assert_eq!(dims, vec![2, 1, 1, 1, 2, 3]);
    }

    #[test]
    fn section_jets_are_tangentials() {
        let point = BundlePoint::new(vec![Scalar::one()], vec![Scalar::one()]);
        let s = PolyMap::with_standard_inputs(1, vec![sym("u1").pow(2)]);
        for variant in [Variant::Line, Variant::Cube] {
            for n in 0..=3 {
                let f = jet_from_section(&s, &point, n, variant).unwrap();
                let r = validate_tangential(&f.to_candidate());
                assert!(r.passed(), "{variant} {n}:\n{r}");
            }
        }
    }

    fn line_candidate(outputs: Vec<Vec<Scalar>>) -> JetCandidate {
        JetCandidate {
            variant: Variant::Line,
            order: 2,
            point: BundlePoint::origin(1, 1),
            out_base: vec![Scalar::zero(), Scalar::zero()],
            outputs,
        }
    }

    #[test]
    fn inhomogeneous_candidate_fails_with_witness() {
        let (a1, a2) = (sym("a1_1"), sym("a2_1"));
        let c = line_candidate(vec![
            vec![a1.clone(), a2.clone()],
            vec![a1.pow(2), &a1.pow(2) + &a2],
        ]);
        let r = validate_tangential(&c);
        let fail = r
            .failure_matching("homogeneity")
            .expect("homogeneity fails");
        assert!(fail.witness.as_ref().unwrap().contains("alpha"), "{fail:?}");

        let c = line_candidate(vec![
            vec![a1.clone(), a2.clone()],
            vec![Scalar::zero(), a1.pow(3)],
        ]);
        assert!(validate_tangential(&c)
            .failure_matching("homogeneity")
            .is_some());
    }

    #[test]
    fn mismatched_second_order_fails_condition_two() {
        let (a1, a2) = (sym("a1_1"), sym("a2_1"));
        let c = line_candidate(vec![
            vec![a1.clone(), a2.clone()],
            vec![a1.clone(), a2.scale(&crate::scalar::int(2))],
        ]);
        let r = validate_tangential(&c);
        assert!(r.failure_matching("homogeneity").is_none(), "{r}");
        assert!(r.failure_matching("reparametrization").is_some(), "{r}");
    }

    #[test]
    fn power_form_passes_and_a2_form_fails() {
        for n in 1..=3 {
            let point = BundlePoint::origin(1, 1);
            let poly = Scalar::from_symbol(form_variable(1)).pow(n);
            for variant in [Variant::Line, Variant::Cube] {
                let w = SymmetricForm::from_polynomials(
                    variant,
                    n,
                    point.clone(),
                    std::slice::from_ref(&poly),
                )
                .unwrap();
                let r = validate_form(&w.to_candidate());
                assert!(r.passed(), "{r}");
            }
        }
        let bad = FormCandidate {
            variant: Variant::Line,
            order: 2,
            point: BundlePoint::origin(1, 1),
            outputs: vec![sym("a2_1")],
        };
        let r = validate_form(&bad);
        let fail = r.failure_matching("c2 d^2").expect("rho = d^2 exposes it");
        assert!(fail.witness.is_some());
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn symmetric_ansatz_solutions_match_count() {
        for (p, n) in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 2)] {
            assert_eq!(
                line_form_solution_dimension(p, n, FormAnsatz::SymmetricPieces).unwrap(),
                binomial(p + n as usize - 1, n as usize),
                "p = {p}, n = {n}"
            );
        }
    }

    #[test]
    fn general_ansatz_admits_an_antisymmetric_solution() {
        // Without the symmetry of the multilinear pieces, `a1 ^ a2` survives
        // every vanishing condition once p >= 2 and n >= 3.
        assert_eq!(
            line_form_solution_dimension(2, 2, FormAnsatz::General).unwrap(),
            3
        );
        assert_eq!(
            line_form_solution_dimension(2, 3, FormAnsatz::General).unwrap(),
            5
        );
        let w = &(&sym("a1_1") * &sym("a2_2")) - &(&sym("a1_2") * &sym("a2_1"));
        let c = FormCandidate {
            variant: Variant::Line,
            order: 3,
            point: BundlePoint::origin(2, 1),
            outputs: vec![w],
        };
        assert!(validate_form(&c).passed());
    }
}
