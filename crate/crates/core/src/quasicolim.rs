//! Certification of quasi-colimit squares.
//!
//! A square of infinitesimal spaces
//!
//! ```text
//!   A ---> C
//!   |      | v
//!   v      v
//!   B ---> P
//!      u
//! ```
//!
//! is a quasi-colimit when maps out of `P` correspond exactly to compatible
//! pairs of maps out of `B` and `C`. Dually, the square of Weil algebras
//! `W(P) -> W(B) x_{W(A)} W(C)` must be an isomorphism onto the matching
//! pairs. Everything is exact finite-dimensional linear algebra over the
//! rationals.

use crate::error::{Error, Result};
use crate::infinitesimal::{SimplicialSpace, SpaceDescriptor};
use crate::linalg::Matrix;
use crate::microcube::{Microcube, Tangent};
use crate::scalar::{factorial, Rational, Scalar};
use crate::weil::{AlgebraMorphism, WeilAlgebra, WeilElement};

/// A commutative square of Weil algebras, stored contravariantly:
/// `u: P -> B`, `v: P -> C`, `r: B -> A`, `s: C -> A`.
#[derive(Clone, Debug)]
pub struct CoconeProblem {
    pub name: String,
    pub apex: WeilAlgebra,
    pub left: WeilAlgebra,
    pub right: WeilAlgebra,
    pub shared: WeilAlgebra,
    pub u: AlgebraMorphism,
    pub v: AlgebraMorphism,
    pub r: AlgebraMorphism,
    pub s: AlgebraMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub morphisms_valid: bool,
    pub commutes: bool,
    pub injective: bool,
    pub surjective: bool,
    pub multiplicative: bool,
    pub dim_apex: usize,
    pub dim_left: usize,
    pub dim_right: usize,
    pub dim_shared: usize,
    pub dim_matching: usize,
    /// A basis of the matching subspace when the square verifies, otherwise
    /// the reasons it fails with explicit vectors.
    pub witness: Vec<String>,
}

impl VerificationReport {
    pub fn verdict(&self) -> bool {
        self.morphisms_valid
            && self.commutes
            && self.injective
            && self.surjective
            && self.multiplicative
    }
}

fn rational_coeffs(e: &WeilElement) -> Result<Vec<Rational>> {
    e.coefficients()
        .iter()
        .map(|c| {
            c.as_rational()
                .ok_or_else(|| Error::SymbolicScalars(e.to_string()))
        })
        .collect()
}

fn matrix_of(m: &AlgebraMorphism) -> Result<Matrix> {
    let dom = m.domain();
    let cols = dom
        .basis()
        .iter()
        .map(|b| rational_coeffs(&m.apply(&dom.monomial(b, Scalar::one()))?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(m.codomain().dimension(), &cols))
}

fn element_string(alg: &WeilAlgebra, v: &[Rational]) -> String {
    let cs = v.iter().cloned().map(Scalar::from_rational).collect();
    alg.from_coefficients(cs).expect("basis vector").to_string()
}

impl CoconeProblem {
    fn check_shapes(&self) -> Result<()> {
        let ok = self.u.domain() == &self.apex
            && self.u.codomain() == &self.left
            && self.v.domain() == &self.apex
            && self.v.codomain() == &self.right
            && self.r.domain() == &self.left
            && self.r.codomain() == &self.shared
            && self.s.domain() == &self.right
            && self.s.codomain() == &self.shared;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidMorphism(format!(
                "{}: morphisms do not match the declared algebras",
                self.name
            )))
        }
    }

    fn check_rational(&self) -> Result<()> {
        for m in [&self.u, &self.v, &self.r, &self.s] {
            for im in m.images() {
                rational_coeffs(im)?;
            }
        }
        Ok(())
    }

    /// The comparison map `P -> B (+) C` as a matrix.
    pub fn comparison_matrix(&self) -> Result<Matrix> {
        let mu = matrix_of(&self.u)?;
        let mv = matrix_of(&self.v)?;
        let (db, dc) = (self.left.dimension(), self.right.dimension());
        let mut m = Matrix::zeros(db + dc, self.apex.dimension());
        for j in 0..self.apex.dimension() {
            for i in 0..db {
                m[(i, j)] = mu[(i, j)].clone();
            }
            for i in 0..dc {
                m[(db + i, j)] = mv[(i, j)].clone();
            }
        }
        Ok(m)
    }

    /// `[R, -S]`, whose kernel is the space of matching pairs.
    pub fn matching_matrix(&self) -> Result<Matrix> {
        let mr = matrix_of(&self.r)?;
        let ms = matrix_of(&self.s)?;
        let (db, dc) = (self.left.dimension(), self.right.dimension());
        let mut m = Matrix::zeros(self.shared.dimension(), db + dc);
        for i in 0..self.shared.dimension() {
            for j in 0..db {
                m[(i, j)] = mr[(i, j)].clone();
            }
            for j in 0..dc {
                m[(i, db + j)] = -ms[(i, j)].clone();
            }
        }
        Ok(m)
    }

    fn pair_string(&self, v: &[Rational]) -> String {
        let db = self.left.dimension();
        format!(
            "({}, {})",
            element_string(&self.left, &v[..db]),
            element_string(&self.right, &v[db..])
        )
    }

    /// Unique `p` in `W(P)` (over the scalars) with `u(p) = b`, `v(p) = c`,
    /// or `None` when the pair does not factor. Coefficients may be symbolic;
    /// the comparison map itself must be rational.
    pub fn factor(&self, b: &WeilElement, c: &WeilElement) -> Result<Option<WeilElement>> {
        if b.algebra() != &self.left || c.algebra() != &self.right {
            return Err(Error::AlgebraMismatch);
        }
        let m = self.comparison_matrix()?;
        let Some(l) = m.left_inverse() else {
            return Ok(None);
        };
        let mut rhs: Vec<Scalar> = b.coefficients().to_vec();
        rhs.extend_from_slice(c.coefficients());
        let p = self.apex.from_coefficients(l.mul_scalar_vec(&rhs))?;
        if &self.u.apply(&p)? != b || &self.v.apply(&p)? != c {
            return Ok(None);
        }
        Ok(Some(p))
    }
}

/// Certifies (or refutes) that the square is a quasi-colimit.
///
/// Invalid morphisms and non-commuting squares do not raise errors: they are
/// reported with a failing verdict and a witness, so that corrupted diagrams
/// can be examined. Symbolic coefficients and mismatched algebras are errors.
pub fn verify_quasi_colimit(prob: &CoconeProblem) -> Result<VerificationReport> {
    prob.check_shapes()?;
    prob.check_rational()?;
    let mut report = VerificationReport {
        name: prob.name.clone(),
        morphisms_valid: true,
        commutes: true,
        injective: false,
        surjective: false,
        multiplicative: true,
        dim_apex: prob.apex.dimension(),
        dim_left: prob.left.dimension(),
        dim_right: prob.right.dimension(),
        dim_shared: prob.shared.dimension(),
        dim_matching: 0,
        witness: Vec::new(),
    };
    for (label, m) in [
        ("u", &prob.u),
        ("v", &prob.v),
        ("r", &prob.r),
        ("s", &prob.s),
    ] {
        if let Err(e) = m.validate() {
            report.morphisms_valid = false;
            report
                .witness
                .push(format!("{label} is not an algebra map: {e}"));
        }
    }
    for (g, name) in prob.apex.generators().iter().enumerate() {
        let x = prob.apex.generator(g);
        let via_b = prob.r.apply(&prob.u.apply(&x)?)?;
        let via_c = prob.s.apply(&prob.v.apply(&x)?)?;
        if via_b != via_c {
            report.commutes = false;
            report.witness.push(format!(
                "square does not commute on {name}: {via_b} vs {via_c}"
            ));
        }
    }

    let l = prob.comparison_matrix()?;
    let rank = l.rank();
    let kernel = l.kernel();
    report.injective = kernel.is_empty();
    if let Some(k) = kernel.first() {
        report.witness.push(format!(
            "comparison map kills {}",
            element_string(&prob.apex, k)
        ));
    }

    let matching = prob.matching_matrix()?.kernel();
    report.dim_matching = matching.len();
    let image_cols: Vec<Vec<Rational>> = (0..l.cols()).map(|j| l.column(j)).collect();
    let rows = l.rows();
    let mut missing = None;
    for v in &matching {
        let mut cols = image_cols.clone();
        cols.push(v.clone());
        if Matrix::from_columns(rows, &cols).rank() > rank {
            missing = Some(v.clone());
            break;
        }
    }
    let image_inside = report.commutes
        || image_cols.iter().all(|c| {
            let m = prob.matching_matrix().expect("rational");
            m.mul_vec(c).iter().all(num_traits::Zero::is_zero)
        });
    report.surjective = missing.is_none() && image_inside && rank == report.dim_matching;
    if let Some(v) = missing {
        report.witness.push(format!(
            "matching pair {} is not in the image",
            prob.pair_string(&v)
        ));
    }

    if report.morphisms_valid {
        'outer: for (i, a) in prob.apex.basis().iter().enumerate() {
            for b in &prob.apex.basis()[i..] {
                let x = prob.apex.monomial(a, Scalar::one());
                let y = prob.apex.monomial(b, Scalar::one());
                let xy = &x * &y;
                for m in [&prob.u, &prob.v] {
                    if m.apply(&xy)? != &m.apply(&x)? * &m.apply(&y)? {
                        report.multiplicative = false;
                        report
                            .witness
                            .push(format!("comparison is not multiplicative on {x} * {y}"));
                        break 'outer;
                    }
                }
            }
        }
    }

    if report.verdict() {
        report.witness = matching.iter().map(|v| prob.pair_string(v)).collect();
    }
    Ok(report)
}

/// Names accepted by [`builtin_diagram`].
pub const BUILTIN_NAMES: [&str; 5] = [
    "lemma_diff",
    "lemma_add",
    "lemma_diff_cube",
    "lemma_add_cube",
    "oplus_universal",
];

fn line(n: u32) -> WeilAlgebra {
    SpaceDescriptor::Line(n).algebra()
}

fn cube(n: usize) -> WeilAlgebra {
    SpaceDescriptor::Cube(n).algebra()
}

/// Restriction `W(big) -> W(small)` sending each generator to the generator
/// in the same position.
fn restriction(big: &WeilAlgebra, small: &WeilAlgebra) -> AlgebraMorphism {
    let images = (0..big.num_generators())
        .map(|i| small.generator(i))
        .collect();
    AlgebraMorphism::new_unchecked(big.clone(), small.clone(), images)
}

fn augmentation(alg: &WeilAlgebra) -> AlgebraMorphism {
    AlgebraMorphism::zero(alg, &WeilAlgebra::point())
}

/// Pullback of a map `E -> E (+) D` given by the coordinates of the image:
/// the first `k` coordinates are `first`, the last is `last`.
fn into_sum(
    apex: &WeilAlgebra,
    src: &WeilAlgebra,
    first: Vec<WeilElement>,
    last: WeilElement,
) -> AlgebraMorphism {
    let mut images = first;
    images.push(last);
    AlgebraMorphism::new_unchecked(apex.clone(), src.clone(), images)
}

fn identity_coords(src: &WeilAlgebra, k: usize) -> Vec<WeilElement> {
    (0..k).map(|i| src.generator(i)).collect()
}

/// The square `D_n => D_(n+1) => D_(n+1) (+) D` with `φ(d) = (d, 0)` and
/// `ψ(d) = (d, d^(n+1))`; `psi_exponent` replaces `n + 1` for corrupted
/// variants.
pub fn lemma_diff_with(n: u32, psi_exponent: u32) -> CoconeProblem {
    let b = line(n + 1);
    let a = line(n);
    let (p, _, _) = b.oplus(&line(1));
    let d = b.generator(0);
    CoconeProblem {
        name: format!("lemma_diff({n})"),
        u: into_sum(&p, &b, vec![d.clone()], d.pow(psi_exponent)),
        v: into_sum(&p, &b, vec![d], b.zero()),
        r: restriction(&b, &a),
        s: restriction(&b, &a),
        apex: p,
        left: b.clone(),
        right: b,
        shared: a,
    }
}

/// The square `1 => D_(n+1), D => D_(n+1) (+) D` with `φ(d) = (d, 0)` and
/// `ε(d) = (0, d^k)`, `k = 1` in the genuine diagram.
pub fn lemma_add_with(n: u32, eps_exponent: u32) -> CoconeProblem {
    let b = line(n + 1);
    let c = line(1);
    let (p, _, _) = b.oplus(&c);
    let e = c.generator(0);
    CoconeProblem {
        name: format!("lemma_add({n})"),
        u: into_sum(&p, &b, vec![b.generator(0)], b.zero()),
        v: into_sum(&p, &c, vec![c.zero()], e.pow(eps_exponent)),
        r: augmentation(&b),
        s: augmentation(&c),
        apex: p,
        left: b,
        right: c,
        shared: WeilAlgebra::point(),
    }
}

/// Normalizing factor of `ψ` on `D^(n+1)`: `ψ(d⃗) = (d⃗, (n+1)! d1...d(n+1))`.
pub fn cube_psi_factor(n: usize) -> Rational {
    factorial(n as u32 + 1)
}

/// `D(n+1)_n => D^(n+1) => D^(n+1) (+) D` with `φ(d⃗) = (d⃗, 0)` and
/// `ψ(d⃗) = (d⃗, (n+1)! d1...d(n+1))`.
pub fn lemma_diff_cube(n: usize) -> CoconeProblem {
    let b = cube(n + 1);
    let a = SimplicialSpace::d_m_n(n + 1, n).algebra();
    let (p, _, _) = b.oplus(&line(1));
    let top = b.monomial(&vec![1; n + 1], Scalar::from_rational(cube_psi_factor(n)));
    CoconeProblem {
        name: format!("lemma_diff_cube({n})"),
        u: into_sum(&p, &b, identity_coords(&b, n + 1), top),
        v: into_sum(&p, &b, identity_coords(&b, n + 1), b.zero()),
        r: restriction(&b, &a),
        s: restriction(&b, &a),
        apex: p,
        left: b.clone(),
        right: b,
        shared: a,
    }
}

/// `1 => D^(n+1), D => D^(n+1) (+) D` with `ε(d) = (0⃗, d)`.
pub fn lemma_add_cube(n: usize) -> CoconeProblem {
    let b = cube(n + 1);
    let c = line(1);
    let (p, _, _) = b.oplus(&c);
    CoconeProblem {
        name: format!("lemma_add_cube({n})"),
        u: into_sum(&p, &b, identity_coords(&b, n + 1), b.zero()),
        v: into_sum(&p, &c, vec![c.zero(); n + 1], c.generator(0)),
        r: augmentation(&b),
        s: augmentation(&c),
        apex: p,
        left: b,
        right: c,
        shared: WeilAlgebra::point(),
    }
}

/// The defining square of `E1 (+) E2` for `E1 = D_n`, `E2 = D^2`: the sum is
/// glued from the two summands along the base point.
pub fn oplus_universal(n: u32) -> CoconeProblem {
    let b = line(n);
    let c = cube(2);
    let (p, p1, p2) = b.oplus(&c);
    // The injections E_i -> E1 (+) E2 pull back to "kill the other summand".
    let kb = b.num_generators();
    let mut u_images: Vec<WeilElement> = (0..kb).map(|i| b.generator(i)).collect();
    u_images.extend((0..c.num_generators()).map(|_| b.zero()));
    let mut v_images: Vec<WeilElement> = (0..kb).map(|_| c.zero()).collect();
    v_images.extend((0..c.num_generators()).map(|j| c.generator(j)));
    debug_assert_eq!(p1.source(), &p);
    debug_assert_eq!(p2.source(), &p);
    CoconeProblem {
        name: format!("oplus_universal({n})"),
        u: AlgebraMorphism::new_unchecked(p.clone(), b.clone(), u_images),
        v: AlgebraMorphism::new_unchecked(p.clone(), c.clone(), v_images),
        r: augmentation(&b),
        s: augmentation(&c),
        apex: p,
        left: b,
        right: c,
        shared: WeilAlgebra::point(),
    }
}

/// The named diagram at order `n`.
pub fn builtin_diagram(name: &str, n: u32) -> Result<CoconeProblem> {
    Ok(match name {
        "lemma_diff" => lemma_diff_with(n, n + 1),
        "lemma_add" => lemma_add_with(n, 1),
        "lemma_diff_cube" => lemma_diff_cube(n as usize),
        "lemma_add_cube" => lemma_add_cube(n as usize),
        "oplus_universal" => oplus_universal(n),
        other => {
            return Err(Error::InvalidMorphism(format!(
                "unknown diagram `{other}`; expected one of {}",
                BUILTIN_NAMES.join(", ")
            )))
        }
    })
}

/// Single-exponent corruptions of the named diagram, each labelled by what
/// was changed. Every one of them must fail verification.
pub fn corruptions(name: &str, n: u32) -> Vec<(String, CoconeProblem)> {
    match name {
        "lemma_diff" => vec![
            (format!("psi(d) = (d, d^{n})"), lemma_diff_with(n, n)),
            (
                format!("psi(d) = (d, d^{})", n + 2),
                lemma_diff_with(n, n + 2),
            ),
        ],
        "lemma_add" => vec![("eps(d) = (0, d^2)".to_string(), lemma_add_with(n, 2))],
        _ => Vec::new(),
    }
}

fn coordinate_value(g: &Microcube, i: usize, a: usize) -> Vec<Scalar> {
    let ad = g.aux().dimension();
    let v = g.value(i);
    (0..g.shape_algebra().dimension())
        .map(|s| v.coefficients()[s * ad + a].clone())
        .collect()
}

/// Index of the `D` coordinate of `E (+) D` in the apex basis.
fn extra_direction_index(apex: &WeilAlgebra) -> usize {
    let k = apex.num_generators();
    let mut e = vec![0; k];
    e[k - 1] = 1;
    apex.index_of(&e)
        .expect("the D summand has a linear coordinate")
}

/// Strong difference computed from its definition: factor `(γ⁺, γ⁻)` through
/// `E (+) D` and read off `f(0, d)`. Independent of the closed formula in
/// [`crate::microcube::strong_diff`].
pub fn strong_diff_by_factorization(plus: &Microcube, minus: &Microcube) -> Result<Tangent> {
    let prob = match (
        plus.shape(),
        plus.shape().line_order(),
        plus.shape().cube_order(),
    ) {
        (SpaceDescriptor::Line(_), Some(k), _) if k >= 1 => lemma_diff_with(k - 1, k),
        (_, _, Some(k)) if k >= 1 => lemma_diff_cube(k - 1),
        _ => return Err(Error::ShapeMismatch(plus.shape().to_string())),
    };
    if plus.shape() != minus.shape() || plus.aux() != minus.aux() {
        return Err(Error::ShapeMismatch(format!(
            "{} vs {}",
            plus.shape(),
            minus.shape()
        )));
    }
    let idx = extra_direction_index(&prob.apex);
    let aux = plus.aux().clone();
    let mut base = Vec::new();
    let mut dirs = Vec::new();
    for i in 0..plus.arity() {
        let mut dir = vec![Scalar::zero(); aux.dimension()];
        for (a, slot) in dir.iter_mut().enumerate() {
            let b = prob.left.from_coefficients(coordinate_value(plus, i, a))?;
            let c = prob
                .right
                .from_coefficients(coordinate_value(minus, i, a))?;
            let f = prob.factor(&b, &c)?.ok_or_else(|| {
                Error::RestrictionMismatch(format!("coordinate {} does not factor", i + 1))
            })?;
            *slot = f.coefficients()[idx].clone();
            if a == 0 {
                base.push(f.constant_term().clone());
            }
        }
        dirs.push(aux.from_coefficients(dir)?);
    }
    Tangent::new(aux, base, dirs)
}

/// Strong addition computed from its definition: factor `(γ, t)` through
/// `E (+) D` along `φ`, `ε`, then precompose with `ψ`.
pub fn strong_add_by_factorization(t: &Tangent, gamma: &Microcube) -> Result<Microcube> {
    let (add, diff) = match (
        gamma.shape(),
        gamma.shape().line_order(),
        gamma.shape().cube_order(),
    ) {
        (SpaceDescriptor::Line(_), Some(k), _) if k >= 1 => {
            (lemma_add_with(k - 1, 1), lemma_diff_with(k - 1, k))
        }
        (_, _, Some(k)) if k >= 1 => (lemma_add_cube(k - 1), lemma_diff_cube(k - 1)),
        _ => return Err(Error::ShapeMismatch(gamma.shape().to_string())),
    };
    if t.aux() != gamma.aux() {
        return Err(Error::AlgebraMismatch);
    }
    let aux = gamma.aux().clone();
    let ad = aux.dimension();
    let tm = t.as_microcube();
    let mut coeffs = Vec::new();
    for i in 0..gamma.arity() {
        let mut body = vec![Scalar::zero(); gamma.algebra().dimension()];
        for a in 0..ad {
            let b = add.left.from_coefficients(coordinate_value(gamma, i, a))?;
            let c = add.right.from_coefficients(coordinate_value(tm, i, a))?;
            let f = add.factor(&b, &c)?.ok_or_else(|| {
                Error::BaseMismatch(format!("{:?}", t.base()), format!("{:?}", gamma.base()))
            })?;
            let g = diff.u.apply(&f)?;
            for (s, v) in g.coefficients().iter().enumerate().skip(1) {
                body[s * ad + a] = v.clone();
            }
        }
        coeffs.push(
            (1..gamma.shape_algebra().dimension())
                .map(|s| aux.from_coefficients(body[s * ad..(s + 1) * ad].to_vec()))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Microcube::from_coefficients(gamma.shape().clone(), aux, gamma.base().to_vec(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::microcube::{strong_add, strong_diff};

    #[test]
    fn lemma_diff_dimensions() {
        let r = verify_quasi_colimit(&builtin_diagram("lemma_diff", 2).unwrap()).unwrap();
        assert!(r.verdict(), "{r:?}");
        assert_eq!(
            (r.dim_apex, r.dim_left, r.dim_right, r.dim_shared),
            (5, 4, 4, 3)
        );
        assert_eq!(r.dim_matching, 5);
        assert_eq!(r.witness.len(), 5);
    }

    #[test]
    fn lemma_add_dimensions() {
        let r = verify_quasi_colimit(&builtin_diagram("lemma_add", 1).unwrap()).unwrap();
        assert!(r.verdict(), "{r:?}");
        assert_eq!(
            (r.dim_apex, r.dim_left, r.dim_right, r.dim_shared),
            (4, 3, 2, 1)
        );
    }

    #[test]
    fn degenerate_order_zero() {
        for name in BUILTIN_NAMES {
            let r = verify_quasi_colimit(&builtin_diagram(name, 0).unwrap()).unwrap();
            assert!(r.verdict(), "{name}: {r:?}");
        }
    }

    #[test]
    fn cube_variants_verify() {
        for n in 0..3 {
            for name in ["lemma_diff_cube", "lemma_add_cube", "oplus_universal"] {
                let r = verify_quasi_colimit(&builtin_diagram(name, n).unwrap()).unwrap();
                assert!(r.verdict(), "{name}({n}): {r:?}");
            }
        }
    }

    #[test]
    fn corrupted_psi_fails_with_witness() {
        let prob = lemma_diff_with(2, 2);
        let r = verify_quasi_colimit(&prob).unwrap();
        assert!(!r.verdict());
        assert!(!r.morphisms_valid);
        assert!(
            r.witness.iter().any(|w| w.contains("not an algebra map")),
            "{r:?}"
        );
        let r = verify_quasi_colimit(&lemma_diff_with(2, 4)).unwrap();
        assert!(!r.injective);
        assert!(r.witness.iter().any(|w| w.contains("kills")), "{r:?}");
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(builtin_diagram("pushout", 1).is_err());
    }

    #[test]
    fn symbolic_scalars_rejected() {
        let mut prob = lemma_diff_with(1, 2);
        let d = prob.left.generator(0);
        let bad = d.scale(&Scalar::symbol("t"));
        prob.u = AlgebraMorphism::new_unchecked(prob.apex.clone(), prob.left.clone(), vec![d, bad]);
        assert!(matches!(
            verify_quasi_colimit(&prob),
            Err(Error::SymbolicScalars(_))
        ));
    }

    #[test]
    fn factorization_matches_closed_formulas() {
        let aux = WeilAlgebra::truncated("e", 1);
        for shape in [
            SpaceDescriptor::Line(2),
            SpaceDescriptor::Cube(2),
            SpaceDescriptor::Line(1),
        ] {
            let base = vec![Scalar::symbol("x"), Scalar::symbol("y")];
            let minus = Microcube::generic(shape.clone(), aux.clone(), base.clone(), "a");
            let t = Tangent::new(
                aux.clone(),
                base.clone(),
                vec![
                    aux.constant(Scalar::symbol("b1")),
                    &aux.generator(0) * &aux.constant(Scalar::symbol("b2")),
                ],
            )
            .unwrap();
            let plus = strong_add(&t, &minus).unwrap();
            assert_eq!(strong_add_by_factorization(&t, &minus).unwrap(), plus);
            assert_eq!(strong_diff_by_factorization(&plus, &minus).unwrap(), t);
            assert_eq!(strong_diff(&plus, &minus).unwrap(), t);
        }
    }
}
