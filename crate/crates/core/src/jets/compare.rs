//! The affine structure of jets over forms, and the comparison maps from
//! `D^n`-jets and forms to `D_n`-jets and forms.

use std::collections::BTreeMap;

use super::candidate::generic_input;
use super::form::{form_basis, SymmetricForm};
use super::jet::{multi_factorial, multi_indices, BundlePoint, Jet, Variant};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::microcube::{strong_add, strong_diff, Microcube};
use crate::scalar::{Rational, Scalar, SymMonomial};
use crate::weil::WeilAlgebra;

fn generic(variant: Variant, order: u32, point: &BundlePoint) -> Microcube {
    generic_input(&variant.shape(order), &WeilAlgebra::point(), &point.base)
}

fn certify(what: &str, lhs: &Microcube, rhs: &Microcube) -> Result<()> {
    match lhs.describe_difference(rhs) {
        None => Ok(()),
        Some(w) => Err(Error::CharacterizationFailed(format!("{what}: {w}"))),
    }
}

/// `Φ_n`: the `D_n`-tangential with the same Taylor data, certified by
/// `f(γ_{D^n}) = Φ_n(f)(γ)_{D^n}` on a generic `D_n`-microcube.
pub fn phi(f: &Jet) -> Result<Jet> {
    if f.variant() != Variant::Cube {
        return Err(Error::ShapeMismatch(format!(
            "phi expects a {} jet",
            Variant::Cube
        )));
    }
    let line = f.with_variant(Variant::Line);
    let gamma = generic(Variant::Line, f.order(), f.point());
    certify(
        "f(gamma_{D^n}) = phi(f)(gamma)_{D^n}",
        &f.apply(&gamma.on_cube()?)?,
        &line.apply(&gamma)?.on_cube()?,
    )?;
    Ok(line)
}

/// `Ψ_n`: the `D_n`-form `γ |-> ω(γ_{D^n})`, certified on a generic
/// `D_n`-microcube.
pub fn psi(omega: &SymmetricForm) -> Result<SymmetricForm> {
    if omega.variant() != Variant::Cube {
        return Err(Error::ShapeMismatch(format!(
            "psi expects a {} form",
            Variant::Cube
        )));
    }
    let line = omega.with_variant(Variant::Line);
    let gamma = generic(Variant::Line, omega.order(), omega.point());
    certify(
        "omega(gamma_{D^n}) = psi(omega)(gamma)",
        omega.evaluate(&gamma.on_cube()?)?.as_microcube(),
        line.evaluate(&gamma)?.as_microcube(),
    )?;
    Ok(line)
}

/// `f⁺ ∸ f⁻` for tangentials of order `n+1` with a common projection to
/// order `n`, certified against `γ |-> f⁺(γ) ∸ f⁻(γ)` on a generic `γ`.
pub fn jet_diff(plus: &Jet, minus: &Jet) -> Result<SymmetricForm> {
    if plus.variant() != minus.variant() {
        return Err(Error::ShapeMismatch(format!(
            "{} vs {}",
            plus.variant(),
            minus.variant()
        )));
    }
    if plus.point() != minus.point() {
        return Err(Error::PointMismatch(format!(
            "{:?} vs {:?}",
            plus.point().coordinates(),
            minus.point().coordinates()
        )));
    }
    if plus.order() != minus.order() {
        return Err(Error::OrderMismatch(
            plus.order() as usize,
            minus.order() as usize,
        ));
    }
    let n1 = plus.order();
    if n1 == 0 {
        return Err(Error::BadOrder(
            "strong difference needs order at least 1".into(),
        ));
    }
    if plus.project(n1 - 1)? != minus.project(n1 - 1)? {
        return Err(Error::ProjectionMismatch(format!(
            "the jets differ below order {n1}"
        )));
    }
    let p = plus.p();
    let coeffs = (0..plus.q())
        .map(|j| {
            multi_indices(p, n1)
                .into_iter()
                .map(|alpha| {
                    let delta = &plus.coefficient(j, &alpha) - &minus.coefficient(j, &alpha);
                    let c =
                        delta.scale(&(Rational::from_integer(1.into()) / multi_factorial(&alpha)));
                    (alpha, c)
                })
                .collect()
        })
        .collect();
    let omega = SymmetricForm::new(plus.variant(), n1, plus.point().clone(), coeffs)?;
    let gamma = generic(plus.variant(), n1, plus.point());
    let pointwise = strong_diff(&plus.apply(&gamma)?, &minus.apply(&gamma)?)?;
    certify(
        "(f+ - f-)(gamma) = f+(gamma) - f-(gamma)",
        omega.evaluate(&gamma)?.as_microcube(),
        pointwise.as_microcube(),
    )?;
    Ok(omega)
}

/// `ω ∔ f`, certified against `γ |-> ω(γ) ∔ f(γ)` on a generic `γ`.
pub fn jet_add(omega: &SymmetricForm, f: &Jet) -> Result<Jet> {
    if omega.point() != f.point() {
        return Err(Error::PointMismatch(format!(
            "{:?} vs {:?}",
            omega.point().coordinates(),
            f.point().coordinates()
        )));
    }
    if omega.order() != f.order() {
        return Err(Error::OrderMismatch(
            omega.order() as usize,
            f.order() as usize,
        ));
    }
    if omega.variant() != f.variant() {
        return Err(Error::ShapeMismatch(format!(
            "{} vs {}",
            omega.variant(),
            f.variant()
        )));
    }
    let data = (0..f.q())
        .map(|j| {
            f.data()[j]
                .iter()
                .map(|(alpha, u)| {
                    let c = omega.coefficient(j, alpha).scale(&multi_factorial(alpha));
                    (alpha.clone(), u + &c)
                })
                .collect()
        })
        .collect();
    let sum = Jet::new(f.variant(), f.order(), f.point().clone(), data)?;
    let gamma = generic(f.variant(), f.order(), f.point());
    let pointwise = strong_add(&omega.evaluate(&gamma)?, &f.apply(&gamma)?)?;
    certify(
        "(omega + f)(gamma) = omega(gamma) + f(gamma)",
        &sum.apply(&gamma)?,
        &pointwise,
    )?;
    Ok(sum)
}

/// The form spaces of order `n` at a point of `R^p x R^q` and the matrix of
/// `Ψ_n` between their monomial bases.
#[derive(Clone, Debug)]
pub struct FormSpace {
    pub dimension: usize,
    /// Monomial basis of the requested variant.
    pub basis: Vec<SymmetricForm>,
    /// Column `b` holds the coordinates of `Ψ_n` of the `b`-th `D^n` basis
    /// form in the `D_n` basis, obtained by evaluating on `γ_{D^n}`.
    pub psi_matrix: Matrix,
    pub psi_rank: usize,
}

/// Dimension and monomial basis of the form space, together with the
/// matrix of `Ψ_n` computed by actual evaluation.
pub fn form_space_dimension(p: usize, q: usize, n: u32, variant: Variant) -> Result<FormSpace> {
    if p == 0 || q == 0 || n == 0 {
        return Err(Error::BadOrder(format!(
            "form spaces need p, q, n >= 1 (got {p}, {q}, {n})"
        )));
    }
    let point = BundlePoint::origin(p, q);
    let cube_basis = form_basis(Variant::Cube, n, &point);
    let line_basis = form_basis(Variant::Line, n, &point);

    let gamma = generic(Variant::Line, n, &point);
    let a1: Vec<SymMonomial> = (0..p)
        .map(|i| {
            let s = gamma.coefficient(i, 1).constant_term().clone();
            let m = s.terms().next().expect("generic coefficient").0.clone();
            m
        })
        .collect();
    let mut column_of: BTreeMap<(usize, SymMonomial), usize> = BTreeMap::new();
    for (k, w) in line_basis.iter().enumerate() {
        let (j, alpha) = (0..q)
            .find_map(|j| w.coefficients()[j].keys().next().map(|a| (j, a.clone())))
            .expect("basis form is nonzero");
        let mono = alpha
            .iter()
            .enumerate()
            .fold(Scalar::one(), |acc, (i, &e)| {
                &acc * &Scalar::monomial(a1[i].clone(), Rational::from_integer(1.into())).pow(e)
            });
        let key = {
            let k = mono.terms().next().expect("monomial").0.clone();
            k
        };
        column_of.insert((j, key), k);
    }

    let on_cube = gamma.on_cube()?;
    let dim = line_basis.len();
    let mut m = Matrix::zeros(dim, cube_basis.len());
    for (b, w) in cube_basis.iter().enumerate() {
        let value = w.evaluate(&on_cube)?;
        for (j, d) in value.direction()[p..].iter().enumerate() {
            for (mono, c) in d.constant_term().terms() {
                let row = column_of.get(&(j, mono.clone())).ok_or_else(|| {
                    Error::CharacterizationFailed(format!(
                        "psi of a basis form has the term {mono}"
                    ))
                })?;
                m[(*row, b)] += c;
            }
        }
    }
    let rank = m.rank();
    Ok(FormSpace {
        dimension: dim,
        basis: match variant {
            Variant::Line => line_basis,
            Variant::Cube => cube_basis,
        },
        psi_matrix: m,
        psi_rank: rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::form::form_variable;
    use crate::jets::jet::jet_from_section;
    use crate::microcube::PolyMap;
    use crate::scalar::int;

    fn sym(s: &str) -> Scalar {
        Scalar::symbol(s)
    }

    fn x(i: usize) -> Scalar {
        Scalar::from_symbol(form_variable(i))
    }

    #[test]
    fn difference_of_jets_divides_by_factorial() {
        let point = BundlePoint::origin(1, 1);
        let mut data = BTreeMap::new();
        data.insert(vec![2], Scalar::from_int(2));
        let plus = Jet::new(Variant::Line, 2, point.clone(), vec![data]).unwrap();
        let minus = Jet::zero(Variant::Line, 2, point.clone());
        let w = jet_diff(&plus, &minus).unwrap();
        assert_eq!(w.polynomial(0), x(1).pow(2));
        assert!(jet_diff(&plus, &plus).unwrap().is_zero());
    }

    #[test]
    fn add_then_diff_round_trips() {
        let point = BundlePoint::new(vec![Scalar::one(), Scalar::zero()], vec![Scalar::one()]);
        let s =
            PolyMap::with_standard_inputs(2, vec![&sym("u1").pow(3) + &(&sym("u1") * &sym("u2"))]);
        for variant in [Variant::Line, Variant::Cube] {
            for n in 1..=3 {
                let f = jet_from_section(&s, &point, n, variant).unwrap();
                let poly = &(&x(1).pow(n) * &sym("k")) + &x(2).pow(n).scale(&int(3));
                let w =
                    SymmetricForm::from_polynomials(variant, n, point.clone(), &[poly]).unwrap();
                let g = jet_add(&w, &f).unwrap();
                assert_eq!(jet_diff(&g, &f).unwrap(), w);
                assert_eq!(jet_add(&jet_diff(&g, &f).unwrap(), &f).unwrap(), g);
            }
        }
    }

    #[test]
    fn mismatched_projections_are_rejected() {
        let point = BundlePoint::origin(1, 1);
        let mut data = BTreeMap::new();
        data.insert(vec![1], Scalar::one());
        let plus = Jet::new(Variant::Line, 2, point.clone(), vec![data]).unwrap();
        let minus = Jet::zero(Variant::Line, 2, point);
        assert!(matches!(
            jet_diff(&plus, &minus),
            Err(Error::ProjectionMismatch(_))
        ));
    }

    #[test]
    fn add_checks_point_and_order() {
        let f = Jet::zero(Variant::Line, 2, BundlePoint::origin(1, 1));
        let w = SymmetricForm::zero(Variant::Line, 1, BundlePoint::origin(1, 1));
        assert!(matches!(jet_add(&w, &f), Err(Error::OrderMismatch(1, 2))));
        let w = SymmetricForm::zero(
            Variant::Line,
            2,
            BundlePoint::new(vec![Scalar::one()], vec![Scalar::zero()]),
        );
        assert!(matches!(jet_add(&w, &f), Err(Error::PointMismatch(_))));
    }

    #[test]
    fn phi_and_psi_keep_data() {
        let point = BundlePoint::new(vec![Scalar::one()], vec![Scalar::one()]);
        let s = PolyMap::with_standard_inputs(1, vec![sym("u1").pow(2)]);
        for n in 1..=3 {
            let f = jet_from_section(&s, &point, n, Variant::Cube).unwrap();
            assert_eq!(phi(&f).unwrap(), f.with_variant(Variant::Line));
        }
        let point = BundlePoint::origin(2, 1);
        let w = SymmetricForm::from_polynomials(
            Variant::Cube,
            2,
            point,
            &[(&x(1) * &x(2)).scale(&int(2))],
        )
        .unwrap();
        let line = psi(&w).unwrap();
        assert_eq!(line.polynomial(0), (&x(1) * &x(2)).scale(&int(2)));
    }

    #[test]
    fn psi_matrix_is_invertible() {
        let fs = form_space_dimension(2, 1, 2, Variant::Line).unwrap();
        assert_eq!(fs.dimension, 3);
        assert_eq!(fs.psi_rank, 3);
        let fs = form_space_dimension(1, 3, 4, Variant::Cube).unwrap();
        assert_eq!((fs.dimension, fs.psi_rank, fs.basis.len()), (3, 3, 3));
    }
}
