//! Symmetric forms with values in the vertical bundle.

use std::collections::BTreeMap;
use std::fmt;

use super::jet::{multi_indices, BundlePoint, MultiIndex, Variant};
use crate::error::{Error, Result};
use crate::microcube::{Microcube, Tangent};
use crate::scalar::{factorial, Rational, Scalar, Symbol};

/// Name of the `i`-th variable (1-based) of a form's polynomial.
pub fn form_variable(i: usize) -> Symbol {
    Symbol::new(&format!("X{i}"))
}

/// A symmetric form of order `n` at `x`, stored per fiber coordinate as a
/// homogeneous polynomial `P` of degree `n` in `p` variables.
///
/// On `D_n`-microcubes it reads `ω(γ) = P(a_1)`; on `D^n`-microcubes it
/// reads the polarization `Ω(a_{1}, ..., a_{n})` with `Ω(v, ..., v) = P(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm {
    variant: Variant,
    order: u32,
    point: BundlePoint,
    coeffs: Vec<BTreeMap<MultiIndex, Scalar>>,
}

impl fmt::Display for SymmetricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = (0..self.q())
            .map(|j| self.polynomial(j).to_string())
            .collect();
        write!(
            f,
            "{} form of order {}: [{}]",
            self.variant,
            self.order,
            ps.join(", ")
        )
    }
}

impl SymmetricForm {
    /// `coeffs[j][α]` is the coefficient of `X^α` in the `j`-th polynomial.
    pub fn new(
        variant: Variant,
        order: u32,
        point: BundlePoint,
        coeffs: Vec<BTreeMap<MultiIndex, Scalar>>,
    ) -> Result<Self> {
        if coeffs.len() != point.q() {
            return Err(Error::ArityMismatch {
                expected: point.q(),
                found: coeffs.len(),
            });
        }
        let mut clean = Vec::with_capacity(coeffs.len());
        for coord in coeffs {
            let mut m = BTreeMap::new();
            for (alpha, c) in coord {
                if alpha.len() != point.p() || alpha.iter().sum::<u32>() != order {
                    return Err(Error::BadOrder(format!(
                        "monomial {alpha:?} is not of degree {order} in {} variables",
                        point.p()
                    )));
                }
                if !c.is_zero() {
                    m.insert(alpha, c);
                }
            }
            clean.push(m);
        }
        Ok(SymmetricForm {
            variant,
            order,
            point,
            coeffs: clean,
        })
    }

    /// From polynomials in the variables `X1..Xp` (see [`form_variable`]);
    /// other symbols are treated as coefficients.
    pub fn from_polynomials(
        variant: Variant,
        order: u32,
        point: BundlePoint,
        polys: &[Scalar],
    ) -> Result<Self> {
        let vars: Vec<Symbol> = (1..=point.p()).map(form_variable).collect();
        let coeffs = polys
            .iter()
            .map(|poly| {
                let mut m: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
                for (mono, c) in poly.terms() {
                    let alpha: MultiIndex = vars.iter().map(|v| mono.exponent_of(v)).collect();
                    let rest: Vec<(Symbol, u32)> = mono
                        .factors()
                        .iter()
                        .filter(|(s, _)| !vars.contains(s))
                        .cloned()
                        .collect();
                    let mut coeff = Scalar::from_rational(c.clone());
                    for (s, e) in rest {
                        coeff = &coeff * &Scalar::from_symbol(s).pow(e);
                    }
                    let entry = m.entry(alpha).or_insert_with(Scalar::zero);
                    *entry += &coeff;
                }
                m
            })
            .collect();
        SymmetricForm::new(variant, order, point, coeffs)
    }

    pub fn zero(variant: Variant, order: u32, point: BundlePoint) -> Self {
        let coeffs = vec![BTreeMap::new(); point.q()];
        SymmetricForm::new(variant, order, point, coeffs).expect("zero form")
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn point(&self) -> &BundlePoint {
        &self.point
    }

    pub fn p(&self) -> usize {
        self.point.p()
    }

    pub fn q(&self) -> usize {
        self.point.q()
    }

    pub fn coefficients(&self) -> &[BTreeMap<MultiIndex, Scalar>] {
        &self.coeffs
    }

    pub fn coefficient(&self, j: usize, alpha: &[u32]) -> Scalar {
        self.coeffs[j]
            .get(alpha)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BTreeMap::is_empty)
    }

    /// The `j`-th polynomial in `X1..Xp`.
    pub fn polynomial(&self, j: usize) -> Scalar {
        self.coeffs[j]
            .iter()
            .map(|(alpha, c)| {
                let mut t = c.clone();
                for (i, &a) in alpha.iter().enumerate() {
                    t = &t * &Scalar::from_symbol(form_variable(i + 1)).pow(a);
                }
                t
            })
            .sum()
    }

    /// Same polynomial data read as a form of the other variant.
    pub fn with_variant(&self, variant: Variant) -> SymmetricForm {
        SymmetricForm {
            variant,
            ..self.clone()
        }
    }

    fn check_compatible(&self, other: &SymmetricForm) -> Result<()> {
        if self.point != other.point {
            return Err(Error::PointMismatch(format!(
                "{:?} vs {:?}",
                self.point.coordinates(),
                other.point.coordinates()
            )));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(
                self.order as usize,
                other.order as usize,
            ));
        }
        if self.variant != other.variant {
            return Err(Error::ShapeMismatch(format!(
                "{} vs {}",
                self.variant, other.variant
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymmetricForm) -> Result<SymmetricForm> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| {
                let mut m = a.clone();
                for (alpha, c) in b {
                    *m.entry(alpha.clone()).or_insert_with(Scalar::zero) += c;
                }
                m
            })
            .collect();
        SymmetricForm::new(self.variant, self.order, self.point.clone(), coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> SymmetricForm {
        let coeffs = self
            .coeffs
            .iter()
            .map(|m| m.iter().map(|(a, v)| (a.clone(), v * c)).collect())
            .collect();
        SymmetricForm::new(self.variant, self.order, self.point.clone(), coeffs)
            .expect("same shape")
    }

    /// Value of the form on a microcube at the base point: a vertical tangent
    /// at `x` over the microcube's scalars.
    pub fn evaluate(&self, gamma: &Microcube) -> Result<Tangent> {
        if gamma.shape() != &self.variant.shape(self.order) {
            return Err(Error::ShapeMismatch(format!(
                "{} form of order {} evaluated on {}",
                self.variant,
                self.order,
                gamma.shape()
            )));
        }
        if gamma.base() != self.point.base.as_slice() {
            return Err(Error::PointMismatch(format!(
                "microcube at {:?}, form at {:?}",
                gamma.base(),
                self.point.base
            )));
        }
        let aux = gamma.aux().clone();
        let values: Vec<_> = match self.variant {
            Variant::Line => {
                let a1: Vec<_> = (0..self.p()).map(|i| gamma.coefficient(i, 1)).collect();
                self.coeffs
                    .iter()
                    .map(|m| {
                        let mut acc = aux.zero();
                        for (alpha, c) in m {
                            let mut t = aux.constant(c.clone());
                            for (i, &a) in alpha.iter().enumerate() {
                                if a > 0 {
                                    t = &t * &a1[i].pow(a);
                                }
                            }
                            acc = &acc + &t;
                        }
                        acc
                    })
                    .collect()
            }
            Variant::Cube => {
                // P(Σ_k d_k a_{k}) has d1...dn coefficient n! Ω(a_{1}, ..., a_{n}).
                let n = self.order as usize;
                let alg = gamma.algebra();
                let lin: Vec<_> = (0..self.p())
                    .map(|i| {
                        let mut acc = alg.zero();
                        for k in 0..n {
                            let mut e = vec![0; n];
                            e[k] = 1;
                            let c = gamma.coefficient_of(i, &e);
                            acc = &acc
                                + &(&gamma.lift_aux(&c)
                                    * &gamma.lift_shape(&gamma.shape_algebra().generator(k)));
                        }
                        acc
                    })
                    .collect();
                let top = vec![1; n];
                let top_slot = gamma.shape_algebra().index_of(&top).expect("top monomial");
                let inv = Rational::from_integer(1.into()) / factorial(self.order);
                let ad = aux.dimension();
                self.coeffs
                    .iter()
                    .map(|m| {
                        let mut acc = alg.zero();
                        for (alpha, c) in m {
                            let mut t = alg.constant(c.clone());
                            for (i, &a) in alpha.iter().enumerate() {
                                if a > 0 {
                                    t = &t * &lin[i].pow(a);
                                }
                            }
                            acc = &acc + &t;
                        }
                        let cs = acc.coefficients()[top_slot * ad..(top_slot + 1) * ad].to_vec();
                        aux.from_coefficients(cs)
                            .expect("aux slice")
                            .scale_rational(&inv)
                    })
                    .collect()
            }
        };
        let mut dir: Vec<_> = (0..self.p()).map(|_| aux.zero()).collect();
        dir.extend(values);
        Tangent::new(aux, self.point.coordinates(), dir)
    }
}

/// Basis of the form space: one form `X^α e_j` per fiber coordinate `j` and
/// degree-`n` monomial `α`.
pub fn form_basis(variant: Variant, order: u32, point: &BundlePoint) -> Vec<SymmetricForm> {
    let mut out = Vec::new();
    for j in 0..point.q() {
        for alpha in multi_indices(point.p(), order) {
            let mut coeffs = vec![BTreeMap::new(); point.q()];
            coeffs[j].insert(alpha, Scalar::one());
            out.push(
                SymmetricForm::new(variant, order, point.clone(), coeffs).expect("basis form"),
            );
        }
    }
    out
}
