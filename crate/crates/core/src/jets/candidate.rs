//! Coefficient-level maps to be validated against the defining conditions
//! of tangentials and symmetric forms.
//!
//! A candidate is given by polynomials in the coefficient symbols of a
//! generic input microcube (`a{slot}_{i}`, see [`input_symbol`]). Jets and
//! forms of the coordinate model convert into candidates, and arbitrary
//! candidates can be written down directly to test the validators.

use std::collections::BTreeMap;

use super::form::SymmetricForm;
use super::jet::{BundlePoint, Jet, Variant};
use crate::error::{Error, Result};
use crate::infinitesimal::SpaceDescriptor;
use crate::microcube::{eval_in, slot_label, slot_symbol, Microcube, Tangent};
use crate::scalar::{Scalar, Symbol};
use crate::weil::{WeilAlgebra, WeilElement};

/// Prefix of input coefficient symbols.
pub const INPUT_PREFIX: &str = "a";

/// Symbol standing for the coefficient of the `slot`-th shape monomial in
/// base coordinate `coord` (1-based).
pub fn input_symbol(shape: &SpaceDescriptor, exps: &[u32], coord: usize) -> Symbol {
    slot_symbol(INPUT_PREFIX, &slot_label(shape, exps), coord)
}

/// The generic input microcube a candidate is written against.
pub fn generic_input(shape: &SpaceDescriptor, aux: &WeilAlgebra, base: &[Scalar]) -> Microcube {
    Microcube::generic(shape.clone(), aux.clone(), base.to_vec(), INPUT_PREFIX)
}

fn input_map(gamma: &Microcube) -> BTreeMap<Symbol, WeilElement> {
    let mut map = BTreeMap::new();
    for slot in 1..=gamma.slot_count() {
        for i in 0..gamma.arity() {
            map.insert(
                input_symbol(gamma.shape(), gamma.slot_exponents(slot), i + 1),
                gamma.coefficient(i, slot),
            );
        }
    }
    map
}

/// Slots of `shape` whose monomials survive in `sub` (exponent vectors
/// agreeing on the common coordinates and zero beyond them).
fn truncation_map(variant: Variant, big: u32, small: u32) -> Vec<(Vec<u32>, Option<Vec<u32>>)> {
    let from = variant.shape(big).algebra();
    let to = variant.shape(small).algebra();
    from.basis()[1..]
        .iter()
        .map(|e| {
            let kept = match variant {
                Variant::Line => (e[0] <= small).then(|| e.clone()),
                Variant::Cube => e[small as usize..]
                    .iter()
                    .all(|&x| x == 0)
                    .then(|| e[..small as usize].to_vec()),
            };
            let kept = kept.filter(|k| to.index_of(k).is_some_and(|i| i > 0));
            (e.clone(), kept)
        })
        .collect()
}

/// A candidate `D_n`- or `D^n`-pseudotangential: for each output coordinate
/// (`p` base then `q` fiber) and each shape slot, a polynomial in the input
/// symbols; plus the output base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetCandidate {
    pub variant: Variant,
    pub order: u32,
    pub point: BundlePoint,
    pub out_base: Vec<Scalar>,
    /// `outputs[k][slot - 1]`.
    pub outputs: Vec<Vec<Scalar>>,
}

impl JetCandidate {
    pub fn shape(&self) -> SpaceDescriptor {
        self.variant.shape(self.order)
    }

    /// `c(γ)` for a microcube of the candidate's shape at the base point.
    pub fn apply(&self, gamma: &Microcube) -> Result<Microcube> {
        if gamma.shape() != &self.shape() {
            return Err(Error::ShapeMismatch(format!(
                "candidate on {} applied to {}",
                self.shape(),
                gamma.shape()
            )));
        }
        if gamma.base() != self.point.base.as_slice() {
            return Err(Error::PointMismatch(format!("{:?}", gamma.base())));
        }
        let aux = gamma.aux();
        let map = input_map(gamma);
        let coeffs = self
            .outputs
            .iter()
            .map(|row| row.iter().map(|poly| eval_in(aux, poly, &map)).collect())
            .collect();
        Microcube::from_coefficients(self.shape(), aux.clone(), self.out_base.clone(), coeffs)
    }

    /// Candidate projection to order `m`: inputs outside the smaller shape
    /// are set to zero and outputs outside it are dropped. For a genuine
    /// tangential this is the projection characterized by `i_d` (resp. by
    /// restriction along the coordinate projection for `D^n`), which the
    /// validator checks.
    pub fn project(&self, m: u32) -> Result<JetCandidate> {
        if m > self.order {
            return Err(Error::BadOrder(format!(
                "cannot project order {} to {m}",
                self.order
            )));
        }
        let shape = self.shape();
        let table = truncation_map(self.variant, self.order, m);
        let mut kill = BTreeMap::new();
        for (e, kept) in &table {
            if kept.is_none() {
                for i in 0..self.point.p() {
                    kill.insert(input_symbol(&shape, e, i + 1), Scalar::zero());
                }
            }
        }
        let small = self.variant.shape(m);
        let mut rename = BTreeMap::new();
        for (e, kept) in &table {
            if let Some(k) = kept {
                for i in 0..self.point.p() {
                    rename.insert(
                        input_symbol(&shape, e, i + 1),
                        Scalar::from_symbol(input_symbol(&small, k, i + 1)),
                    );
                }
            }
        }
        let subst: BTreeMap<Symbol, Scalar> = kill.into_iter().chain(rename).collect();
        let outputs = self
            .outputs
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&table)
                    .filter(|(_, (_, kept))| kept.is_some())
                    .map(|(poly, _)| poly.substitute(&subst))
                    .collect()
            })
            .collect();
        Ok(JetCandidate {
            variant: self.variant,
            order: m,
            point: self.point.clone(),
            out_base: self.out_base.clone(),
            outputs,
        })
    }
}

/// A candidate symmetric form: for each fiber coordinate, a polynomial in
/// the input symbols giving the vertical component of the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormCandidate {
    pub variant: Variant,
    pub order: u32,
    pub point: BundlePoint,
    pub outputs: Vec<Scalar>,
}

impl FormCandidate {
    pub fn shape(&self) -> SpaceDescriptor {
        self.variant.shape(self.order)
    }

    pub fn apply(&self, gamma: &Microcube) -> Result<Tangent> {
        if gamma.shape() != &self.shape() {
            return Err(Error::ShapeMismatch(format!(
                "form candidate on {} applied to {}",
                self.shape(),
                gamma.shape()
            )));
        }
        if gamma.base() != self.point.base.as_slice() {
            return Err(Error::PointMismatch(format!("{:?}", gamma.base())));
        }
        let aux = gamma.aux().clone();
        let map = input_map(gamma);
        let mut dir: Vec<WeilElement> = (0..self.point.p()).map(|_| aux.zero()).collect();
        dir.extend(self.outputs.iter().map(|poly| eval_in(&aux, poly, &map)));
        Tangent::new(aux, self.point.coordinates(), dir)
    }
}

fn constant_terms(m: &Microcube) -> Vec<Vec<Scalar>> {
    (0..m.arity())
        .map(|i| {
            (1..=m.slot_count())
                .map(|s| m.coefficient(i, s).constant_term().clone())
                .collect()
        })
        .collect()
}

impl Jet {
    /// The candidate obtained by applying the jet to the generic input.
    pub fn to_candidate(&self) -> JetCandidate {
        let gamma = generic_input(&self.shape(), &WeilAlgebra::point(), &self.point().base);
        let out = self
            .apply(&gamma)
            .expect("generic input has the jet's shape");
        JetCandidate {
            variant: self.variant(),
            order: self.order(),
            point: self.point().clone(),
            out_base: out.base().to_vec(),
            outputs: constant_terms(&out),
        }
    }
}

impl SymmetricForm {
    pub fn to_candidate(&self) -> FormCandidate {
        let shape = self.variant().shape(self.order());
        let gamma = generic_input(&shape, &WeilAlgebra::point(), &self.point().base);
        let t = self
            .evaluate(&gamma)
            .expect("generic input has the form's shape");
        FormCandidate {
            variant: self.variant(),
            order: self.order(),
            point: self.point().clone(),
            outputs: t.direction()[self.p()..]
                .iter()
                .map(|d| d.constant_term().clone())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::jet::jet_from_section;
    use crate::microcube::PolyMap;

    #[test]
    fn candidate_reproduces_jet_over_nilpotent_scalars() {
        let point = BundlePoint::origin(1, 1);
        let s = PolyMap::with_standard_inputs(
            1,
            vec![&Scalar::symbol("u1").pow(2) + &Scalar::symbol("u1").pow(3)],
        );
        for variant in [Variant::Line, Variant::Cube] {
            let f = jet_from_section(&s, &point, 3, variant).unwrap();
            let c = f.to_candidate();
            let aux = WeilAlgebra::truncated("e", 2);
            let g = Microcube::generic(f.shape(), aux.clone(), point.base.clone(), "b");
            let g = mix_nilpotent(&g, &aux);
            assert_eq!(c.apply(&g).unwrap(), f.apply(&g).unwrap());
        }
    }

    #[test]
    fn projection_of_candidates_matches_jets() {
        let point = BundlePoint::origin(2, 1);
        let s = PolyMap::with_standard_inputs(
            2,
            vec![&(&Scalar::symbol("u1") * &Scalar::symbol("u2")) + &Scalar::symbol("u2").pow(3)],
        );
        for variant in [Variant::Line, Variant::Cube] {
            let f = jet_from_section(&s, &point, 3, variant).unwrap();
            for m in 0..=3 {
                assert_eq!(
                    f.to_candidate().project(m).unwrap(),
                    f.project(m).unwrap().to_candidate()
                );
            }
        }
    }

    /// Mixes the auxiliary generator into every coefficient.
    fn mix_nilpotent(g: &Microcube, aux: &WeilAlgebra) -> Microcube {
        let e = aux.generator(0);
        let coeffs = (0..g.arity())
            .map(|i| {
                (1..=g.slot_count())
                    .map(|s| {
                        let c = g.coefficient(i, s);
                        &c + &(&c * &e)
                    })
                    .collect()
            })
            .collect();
        Microcube::from_coefficients(g.shape().clone(), aux.clone(), g.base().to_vec(), coeffs)
            .unwrap()
    }
}
