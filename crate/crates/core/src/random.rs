//! Reproducible random instances for property checks. Every generator takes
//! an explicit ChaCha stream so that a seed pins down a whole suite.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::jets::form::form_variable;
use crate::jets::{jet_from_section, multi_indices, BundlePoint, Jet, SymmetricForm, Variant};
use crate::microcube::PolyMap;
use crate::scalar::{rat, Scalar, Symbol};
use crate::Result;

pub use rand::SeedableRng;

/// The generator used throughout.
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational `k/m` with `|k| <= 5`, `1 <= m <= 3`.
pub fn small_rational(rng: &mut Rng8) -> Scalar {
    Scalar::from_rational(rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
}

/// A small rational that is never zero.
pub fn nonzero_rational(rng: &mut Rng8) -> Scalar {
    loop {
        let s = small_rational(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_base(rng: &mut Rng8, p: usize) -> Vec<Scalar> {
    (0..p)
        .map(|_| Scalar::from_int(rng.gen_range(-2..=2)))
        .collect()
}

fn input(i: usize) -> Scalar {
    Scalar::from_symbol(Symbol::new(&format!("u{}", i + 1)))
}

/// A random polynomial of degree at most `degree` in `u1..up`, centred at
/// `base` (a sum of terms `c (u - base)^β`).
pub fn random_polynomial(rng: &mut Rng8, base: &[Scalar], degree: u32) -> Scalar {
    let p = base.len();
    let mut out = Scalar::zero();
    for k in 0..=degree {
        for beta in multi_indices(p, k) {
            if rng.gen_bool(0.6) {
                let mut term = small_rational(rng);
                for (i, &b) in beta.iter().enumerate() {
                    term = &term * &(&input(i) - &base[i]).pow(b);
                }
                out += &term;
            }
        }
    }
    out
}

/// A polynomial map `R^k -> R^m` of degree at most `degree`.
pub fn random_poly_map(rng: &mut Rng8, k: usize, m: usize, degree: u32) -> PolyMap {
    let origin = vec![Scalar::zero(); k];
    PolyMap::with_standard_inputs(
        k,
        (0..m)
            .map(|_| random_polynomial(rng, &origin, degree))
            .collect(),
    )
}

/// A section `R^p -> R^q` of degree at most `degree` together with a point
/// on its graph.
pub fn random_section(rng: &mut Rng8, p: usize, q: usize, degree: u32) -> (PolyMap, BundlePoint) {
    let base = random_base(rng, p);
    let s = PolyMap::with_standard_inputs(
        p,
        (0..q)
            .map(|_| random_polynomial(rng, &base, degree))
            .collect(),
    );
    let fiber = s.eval(&base);
    (s, BundlePoint::new(base, fiber))
}

/// A random symmetric form of the given order at `point`.
pub fn random_form(
    rng: &mut Rng8,
    variant: Variant,
    order: u32,
    point: &BundlePoint,
) -> SymmetricForm {
    let coeffs = (0..point.q())
        .map(|_| {
            multi_indices(point.p(), order)
                .into_iter()
                .map(|alpha| (alpha, small_rational(rng)))
                .collect()
        })
        .collect();
    SymmetricForm::new(variant, order, point.clone(), coeffs).expect("well-formed random form")
}

/// A random section of degree at most `degree` whose graph passes through
/// `point`.
pub fn random_section_through(rng: &mut Rng8, point: &BundlePoint, degree: u32) -> PolyMap {
    PolyMap::with_standard_inputs(
        point.p(),
        (0..point.q())
            .map(|j| {
                let poly = random_polynomial(rng, &point.base, degree);
                let at_base =
                    PolyMap::with_standard_inputs(point.p(), vec![poly.clone()]).eval(&point.base);
                &(&poly - &at_base[0]) + &point.fiber[j]
            })
            .collect(),
    )
}

/// The jet at `point` of a random section through it (degree `order + 1`).
pub fn random_jet(rng: &mut Rng8, variant: Variant, order: u32, point: &BundlePoint) -> Jet {
    let s = random_section_through(rng, point, order + 1);
    jet_from_section(&s, point, order, variant).expect("section passes through the point")
}

/// A pair of jets of order `order >= 1` with equal projections to
/// `order - 1`, both jets of sections: the second section differs from the
/// first by a homogeneous polynomial of degree `order` centred at the base.
pub fn random_jet_pair(
    rng: &mut Rng8,
    variant: Variant,
    order: u32,
    point: &BundlePoint,
) -> Result<(Jet, Jet)> {
    let minus = random_section_through(rng, point, order + 1);
    let bump = random_form(rng, variant, order, point);
    let shift: BTreeMap<Symbol, Scalar> = (0..point.p())
        .map(|i| (form_variable(i + 1), &input(i) - &point.base[i]))
        .collect();
    let plus = PolyMap::with_standard_inputs(
        point.p(),
        minus
            .outputs()
            .iter()
            .enumerate()
            .map(|(j, s)| s + &bump.polynomial(j).substitute(&shift))
            .collect(),
    );
    Ok((
        jet_from_section(&plus, point, order, variant)?,
        jet_from_section(&minus, point, order, variant)?,
    ))
}

/// A point of `R^p x R^q` with small integer coordinates.
pub fn random_point(rng: &mut Rng8, p: usize, q: usize) -> BundlePoint {
    BundlePoint::new(random_base(rng, p), random_base(rng, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let a = random_form(&mut rng(7), Variant::Line, 2, &BundlePoint::origin(2, 2));
        let b = random_form(&mut rng(7), Variant::Line, 2, &BundlePoint::origin(2, 2));
        assert_eq!(a, b);
    }

    #[test]
    fn random_jets_sit_at_the_point() {
        let mut r = rng(3);
        let point = random_point(&mut r, 2, 1);
        let f = random_jet(&mut r, Variant::Cube, 3, &point);
        assert_eq!(f.point(), &point);
        let (plus, minus) = random_jet_pair(&mut r, Variant::Line, 2, &point).unwrap();
        assert_eq!(plus.project(1).unwrap(), minus.project(1).unwrap());
        assert_ne!(plus, minus);
    }

    #[test]
    fn sections_pass_through_their_point() {
        let (s, point) = random_section(&mut rng(11), 2, 2, 3);
        assert_eq!(s.eval(&point.base), point.fiber);
    }
}
