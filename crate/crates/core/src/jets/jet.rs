//! Tangentials in the coordinate model: truncated Taylor data acting on
//! microcubes by formal composition.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::infinitesimal::SpaceDescriptor;
use crate::microcube::{Microcube, PolyMap};
use crate::scalar::{factorial, Rational, Scalar};

pub type MultiIndex = Vec<u32>;

/// All multi-indices over `p` variables of total degree `degree`, in
/// descending lexicographic order (`x1^2, x1 x2, x2^2`).
pub fn multi_indices(p: usize, degree: u32) -> Vec<MultiIndex> {
    fn go(i: usize, left: u32, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    if p == 0 {
        return if degree == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    go(0, degree, &mut vec![0; p], &mut out);
    out
}

/// Multi-indices with `1 <= |α| <= n`, by increasing degree.
pub fn multi_indices_up_to(p: usize, n: u32) -> Vec<MultiIndex> {
    (1..=n).flat_map(|k| multi_indices(p, k)).collect()
}

/// `α! = α1! ... αp!`.
pub fn multi_factorial(alpha: &[u32]) -> Rational {
    alpha.iter().map(|&a| factorial(a)).product()
}

/// Which family of infinitesimal spaces a jet or form is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// `D_n`-microcubes (one nilpotent `d` with `d^(n+1) = 0`).
    Line,
    /// `D^n`-microcubes (`n` square-zero coordinates).
    Cube,
}

impl Variant {
    pub fn shape(self, n: u32) -> SpaceDescriptor {
        match self {
            Variant::Line => SpaceDescriptor::Line(n),
            Variant::Cube => SpaceDescriptor::Cube(n as usize),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Line => "D_n",
            Variant::Cube => "D^n",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point `x = (u, y)` of the total space `R^(p+q)` of the trivial bundle
/// `R^(p+q) -> R^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundlePoint {
    pub base: Vec<Scalar>,
    pub fiber: Vec<Scalar>,
}

impl BundlePoint {
    pub fn new(base: Vec<Scalar>, fiber: Vec<Scalar>) -> Self {
        BundlePoint { base, fiber }
    }

    /// The origin of `R^(p+q)`.
    pub fn origin(p: usize, q: usize) -> Self {
        BundlePoint {
            base: vec![Scalar::zero(); p],
            fiber: vec![Scalar::zero(); q],
        }
    }

    pub fn p(&self) -> usize {
        self.base.len()
    }

    pub fn q(&self) -> usize {
        self.fiber.len()
    }

    pub fn coordinates(&self) -> Vec<Scalar> {
        self.base.iter().chain(&self.fiber).cloned().collect()
    }
}

/// A `D_n`- or `D^n`-tangential at `point`, given by the Taylor
/// coefficients `u^j_α` (`1 <= |α| <= n`) of each fiber coordinate. It sends
/// a microcube `γ` at the base point to `(γ, y + Σ_α u_α/α! (γ - u)^α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    variant: Variant,
    order: u32,
    point: BundlePoint,
    data: Vec<BTreeMap<MultiIndex, Scalar>>,
}

impl Jet {
    /// Missing multi-indices are zero; indices outside `1..=order` are
    /// rejected.
    pub fn new(
        variant: Variant,
        order: u32,
        point: BundlePoint,
        data: Vec<BTreeMap<MultiIndex, Scalar>>,
    ) -> Result<Self> {
        if data.len() != point.q() {
            return Err(Error::ArityMismatch {
                expected: point.q(),
                found: data.len(),
            });
        }
        let mut full = Vec::with_capacity(data.len());
        for coord in data {
            let mut m: BTreeMap<MultiIndex, Scalar> = multi_indices_up_to(point.p(), order)
                .into_iter()
                .map(|a| (a, Scalar::zero()))
                .collect();
            for (alpha, c) in coord {
                match m.get_mut(&alpha) {
                    Some(slot) => *slot = c,
                    None => {
                        return Err(Error::BadOrder(format!(
                            "multi-index {alpha:?} is not of degree 1..={order} in {} variables",
                            point.p()
                        )))
                    }
                }
            }
            full.push(m);
        }
        Ok(Jet {
            variant,
            order,
            point,
            data: full,
        })
    }

    /// The jet of the constant section through `point`.
    pub fn zero(variant: Variant, order: u32, point: BundlePoint) -> Self {
        let data = vec![BTreeMap::new(); point.q()];
        Jet::new(variant, order, point, data).expect("zero jet")
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

    pub fn data(&self) -> &[BTreeMap<MultiIndex, Scalar>] {
        &self.data
    }

    pub fn coefficient(&self, j: usize, alpha: &[u32]) -> Scalar {
        self.data[j]
            .get(alpha)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Microcube shape this jet acts on.
    pub fn shape(&self) -> SpaceDescriptor {
        self.variant.shape(self.order)
    }

    /// `f(γ)` for a microcube on the base at `π(x)` of the jet's shape.
    pub fn apply(&self, gamma: &Microcube) -> Result<Microcube> {
        if gamma.shape() != &self.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{} jet of order {} applied to a microcube on {}",
                self.variant,
                self.order,
                gamma.shape()
            )));
        }
        self.compose(gamma)
    }

    /// Formal composition on a microcube of any shape. On shapes other than
    /// the jet's own this is the pseudotangential induced by the model.
    pub fn compose(&self, gamma: &Microcube) -> Result<Microcube> {
        if gamma.arity() != self.p() {
            return Err(Error::ArityMismatch {
                expected: self.p(),
                found: gamma.arity(),
            });
        }
        if gamma.base() != self.point.base.as_slice() {
            return Err(Error::PointMismatch(format!(
                "microcube at {:?}, jet over {:?}",
                gamma.base(),
                self.point.base
            )));
        }
        let alg = gamma.algebra();
        let max = self.order as usize;
        let powers: Vec<Vec<_>> = gamma
            .body()
            .iter()
            .map(|b| {
                let mut v = vec![alg.one()];
                for k in 1..=max {
                    let next = &v[k - 1] * b;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut base = gamma.base().to_vec();
        let mut body = gamma.body().to_vec();
        for (j, coord) in self.data.iter().enumerate() {
            let mut acc = alg.zero();
            for (alpha, c) in coord {
                if c.is_zero() {
                    continue;
                }
                let mut term = alg.constant(
                    c.scale(&(Rational::from_integer(1.into()) / multi_factorial(alpha))),
                );
                for (i, &a) in alpha.iter().enumerate() {
                    if a > 0 {
                        term = &term * &powers[i][a as usize];
                    }
                }
                acc = &acc + &term;
            }
            base.push(self.point.fiber[j].clone());
            body.push(acc);
        }
        let shell = Microcube::constant(gamma.shape().clone(), gamma.aux().clone(), base.clone());
        shell.with_coordinates(base, body)
    }

    /// `π_{n,m}(f)`: forget the Taylor data of degree above `m`.
    pub fn project(&self, m: u32) -> Result<Jet> {
        if m > self.order {
            return Err(Error::BadOrder(format!(
                "cannot project a jet of order {} to order {m}",
                self.order
            )));
        }
        let data = self
            .data
            .iter()
            .map(|coord| {
                coord
                    .iter()
                    .filter(|(a, _)| a.iter().sum::<u32>() <= m)
                    .map(|(a, c)| (a.clone(), c.clone()))
                    .collect()
            })
            .collect();
        Jet::new(self.variant, m, self.point.clone(), data)
    }

    /// Same Taylor data read as a tangential of the other variant.
    pub fn with_variant(&self, variant: Variant) -> Jet {
        Jet {
            variant,
            ..self.clone()
        }
    }
}

/// The `n`-jet at `x` of a polynomial section `s: R^p -> R^q` whose graph
/// passes through `x`: Taylor data are the partial derivatives of `s`.
pub fn jet_from_section(
    s: &PolyMap,
    point: &BundlePoint,
    order: u32,
    variant: Variant,
) -> Result<Jet> {
    if s.input_arity() != point.p() || s.output_arity() != point.q() {
        return Err(Error::ArityMismatch {
            expected: point.p() + point.q(),
            found: s.input_arity() + s.output_arity(),
        });
    }
    if s.eval(&point.base) != point.fiber {
        return Err(Error::NotOnGraph(format!("{:?}", point.coordinates())));
    }
    let at: BTreeMap<_, _> = s
        .inputs()
        .iter()
        .cloned()
        .zip(point.base.iter().cloned())
        .collect();
    let data = s
        .outputs()
        .iter()
        .map(|out| {
            multi_indices_up_to(point.p(), order)
                .into_iter()
                .map(|alpha| {
                    let mut d = out.clone();
                    for (i, &a) in alpha.iter().enumerate() {
                        for _ in 0..a {
                            d = d.derivative(&s.inputs()[i]);
                        }
                    }
                    (alpha, d.substitute(&at))
                })
                .collect()
        })
        .collect();
    Jet::new(variant, order, point.clone(), data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::weil::WeilAlgebra;

    fn sym(s: &str) -> Scalar {
        Scalar::symbol(s)
    }

    #[test]
    fn multi_index_counts() {
        assert_eq!(
            multi_indices(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(multi_indices(3, 2).len(), 6);
        assert_eq!(multi_indices_up_to(2, 3).len(), 2 + 3 + 4);
        assert_eq!(multi_factorial(&[2, 3]), int(12));
    }

    #[test]
    fn zero_section_gives_zero_fiber() {
        let point = BundlePoint::origin(1, 1);
        let s = PolyMap::with_standard_inputs(1, vec![Scalar::zero()]);
        let f = jet_from_section(&s, &point, 2, Variant::Line).unwrap();
        assert!(f.data()[0].values().all(Scalar::is_zero));
        let g = Microcube::generic(
            SpaceDescriptor::Line(2),
            WeilAlgebra::point(),
            vec![Scalar::zero()],
            "a",
        );
        let out = f.apply(&g).unwrap();
        assert!(out.body()[1].is_zero());
    }

    #[test]
    fn square_section_matches_expansion() {
        let point = BundlePoint::new(vec![Scalar::one()], vec![Scalar::one()]);
        let s = PolyMap::with_standard_inputs(1, vec![sym("u1").pow(2)]);
        let f = jet_from_section(&s, &point, 2, Variant::Line).unwrap();
        assert_eq!(f.coefficient(0, &[1]), Scalar::from_int(2));
        assert_eq!(f.coefficient(0, &[2]), Scalar::from_int(2));
        let g = Microcube::generic(
            SpaceDescriptor::Line(2),
            WeilAlgebra::point(),
            vec![Scalar::one()],
            "a",
        );
        let out = f.apply(&g).unwrap();
        // s(1 + d a1 + d^2 a2) = 1 + 2 a1 d + (2 a2 + a1^2) d^2
        let a1 = sym("a1_1");
        let a2 = sym("a2_1");
        assert_eq!(out.coefficient(1, 1).constant_term(), &a1.scale(&int(2)));
        assert_eq!(
            out.coefficient(1, 2).constant_term(),
            &(&a2.scale(&int(2)) + &a1.pow(2))
        );
    }

    #[test]
    fn off_graph_point_is_rejected() {
        let point = BundlePoint::new(vec![Scalar::one()], vec![Scalar::zero()]);
        let s = PolyMap::with_standard_inputs(1, vec![sym("u1")]);
        assert!(matches!(
            jet_from_section(&s, &point, 1, Variant::Line),
            Err(Error::NotOnGraph(_))
        ));
    }

    #[test]
    fn projection_drops_high_degrees() {
        let point = BundlePoint::origin(2, 1);
        let s =
            PolyMap::with_standard_inputs(2, vec![&sym("u1").pow(3) + &(&sym("u1") * &sym("u2"))]);
        let f = jet_from_section(&s, &point, 3, Variant::Line).unwrap();
        assert_eq!(f.project(3).unwrap(), f);
        let g = f.project(2).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.coefficient(0, &[1, 1]), Scalar::one());
        assert!(f.project(4).is_err());
        assert!(matches!(
            f.apply(&Microcube::constant(
                SpaceDescriptor::Line(2),
                WeilAlgebra::point(),
                vec![Scalar::zero(); 2]
            )),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
