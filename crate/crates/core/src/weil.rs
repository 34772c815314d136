//! Weil algebras presented as polynomial rings modulo monomial ideals.
//!
//! A presentation `Q[x1..xk]/I` with `I` a monomial ideal in which every
//! generator is nilpotent has the finite basis of monomials not divisible by
//! any ideal generator. Elements are stored densely over that basis with
//! [`Scalar`] coefficients.
//!
//! Maps of infinitesimal spaces `E -> F` correspond to algebra morphisms
//! `W(F) -> W(E)`. [`AlgebraMorphism`] is always the algebra direction;
//! [`SpaceMap`] wraps one and exposes the space direction.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

pub type Exponents = Vec<u32>;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Renders an exponent vector as a product of named generators.
pub fn monomial_string(names: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(n, &e)| {
            if e == 1 {
                n.clone()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

struct AlgebraInner {
    generators: Vec<String>,
    ideal: Vec<Exponents>,
    basis: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

/// A finite-dimensional algebra `Q[x1..xk]/I`, `I` a monomial ideal.
#[derive(Clone)]
pub struct WeilAlgebra(Arc<AlgebraInner>);

impl PartialEq for WeilAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.generators == other.0.generators && self.0.ideal == other.0.ideal)
    }
}
impl Eq for WeilAlgebra {}

impl fmt::Debug for WeilAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeilAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .0
            .ideal
            .iter()
            .map(|m| monomial_string(&self.0.generators, m))
            .collect();
        write!(
            f,
            "Q[{}]/({})",
            self.0.generators.join(", "),
            rels.join(", ")
        )
    }
}

impl WeilAlgebra {
    /// Builds `Q[generators]/(ideal)`, minimizing the ideal and enumerating
    /// the monomial basis.
    pub fn new(generators: Vec<String>, ideal: Vec<Exponents>) -> Result<Self> {
        let k = generators.len();
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        for m in &ideal {
            if m.len() != k {
                return Err(Error::ArityMismatch {
                    expected: k,
                    found: m.len(),
                });
            }
            if m.iter().all(|&e| e == 0) {
                return Err(Error::ConstantRelation(monomial_string(&generators, m)));
            }
        }
        let ideal = minimize(ideal);
        // x_i is nilpotent iff some ideal generator is a pure power of x_i.
        let mut bounds = vec![0u32; k];
        for (i, g) in generators.iter().enumerate() {
            let pure = ideal
                .iter()
                .filter(|m| m.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|m| m[i])
                .min();
            match pure {
                Some(e) => bounds[i] = e,
                None => return Err(Error::NotWeil(g.clone())),
            }
        }
        let mut basis = Vec::new();
        let mut cur = vec![0u32; k];
        enumerate_basis(0, &bounds, &ideal, &mut cur, &mut basis);
        basis.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        Ok(Self::from_parts(generators, ideal, basis))
    }

    fn from_parts(generators: Vec<String>, ideal: Vec<Exponents>, basis: Vec<Exponents>) -> Self {
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        WeilAlgebra(Arc::new(AlgebraInner {
            generators,
            ideal,
            basis,
            index,
        }))
    }

    /// The ground field `Q`, the algebra of the one-point space.
    pub fn point() -> Self {
        Self::from_parts(Vec::new(), Vec::new(), vec![Vec::new()])
    }

    /// `Q[x]/(x^(n+1))`, the algebra of `D_n`.
    pub fn truncated(name: &str, n: u32) -> Self {
        Self::new(vec![name.to_string()], vec![vec![n + 1]]).expect("valid presentation")
    }

    pub fn generators(&self) -> &[String] {
        &self.0.generators
    }

    pub fn num_generators(&self) -> usize {
        self.0.generators.len()
    }

    pub fn ideal(&self) -> &[Exponents] {
        &self.0.ideal
    }

    pub fn basis(&self) -> &[Exponents] {
        &self.0.basis
    }

    pub fn dimension(&self) -> usize {
        self.0.basis.len()
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.0.index.get(exps).copied()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.0.generators.iter().position(|g| g == name)
    }

    /// Whether `exps` lies in the ideal.
    pub fn in_ideal(&self, exps: &[u32]) -> bool {
        self.0.ideal.iter().any(|m| divides(m, exps))
    }

    pub fn monomial_string(&self, exps: &[u32]) -> String {
        monomial_string(&self.0.generators, exps)
    }

    pub fn zero(&self) -> WeilElement {
        WeilElement {
            alg: self.clone(),
            coeffs: vec![Scalar::zero(); self.dimension()],
        }
    }

    pub fn one(&self) -> WeilElement {
        self.constant(Scalar::one())
    }

    pub fn constant(&self, c: Scalar) -> WeilElement {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    pub fn generator(&self, i: usize) -> WeilElement {
        let mut exps = vec![0; self.num_generators()];
        exps[i] = 1;
        self.monomial(&exps, Scalar::one())
    }

    pub fn generator_named(&self, name: &str) -> Option<WeilElement> {
        self.generator_index(name).map(|i| self.generator(i))
    }

    /// `c * x^exps`, reduced (zero if `exps` lies in the ideal).
    pub fn monomial(&self, exps: &[u32], c: Scalar) -> WeilElement {
        let mut e = self.zero();
        if let Some(i) = self.index_of(exps) {
            e.coeffs[i] = c;
        }
        e
    }

    pub fn from_coefficients(&self, coeffs: Vec<Scalar>) -> Result<WeilElement> {
        if coeffs.len() != self.dimension() {
            return Err(Error::ArityMismatch {
                expected: self.dimension(),
                found: coeffs.len(),
            });
        }
        Ok(WeilElement {
            alg: self.clone(),
            coeffs,
        })
    }

    /// `A (x) B`: generators of `other` are renamed on clash. The basis is the
    /// product basis, ordered with `self`'s index major.
    pub fn tensor(&self, other: &WeilAlgebra) -> WeilAlgebra {
        let (gens, ideal) = joined_presentation(self, other);
        let ka = self.num_generators();
        let kb = other.num_generators();
        let mut basis = Vec::with_capacity(self.dimension() * other.dimension());
        for a in self.basis() {
            for b in other.basis() {
                let mut m = a.clone();
                m.extend_from_slice(b);
                basis.push(m);
            }
        }
        debug_assert_eq!(gens.len(), ka + kb);
        Self::from_parts(gens, ideal, basis)
    }

    /// Embeds `self` into `self (x) other` as the first factor.
    pub fn tensor_left(&self, other: &WeilAlgebra, tensor: &WeilAlgebra) -> AlgebraMorphism {
        let kb = other.num_generators();
        let images = (0..self.num_generators())
            .map(|i| tensor.generator(i))
            .collect();
        debug_assert_eq!(tensor.num_generators(), self.num_generators() + kb);
        AlgebraMorphism::new_unchecked(self.clone(), tensor.clone(), images)
    }

    /// Embeds `other` into `self (x) other` as the second factor.
    pub fn tensor_right(&self, other: &WeilAlgebra, tensor: &WeilAlgebra) -> AlgebraMorphism {
        let ka = self.num_generators();
        let images = (0..other.num_generators())
            .map(|i| tensor.generator(ka + i))
            .collect();
        AlgebraMorphism::new_unchecked(other.clone(), tensor.clone(), images)
    }

    /// The algebra of `E1 (+) E2`: the tensor presentation plus all mixed
    /// products `x_i y_j`. Returns the algebra with the pullbacks of the two
    /// canonical projections `E1 (+) E2 -> E1`, `E1 (+) E2 -> E2`.
    pub fn oplus(&self, other: &WeilAlgebra) -> (WeilAlgebra, SpaceMap, SpaceMap) {
        let (gens, mut ideal) = joined_presentation(self, other);
        let ka = self.num_generators();
        let kb = other.num_generators();
        for i in 0..ka {
            for j in 0..kb {
                let mut m = vec![0; ka + kb];
                m[i] = 1;
                m[ka + j] = 1;
                ideal.push(m);
            }
        }
        let alg = WeilAlgebra::new(gens, ideal).expect("oplus of Weil algebras is Weil");
        let p1 = AlgebraMorphism::new_unchecked(
            self.clone(),
            alg.clone(),
            (0..ka).map(|i| alg.generator(i)).collect(),
        );
        let p2 = AlgebraMorphism::new_unchecked(
            other.clone(),
            alg.clone(),
            (0..kb).map(|j| alg.generator(ka + j)).collect(),
        );
        (alg, SpaceMap(p1), SpaceMap(p2))
    }
}

fn joined_presentation(a: &WeilAlgebra, b: &WeilAlgebra) -> (Vec<String>, Vec<Exponents>) {
    let mut gens: Vec<String> = a.generators().to_vec();
    for g in b.generators() {
        let mut name = g.clone();
        while gens.contains(&name) {
            name.push('\'');
        }
        gens.push(name);
    }
    let ka = a.num_generators();
    let kb = b.num_generators();
    let mut ideal = Vec::new();
    for m in a.ideal() {
        let mut v = m.clone();
        v.resize(ka + kb, 0);
        ideal.push(v);
    }
    for m in b.ideal() {
        let mut v = vec![0; ka];
        v.extend_from_slice(m);
        ideal.push(v);
    }
    (gens, ideal)
}

fn minimize(mut ideal: Vec<Exponents>) -> Vec<Exponents> {
    ideal.sort();
    ideal.dedup();
    let keep: Vec<bool> = ideal
        .iter()
        .enumerate()
        .map(|(i, m)| {
            !ideal
                .iter()
                .enumerate()
                .any(|(j, n)| j != i && divides(n, m))
        })
        .collect();
    ideal
        .into_iter()
        .zip(keep)
        .filter_map(|(m, k)| k.then_some(m))
        .collect()
}

fn enumerate_basis(
    pos: usize,
    bounds: &[u32],
    ideal: &[Exponents],
    cur: &mut Vec<u32>,
    out: &mut Vec<Exponents>,
) {
    if pos == bounds.len() {
        out.push(cur.clone());
        return;
    }
    for e in 0..bounds[pos] {
        cur[pos] = e;
        // Prefix with zeros in the remaining slots is divisibility-minimal.
        if ideal.iter().any(|m| divides(m, cur)) {
            break;
        }
        enumerate_basis(pos + 1, bounds, ideal, cur, out);
    }
    cur[pos] = 0;
}

/// An element of a [`WeilAlgebra`], in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct WeilElement {
    alg: WeilAlgebra,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Expression syntax: `coeff*monomial` summed, coefficients parenthesized
/// when they are not a single term.
impl fmt::Display for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let m = &self.alg.basis()[i];
            if m.iter().all(|&e| e == 0) {
                if c.num_terms() > 1 {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "{c}")?;
                }
            } else if c.is_one() {
                f.write_str(&self.alg.monomial_string(m))?;
            } else if c.num_terms() == 1 && !c.to_string().starts_with('-') {
                write!(f, "{c}*{}", self.alg.monomial_string(m))?;
            } else {
                write!(f, "({c})*{}", self.alg.monomial_string(m))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl WeilElement {
    pub fn algebra(&self) -> &WeilAlgebra {
        &self.alg
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.alg
            .index_of(exps)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Nonzero terms as (exponent vector, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.alg
            .basis()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
    }

    fn check_same(&self, other: &WeilElement) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &WeilElement) -> Result<WeilElement> {
        self.check_same(other)?;
        Ok(WeilElement {
            alg: self.alg.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &WeilElement) -> Result<WeilElement> {
        self.check_same(other)?;
        Ok(WeilElement {
            alg: self.alg.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &WeilElement) -> Result<WeilElement> {
        self.check_same(other)?;
        let alg = &self.alg;
        let basis = alg.basis();
        let mut out = vec![Scalar::zero(); alg.dimension()];
        let mut buf = vec![0u32; alg.num_generators()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, slot) in buf.iter_mut().enumerate() {
                    *slot = basis[i][k] + basis[j][k];
                }
                if let Some(t) = alg.index_of(&buf) {
                    out[t] += &(a * b);
                }
            }
        }
        Ok(WeilElement {
            alg: alg.clone(),
            coeffs: out,
        })
    }

    pub fn scale(&self, c: &Scalar) -> WeilElement {
        WeilElement {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> WeilElement {
        WeilElement {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> WeilElement {
        let mut acc = self.alg.one();
        for _ in 0..k {
            acc = &acc * self;
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> WeilElement {
        WeilElement {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Least `k >= 0` with `self^(k+1) = 0`. The search is bounded by the
    /// algebra dimension, which bounds the nilpotency index of the
    /// augmentation ideal.
    pub fn nilpotency_exponent(&self) -> Result<usize> {
        if !self.constant_term().is_zero() {
            return Err(Error::NotNilpotent(self.to_string()));
        }
        let mut power = self.clone();
        for k in 0..=self.alg.dimension() {
            if power.is_zero() {
                return Ok(k);
            }
            power = &power * self;
        }
        Err(Error::NotNilpotent(self.to_string()))
    }
}

impl<'b> Add<&'b WeilElement> for &WeilElement {
    type Output = WeilElement;
    fn add(self, rhs: &'b WeilElement) -> WeilElement {
        self.try_add(rhs).expect("operands in the same algebra")
    }
}

impl<'b> Sub<&'b WeilElement> for &WeilElement {
    type Output = WeilElement;
    fn sub(self, rhs: &'b WeilElement) -> WeilElement {
        self.try_sub(rhs).expect("operands in the same algebra")
    }
}

impl<'b> Mul<&'b WeilElement> for &WeilElement {
    type Output = WeilElement;
    fn mul(self, rhs: &'b WeilElement) -> WeilElement {
        self.try_mul(rhs).expect("operands in the same algebra")
    }
}

impl Neg for &WeilElement {
    type Output = WeilElement;
    fn neg(self) -> WeilElement {
        self.map_coefficients(|c| -c)
    }
}

/// An algebra morphism `domain -> codomain`, determined by the images of the
/// domain generators.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    domain: WeilAlgebra,
    codomain: WeilAlgebra,
    images: Vec<WeilElement>,
}

impl fmt::Debug for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .domain
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, im)| format!("{g} -> {im}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl AlgebraMorphism {
    /// Validated constructor: every image has zero constant term and every
    /// ideal generator of the domain maps to zero.
    pub fn new(
        domain: WeilAlgebra,
        codomain: WeilAlgebra,
        images: Vec<WeilElement>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(domain, codomain, images);
        m.validate()?;
        Ok(m)
    }

    /// Builds the morphism without checking relations. Use [`Self::validate`]
    /// to check it later; `apply` on an invalid morphism is not a ring map.
    pub fn new_unchecked(
        domain: WeilAlgebra,
        codomain: WeilAlgebra,
        images: Vec<WeilElement>,
    ) -> Self {
        AlgebraMorphism {
            domain,
            codomain,
            images,
        }
    }

    pub fn identity(alg: &WeilAlgebra) -> Self {
        let images = (0..alg.num_generators())
            .map(|i| alg.generator(i))
            .collect();
        Self::new_unchecked(alg.clone(), alg.clone(), images)
    }

    /// Sends every generator to zero.
    pub fn zero(domain: &WeilAlgebra, codomain: &WeilAlgebra) -> Self {
        let images = vec![codomain.zero(); domain.num_generators()];
        Self::new_unchecked(domain.clone(), codomain.clone(), images)
    }

    pub fn domain(&self) -> &WeilAlgebra {
        &self.domain
    }

    pub fn codomain(&self) -> &WeilAlgebra {
        &self.codomain
    }

    pub fn images(&self) -> &[WeilElement] {
        &self.images
    }

    pub fn validate(&self) -> Result<()> {
        if self.images.len() != self.domain.num_generators() {
            return Err(Error::ArityMismatch {
                expected: self.domain.num_generators(),
                found: self.images.len(),
            });
        }
        for (g, im) in self.domain.generators().iter().zip(&self.images) {
            if im.algebra() != &self.codomain {
                return Err(Error::AlgebraMismatch);
            }
            if !im.constant_term().is_zero() {
                return Err(Error::NonzeroConstantTerm(g.clone()));
            }
        }
        for rel in self.domain.ideal() {
            let image = self.monomial_image(rel);
            if !image.is_zero() {
                return Err(Error::RelationViolated {
                    relation: self.domain.monomial_string(rel),
                    image: image.to_string(),
                });
            }
        }
        Ok(())
    }

    fn monomial_image(&self, exps: &[u32]) -> WeilElement {
        let mut acc = self.codomain.one();
        for (im, &e) in self.images.iter().zip(exps) {
            if e > 0 {
                acc = &acc * &im.pow(e);
            }
        }
        acc
    }

    /// Simultaneous substitution of the generator images, then normal form.
    pub fn apply(&self, a: &WeilElement) -> Result<WeilElement> {
        if a.algebra() != &self.domain {
            return Err(Error::AlgebraMismatch);
        }
        let k = self.domain.num_generators();
        let mut powers: Vec<Vec<WeilElement>> = vec![vec![self.codomain.one()]; k];
        let mut out = self.codomain.zero();
        for (exps, c) in a.terms() {
            let mut acc = self.codomain.constant(c.clone());
            for (g, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[g].len() <= e as usize {
                    let next = &powers[g][powers[g].len() - 1] * &self.images[g];
                    powers[g].push(next);
                }
                acc = &acc * &powers[g][e as usize];
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// `other . self`: first `self`, then `other`.
    pub fn then(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if self.codomain != other.domain {
            return Err(Error::AlgebraMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|im| other.apply(im))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new_unchecked(
            self.domain.clone(),
            other.codomain.clone(),
            images,
        ))
    }

    /// `self (x) id_aux : domain (x) aux -> codomain (x) aux`.
    pub fn tensor_identity(&self, aux: &WeilAlgebra) -> AlgebraMorphism {
        let dom = self.domain.tensor(aux);
        let cod = self.codomain.tensor(aux);
        let emb = self.codomain.tensor_left(aux, &cod);
        let mut images: Vec<WeilElement> = self
            .images
            .iter()
            .map(|im| emb.apply(im).expect("image lives in the codomain"))
            .collect();
        let kc = self.codomain.num_generators();
        images.extend((0..aux.num_generators()).map(|i| cod.generator(kc + i)));
        Self::new_unchecked(dom, cod, images)
    }
}

/// A map of infinitesimal spaces `source -> target`, stored as the algebra
/// morphism `W(target) -> W(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap(AlgebraMorphism);

impl SpaceMap {
    /// `images[j]` is the `j`-th coordinate of the map, an element of
    /// `W(source)`. Checks that the relations of `target` are respected.
    pub fn new(
        source: &WeilAlgebra,
        target: &WeilAlgebra,
        images: Vec<WeilElement>,
    ) -> Result<Self> {
        AlgebraMorphism::new(target.clone(), source.clone(), images).map(SpaceMap)
    }

    pub fn from_pullback(m: AlgebraMorphism) -> Self {
        SpaceMap(m)
    }

    pub fn identity(alg: &WeilAlgebra) -> Self {
        SpaceMap(AlgebraMorphism::identity(alg))
    }

    /// Algebra of the source space (the codomain of the pullback).
    pub fn source(&self) -> &WeilAlgebra {
        self.0.codomain()
    }

    /// Algebra of the target space (the domain of the pullback).
    pub fn target(&self) -> &WeilAlgebra {
        self.0.domain()
    }

    pub fn pullback(&self) -> &AlgebraMorphism {
        &self.0
    }

    /// Space-level composition `next . self`.
    pub fn then(&self, next: &SpaceMap) -> Result<SpaceMap> {
        next.0.then(&self.0).map(SpaceMap)
    }

    /// For `f: E1 -> F1` and `g: E2 -> F2`, the map `f (+) g` between the
    /// direct sums, together with the algebras of source and target.
    pub fn oplus(f: &SpaceMap, g: &SpaceMap) -> Result<SpaceMap> {
        let (src, pe1, pe2) = f.source().oplus(g.source());
        let (tgt, _, _) = f.target().oplus(g.target());
        let mut images = Vec::new();
        for im in f.pullback().images() {
            images.push(pe1.pullback().apply(im)?);
        }
        for im in g.pullback().images() {
            images.push(pe2.pullback().apply(im)?);
        }
        SpaceMap::new(&src, &tgt, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn gens(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn basis_strings(a: &WeilAlgebra) -> Vec<String> {
        a.basis().iter().map(|m| a.monomial_string(m)).collect()
    }

    #[test]
    fn first_order_and_third_order_lines() {
        let d1 = WeilAlgebra::new(gens(&["x"]), vec![vec![2]]).unwrap();
        assert_eq!(basis_strings(&d1), ["1", "x"]);
        let d3 = WeilAlgebra::new(gens(&["x"]), vec![vec![4]]).unwrap();
        assert_eq!(basis_strings(&d3), ["1", "x", "x^2", "x^3"]);
    }

    #[test]
    fn first_order_neighbourhood_of_two() {
        let a = WeilAlgebra::new(
            gens(&["x1", "x2"]),
            vec![vec![2, 0], vec![0, 2], vec![1, 1]],
        )
        .unwrap();
        assert_eq!(a.dimension(), 3);
    }

    #[test]
    fn rejects_non_nilpotent_and_duplicates() {
        let e = WeilAlgebra::new(gens(&["x", "y"]), vec![vec![2, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(e, Error::NotWeil("y".into()));
        let e = WeilAlgebra::new(gens(&["x", "x"]), vec![vec![2, 0], vec![0, 2]]).unwrap_err();
        assert_eq!(e, Error::DuplicateGenerator("x".into()));
        let e = WeilAlgebra::new(gens(&["x"]), vec![vec![0]]).unwrap_err();
        assert!(matches!(e, Error::ConstantRelation(_)));
    }

    #[test]
    fn ideal_is_minimized() {
        let a = WeilAlgebra::new(gens(&["x"]), vec![vec![3], vec![5], vec![3]]).unwrap();
        assert_eq!(a.ideal(), &[vec![3]]);
    }

    #[test]
    fn multiplication_truncates() {
        let a = WeilAlgebra::truncated("d", 3);
        let d = a.generator(0);
        assert!((&d * &d.pow(3)).is_zero());
        let s = &d + &d.pow(2);
        let expected = &d.pow(2) + &d.pow(3).scale_rational(&int(2));
        assert_eq!(s.pow(2), expected);
    }

    #[test]
    fn tensor_and_oplus_dimensions() {
        let d = WeilAlgebra::truncated("d", 1);
        let t = d.tensor(&d);
        assert_eq!(t.generators(), &["d".to_string(), "d'".to_string()]);
        assert_eq!(t.dimension(), 4);
        assert_eq!(d.tensor(&WeilAlgebra::truncated("d", 3)).dimension(), 8);
        let (s, _, _) = WeilAlgebra::truncated("x", 3).oplus(&WeilAlgebra::truncated("y", 1));
        assert_eq!(basis_strings(&s), ["1", "x", "y", "x^2", "x^3"]);
        let (dd, _, _) = d.oplus(&d);
        assert_eq!(dd.dimension(), 3);
    }

    #[test]
    fn morphism_checks_relations_in_one_direction_only() {
        let d1 = WeilAlgebra::truncated("d", 1);
        let d2 = WeilAlgebra::truncated("d", 2);
        // D -> D_2, d |-> d: pullback W(D_2) -> W(D), x |-> x; x^3 |-> 0.
        assert!(SpaceMap::new(&d1, &d2, vec![d1.generator(0)]).is_ok());
        // D_2 -> D, d |-> d: x^2 |-> x^2 != 0 in W(D_2).
        let err = SpaceMap::new(&d2, &d1, vec![d2.generator(0)]).unwrap_err();
        assert!(matches!(err, Error::RelationViolated { .. }));
    }

    #[test]
    fn constant_term_rejected() {
        let d1 = WeilAlgebra::truncated("d", 1);
        let im = &d1.one() + &d1.generator(0);
        let err = AlgebraMorphism::new(d1.clone(), d1.clone(), vec![im]).unwrap_err();
        assert_eq!(err, Error::NonzeroConstantTerm("d".into()));
    }

    #[test]
    fn substitution_of_sum_into_square() {
        let d2 = WeilAlgebra::truncated("x", 2);
        let sq = WeilAlgebra::new(gens(&["d1", "d2"]), vec![vec![2, 0], vec![0, 2]]).unwrap();
        let sum = &sq.generator(0) + &sq.generator(1);
        let m = AlgebraMorphism::new(d2.clone(), sq.clone(), vec![sum]).unwrap();
        let x2 = d2.generator(0).pow(2);
        let expected = sq.monomial(&[1, 1], Scalar::from_int(2));
        assert_eq!(m.apply(&x2).unwrap(), expected);
    }

    #[test]
    fn nilpotency_exponents() {
        let a = WeilAlgebra::truncated("d", 3);
        let d = a.generator(0);
        assert_eq!(d.nilpotency_exponent().unwrap(), 3);
        assert_eq!(d.pow(2).nilpotency_exponent().unwrap(), 1);
        assert_eq!(a.zero().nilpotency_exponent().unwrap(), 0);
        assert!(a.one().nilpotency_exponent().is_err());
    }

    #[test]
    fn projection_after_injection_is_identity() {
        let a = WeilAlgebra::truncated("x", 2);
        let b = WeilAlgebra::truncated("y", 1);
        let (s, pa, _) = a.oplus(&b);
        // injection A -> A (+) B, pulled back: x |-> x, y |-> 0
        let inj = SpaceMap::new(&a, &s, vec![a.generator(0), a.zero()]).unwrap();
        let round = inj.then(&pa).unwrap();
        assert_eq!(round, SpaceMap::identity(&a));
    }
}
