//! Microcubes in coordinates.
//!
//! A map `γ` from an infinitesimal space `E` into `R^p` is a tuple of
//! truncated polynomials: `γ = base + body`, where each body coordinate is an
//! element of `W(E) (x) K` with no component on the unit monomial of `W(E)`.
//! `K` is the *scalar extension*: an auxiliary Weil algebra of extra
//! nilpotent scalars (`e ∈ D_l`, `d ∈ D_n`, ...) that quantified statements
//! such as "for any `e ∈ D_l`" are evaluated over. Free symbols in the scalar
//! coefficients stand for generic real parameters.
//!
//! All operations that precompose `γ` with a map of infinitesimal spaces
//! (restriction, scaling, permutation, `i_d`, composition with a simple
//! polynomial, summation onto a simplicial space) go through
//! [`Microcube::reparametrize`], which validates the map against the
//! relations of the source shape.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::infinitesimal::{sum_map, SimplicialSpace, SpaceDescriptor};
use crate::scalar::{factorial, Scalar, Symbol};
use crate::weil::{AlgebraMorphism, SpaceMap, WeilAlgebra, WeilElement};

/// Evaluates a polynomial with some symbols replaced by algebra elements.
/// Symbols not in `map` stay in the coefficients.
pub fn eval_in(alg: &WeilAlgebra, s: &Scalar, map: &BTreeMap<Symbol, WeilElement>) -> WeilElement {
    let mut out = alg.zero();
    let mut cache: BTreeMap<(Symbol, u32), WeilElement> = BTreeMap::new();
    for (m, c) in s.terms() {
        let mut kept = crate::scalar::SymMonomial::one();
        let mut acc: Option<WeilElement> = None;
        for (sym, e) in m.factors() {
            match map.get(sym) {
                Some(v) => {
                    let p = cache
                        .entry((sym.clone(), *e))
                        .or_insert_with(|| v.pow(*e))
                        .clone();
                    acc = Some(match acc {
                        None => p,
                        Some(a) => &a * &p,
                    });
                }
                None => {
                    kept = kept_mul(&kept, sym, *e);
                }
            }
        }
        let coeff = Scalar::monomial(kept, c.clone());
        let term = match acc {
            None => alg.constant(coeff),
            Some(a) => a.scale(&coeff),
        };
        out = &out + &term;
    }
    out
}

fn kept_mul(m: &crate::scalar::SymMonomial, sym: &Symbol, e: u32) -> crate::scalar::SymMonomial {
    let s = Scalar::monomial(m.clone(), crate::scalar::int(1))
        * Scalar::from_symbol(sym.clone()).pow(e);
    let out = s.terms().next().map(|(m, _)| m.clone()).unwrap_or_default();
    out
}

/// Name of the generic coefficient symbol for a slot of a microcube, e.g.
/// `a2_1` (coefficient of `d^2`, coordinate 1) or `a13_2` (coefficient of
/// `d1*d3`, coordinate 2).
pub fn slot_symbol(prefix: &str, label: &str, coord: usize) -> Symbol {
    Symbol::new(&format!("{prefix}{label}_{coord}"))
}

/// Label of a shape basis monomial used in generic symbol names.
pub fn slot_label(shape: &SpaceDescriptor, exps: &[u32]) -> String {
    if shape.line_order().is_some() && exps.len() == 1 {
        return exps[0].to_string();
    }
    if exps.iter().all(|&e| e <= 1) {
        return exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 1)
            .map(|(i, _)| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join("");
    }
    exps.iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join("_")
}

#[derive(Clone, PartialEq, Eq)]
pub struct Microcube {
    shape: SpaceDescriptor,
    shape_alg: WeilAlgebra,
    aux: WeilAlgebra,
    alg: WeilAlgebra,
    base: Vec<Scalar>,
    body: Vec<WeilElement>,
}

impl fmt::Debug for Microcube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The cube literal syntax of the command line: coefficient lists are given
/// per shape monomial (in basis order), one entry per coordinate.
impl fmt::Display for Microcube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base: Vec<String> = self.base.iter().map(|b| b.to_string()).collect();
        write!(f, "cube {} base [{}] coeffs [", self.shape, base.join(", "))?;
        for slot in 1..self.shape_alg.dimension() {
            if slot > 1 {
                f.write_str(", ")?;
            }
            let cs: Vec<String> = (0..self.arity())
                .map(|i| self.coefficient(i, slot).to_string())
                .collect();
            write!(f, "[{}]", cs.join(", "))?;
        }
        f.write_str("]")
    }
}

impl Microcube {
    pub fn new(
        shape: SpaceDescriptor,
        aux: WeilAlgebra,
        base: Vec<Scalar>,
        body: Vec<WeilElement>,
    ) -> Result<Self> {
        let shape_alg = shape.algebra();
        let alg = shape_alg.tensor(&aux);
        Self::assemble(shape, shape_alg, aux, alg, base, body)
    }

    fn assemble(
        shape: SpaceDescriptor,
        shape_alg: WeilAlgebra,
        aux: WeilAlgebra,
        alg: WeilAlgebra,
        base: Vec<Scalar>,
        body: Vec<WeilElement>,
    ) -> Result<Self> {
        if base.len() != body.len() {
            return Err(Error::ArityMismatch {
                expected: base.len(),
                found: body.len(),
            });
        }
        for b in &body {
            if b.algebra() != &alg {
                return Err(Error::AlgebraMismatch);
            }
            if b.coefficients()[..aux.dimension()]
                .iter()
                .any(|c| !c.is_zero())
            {
                return Err(Error::ShapeMismatch(format!(
                    "body {b} has a component at the origin"
                )));
            }
        }
        Ok(Microcube {
            shape,
            shape_alg,
            aux,
            alg,
            base,
            body,
        })
    }

    /// Builds a microcube from its coefficients: `coeffs[i][slot - 1]` is the
    /// coefficient (in `aux`) of the `slot`-th shape basis monomial in
    /// coordinate `i`.
    pub fn from_coefficients(
        shape: SpaceDescriptor,
        aux: WeilAlgebra,
        base: Vec<Scalar>,
        coeffs: Vec<Vec<WeilElement>>,
    ) -> Result<Self> {
        let shape_alg = shape.algebra();
        let alg = shape_alg.tensor(&aux);
        let slots = shape_alg.dimension() - 1;
        let ad = aux.dimension();
        let mut body = Vec::with_capacity(coeffs.len());
        for row in &coeffs {
            if row.len() != slots {
                return Err(Error::ArityMismatch {
                    expected: slots,
                    found: row.len(),
                });
            }
            let mut cs = vec![Scalar::zero(); alg.dimension()];
            for (k, c) in row.iter().enumerate() {
                if c.algebra() != &aux {
                    return Err(Error::AlgebraMismatch);
                }
                for (a, v) in c.coefficients().iter().enumerate() {
                    cs[(k + 1) * ad + a] = v.clone();
                }
            }
            body.push(alg.from_coefficients(cs)?);
        }
        Self::assemble(shape, shape_alg, aux, alg, base, body)
    }

    /// Microcube whose coefficients are fresh symbols `{prefix}{label}_{i}`.
    pub fn generic(
        shape: SpaceDescriptor,
        aux: WeilAlgebra,
        base: Vec<Scalar>,
        prefix: &str,
    ) -> Self {
        let shape_alg = shape.algebra();
        let coeffs = (0..base.len())
            .map(|i| {
                shape_alg.basis()[1..]
                    .iter()
                    .map(|m| {
                        let sym = slot_symbol(prefix, &slot_label(&shape, m), i + 1);
                        aux.constant(Scalar::from_symbol(sym))
                    })
                    .collect()
            })
            .collect();
        Self::from_coefficients(shape, aux, base, coeffs).expect("well-formed generic microcube")
    }

    /// The constant microcube at `base`.
    pub fn constant(shape: SpaceDescriptor, aux: WeilAlgebra, base: Vec<Scalar>) -> Self {
        let shape_alg = shape.algebra();
        let alg = shape_alg.tensor(&aux);
        let body = vec![alg.zero(); base.len()];
        Self::assemble(shape, shape_alg, aux, alg, base, body).expect("constant microcube")
    }

    pub fn shape(&self) -> &SpaceDescriptor {
        &self.shape
    }

    pub fn shape_algebra(&self) -> &WeilAlgebra {
        &self.shape_alg
    }

    pub fn aux(&self) -> &WeilAlgebra {
        &self.aux
    }

    /// `W(shape) (x) aux`, where the body lives.
    pub fn algebra(&self) -> &WeilAlgebra {
        &self.alg
    }

    pub fn arity(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[Scalar] {
        &self.base
    }

    pub fn body(&self) -> &[WeilElement] {
        &self.body
    }

    /// `base_i + body_i` as an element of [`Self::algebra`].
    pub fn value(&self, i: usize) -> WeilElement {
        &self.alg.constant(self.base[i].clone()) + &self.body[i]
    }

    /// Number of coefficient slots (shape basis monomials other than 1).
    pub fn slot_count(&self) -> usize {
        self.shape_alg.dimension() - 1
    }

    /// Exponent vector of a slot (1-based, index into the shape basis).
    pub fn slot_exponents(&self, slot: usize) -> &[u32] {
        &self.shape_alg.basis()[slot]
    }

    /// Coefficient of the `slot`-th shape basis monomial in coordinate `i`.
    pub fn coefficient(&self, i: usize, slot: usize) -> WeilElement {
        let ad = self.aux.dimension();
        let cs = self.body[i].coefficients()[slot * ad..(slot + 1) * ad].to_vec();
        self.aux.from_coefficients(cs).expect("aux slice")
    }

    /// Coefficient of the shape monomial with the given exponents.
    pub fn coefficient_of(&self, i: usize, exps: &[u32]) -> WeilElement {
        match self.shape_alg.index_of(exps) {
            Some(0) | None => self.aux.zero(),
            Some(slot) => self.coefficient(i, slot),
        }
    }

    /// Same microcube seen over a larger scalar extension `aux (x) extra`.
    pub fn extend_scalars(&self, extra: &WeilAlgebra) -> Microcube {
        let aux = self.aux.tensor(extra);
        let emb = self.aux.tensor_left(extra, &aux);
        let coeffs = (0..self.arity())
            .map(|i| {
                (1..=self.slot_count())
                    .map(|s| emb.apply(&self.coefficient(i, s)).expect("aux element"))
                    .collect()
            })
            .collect();
        Self::from_coefficients(self.shape.clone(), aux, self.base.clone(), coeffs)
            .expect("extension preserves shape")
    }

    /// Maps an element of the shape algebra into `W(shape) (x) aux`.
    pub fn lift_shape(&self, e: &WeilElement) -> WeilElement {
        lift_shape(&self.alg, &self.aux, e)
    }

    /// Maps an element of `aux` into `W(shape) (x) aux`.
    pub fn lift_aux(&self, e: &WeilElement) -> WeilElement {
        lift_aux(&self.alg, e)
    }

    /// Precomposes with the map `new_shape -> shape` whose pullback sends the
    /// `j`-th shape generator to `images[j] ∈ W(new_shape) (x) aux`
    /// (auxiliary generators are fixed). The map is checked against the
    /// relations of the current shape.
    pub fn reparametrize(
        &self,
        new_shape: SpaceDescriptor,
        images: Vec<WeilElement>,
    ) -> Result<Microcube> {
        let new_shape_alg = new_shape.algebra();
        let new_alg = new_shape_alg.tensor(&self.aux);
        if images.len() != self.shape_alg.num_generators() {
            return Err(Error::ArityMismatch {
                expected: self.shape_alg.num_generators(),
                found: images.len(),
            });
        }
        let ks = new_shape_alg.num_generators();
        let mut all = images;
        all.extend((0..self.aux.num_generators()).map(|j| new_alg.generator(ks + j)));
        let m = AlgebraMorphism::new(self.alg.clone(), new_alg.clone(), all)?;
        let body = self
            .body
            .iter()
            .map(|b| m.apply(b))
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(
            new_shape,
            new_shape_alg,
            self.aux.clone(),
            new_alg,
            self.base.clone(),
            body,
        )
    }

    /// `γ ∘ map` for a map `new_shape -> shape` of infinitesimal spaces.
    pub fn restrict(&self, map: &SpaceMap, new_shape: SpaceDescriptor) -> Result<Microcube> {
        if map.target() != &self.shape_alg {
            return Err(Error::ShapeMismatch(format!(
                "map lands in {}, microcube is defined on {}",
                map.target(),
                self.shape_alg
            )));
        }
        let new_shape_alg = new_shape.algebra();
        if map.source() != &new_shape_alg {
            return Err(Error::ShapeMismatch(format!(
                "map starts at {}, expected {}",
                map.source(),
                new_shape_alg
            )));
        }
        let new_alg = new_shape_alg.tensor(&self.aux);
        let images = map
            .pullback()
            .images()
            .iter()
            .map(|im| lift_shape(&new_alg, &self.aux, im))
            .collect();
        self.reparametrize(new_shape, images)
    }

    /// Restriction of a `D_n`-microcube to `D_m`, `m <= n`.
    pub fn restrict_to_line(&self, m: u32) -> Result<Microcube> {
        let n = self.require_line()?;
        if m > n {
            return Err(Error::BadOrder(format!("cannot restrict D_{n} to D_{m}")));
        }
        let shape = SpaceDescriptor::Line(m);
        let new_alg = shape.algebra().tensor(&self.aux);
        self.reparametrize(shape, vec![new_alg.generator(0)])
    }

    /// Restriction of a microcube on a simplicial shape to a smaller
    /// simplicial space of the same degree.
    pub fn restrict_to_simplicial(&self, sub: &SimplicialSpace) -> Result<Microcube> {
        let own = self
            .shape
            .as_simplicial()
            .ok_or_else(|| Error::ShapeMismatch(format!("{} is not simplicial", self.shape)))?;
        let incl = crate::infinitesimal::inclusion(sub, &own)?;
        self.restrict(&incl, SpaceDescriptor::from_simplicial(sub.clone()))
    }

    fn require_line(&self) -> Result<u32> {
        self.shape.line_order().ok_or_else(|| {
            Error::ShapeMismatch(format!("expected a D_n-microcube, got {}", self.shape))
        })
    }

    fn require_cube(&self) -> Result<usize> {
        self.shape.cube_order().ok_or_else(|| {
            Error::ShapeMismatch(format!("expected a D^n-microcube, got {}", self.shape))
        })
    }

    /// `γ_{D(m;S)}: (d1..dm) |-> γ(d1 + ... + dm)` for a `D_n`-microcube.
    pub fn on_simplicial(&self, s: &SimplicialSpace) -> Result<Microcube> {
        let n = self.require_line()?;
        let dim = s.dimension();
        if dim > n as usize {
            return Err(Error::DimensionTooLarge {
                dimension: dim,
                order: n as usize,
            });
        }
        let sm = sum_map(s, n)?;
        let shape = SpaceDescriptor::from_simplicial(s.clone());
        let new_alg = shape.algebra().tensor(&self.aux);
        let images = vec![lift_shape(&new_alg, &self.aux, &sm.pullback().images()[0])];
        self.reparametrize(shape, images)
    }

    /// `γ_{D^n}` for a `D_n`-microcube.
    pub fn on_cube(&self) -> Result<Microcube> {
        let n = self.require_line()?;
        self.on_simplicial(&SimplicialSpace::cube(n as usize))
    }

    /// `(αγ)(d) = γ(αd)` for a `D_n`-microcube.
    pub fn scale(&self, alpha: &Scalar) -> Result<Microcube> {
        self.require_line()?;
        let new_alg = self.alg.clone();
        let d = new_alg.generator(0).scale(alpha);
        self.reparametrize(self.shape.clone(), vec![d])
    }

    /// `(α ·_i γ)(d1..dn) = γ(d1, .., α d_i, .., dn)` for a `D^n`-microcube,
    /// `1 <= i <= n`.
    pub fn scale_axis(&self, alpha: &Scalar, i: usize) -> Result<Microcube> {
        let n = self.require_cube()?;
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange(i));
        }
        let images = (0..self.shape_alg.num_generators())
            .map(|j| {
                let g = self.alg.generator(j);
                if j + 1 == i {
                    g.scale(alpha)
                } else {
                    g
                }
            })
            .collect();
        self.reparametrize(self.shape.clone(), images)
    }

    /// `Σ_σ(γ)(d1..dn) = γ(d_σ(1), .., d_σ(n))`, `sigma` given 1-based as
    /// `[σ(1), .., σ(n)]`.
    pub fn permute(&self, sigma: &[usize]) -> Result<Microcube> {
        let n = self.require_cube()?;
        let mut seen = vec![false; n];
        if sigma.len() != n {
            return Err(Error::BadPermutation(sigma.to_vec()));
        }
        for &s in sigma {
            if s == 0 || s > n || seen[s - 1] {
                return Err(Error::BadPermutation(sigma.to_vec()));
            }
            seen[s - 1] = true;
        }
        let images = sigma.iter().map(|&s| self.alg.generator(s - 1)).collect();
        self.reparametrize(self.shape.clone(), images)
    }

    /// `i_d(γ)(d') = γ(d d')`: a `D_(n+1)`-microcube from a `D_n`-microcube,
    /// where `d ∈ aux` satisfies `d^(n+1) = 0`.
    pub fn i_d(&self, d: &WeilElement) -> Result<Microcube> {
        let n = self.require_line()?;
        if d.algebra() != &self.aux {
            return Err(Error::AlgebraMismatch);
        }
        if !d.constant_term().is_zero() || !d.pow(n + 1).is_zero() {
            return Err(Error::ScalarNotNilpotent(d.to_string()));
        }
        let shape = SpaceDescriptor::Line(n + 1);
        let new_alg = shape.algebra().tensor(&self.aux);
        let image = &lift_aux(&new_alg, d) * &new_alg.generator(0);
        self.reparametrize(shape, vec![image])
    }

    /// `γ ∘ ρ` for a `D_l`-microcube `γ` and a simple polynomial `ρ` of
    /// `d ∈ D_n` with `dim_n ρ = l`.
    pub fn compose_simple(&self, rho: &SimplePoly) -> Result<Microcube> {
        let l = self.require_line()?;
        if rho.aux() != &self.aux {
            return Err(Error::AlgebraMismatch);
        }
        let dim = rho.dimension()?;
        if dim != l as usize {
            return Err(Error::DimensionMismatch {
                expected: l as usize,
                found: dim,
            });
        }
        self.reparametrize(
            SpaceDescriptor::Line(rho.order()),
            vec![rho.element().clone()],
        )
    }

    /// `F ∘ γ`, expanded and truncated.
    pub fn pushforward(&self, f: &PolyMap) -> Result<Microcube> {
        if f.input_arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: f.input_arity(),
                found: self.arity(),
            });
        }
        let map: BTreeMap<Symbol, WeilElement> = f
            .inputs()
            .iter()
            .cloned()
            .zip((0..self.arity()).map(|i| self.value(i)))
            .collect();
        let scalar_map: BTreeMap<Symbol, Scalar> = f
            .inputs()
            .iter()
            .cloned()
            .zip(self.base.iter().cloned())
            .collect();
        let mut base = Vec::new();
        let mut body = Vec::new();
        for out in f.outputs() {
            let v = eval_in(&self.alg, out, &map);
            let b = out.substitute(&scalar_map);
            let mut cs = v.coefficients().to_vec();
            debug_assert_eq!(cs[0], b);
            cs[0] = Scalar::zero();
            base.push(b);
            body.push(self.alg.from_coefficients(cs)?);
        }
        Self::assemble(
            self.shape.clone(),
            self.shape_alg.clone(),
            self.aux.clone(),
            self.alg.clone(),
            base,
            body,
        )
    }

    /// Coordinates `range` of the microcube (e.g. the base part of a
    /// microcube on `R^(p+q)`).
    pub fn components(&self, range: std::ops::Range<usize>) -> Microcube {
        Microcube {
            shape: self.shape.clone(),
            shape_alg: self.shape_alg.clone(),
            aux: self.aux.clone(),
            alg: self.alg.clone(),
            base: self.base[range.clone()].to_vec(),
            body: self.body[range].to_vec(),
        }
    }

    /// Same shape and scalars, new coordinates. `body` must live in
    /// [`Self::algebra`].
    pub fn with_coordinates(&self, base: Vec<Scalar>, body: Vec<WeilElement>) -> Result<Microcube> {
        Self::assemble(
            self.shape.clone(),
            self.shape_alg.clone(),
            self.aux.clone(),
            self.alg.clone(),
            base,
            body,
        )
    }

    /// Human-readable first difference between two microcubes, `None` when
    /// they are equal.
    pub fn describe_difference(&self, other: &Microcube) -> Option<String> {
        if self.shape != other.shape || self.aux != other.aux {
            return Some(format!("shapes differ: {} vs {}", self.shape, other.shape));
        }
        if self.arity() != other.arity() {
            return Some(format!(
                "arities differ: {} vs {}",
                self.arity(),
                other.arity()
            ));
        }
        for i in 0..self.arity() {
            if self.base[i] != other.base[i] {
                return Some(format!(
                    "coordinate {}, base point: {} vs {}",
                    i + 1,
                    self.base[i],
                    other.base[i]
                ));
            }
        }
        self.first_difference(other, 1..=self.slot_count())
    }

    /// The first coefficient slot where two microcubes of the same shape
    /// differ, rendered for error messages.
    fn first_difference(
        &self,
        other: &Microcube,
        slots: impl Iterator<Item = usize>,
    ) -> Option<String> {
        for slot in slots {
            for i in 0..self.arity() {
                let a = self.coefficient(i, slot);
                let b = other.coefficient(i, slot);
                if a != b {
                    return Some(format!(
                        "coordinate {}, coefficient of {}: {} vs {}",
                        i + 1,
                        self.shape_alg.monomial_string(self.slot_exponents(slot)),
                        a,
                        b
                    ));
                }
            }
        }
        None
    }

    /// Top slot and normalizing factor for the strong operations.
    fn top_slot(&self) -> Result<(usize, crate::scalar::Rational)> {
        if let Some(n) = self.shape.line_order() {
            if n >= 1 {
                return Ok((self.slot_count(), crate::scalar::int(1)));
            }
        }
        if let Some(n) = self.shape.cube_order() {
            if n >= 1 {
                return Ok((self.slot_count(), factorial(n as u32)));
            }
        }
        Err(Error::ShapeMismatch(format!(
            "strong difference needs D_(n+1) or D^(n+1), got {}",
            self.shape
        )))
    }

    fn check_compatible(&self, other: &Microcube) -> Result<()> {
        if self.shape != other.shape || self.aux != other.aux {
            return Err(Error::ShapeMismatch(format!(
                "{} vs {}",
                self.shape, other.shape
            )));
        }
        if self.base != other.base {
            return Err(Error::BaseMismatch(
                format!("{:?}", self.base),
                format!("{:?}", other.base),
            ));
        }
        Ok(())
    }
}

pub(crate) fn lift_shape(alg: &WeilAlgebra, aux: &WeilAlgebra, e: &WeilElement) -> WeilElement {
    let ad = aux.dimension();
    let mut cs = vec![Scalar::zero(); alg.dimension()];
    for (s, c) in e.coefficients().iter().enumerate() {
        cs[s * ad] = c.clone();
    }
    alg.from_coefficients(cs).expect("tensor layout")
}

pub(crate) fn lift_aux(alg: &WeilAlgebra, e: &WeilElement) -> WeilElement {
    let mut cs = vec![Scalar::zero(); alg.dimension()];
    for (a, c) in e.coefficients().iter().enumerate() {
        cs[a] = c.clone();
    }
    alg.from_coefficients(cs).expect("tensor layout")
}

/// A tangent vector: a microcube on `D`, `t(d) = base + d * direction`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tangent(Microcube);

impl fmt::Debug for Tangent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir: Vec<String> = self.direction().iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "Tangent(base {:?}, direction [{}])",
            self.0.base,
            dir.join(", ")
        )
    }
}

impl Tangent {
    pub fn new(aux: WeilAlgebra, base: Vec<Scalar>, direction: Vec<WeilElement>) -> Result<Self> {
        let coeffs = direction.into_iter().map(|d| vec![d]).collect();
        Microcube::from_coefficients(SpaceDescriptor::Line(1), aux, base, coeffs).map(Tangent)
    }

    pub fn from_microcube(m: Microcube) -> Result<Self> {
        match m.shape() {
            SpaceDescriptor::Line(1) => Ok(Tangent(m)),
            other => Err(Error::ShapeMismatch(format!(
                "a tangent lives on D, not {other}"
            ))),
        }
    }

    pub fn zero(aux: WeilAlgebra, base: Vec<Scalar>) -> Self {
        let dir = vec![aux.zero(); base.len()];
        Tangent::new(aux, base, dir).expect("zero tangent")
    }

    pub fn as_microcube(&self) -> &Microcube {
        &self.0
    }

    pub fn base(&self) -> &[Scalar] {
        self.0.base()
    }

    pub fn aux(&self) -> &WeilAlgebra {
        self.0.aux()
    }

    pub fn direction(&self) -> Vec<WeilElement> {
        (0..self.0.arity())
            .map(|i| self.0.coefficient(i, 1))
            .collect()
    }

    /// `(αt)(d) = t(αd)`.
    pub fn scale(&self, alpha: &Scalar) -> Tangent {
        Tangent(self.0.scale(alpha).expect("tangents are D-microcubes"))
    }

    /// Fiberwise sum of tangents at the same point.
    pub fn add(&self, other: &Tangent) -> Result<Tangent> {
        self.0.check_compatible(&other.0)?;
        let dir = self
            .direction()
            .iter()
            .zip(other.direction())
            .map(|(a, b)| a + &b)
            .collect();
        Tangent::new(self.aux().clone(), self.base().to_vec(), dir)
    }

    /// Vertical for a projection onto the first `p` coordinates.
    pub fn is_vertical(&self, p: usize) -> bool {
        self.direction()[..p].iter().all(WeilElement::is_zero)
    }

    pub fn pushforward(&self, f: &PolyMap) -> Result<Tangent> {
        self.0.pushforward(f).map(Tangent)
    }
}

/// Strong difference `γ⁺ ∸ γ⁻` of two microcubes on `D_(n+1)` agreeing on
/// `D_n`, or on `D^(n+1)` agreeing on `D(n+1)_n`.
///
/// On `D_(n+1)` the direction is the difference of the coefficients of
/// `d^(n+1)`. On `D^(n+1)` it is the difference of the coefficients of
/// `d1*...*d(n+1)` divided by `(n+1)!`, which is the normalization for which
/// `γ⁺ ∸ γ⁻ = γ⁺_{D^(n+1)} ∸ γ⁻_{D^(n+1)}`. Both formulas are the unique
/// factorizations through the corresponding pushout squares, see
/// [`crate::quasicolim`].
pub fn strong_diff(plus: &Microcube, minus: &Microcube) -> Result<Tangent> {
    plus.check_compatible(minus)?;
    let (top, norm) = plus.top_slot()?;
    if let Some(diff) = plus.first_difference(minus, 1..top) {
        return Err(Error::RestrictionMismatch(diff));
    }
    let inv = crate::scalar::Rational::from_integer(1.into()) / norm;
    let dir = (0..plus.arity())
        .map(|i| (&plus.coefficient(i, top) - &minus.coefficient(i, top)).scale_rational(&inv))
        .collect();
    Tangent::new(plus.aux().clone(), plus.base().to_vec(), dir)
}

/// Strong addition `t ∔ γ`: adds the tangent to the top coefficient of `γ`
/// (scaled by `(n+1)!` on `D^(n+1)`), the inverse of [`strong_diff`].
pub fn strong_add(t: &Tangent, gamma: &Microcube) -> Result<Microcube> {
    if t.base() != gamma.base() {
        return Err(Error::BaseMismatch(
            format!("{:?}", t.base()),
            format!("{:?}", gamma.base()),
        ));
    }
    if t.aux() != gamma.aux() || t.0.arity() != gamma.arity() {
        return Err(Error::ShapeMismatch(
            "tangent and microcube over different scalars".into(),
        ));
    }
    let (top, norm) = gamma.top_slot()?;
    let exps = gamma.slot_exponents(top).to_vec();
    let body = gamma
        .body
        .iter()
        .zip(t.direction())
        .map(|(b, dir)| {
            let shift = &gamma.lift_aux(&dir.scale_rational(&norm))
                * &gamma.lift_shape(&gamma.shape_alg.monomial(&exps, Scalar::one()));
            b + &shift
        })
        .collect();
    Microcube::assemble(
        gamma.shape.clone(),
        gamma.shape_alg.clone(),
        gamma.aux.clone(),
        gamma.alg.clone(),
        gamma.base.clone(),
        body,
    )
}

/// A simple polynomial `ρ(d) = c1 d + ... + cn d^n` of `d ∈ D_n`, with
/// coefficients in the scalar extension `aux`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePoly {
    order: u32,
    aux: WeilAlgebra,
    element: WeilElement,
}

impl SimplePoly {
    pub fn new(order: u32, aux: WeilAlgebra, coefficients: &[WeilElement]) -> Result<Self> {
        let alg = SpaceDescriptor::Line(order).algebra().tensor(&aux);
        let mut element = alg.zero();
        for (j, c) in coefficients.iter().enumerate() {
            if c.algebra() != &aux {
                return Err(Error::AlgebraMismatch);
            }
            let dj = alg.generator(0).pow(j as u32 + 1);
            element = &element + &(&lift_aux(&alg, c) * &dj);
        }
        Ok(SimplePoly {
            order,
            aux,
            element,
        })
    }

    /// From an element of `W(D_n) (x) aux` with no constant term in `d`.
    pub fn from_element(order: u32, aux: WeilAlgebra, element: WeilElement) -> Result<Self> {
        let alg = SpaceDescriptor::Line(order).algebra().tensor(&aux);
        if element.algebra() != &alg {
            return Err(Error::AlgebraMismatch);
        }
        if element.coefficients()[..aux.dimension()]
            .iter()
            .any(|c| !c.is_zero())
        {
            return Err(Error::ShapeMismatch(format!(
                "simple polynomial {element} has a constant term"
            )));
        }
        Ok(SimplePoly {
            order,
            aux,
            element,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn aux(&self) -> &WeilAlgebra {
        &self.aux
    }

    pub fn element(&self) -> &WeilElement {
        &self.element
    }

    /// `dim_n ρ`: the least `m` with `ρ^(m+1) = 0`.
    pub fn dimension(&self) -> Result<usize> {
        self.element.nilpotency_exponent()
    }
}

/// A polynomial map `R^k -> R^l` given by output polynomials in the input
/// symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    inputs: Vec<Symbol>,
    outputs: Vec<Scalar>,
}

impl PolyMap {
    pub fn new(inputs: Vec<Symbol>, outputs: Vec<Scalar>) -> Self {
        PolyMap { inputs, outputs }
    }

    /// Inputs named `u1..uk`.
    pub fn with_standard_inputs(k: usize, outputs: Vec<Scalar>) -> Self {
        let inputs = (1..=k).map(|i| Symbol::new(&format!("u{i}"))).collect();
        PolyMap { inputs, outputs }
    }

    pub fn identity(k: usize) -> Self {
        let inputs: Vec<Symbol> = (1..=k).map(|i| Symbol::new(&format!("u{i}"))).collect();
        let outputs = inputs.iter().cloned().map(Scalar::from_symbol).collect();
        PolyMap { inputs, outputs }
    }

    pub fn inputs(&self) -> &[Symbol] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Scalar] {
        &self.outputs
    }

    pub fn input_arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn output_arity(&self) -> usize {
        self.outputs.len()
    }

    pub fn eval(&self, point: &[Scalar]) -> Vec<Scalar> {
        let map: BTreeMap<Symbol, Scalar> = self
            .inputs
            .iter()
            .cloned()
            .zip(point.iter().cloned())
            .collect();
        self.outputs.iter().map(|o| o.substitute(&map)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn sym(name: &str) -> Scalar {
        Scalar::symbol(name)
    }

    fn line_cube(n: u32, base: &str, coeffs: &[&str]) -> Microcube {
        let aux = WeilAlgebra::point();
        let cs = vec![coeffs.iter().map(|c| aux.constant(sym(c))).collect()];
        Microcube::from_coefficients(SpaceDescriptor::Line(n), aux, vec![sym(base)], cs).unwrap()
    }

    #[test]
    fn restriction_kills_higher_terms() {
        let g = line_cube(2, "x", &["a1", "a2"]);
        assert_eq!(g.restrict_to_line(1).unwrap(), line_cube(1, "x", &["a1"]));
        assert_eq!(g.restrict_to_line(2).unwrap(), g);
    }

    #[test]
    fn summation_onto_the_square() {
        let g = line_cube(2, "x", &["a1", "a2"]);
        let sq = g.on_cube().unwrap();
        assert_eq!(sq.shape(), &SpaceDescriptor::Cube(2));
        let c = |e: &[u32]| sq.coefficient_of(0, e).constant_term().clone();
        assert_eq!(c(&[1, 0]), sym("a1"));
        assert_eq!(c(&[0, 1]), sym("a1"));
        assert_eq!(c(&[1, 1]), sym("a2").scale(&int(2)));
        let g1 = line_cube(1, "x", &["a1"]);
        assert_eq!(
            g1.on_cube().unwrap().coefficient(0, 1),
            g1.coefficient(0, 1)
        );
    }

    #[test]
    fn summation_onto_first_order_neighbourhood() {
        let g = line_cube(3, "x", &["a1", "a2", "a3"]);
        let s = SimplicialSpace::d_m_n(3, 1);
        let h = g.on_simplicial(&s).unwrap();
        assert_eq!(h.slot_count(), 3);
        for slot in 1..=3 {
            assert_eq!(h.coefficient(0, slot).constant_term(), &sym("a1"));
        }
        let too_big = line_cube(1, "x", &["a1"]).on_simplicial(&SimplicialSpace::cube(2));
        assert!(matches!(too_big, Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn scaling_line_microcubes() {
        let g = line_cube(2, "x", &["a1", "a2"]);
        let alpha = sym("alpha");
        let s = g.scale(&alpha).unwrap();
        assert_eq!(s.coefficient(0, 1).constant_term(), &(&alpha * &sym("a1")));
        assert_eq!(
            s.coefficient(0, 2).constant_term(),
            &(&alpha.pow(2) * &sym("a2"))
        );
        assert_eq!(g.scale(&Scalar::one()).unwrap(), g);
        let z = g.scale(&Scalar::zero()).unwrap();
        assert_eq!(
            z,
            Microcube::constant(
                SpaceDescriptor::Line(2),
                WeilAlgebra::point(),
                vec![sym("x")]
            )
        );
    }

    #[test]
    fn axis_scaling_and_permutation() {
        let aux = WeilAlgebra::point();
        let g = Microcube::generic(SpaceDescriptor::Cube(2), aux, vec![sym("x")], "a");
        let alpha = sym("alpha");
        let s = g.scale_axis(&alpha, 1).unwrap();
        let c = |m: &Microcube, e: &[u32]| m.coefficient_of(0, e).constant_term().clone();
        assert_eq!(c(&s, &[1, 0]), &alpha * &sym("a1_1"));
        assert_eq!(c(&s, &[0, 1]), sym("a2_1"));
        assert_eq!(c(&s, &[1, 1]), &alpha * &sym("a12_1"));
        assert!(matches!(
            g.scale_axis(&alpha, 3),
            Err(Error::IndexOutOfRange(3))
        ));

        let p = g.permute(&[2, 1]).unwrap();
        assert_eq!(c(&p, &[1, 0]), sym("a2_1"));
        assert_eq!(c(&p, &[0, 1]), sym("a1_1"));
        assert_eq!(c(&p, &[1, 1]), sym("a12_1"));
        assert_eq!(g.permute(&[1, 2]).unwrap(), g);
        assert!(matches!(g.permute(&[1, 1]), Err(Error::BadPermutation(_))));
    }

    #[test]
    fn i_d_multiplies_coefficients() {
        let aux = WeilAlgebra::truncated("e", 1);
        let g = Microcube::generic(SpaceDescriptor::Line(1), aux.clone(), vec![sym("x")], "a");
        let e = aux.generator(0);
        let h = g.i_d(&e).unwrap();
        assert_eq!(h.shape(), &SpaceDescriptor::Line(2));
        assert_eq!(h.coefficient(0, 1), e.scale(&sym("a1_1")));
        assert!(h.coefficient(0, 2).is_zero());
        let z = g.i_d(&aux.zero()).unwrap();
        assert_eq!(
            z,
            Microcube::constant(SpaceDescriptor::Line(2), aux.clone(), vec![sym("x")])
        );
        // e ∈ D_1 is too big for a D_0-microcube's i_d, which needs e = 0.
        let g0 = Microcube::constant(SpaceDescriptor::Line(0), aux.clone(), vec![sym("x")]);
        assert!(matches!(g0.i_d(&e), Err(Error::ScalarNotNilpotent(_))));
    }

    #[test]
    fn simple_dimensions() {
        let aux = WeilAlgebra::point();
        let one = aux.one();
        let z = aux.zero();
        let dim = |cs: &[&WeilElement]| {
            let cs: Vec<WeilElement> = cs.iter().map(|c| (*c).clone()).collect();
            SimplePoly::new(3, aux.clone(), &cs)
                .unwrap()
                .dimension()
                .unwrap()
        };
        assert_eq!(dim(&[&one]), 3);
        assert_eq!(dim(&[&one, &one]), 3);
        assert_eq!(dim(&[&one, &z, &one]), 3);
        assert_eq!(dim(&[&z, &one]), 1);
        assert_eq!(dim(&[&z, &z, &one]), 1);
        assert_eq!(dim(&[&z, &one, &one]), 1);
        for (l, expected) in [(1, 1), (2, 2)] {
            let aux = WeilAlgebra::truncated("e", l);
            let rho = SimplePoly::new(3, aux.clone(), &[aux.generator(0)]).unwrap();
            assert_eq!(rho.dimension().unwrap(), expected);
        }
    }

    #[test]
    fn composition_with_simple_polynomials() {
        let aux = WeilAlgebra::point();
        let g = line_cube(1, "x", &["a1"]);
        let rho = SimplePoly::new(3, aux.clone(), &[aux.zero(), aux.one()]).unwrap();
        let h = g.compose_simple(&rho).unwrap();
        assert_eq!(h.shape(), &SpaceDescriptor::Line(3));
        assert!(h.coefficient(0, 1).is_zero());
        assert_eq!(h.coefficient(0, 2).constant_term(), &sym("a1"));
        assert!(h.coefficient(0, 3).is_zero());

        let id = SimplePoly::new(3, aux.clone(), &[aux.one()]).unwrap();
        let g3 = line_cube(3, "x", &["a1", "a2", "a3"]);
        assert_eq!(g3.compose_simple(&id).unwrap(), g3);

        // ρ = d + d^2 in D_3: (d + d^2) a1 + (d + d^2)^2 a2 + (d + d^2)^3 a3
        // = d a1 + d^2 (a1 + a2) + d^3 (2 a2 + a3)
        let rho = SimplePoly::new(3, aux.clone(), &[aux.one(), aux.one()]).unwrap();
        let h = g3.compose_simple(&rho).unwrap();
        assert_eq!(h.coefficient(0, 1).constant_term(), &sym("a1"));
        assert_eq!(
            h.coefficient(0, 2).constant_term(),
            &(&sym("a1") + &sym("a2"))
        );
        assert_eq!(
            h.coefficient(0, 3).constant_term(),
            &(&sym("a2").scale(&int(2)) + &sym("a3"))
        );
        assert!(matches!(
            g.compose_simple(&rho),
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 3
            })
        ));
    }

    #[test]
    fn strong_difference_and_addition() {
        let plus = line_cube(2, "x", &["a1", "b"]);
        let minus = line_cube(2, "x", &["a1", "c"]);
        let t = strong_diff(&plus, &minus).unwrap();
        assert_eq!(t.direction()[0].constant_term(), &(&sym("b") - &sym("c")));
        assert_eq!(strong_add(&t, &minus).unwrap(), plus);
        let z = strong_diff(&plus, &plus).unwrap();
        assert_eq!(z, Tangent::zero(WeilAlgebra::point(), vec![sym("x")]));
        assert_eq!(strong_add(&z, &plus).unwrap(), plus);

        let other = line_cube(2, "x", &["a1'", "c"]);
        assert!(matches!(
            strong_diff(&plus, &other),
            Err(Error::RestrictionMismatch(_))
        ));
        let moved = line_cube(2, "y", &["a1", "c"]);
        assert!(matches!(
            strong_diff(&plus, &moved),
            Err(Error::BaseMismatch(..))
        ));
    }

    #[test]
    fn cube_strong_difference_is_normalized() {
        let aux = WeilAlgebra::point();
        let g = Microcube::generic(SpaceDescriptor::Cube(2), aux.clone(), vec![sym("x")], "a");
        let t = Tangent::new(aux.clone(), vec![sym("x")], vec![aux.constant(sym("b"))]).unwrap();
        let h = strong_add(&t, &g).unwrap();
        assert_eq!(
            h.coefficient_of(0, &[1, 1]).constant_term(),
            &(&sym("a12_1") + &sym("b").scale(&int(2)))
        );
        assert_eq!(strong_diff(&h, &g).unwrap(), t);
    }

    #[test]
    fn pushforward_by_square() {
        let f = PolyMap::with_standard_inputs(1, vec![sym("u1").pow(2)]);
        let g = line_cube(2, "x", &["a1", "a2"]);
        let h = g.pushforward(&f).unwrap();
        assert_eq!(h.base()[0], sym("x").pow(2));
        let two = int(2);
        assert_eq!(
            h.coefficient(0, 1).constant_term(),
            &(&sym("x") * &sym("a1")).scale(&two)
        );
        assert_eq!(
            h.coefficient(0, 2).constant_term(),
            &(&(&sym("x") * &sym("a2")).scale(&two) + &sym("a1").pow(2))
        );
        assert_eq!(g.pushforward(&PolyMap::identity(1)).unwrap(), g);
    }

    #[test]
    fn display_as_literal() {
        let g = line_cube(2, "0", &["a1", "a2"]);
        assert_eq!(g.to_string(), "cube D_n(2) base [0] coeffs [[a1], [a2]]");
    }
}
