//! The catalog of infinitesimal spaces: `D_n`, `D^n`, `D(m)_n`, the
//! simplicial spaces `D(m;S)`, direct sums and products.

use std::fmt;

use crate::error::{Error, Result};
use crate::weil::{Exponents, SpaceMap, WeilAlgebra, WeilElement};

/// `D(m;S)`: the subspace of `D^m` on which the squarefree monomials listed
/// in `S` vanish. `S` is stored as an antichain of index sets (1-based,
/// strictly increasing).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialSpace {
    degree: usize,
    relations: Vec<Vec<usize>>,
}

fn is_subsequence(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|i| big.contains(i))
}

impl SimplicialSpace {
    pub fn new(degree: usize, relations: Vec<Vec<usize>>) -> Result<Self> {
        for seq in &relations {
            if seq.is_empty() {
                return Err(Error::ShapeMismatch("empty index sequence".into()));
            }
            if seq.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::ShapeMismatch(format!(
                    "index sequence {seq:?} is not strictly increasing"
                )));
            }
            if let Some(&bad) = seq.iter().find(|&&i| i == 0 || i > degree) {
                return Err(Error::IndexOutOfRange(bad));
            }
        }
        let mut rels = relations;
        rels.sort();
        rels.dedup();
        let keep: Vec<bool> = rels
            .iter()
            .enumerate()
            .map(|(i, s)| {
                !rels
                    .iter()
                    .enumerate()
                    .any(|(j, t)| j != i && is_subsequence(t, s))
            })
            .collect();
        let relations = rels
            .into_iter()
            .zip(keep)
            .filter_map(|(s, k)| k.then_some(s))
            .collect();
        Ok(SimplicialSpace { degree, relations })
    }

    /// `D^m`.
    pub fn cube(m: usize) -> Self {
        SimplicialSpace {
            degree: m,
            relations: Vec::new(),
        }
    }

    /// `D(m)_n`: every product of `n+1` distinct coordinates vanishes.
    pub fn d_m_n(m: usize, n: usize) -> Self {
        let rels = subsets_of_size(m, n + 1);
        SimplicialSpace::new(m, rels).expect("valid index sets")
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    /// Number of coordinates `m`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Largest size of an index set containing no member of `S`, by
    /// exhaustive enumeration of subsets.
    pub fn dimension(&self) -> usize {
        let m = self.degree;
        let mut best = 0;
        for mask in 0u64..(1u64 << m) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let set: Vec<usize> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            if !self.relations.iter().any(|r| is_subsequence(r, &set)) {
                best = size;
            }
        }
        best
    }

    /// Generators `d1..dm`, relations `di^2` and the listed products.
    pub fn algebra(&self) -> WeilAlgebra {
        let m = self.degree;
        let gens = (1..=m).map(|i| format!("d{i}")).collect();
        let mut ideal: Vec<Exponents> = (0..m)
            .map(|i| {
                let mut v = vec![0; m];
                v[i] = 2;
                v
            })
            .collect();
        for r in &self.relations {
            let mut v = vec![0; m];
            for &i in r {
                v[i - 1] = 1;
            }
            ideal.push(v);
        }
        WeilAlgebra::new(gens, ideal).expect("simplicial spaces are Weil")
    }

    /// Whether this is `D^m` (no relations).
    pub fn is_cube(&self) -> bool {
        self.relations.is_empty()
    }

    /// Recognizes `D(m)_n` for some `n < m`.
    pub fn as_d_m_n(&self) -> Option<usize> {
        let k = self.relations.first()?.len();
        (self.relations == subsets_of_size(self.degree, k)).then(|| k - 1)
    }
}

impl fmt::Display for SimplicialSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({}", self.degree)?;
        for (k, r) in self.relations.iter().enumerate() {
            let items: Vec<String> = r.iter().map(usize::to_string).collect();
            write!(
                f,
                "{}[{}]",
                if k == 0 { "; " } else { ", " },
                items.join(",")
            )?;
        }
        f.write_str(")")
    }
}

/// Strictly increasing sequences of length `k` in `1..=m`.
pub fn subsets_of_size(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        go(1, m, k, &mut Vec::new(), &mut out);
    }
    out
}

/// A named infinitesimal space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceDescriptor {
    /// `{0}`, with the algebra `Q` (no generators).
    Point,
    /// `D_n = {d | d^(n+1) = 0}`; `D_0` is the point with one generator.
    Line(u32),
    /// `D^n`.
    Cube(usize),
    /// `D(m)_n`.
    DmN(usize, usize),
    Simplicial(SimplicialSpace),
    OPlus(Box<SpaceDescriptor>, Box<SpaceDescriptor>),
    Product(Box<SpaceDescriptor>, Box<SpaceDescriptor>),
}

impl SpaceDescriptor {
    /// Picks the most specific name for `D(m;S)`.
    pub fn from_simplicial(s: SimplicialSpace) -> Self {
        if s.is_cube() {
            SpaceDescriptor::Cube(s.degree())
        } else if let Some(n) = s.as_d_m_n() {
            SpaceDescriptor::DmN(s.degree(), n)
        } else {
            SpaceDescriptor::Simplicial(s)
        }
    }

    /// `D(m)_n` with `D(m)_n = D^m` when `n >= m`.
    pub fn d_m_n(m: usize, n: usize) -> Self {
        if n >= m {
            SpaceDescriptor::Cube(m)
        } else {
            SpaceDescriptor::DmN(m, n)
        }
    }

    pub fn algebra(&self) -> WeilAlgebra {
        match self {
            SpaceDescriptor::Point => WeilAlgebra::point(),
            SpaceDescriptor::Line(n) => WeilAlgebra::truncated("d", *n),
            SpaceDescriptor::Cube(_)
            | SpaceDescriptor::DmN(..)
            | SpaceDescriptor::Simplicial(_) => self.as_simplicial().expect("simplicial").algebra(),
            SpaceDescriptor::OPlus(a, b) => a.algebra().oplus(&b.algebra()).0,
            SpaceDescriptor::Product(a, b) => a.algebra().tensor(&b.algebra()),
        }
    }

    pub fn as_simplicial(&self) -> Option<SimplicialSpace> {
        match self {
            SpaceDescriptor::Cube(m) => Some(SimplicialSpace::cube(*m)),
            SpaceDescriptor::DmN(m, n) => Some(SimplicialSpace::d_m_n(*m, *n)),
            SpaceDescriptor::Simplicial(s) => Some(s.clone()),
            SpaceDescriptor::Line(1) => Some(SimplicialSpace::cube(1)),
            SpaceDescriptor::Point => Some(SimplicialSpace::cube(0)),
            _ => None,
        }
    }

    /// `Some(n)` for `D_n` (and `D = D^1 = D_1`).
    pub fn line_order(&self) -> Option<u32> {
        match self {
            SpaceDescriptor::Line(n) => Some(*n),
            SpaceDescriptor::Cube(1) => Some(1),
            _ => None,
        }
    }

    /// `Some(n)` for `D^n` (and `D_1 = D^1`).
    pub fn cube_order(&self) -> Option<usize> {
        match self {
            SpaceDescriptor::Cube(n) => Some(*n),
            SpaceDescriptor::Line(1) => Some(1),
            SpaceDescriptor::Point => Some(0),
            _ => None,
        }
    }

    /// Degree and dimension of a simplicial space, `None` otherwise.
    pub fn degree_and_dimension(&self) -> Option<(usize, usize)> {
        match self {
            SpaceDescriptor::Line(0) => Some((1, 0)),
            SpaceDescriptor::Line(1) => Some((1, 1)),
            SpaceDescriptor::Line(_) => None,
            _ => self.as_simplicial().map(|s| (s.degree(), s.dimension())),
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::Point => f.write_str("point"),
            SpaceDescriptor::Line(1) => f.write_str("D"),
            SpaceDescriptor::Line(n) => write!(f, "D_n({n})"),
            SpaceDescriptor::Cube(n) => write!(f, "D^{n}"),
            SpaceDescriptor::DmN(m, 1) => write!(f, "D({m})"),
            SpaceDescriptor::DmN(m, n) => write!(f, "D({m})_{n}"),
            SpaceDescriptor::Simplicial(s) => write!(f, "{s}"),
            SpaceDescriptor::OPlus(a, b) => write!(f, "oplus({a}, {b})"),
            SpaceDescriptor::Product(a, b) => write!(f, "prod({a}, {b})"),
        }
    }
}

/// The summation map `D(m;S) -> D_n`, `(d1..dm) |-> d1 + ... + dm`.
/// Fails with `RelationViolated` exactly when `n < dim D(m;S)`.
pub fn sum_map(s: &SimplicialSpace, n: u32) -> Result<SpaceMap> {
    let src = s.algebra();
    let tgt = WeilAlgebra::truncated("d", n);
    let mut sum = src.zero();
    for i in 0..s.degree() {
        sum = &sum + &src.generator(i);
    }
    SpaceMap::new(&src, &tgt, vec![sum])
}

/// A monomial mapping `src -> dst`: the `j`-th component is the monomial
/// `x^components[j]` in the coordinates of `src`, with coefficient 1.
pub fn monomial_map(
    src: &SimplicialSpace,
    dst: &SimplicialSpace,
    components: &[Exponents],
) -> Result<SpaceMap> {
    if components.len() != dst.degree() {
        return Err(Error::ArityMismatch {
            expected: dst.degree(),
            found: components.len(),
        });
    }
    let a = src.algebra();
    let images = components
        .iter()
        .map(|c| {
            if c.len() != src.degree() {
                return Err(Error::ArityMismatch {
                    expected: src.degree(),
                    found: c.len(),
                });
            }
            Ok(a.monomial(c, crate::scalar::Scalar::one()))
        })
        .collect::<Result<Vec<WeilElement>>>()?;
    SpaceMap::new(&a, &dst.algebra(), images)
}

/// The inclusion `s1 -> s2` (coordinate-wise identity) when
/// `D(m;S1) ⊆ D(m;S2)`, i.e. when the ideal of `s2` is contained in the ideal
/// of `s1`.
pub fn inclusion(s1: &SimplicialSpace, s2: &SimplicialSpace) -> Result<SpaceMap> {
    if s1.degree() != s2.degree() {
        return Err(Error::DegreeMismatch(s1.degree(), s2.degree()));
    }
    for r in s2.relations() {
        if !s1.relations().iter().any(|q| is_subsequence(q, r)) {
            return Err(Error::NotIncluded(format!(
                "{s1} is not contained in {s2}: relation {r:?} of the latter fails on the former"
            )));
        }
    }
    let a = s1.algebra();
    let images = (0..s1.degree()).map(|i| a.generator(i)).collect();
    SpaceMap::new(&a, &s2.algebra(), images)
}

/// Every simplicial space of degree `m` (all antichains of nonempty index
/// sets), used to sweep properties over the whole catalog.
pub fn all_simplicial_spaces(m: usize) -> Vec<SimplicialSpace> {
    let subsets: Vec<Vec<usize>> = (1..=m).flat_map(|k| subsets_of_size(m, k)).collect();
    let mut out = Vec::new();
    fn go(
        idx: usize,
        subsets: &[Vec<usize>],
        chosen: &mut Vec<Vec<usize>>,
        m: usize,
        out: &mut Vec<SimplicialSpace>,
    ) {
        if idx == subsets.len() {
            out.push(SimplicialSpace::new(m, chosen.clone()).expect("valid"));
            return;
        }
        go(idx + 1, subsets, chosen, m, out);
        let cand = &subsets[idx];
        let compatible = chosen
            .iter()
            .all(|c| !is_subsequence(c, cand) && !is_subsequence(cand, c));
        if compatible {
            chosen.push(cand.clone());
            go(idx + 1, subsets, chosen, m, out);
            chosen.pop();
        }
    }
    go(0, &subsets, &mut Vec::new(), m, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(m: usize, rels: &[&[usize]]) -> SimplicialSpace {
        SimplicialSpace::new(m, rels.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn degree_and_dimension_table() {
        let d3 = SimplicialSpace::d_m_n(3, 1);
        assert_eq!((d3.degree(), d3.dimension()), (3, 1));
        assert_eq!(sp(3, &[&[1, 2]]).dimension(), 2);
        assert_eq!(sp(3, &[&[1, 2], &[1, 3]]).dimension(), 2);
        assert_eq!(SimplicialSpace::cube(3).dimension(), 3);
        assert_eq!(sp(3, &[&[1, 2], &[1, 3]]).degree(), 3);
    }

    #[test]
    fn relations_are_antichain() {
        let s = sp(3, &[&[1, 2], &[1, 2, 3], &[1, 2]]);
        assert_eq!(s.relations(), &[vec![1, 2]]);
        assert!(SimplicialSpace::new(3, vec![vec![2, 1]]).is_err());
        assert!(SimplicialSpace::new(3, vec![vec![4]]).is_err());
    }

    #[test]
    fn d_m_n_is_recognized() {
        let s = sp(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(
            SpaceDescriptor::from_simplicial(s),
            SpaceDescriptor::DmN(3, 1)
        );
        assert_eq!(
            SpaceDescriptor::from_simplicial(SimplicialSpace::cube(2)),
            SpaceDescriptor::Cube(2)
        );
    }

    #[test]
    fn sum_map_validates_exactly_from_dimension_on() {
        let d2 = SimplicialSpace::d_m_n(2, 1);
        assert!(sum_map(&d2, 1).is_ok());
        let cube = SimplicialSpace::cube(3);
        assert!(sum_map(&cube, 3).is_ok());
        let err = sum_map(&cube, 2).unwrap_err();
        match err {
            Error::RelationViolated { image, .. } => assert_eq!(image, "6*d1*d2*d3"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(sum_map(&SimplicialSpace::cube(0), 0).is_ok());
    }

    #[test]
    fn monomial_maps() {
        let cube = SimplicialSpace::cube(3);
        let d3 = SimplicialSpace::d_m_n(3, 1);
        assert!(monomial_map(&cube, &d3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).is_ok());
        let line = SimplicialSpace::cube(1);
        assert!(monomial_map(&line, &SimplicialSpace::cube(2), &[vec![1], vec![1]]).is_ok());
        // d |-> (d, d) lands in D(2) because d^2 = 0.
        assert!(monomial_map(&line, &SimplicialSpace::d_m_n(2, 1), &[vec![1], vec![1]]).is_ok());
        let sq = SimplicialSpace::cube(2);
        assert!(monomial_map(
            &sq,
            &SimplicialSpace::d_m_n(2, 1),
            &[vec![1, 0], vec![0, 1]]
        )
        .is_err());
        let id =
            monomial_map(&cube, &cube, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(id, SpaceMap::identity(&cube.algebra()));
    }

    #[test]
    fn inclusions() {
        let d3 = SimplicialSpace::d_m_n(3, 1);
        let s12 = sp(3, &[&[1, 2]]);
        assert!(inclusion(&d3, &s12).is_ok());
        assert!(matches!(inclusion(&s12, &d3), Err(Error::NotIncluded(_))));
        assert!(inclusion(&s12, &s12).is_ok());
        assert!(matches!(
            inclusion(&s12, &SimplicialSpace::cube(2)),
            Err(Error::DegreeMismatch(3, 2))
        ));
    }

    #[test]
    fn catalog_counts() {
        // Antichains of nonempty subsets of {1..m}: Dedekind numbers minus one
        // (the antichain containing the empty set is excluded).
        assert_eq!(all_simplicial_spaces(1).len(), 2);
        assert_eq!(all_simplicial_spaces(2).len(), 5);
        assert_eq!(all_simplicial_spaces(3).len(), 19);
    }
}
