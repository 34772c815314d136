use proptest::prelude::*;

use weiljet::infinitesimal::{SimplicialSpace, SpaceDescriptor};
use weiljet::jets::{jet_add, jet_diff, Variant};
use weiljet::microcube::Microcube;
use weiljet::quasicolim::{builtin_diagram, corruptions, verify_quasi_colimit};
use weiljet::random::{self, random_form, random_jet, random_jet_pair, random_point};
use weiljet::scalar::Scalar;
use weiljet::weil::{WeilAlgebra, WeilElement};

fn poly(terms: &[(i64, u32, u32)]) -> Scalar {
    let (x, y) = (Scalar::symbol("x"), Scalar::symbol("y"));
    terms.iter().fold(Scalar::zero(), |acc, &(c, i, j)| {
        &acc + &(&Scalar::from_int(c) * &(&x.pow(i) * &y.pow(j)))
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 0u32..3, 0u32..3), 0..4).prop_map(|t| poly(&t))
}

fn algebra() -> impl Strategy<Value = WeilAlgebra> {
    (1usize..=3)
        .prop_flat_map(|g| {
            (
                prop::collection::vec(1u32..=3, g),
                prop::collection::vec(prop::collection::vec(0u32..=2, g), 0..3),
            )
        })
        .prop_map(|(powers, extra)| {
            let g = powers.len();
            let mut ideal: Vec<Vec<u32>> = (0..g)
                .map(|i| (0..g).map(|j| if i == j { powers[i] } else { 0 }).collect())
                .collect();
            ideal.extend(extra.into_iter().filter(|m| m.iter().any(|&e| e > 0)));
            WeilAlgebra::new((1..=g).map(|i| format!("x{i}")).collect(), ideal).expect("nilpotent")
        })
}

fn element(alg: &WeilAlgebra, coeffs: &[i64]) -> WeilElement {
    let n = alg.dimension();
    alg.from_coefficients(
        (0..n)
            .map(|i| Scalar::from_int(coeffs[i % coeffs.len()] + i as i64))
            .collect(),
    )
    .expect("right length")
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalars_form_a_commutative_ring(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn weil_basis_is_the_complement_of_a_minimal_monomial_ideal(alg in algebra()) {
        let basis = alg.basis();
        prop_assert!(basis.iter().any(|m| m.iter().all(|&e| e == 0)));
        for m in basis {
            prop_assert!(!alg.in_ideal(m));
            for i in 0..m.len() {
                if m[i] > 0 {
                    let mut d = m.clone();
                    d[i] -= 1;
                    prop_assert!(alg.index_of(&d).is_some(), "basis not closed under divisibility");
                }
            }
        }
        let ideal = alg.ideal();
        for (i, a) in ideal.iter().enumerate() {
            for (j, b) in ideal.iter().enumerate() {
                prop_assert!(i == j || !divides(a, b), "{:?} divides {:?}", a, b);
            }
        }
    }

    #[test]
    fn weil_multiplication_is_a_commutative_ring(
        alg in algebra(),
        a in prop::collection::vec(-3i64..=3, 1..4),
        b in prop::collection::vec(-3i64..=3, 1..4),
        c in prop::collection::vec(-3i64..=3, 1..4),
    ) {
        let (a, b, c) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &alg.one(), a.clone());
    }

    #[test]
    fn generators_are_nilpotent(alg in algebra()) {
        for i in 0..alg.num_generators() {
            let k = alg.generator(i).nilpotency_exponent().expect("nilpotent");
            let g = alg.generator(i);
            prop_assert!(g.pow(k as u32 + 1).is_zero());
            prop_assert!(k == 0 || !g.pow(k as u32).is_zero());
        }
    }

    #[test]
    fn simplicial_relations_are_an_increasing_antichain(
        m in 1usize..=4,
        raw in prop::collection::vec(prop::collection::btree_set(1usize..=4, 2..=3), 0..4),
    ) {
        let rels: Vec<Vec<usize>> = raw
            .into_iter()
            .map(|s| s.into_iter().filter(|&i| i <= m).collect::<Vec<_>>())
            .filter(|r| r.len() >= 2)
            .collect();
        let s = SimplicialSpace::new(m, rels).expect("valid relations");
        for r in s.relations() {
            prop_assert!(r.windows(2).all(|w| w[0] < w[1]) && *r.last().unwrap() <= m);
        }
        for a in s.relations() {
            for b in s.relations() {
                let sub = a != b && a.iter().all(|x| b.contains(x));
                prop_assert!(!sub, "{:?} is contained in {:?}", a, b);
            }
        }
        prop_assert!(s.dimension() <= s.degree());
    }

    #[test]
    fn microcube_body_has_no_constant_term(p in 1usize..=3, n in 1u32..=3, cube in any::<bool>()) {
        let shape = if cube { SpaceDescriptor::Cube(n as usize) } else { SpaceDescriptor::Line(n) };
        let base: Vec<Scalar> = (1..=p).map(|i| Scalar::symbol(&format!("x{i}"))).collect();
        let g = Microcube::generic(shape, WeilAlgebra::point(), base.clone(), "a");
        prop_assert_eq!(g.base(), &base[..]);
        for b in g.body() {
            prop_assert!(b.constant_term().is_zero());
        }
    }

    #[test]
    fn quasicolim_verdict_requires_bijectivity(n in 0u32..=4, add in any::<bool>()) {
        let name = if add { "lemma_add" } else { "lemma_diff" };
        let mut probs = vec![builtin_diagram(name, n).unwrap()];
        probs.extend(corruptions(name, n).into_iter().map(|(_, p)| p));
        for p in probs {
            let r = verify_quasi_colimit(&p).unwrap();
            prop_assert!(!r.verdict() || (r.injective && r.surjective));
            if r.morphisms_valid && r.commutes && r.multiplicative {
                prop_assert_eq!(r.verdict(), r.injective && r.surjective);
            }
            prop_assert!(r.verdict() || !r.witness.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jets_cover_the_identity_and_are_homogeneous(
        seed in any::<u64>(), p in 1usize..=2, q in 1usize..=2, order in 1u32..=3, cube in any::<bool>(),
    ) {
        let variant = if cube { Variant::Cube } else { Variant::Line };
        let mut rng = random::rng(seed);
        let x = random_point(&mut rng, p, q);
        let f = random_jet(&mut rng, variant, order, &x);
        let gamma = Microcube::generic(variant.shape(order), WeilAlgebra::point(), x.base.clone(), "a");
        let image = f.apply(&gamma).unwrap();
        prop_assert_eq!(image.components(0..p), gamma.clone());
        if !cube {
            let a = Scalar::symbol("alpha");
            prop_assert_eq!(f.apply(&gamma.scale(&a).unwrap()).unwrap(), image.scale(&a).unwrap());
        }
    }

    #[test]
    fn forms_are_homogeneous_of_their_order(seed in any::<u64>(), p in 1usize..=2, q in 1usize..=2, order in 1u32..=3) {
        let mut rng = random::rng(seed);
        let x = random_point(&mut rng, p, q);
        let w = random_form(&mut rng, Variant::Line, order, &x);
        let gamma = Microcube::generic(SpaceDescriptor::Line(order), WeilAlgebra::point(), x.base.clone(), "a");
        let a = Scalar::symbol("alpha");
        let lhs = w.evaluate(&gamma.scale(&a).unwrap()).unwrap();
        let rhs = w.evaluate(&gamma).unwrap().scale(&a.pow(order));
        prop_assert_eq!(lhs.as_microcube(), rhs.as_microcube());
        prop_assert!(lhs.is_vertical(p));
    }

    #[test]
    fn jet_difference_and_addition_are_inverse(
        seed in any::<u64>(), p in 1usize..=2, q in 1usize..=2, order in 1u32..=3, cube in any::<bool>(),
    ) {
        let variant = if cube { Variant::Cube } else { Variant::Line };
        let mut rng = random::rng(seed);
        let x = random_point(&mut rng, p, q);
        let (plus, minus) = random_jet_pair(&mut rng, variant, order, &x).unwrap();
        let w = jet_diff(&plus, &minus).unwrap();
        prop_assert_eq!(jet_add(&w, &minus).unwrap(), plus);
        let w2 = random_form(&mut rng, variant, order, &x);
        prop_assert_eq!(jet_diff(&jet_add(&w2, &minus).unwrap(), &minus).unwrap(), w2);
    }
}

#[test]
fn degenerate_descriptors_coincide() {
    assert_eq!(SpaceDescriptor::Line(0).algebra().dimension(), 1);
    assert_eq!(SpaceDescriptor::Cube(0).algebra().dimension(), 1);
    assert_eq!(SpaceDescriptor::Point.algebra().dimension(), 1);
    for m in 1..=4 {
        assert_eq!(
            SpaceDescriptor::d_m_n(m, 1).algebra(),
            SimplicialSpace::d_m_n(m, 1).algebra()
        );
    }
}
