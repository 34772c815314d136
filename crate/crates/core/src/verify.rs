//! Named verification suites. Each suite runs exact checks and reports one
//! [`CheckOutcome`] per identity instance; nothing is sampled numerically.

use std::fmt::Debug;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::infinitesimal::{all_simplicial_spaces, inclusion, SimplicialSpace, SpaceDescriptor};
use crate::jets::candidate::{FormCandidate, JetCandidate};
use crate::jets::{
    form_space_dimension, jet_add, jet_diff, phi, psi, validate_form, validate_tangential,
    BundlePoint, Jet, SymmetricForm, Variant,
};
use crate::microcube::{strong_add, strong_diff, Microcube, SimplePoly, Tangent};
use crate::quasicolim::{builtin_diagram, corruptions, verify_quasi_colimit, CoconeProblem};
use crate::random::{
    self, random_form, random_jet, random_jet_pair, random_point, random_poly_map, Rng8,
};
use crate::scalar::Scalar;
use crate::weil::WeilAlgebra;

/// Result of one exact check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    /// Stable identifier, `suite/identity/instance`.
    pub id: String,
    /// The identity being checked, as a formula.
    pub anchor: String,
    pub passed: bool,
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

/// Suite parameters. `None` means the full default range of the suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub n: Option<u32>,
    pub seed: u64,
    pub name: Option<String>,
}

impl SuiteParams {
    fn ps(&self, max: usize) -> Vec<usize> {
        self.p.map_or_else(|| (1..=max).collect(), |p| vec![p])
    }

    fn qs(&self, max: usize) -> Vec<usize> {
        self.q.map_or_else(|| (1..=max).collect(), |q| vec![q])
    }

    fn ns(&self, lo: u32, hi: u32) -> Vec<u32> {
        self.n.map_or_else(|| (lo..=hi).collect(), |n| vec![n])
    }
}

/// Suite names accepted by [`run_suite`], in the order `all` runs them.
/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20;

pub const SUITE_NAMES: [&str; 11] = [
    "simple-dims",
    "degree-table",
    "quasicolim",
    "scaling",
    "microcube",
    "naturality",
    "affine",
    "phi-psi",
    "morphism",
    "dims",
    "negative",
];

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<Vec<CheckOutcome>> {
    Ok(match name {
        "simple-dims" => simple_dimensions(),
        "degree-table" => degree_table(),
        "quasicolim" => quasicolim_suite(params)?,
        "scaling" => scaling_laws(params),
        "microcube" => microcube_axioms(params),
        "naturality" => naturality(params),
        "affine" => affine_bundle(params),
        "phi-psi" => comparison(params),
        "morphism" => affine_morphism(params),
        "dims" => dimension_count(params),
        "negative" => negative(params),
        "all" => {
            let mut out = Vec::new();
            for s in SUITE_NAMES {
                out.extend(run_suite(s, params)?);
            }
            out
        }
        other => {
            return Err(Error::InvalidSuite(format!(
                "unknown suite `{other}`; expected all or one of {}",
                SUITE_NAMES.join(", ")
            )))
        }
    })
}

#[derive(Default)]
struct Checks {
    out: Vec<CheckOutcome>,
}

impl Checks {
    /// Runs `f`; `Ok(None)` passes, `Ok(Some(w))` fails with witness `w`, and
    /// an error fails with the error as witness.
    fn run(&mut self, id: String, anchor: &str, f: impl FnOnce() -> Result<Option<String>>) {
        let start = Instant::now();
        let (passed, witness) = match f() {
            Ok(None) => (true, None),
            Ok(Some(w)) => (false, Some(w)),
            Err(e) => (false, Some(format!("error: {e}"))),
        };
        self.out.push(CheckOutcome {
            id,
            anchor: anchor.to_string(),
            passed,
            witness,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }

    fn done(self) -> Vec<CheckOutcome> {
        self.out
    }
}

fn cubes(l: &Microcube, r: &Microcube) -> Option<String> {
    l.describe_difference(r)
}

fn tangents(l: &Tangent, r: &Tangent) -> Option<String> {
    l.as_microcube().describe_difference(r.as_microcube())
}

fn values<T: PartialEq + Debug>(l: &T, r: &T) -> Option<String> {
    (l != r).then(|| {
        let mut s = format!("{l:?} != {r:?}");
        if s.len() > 400 {
            s.truncate(400);
            s.push_str("...");
        }
        s
    })
}

/// `αγ`: the global scaling on `D_n`, every axis scaled on `D^n`.
fn scale_all(gamma: &Microcube, a: &Scalar) -> Result<Microcube> {
    match gamma.shape() {
        SpaceDescriptor::Cube(m) => (1..=*m).try_fold(gamma.clone(), |g, i| g.scale_axis(a, i)),
        _ => gamma.scale(a),
    }
}

fn alpha() -> Scalar {
    Scalar::symbol("alpha")
}

fn point_alg() -> WeilAlgebra {
    WeilAlgebra::point()
}

fn generic_base(p: usize) -> Vec<Scalar> {
    (1..=p).map(|i| Scalar::symbol(&format!("x{i}"))).collect()
}

/// A pair of generic microcubes of a shape with a top slot (`D_(n+1)` or
/// `D^(n+1)`) that agree everywhere except in that slot.
fn generic_pair(shape: &SpaceDescriptor, base: &[Scalar]) -> (Microcube, Microcube) {
    let minus = Microcube::generic(shape.clone(), point_alg(), base.to_vec(), "a");
    let alg = point_alg();
    let top = minus.slot_count();
    let coeffs = (0..minus.arity())
        .map(|i| {
            (1..=top)
                .map(|s| {
                    if s == top {
                        alg.constant(Scalar::symbol(&format!("b_{}", i + 1)))
                    } else {
                        minus.coefficient(i, s)
                    }
                })
                .collect()
        })
        .collect();
    let plus = Microcube::from_coefficients(shape.clone(), alg, base.to_vec(), coeffs)
        .expect("generic pair");
    (plus, minus)
}

fn generic_tangent(base: &[Scalar], prefix: &str) -> Tangent {
    let alg = point_alg();
    let dir = (1..=base.len())
        .map(|i| alg.constant(Scalar::symbol(&format!("{prefix}{i}"))))
        .collect();
    Tangent::new(alg, base.to_vec(), dir).expect("generic tangent")
}

fn shape_name(shape: &SpaceDescriptor) -> String {
    shape.to_string().replace(' ', "")
}

/// The eight simple-polynomial dimensions in `D_3`.
pub fn simple_dimensions() -> Vec<CheckOutcome> {
    let mut c = Checks::default();
    let pt = point_alg();
    let one = pt.one();
    let zero = pt.zero();
    let cases: Vec<(&str, WeilAlgebra, Vec<crate::weil::WeilElement>, usize)> = vec![
        (
            "d",
            pt.clone(),
            vec![one.clone(), zero.clone(), zero.clone()],
            3,
        ),
        (
            "d+d^2",
            pt.clone(),
            vec![one.clone(), one.clone(), zero.clone()],
            3,
        ),
        (
            "d+d^3",
            pt.clone(),
            vec![one.clone(), zero.clone(), one.clone()],
            3,
        ),
        (
            "d^2",
            pt.clone(),
            vec![zero.clone(), one.clone(), zero.clone()],
            1,
        ),
        (
            "d^3",
            pt.clone(),
            vec![zero.clone(), zero.clone(), one.clone()],
            1,
        ),
        (
            "d^2+d^3",
            pt.clone(),
            vec![zero.clone(), one.clone(), one.clone()],
            1,
        ),
    ];
    for (label, aux, coeffs, expected) in cases {
        c.run(
            format!("simple-dims/{label}"),
            "dim_3 rho = least m with rho^(m+1) = 0",
            || {
                let rho = SimplePoly::new(3, aux, &coeffs)?;
                Ok(values(&rho.dimension()?, &expected))
            },
        );
    }
    for (l, expected) in [(1, 1), (2, 2)] {
        c.run(
            format!("simple-dims/ed,e-in-D_{l}"),
            "dim_3 ed = 1 or 2 for e in D_1 or D_2",
            || {
                let aux = WeilAlgebra::truncated("e", l);
                let e = aux.generator(0);
                let rho = SimplePoly::new(3, aux.clone(), &[e, aux.zero(), aux.zero()])?;
                Ok(values(&rho.dimension()?, &expected))
            },
        );
    }
    c.done()
}

/// Degree and dimension of `D(3)`, `D(3;(1,2))`, `D(3;(1,2),(1,3))`, `D^3`.
pub fn degree_table() -> Vec<CheckOutcome> {
    let mut c = Checks::default();
    let cases = [
        ("D(3)", SimplicialSpace::d_m_n(3, 1), 1),
        (
            "D(3;(1,2))",
            SimplicialSpace::new(3, vec![vec![1, 2]]).expect("valid"),
            2,
        ),
        (
            "D(3;(1,2),(1,3))",
            SimplicialSpace::new(3, vec![vec![1, 2], vec![1, 3]]).expect("valid"),
            2,
        ),
        ("D^3", SimplicialSpace::cube(3), 3),
    ];
    for (label, s, dim) in cases {
        c.run(
            format!("degree-table/{label}"),
            "degree m and dimension of D(m;S)",
            || Ok(values(&(s.degree(), s.dimension()), &(3, dim))),
        );
    }
    c.done()
}

fn diagram_names(params: &SuiteParams) -> Vec<String> {
    match &params.name {
        Some(n) => vec![n.clone()],
        None => vec!["lemma_diff".into(), "lemma_add".into()],
    }
}

fn check_diagram(c: &mut Checks, id: String, prob: &CoconeProblem, expect: bool) {
    let anchor = if expect {
        "the square is a quasi-colimit diagram"
    } else {
        "a corrupted square is rejected with a witness"
    };
    c.run(id, anchor, || {
        let r = verify_quasi_colimit(prob)?;
        Ok(match (expect, r.verdict()) {
            (true, true) => None,
            (true, false) => Some(r.witness.join("; ")),
            (false, true) => Some("corrupted diagram verified".into()),
            (false, false) if r.witness.is_empty() => Some("rejected without a witness".into()),
            (false, false) => None,
        })
    });
}

/// The difference and addition squares for `0 <= n <= 5` and their
/// single-exponent corruptions.
pub fn quasicolim_suite(params: &SuiteParams) -> Result<Vec<CheckOutcome>> {
    let mut c = Checks::default();
    for name in diagram_names(params) {
        for n in params.ns(0, 5) {
            let prob = builtin_diagram(&name, n)?;
            check_diagram(&mut c, format!("quasicolim/{name}/n={n}"), &prob, true);
            if name == "lemma_diff" || name == "lemma_add" {
                c.run(
                    format!("quasicolim/{name}/n={n}/apex-dimension"),
                    "dim W(D_(n+1) (+) D) = n + 3",
                    || Ok(values(&prob.apex.dimension(), &(n as usize + 3))),
                );
            }
            for (label, bad) in corruptions(&name, n) {
                check_diagram(
                    &mut c,
                    format!("quasicolim/{name}/n={n}/corrupt {label}"),
                    &bad,
                    false,
                );
            }
        }
    }
    Ok(c.done())
}

fn line_and_cube_shapes(params: &SuiteParams) -> Vec<(u32, SpaceDescriptor)> {
    params
        .ns(0, 3)
        .into_iter()
        .flat_map(|n| {
            [
                (n, SpaceDescriptor::Line(n + 1)),
                (n, SpaceDescriptor::Cube(n as usize + 1)),
            ]
        })
        .collect()
}

/// Scaling laws of strong difference and addition, on generic microcubes.
pub fn scaling_laws(params: &SuiteParams) -> Vec<CheckOutcome> {
    let mut c = Checks::default();
    let a = alpha();
    for p in params.ps(2) {
        let base = generic_base(p);
        for (n, shape) in line_and_cube_shapes(params) {
            let tag = format!("{}/p={p}", shape_name(&shape));
            let (plus, minus) = generic_pair(&shape, &base);
            let t = generic_tangent(&base, "t");
            let a_n1 = a.pow(n + 1);
            c.run(
                format!("scaling/diff/{tag}"),
                "αγ₊ ∸ αγ₋ = α^(n+1)(γ₊ ∸ γ₋)",
                || {
                    let lhs = strong_diff(&scale_all(&plus, &a)?, &scale_all(&minus, &a)?)?;
                    let rhs = strong_diff(&plus, &minus)?.scale(&a_n1);
                    Ok(tangents(&lhs, &rhs))
                },
            );
            c.run(
                format!("scaling/add/{tag}"),
                "α^(n+1)t ∔ αγ = α(t ∔ γ)",
                || {
                    let lhs = strong_add(&t.scale(&a_n1), &scale_all(&minus, &a)?)?;
                    let rhs = scale_all(&strong_add(&t, &minus)?, &a)?;
                    Ok(cubes(&lhs, &rhs))
                },
            );
            if let SpaceDescriptor::Cube(_) = shape {
                for i in 1..=n as usize + 1 {
                    c.run(
                        format!("scaling/diff-axis/{tag}/i={i}"),
                        "α·ᵢγ₊ ∸ α·ᵢγ₋ = α(γ₊ ∸ γ₋)",
                        || {
                            let lhs =
                                strong_diff(&plus.scale_axis(&a, i)?, &minus.scale_axis(&a, i)?)?;
                            let rhs = strong_diff(&plus, &minus)?.scale(&a);
                            Ok(tangents(&lhs, &rhs))
                        },
                    );
                    c.run(
                        format!("scaling/add-axis/{tag}/i={i}"),
                        "αt ∔ α·ᵢγ = α·ᵢ(t ∔ γ)",
                        || {
                            let lhs = strong_add(&t.scale(&a), &minus.scale_axis(&a, i)?)?;
                            let rhs = strong_add(&t, &minus)?.scale_axis(&a, i)?;
                            Ok(cubes(&lhs, &rhs))
                        },
                    );
                }
            }
        }
    }
    c.done()
}

/// Affine-space axioms of strong difference and addition, agreement of the
/// closed formulas with the factorizations through the quasi-colimits, the
/// restriction lemma for `γ_{D(m;S)}`, and composition of permutations.
pub fn microcube_axioms(params: &SuiteParams) -> Vec<CheckOutcome> {
    let mut c = Checks::default();
    let mut rng = random::rng(params.seed);
    for p in params.ps(2) {
        let base = generic_base(p);
        for (_, shape) in line_and_cube_shapes(params) {
            let tag = format!("{}/p={p}", shape_name(&shape));
            let (plus, minus) = generic_pair(&shape, &base);
            let t1 = generic_tangent(&base, "t");
            let t2 = generic_tangent(&base, "s");
            c.run(
                format!("microcube/add-then-diff/{tag}"),
                "(t ∔ γ) ∸ γ = t",
                || {
                    Ok(tangents(
                        &strong_diff(&strong_add(&t1, &minus)?, &minus)?,
                        &t1,
                    ))
                },
            );
            c.run(
                format!("microcube/diff-then-add/{tag}"),
                "(γ₊ ∸ γ₋) ∔ γ₋ = γ₊",
                || {
                    Ok(cubes(
                        &strong_add(&strong_diff(&plus, &minus)?, &minus)?,
                        &plus,
                    ))
                },
            );
            c.run(
                format!("microcube/add-assoc/{tag}"),
                "(t₁ + t₂) ∔ γ = t₁ ∔ (t₂ ∔ γ)",
                || {
                    let lhs = strong_add(&t1.add(&t2)?, &minus)?;
                    let rhs = strong_add(&t1, &strong_add(&t2, &minus)?)?;
                    Ok(cubes(&lhs, &rhs))
                },
            );
        }
    }

    // Closed formulas against the universal property, on rational data.
    for n in params.ns(0, 2) {
        for shape in [
            SpaceDescriptor::Line(n + 1),
            SpaceDescriptor::Cube(n as usize + 1),
        ] {
            let tag = shape_name(&shape);
            let minus = random_rational_cube(&mut rng, &shape, 2);
            let plus = replace_top(&minus, &mut rng);
            let t = Tangent::new(
                point_alg(),
                minus.base().to_vec(),
                (0..2)
                    .map(|_| point_alg().constant(random::small_rational(&mut rng)))
                    .collect(),
            )
            .expect("tangent");
            c.run(
                format!("microcube/diff-by-factorization/{tag}"),
                "(γ₊ ∸ γ₋)(d) = f(0, d) for the factorization f",
                || {
                    let direct = strong_diff(&plus, &minus)?;
                    let universal = crate::quasicolim::strong_diff_by_factorization(&plus, &minus)?;
                    Ok(tangents(&direct, &universal))
                },
            );
            c.run(
                format!("microcube/add-by-factorization/{tag}"),
                "(t ∔ γ)(d) = f(d, d^(n+1)) for the factorization f",
                || {
                    let direct = strong_add(&t, &minus)?;
                    let universal = crate::quasicolim::strong_add_by_factorization(&t, &minus)?;
                    Ok(cubes(&direct, &universal))
                },
            );
        }
    }

    // γ_{D(m;S2)}|_{D(m;S1)} = (γ|_{D_n3})_{D(m;S1)}.
    let max_m = params.n.map_or(4, |n| n as usize);
    for m in 1..=max_m {
        let spaces = all_simplicial_spaces(m);
        let mut failures = Vec::new();
        let mut count = 0usize;
        let start = Instant::now();
        for s2 in &spaces {
            let n2 = s2.dimension();
            for s1 in &spaces {
                if inclusion(s1, s2).is_err() {
                    continue;
                }
                let n1 = s1.dimension();
                let n = n2.max(1) as u32;
                let gamma = Microcube::generic(
                    SpaceDescriptor::Line(n),
                    point_alg(),
                    vec![Scalar::zero()],
                    "a",
                );
                for n3 in n1.max(1) as u32..=n {
                    count += 1;
                    let lhs = gamma
                        .on_simplicial(s2)
                        .and_then(|g| g.restrict_to_simplicial(s1));
                    let rhs = gamma.restrict_to_line(n3).and_then(|g| g.on_simplicial(s1));
                    let w = match (lhs, rhs) {
                        (Ok(l), Ok(r)) => cubes(&l, &r),
                        (Err(e), _) | (_, Err(e)) => Some(format!("error: {e}")),
                    };
                    if let Some(w) = w {
                        failures.push(format!(
                            "{:?} in {:?}, n3 = {n3}: {w}",
                            s1.relations(),
                            s2.relations()
                        ));
                    }
                }
            }
        }
        c.out.push(CheckOutcome {
            id: format!("microcube/restriction-lemma/m={m}"),
            anchor: "γ_{D(m;S₂)}|_{D(m;S₁)} = (γ|_{D_n₃})_{D(m;S₁)}".into(),
            passed: failures.is_empty() && count > 0,
            witness: failures
                .first()
                .cloned()
                .or_else(|| (count == 0).then(|| "no instances".into())),
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }

    // Σ_τ ∘ Σ_σ = Σ_{τ∘σ} on D^3.
    let gamma = Microcube::generic(SpaceDescriptor::Cube(3), point_alg(), generic_base(1), "a");
    let perms = permutations(3);
    c.run(
        "microcube/permutation-composition/D^3".into(),
        "Σ_τ(Σ_σ(γ)) = Σ_{τ∘σ}(γ)",
        || {
            for s in &perms {
                for t in &perms {
                    let composed: Vec<usize> = s.iter().map(|&k| t[k - 1]).collect();
                    let lhs = gamma.permute(s)?.permute(t)?;
                    let rhs = gamma.permute(&composed)?;
                    if let Some(w) = cubes(&lhs, &rhs) {
                        return Ok(Some(format!("sigma = {s:?}, tau = {t:?}: {w}")));
                    }
                }
            }
            Ok(None)
        },
    );
    c.done()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn random_rational_cube(rng: &mut Rng8, shape: &SpaceDescriptor, p: usize) -> Microcube {
    let alg = point_alg();
    let slots = shape.algebra().dimension() - 1;
    let coeffs = (0..p)
        .map(|_| {
            (0..slots)
                .map(|_| alg.constant(random::small_rational(rng)))
                .collect()
        })
        .collect();
    Microcube::from_coefficients(shape.clone(), alg, random::random_base(rng, p), coeffs)
        .expect("random microcube")
}

fn replace_top(m: &Microcube, rng: &mut Rng8) -> Microcube {
    let alg = m.aux().clone();
    let top = m.slot_count();
    let coeffs = (0..m.arity())
        .map(|i| {
            (1..=top)
                .map(|s| {
                    if s == top {
                        alg.constant(random::small_rational(rng))
                    } else {
                        m.coefficient(i, s)
                    }
                })
                .collect()
        })
        .collect();
    Microcube::from_coefficients(m.shape().clone(), alg, m.base().to_vec(), coeffs)
        .expect("same shape")
}

/// Naturality of strong difference and addition under a random polynomial
/// map of degree at most 3.
pub fn naturality(params: &SuiteParams) -> Vec<CheckOutcome> {
    let mut c = Checks::default();
    let mut rng = random::rng(params.seed);
    for p in params.ps(2) {
        let k = params.q.unwrap_or(2);
        let f = random_poly_map(&mut rng, p, k, 3);
        let base = random::random_base(&mut rng, p);
        for (_, shape) in line_and_cube_shapes(params) {
            let tag = format!("{}/p={p}", shape_name(&shape));
            let (plus, minus) = generic_pair(&shape, &base);
            let t = generic_tangent(&base, "t");
            c.run(
                format!("naturality/diff/{tag}"),
                "f_*(γ₊ ∸ γ₋) = f_*(γ₊) ∸ f_*(γ₋)",
                || {
                    let lhs = strong_diff(&plus, &minus)?.pushforward(&f)?;
                    let rhs = strong_diff(&plus.pushforward(&f)?, &minus.pushforward(&f)?)?;
                    Ok(tangents(&lhs, &rhs))
                },
            );
            c.run(
                format!("naturality/add/{tag}"),
                "f_*(t ∔ γ) = f_*(t) ∔ f_*(γ)",
                || {
                    let lhs = strong_add(&t, &minus)?.pushforward(&f)?;
                    let rhs = strong_add(&t.pushforward(&f)?, &minus.pushforward(&f)?)?;
                    Ok(cubes(&lhs, &rhs))
                },
            );
        }
    }
    c.done()
}

fn bundle_points(params: &SuiteParams, rng: &mut Rng8) -> Vec<BundlePoint> {
    let mut out = Vec::new();
    for p in params.ps(2) {
        for q in params.qs(2) {
            out.push(random_point(rng, p, q));
        }
    }
    out
}

fn point_tag(x: &BundlePoint) -> String {
    format!("p={},q={}", x.p(), x.q())
}

/// The affine bundle of jets of order `n + 1` over order `n`, modelled on
/// forms of order `n + 1`.
pub fn affine_bundle(params: &SuiteParams) -> Vec<CheckOutcome> {
    let mut c = Checks::default();
    let mut rng = random::rng(params.seed);
    let a = alpha();
    for x in bundle_points(params, &mut rng) {
        for n in params.ns(0, 3) {
            let order = n + 1;
            for variant in [Variant::Line, Variant::Cube] {
                let tag = format!("{variant}/order={order}/{}", point_tag(&x));
                let f = random_jet(&mut rng, variant, order, &x);
                let w1 = random_form(&mut rng, variant, order, &x);
                let w2 = random_form(&mut rng, variant, order, &x);
                let pair = random_jet_pair(&mut rng, variant, order, &x);
                c.run(
                    format!("affine/add-then-diff/{tag}"),
                    "(ω ∔ f) ∸ f = ω",
                    || Ok(values(&jet_diff(&jet_add(&w1, &f)?, &f)?, &w1)),
                );
                c.run(
                    format!("affine/diff-then-add/{tag}"),
                    "(f⁺ ∸ f⁻) ∔ f⁻ = f⁺",
                    || {
                        let (plus, minus) = pair.clone()?;
                        Ok(values(&jet_add(&jet_diff(&plus, &minus)?, &minus)?, &plus))
                    },
                );
                c.run(
                    format!("affine/add-assoc/{tag}"),
                    "(ω₁ + ω₂) ∔ f = ω₁ ∔ (ω₂ ∔ f)",
                    || {
                        Ok(values(
                            &jet_add(&w1.add(&w2)?, &f)?,
                            &jet_add(&w1, &jet_add(&w2, &f)?)?,
                        ))
                    },
                );
                c.run(
                    format!("affine/diff-is-form/{tag}"),
                    "f⁺ ∸ f⁻ is a symmetric form",
                    || {
                        let (plus, minus) = pair.clone()?;
                        let r = validate_form(&jet_diff(&plus, &minus)?.to_candidate());
                        Ok(r.failures()
                            .first()
                            .map(|f| format!("{}: {:?}", f.condition, f.witness)))
                    },
                );
                c.run(
                    format!("affine/add-is-tangential/{tag}"),
                    "ω ∔ f is a tangential",
                    || {
                        let r = validate_tangential(&jet_add(&w1, &f)?.to_candidate());
                        Ok(r.failures()
                            .first()
                            .map(|f| format!("{}: {:?}", f.condition, f.witness)))
                    },
                );
                if variant == Variant::Line {
                    c.run(
                        format!("affine/add-scaling/{tag}"),
                        "(ω ∔ f)(αγ) = α^(n+1)ω(γ) ∔ αf(γ) = α((ω ∔ f)(γ))",
                        || {
                            let g = jet_add(&w1, &f)?;
                            let gamma = Microcube::generic(
                                variant.shape(order),
                                point_alg(),
                                x.base.clone(),
                                "a",
                            );
                            let lhs = g.apply(&gamma.scale(&a)?)?;
                            let mid = strong_add(
                                &w1.evaluate(&gamma)?.scale(&a.pow(order)),
                                &f.apply(&gamma)?.scale(&a)?,
                            )?;
                            let rhs = g.apply(&gamma)?.scale(&a)?;
                            Ok(cubes(&lhs, &mid).or_else(|| cubes(&mid, &rhs)))
                        },
                    );
                }
            }
        }
    }
    c.done()
}

/// `Φ_n` and `Ψ_n`: the characterization of `Φ_n`, the commuting square
/// with the projections, the pointwise identities, and the compatibility
/// of `Φ`, `Ψ` with strong difference and addition.
pub fn comparison(params: &SuiteParams) -> Vec<CheckOutcome> {
    let mut c = Checks::default();
    let mut rng = random::rng(params.seed);
    for x in bundle_points(params, &mut rng) {
        for n in params.ns(1, 3) {
            let tag = format!("n={n}/{}", point_tag(&x));
            let f = random_jet(&mut rng, Variant::Cube, n + 1, &x);
            let pair = random_jet_pair(&mut rng, Variant::Cube, n + 1, &x);
            let w = random_form(&mut rng, Variant::Cube, n + 1, &x);
            c.run(
                format!("phi-psi/characterization/{tag}"),
                "f(γ_{D^n}) = Φ_n(f)(γ)_{D^n}",
                || {
                    phi(&f.project(n)?)?;
                    phi(&f)?;
                    Ok(None)
                },
            );
            c.run(
                format!("phi-psi/square/{tag}"),
                "π_{n+1,n} ∘ Φ_{n+1} = Φ_n ∘ π_{n+1,n}",
                || Ok(values(&phi(&f)?.project(n)?, &phi(&f.project(n)?)?)),
            );
            c.run(
                format!("phi-psi/pointwise-diff/{tag}"),
                "Φ_n(f⁺)(γ) ∸ Φ_n(f⁻)(γ) = f⁺(γ_{D^n}) ∸ f⁻(γ_{D^n})",
                || {
                    let (plus, minus) = pair.clone()?;
                    let gamma = Microcube::generic(
                        SpaceDescriptor::Line(n + 1),
                        point_alg(),
                        x.base.clone(),
                        "a",
                    );
                    let lhs =
                        strong_diff(&phi(&plus)?.apply(&gamma)?, &phi(&minus)?.apply(&gamma)?)?;
                    let cube = gamma.on_cube()?;
                    let rhs = strong_diff(&plus.apply(&cube)?, &minus.apply(&cube)?)?;
                    Ok(tangents(&lhs, &rhs))
                },
            );
            c.run(
                format!("phi-psi/pointwise-add/{tag}"),
                "(t ∔ Φ_n(f)(γ))_{D^n} = t ∔ f(γ_{D^n})",
                || {
                    let gamma = Microcube::generic(
                        SpaceDescriptor::Line(n + 1),
                        point_alg(),
                        x.base.clone(),
                        "a",
                    );
                    let t = generic_tangent(&x.coordinates(), "t");
                    let lhs = strong_add(&t, &phi(&f)?.apply(&gamma)?)?.on_cube()?;
                    let rhs = strong_add(&t, &f.apply(&gamma.on_cube()?)?)?;
                    Ok(cubes(&lhs, &rhs))
                },
            );
            c.run(
                format!("phi-psi/diff-compat/{tag}"),
                "Ψ(f⁺ ∸ f⁻) = Φ(f⁺) ∸ Φ(f⁻)",
                || {
                    let (plus, minus) = pair.clone()?;
                    Ok(values(
                        &psi(&jet_diff(&plus, &minus)?)?,
                        &jet_diff(&phi(&plus)?, &phi(&minus)?)?,
                    ))
                },
            );
            c.run(
                format!("phi-psi/add-compat/{tag}"),
                "Φ(ω ∔ f) = Ψ(ω) ∔ Φ(f)",
                || {
                    Ok(values(
                        &phi(&jet_add(&w, &f)?)?,
                        &jet_add(&psi(&w)?, &phi(&f)?)?,
                    ))
                },
            );
            c.run(
                format!("phi-psi/lemma-diff/{tag}"),
                "γ⁺ ∸ γ⁻ = γ⁺_{D^(n+1)} ∸ γ⁻_{D^(n+1)}",
                || {
                    let (plus, minus) =
                        generic_pair(&SpaceDescriptor::Line(n + 1), &generic_base(x.p()));
                    let agree = SimplicialSpace::d_m_n(n as usize + 1, n as usize);
                    let (pc, mc) = (plus.on_cube()?, minus.on_cube()?);
                    if let Some(w) = cubes(
                        &pc.restrict_to_simplicial(&agree)?,
                        &mc.restrict_to_simplicial(&agree)?,
                    ) {
                        return Ok(Some(format!("restrictions to D(n+1)_n differ: {w}")));
                    }
                    Ok(tangents(
                        &strong_diff(&plus, &minus)?,
                        &strong_diff(&pc, &mc)?,
                    ))
                },
            );
            c.run(
                format!("phi-psi/lemma-add/{tag}"),
                "(t ∔ γ)_{D^n} = t ∔ γ_{D^n}",
                || {
                    let base = generic_base(x.p());
                    let gamma = Microcube::generic(
                        SpaceDescriptor::Line(n),
                        point_alg(),
                        base.clone(),
                        "a",
                    );
                    let t = generic_tangent(&base, "t");
                    Ok(cubes(
                        &strong_add(&t, &gamma)?.on_cube()?,
                        &strong_add(&t, &gamma.on_cube()?)?,
                    ))
                },
            );
        }
    }
    c.done()
}

/// `(Φ_n, Φ_(n+1), Ψ_(n+1) × Φ_n)` is a morphism of affine bundles.
pub fn affine_morphism(params: &SuiteParams) -> Vec<CheckOutcome> {
    let mut c = Checks::default();
    let mut rng = random::rng(params.seed);
    for x in bundle_points(params, &mut rng) {
        for n in params.ns(0, 3) {
            let tag = format!("n={n}/{}", point_tag(&x));
            let f = random_jet(&mut rng, Variant::Cube, n + 1, &x);
            let w1 = random_form(&mut rng, Variant::Cube, n + 1, &x);
            let w2 = random_form(&mut rng, Variant::Cube, n + 1, &x);
            let k = random::nonzero_rational(&mut rng);
            c.run(
                format!("morphism/bundle-morphism/{tag}"),
                "π_{n+1,n} ∘ Φ_{n+1} = Φ_n ∘ π_{n+1,n}",
                || Ok(values(&phi(&f)?.project(n)?, &phi(&f.project(n)?)?)),
            );
            c.run(
                format!("morphism/vector-bundle-morphism/{tag}"),
                "the base of (Ψ(ω), Φ_n(f)) is Φ_n(f)",
                || {
                    let image: (SymmetricForm, Jet) = (psi(&w1)?, phi(&f.project(n)?)?);
                    Ok(values(image.1.point(), f.point())
                        .or_else(|| values(&image.0.point(), &f.point())))
                },
            );
            c.run(
                format!("morphism/linear-part/{tag}"),
                "Ψ(ω₁ + ω₂) = Ψ(ω₁) + Ψ(ω₂), Ψ(kω) = kΨ(ω)",
                || {
                    Ok(values(&psi(&w1.add(&w2)?)?, &psi(&w1)?.add(&psi(&w2)?)?)
                        .or(values(&psi(&w1.scale(&k))?, &psi(&w1)?.scale(&k))))
                },
            );
            c.run(
                format!("morphism/affine-map/{tag}"),
                "Φ_{n+1}(ω ∔ f) = Ψ_{n+1}(ω) ∔ Φ_{n+1}(f)",
                || {
                    Ok(values(
                        &phi(&jet_add(&w1, &f)?)?,
                        &jet_add(&psi(&w1)?, &phi(&f)?)?,
                    ))
                },
            );
            c.run(
                format!("morphism/difference-map/{tag}"),
                "Ψ_{n+1}((ω ∔ f) ∸ f) = Φ_{n+1}(ω ∔ f) ∸ Φ_{n+1}(f)",
                || {
                    let g = jet_add(&w1, &f)?;
                    Ok(values(
                        &psi(&jet_diff(&g, &f)?)?,
                        &jet_diff(&phi(&g)?, &phi(&f)?)?,
                    ))
                },
            );
        }
    }
    c.done()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the form spaces and rank of `Ψ_n`.
pub fn dimension_count(params: &SuiteParams) -> Vec<CheckOutcome> {
    let mut c = Checks::default();
    for p in params.ps(3) {
        for q in params.qs(3) {
            for n in params.ns(1, 4) {
                let expected = q * binomial(p + n as usize - 1, n as usize);
                for variant in [Variant::Line, Variant::Cube] {
                    c.run(
                        format!("dims/{variant}/p={p},q={q},n={n}"),
                        "dim S = q·C(p+n−1, n) and Ψ_n has full rank",
                        || {
                            let fs = form_space_dimension(p, q, n, variant)?;
                            Ok(values(
                                &(fs.dimension, fs.basis.len(), fs.psi_rank),
                                &(expected, expected, expected),
                            ))
                        },
                    );
                }
            }
        }
    }
    c.done()
}

fn sym(s: &str) -> Scalar {
    Scalar::symbol(s)
}

fn line_jet_mutant(outputs: Vec<Vec<Scalar>>) -> JetCandidate {
    JetCandidate {
        variant: Variant::Line,
        order: 2,
        point: BundlePoint::origin(1, 1),
        out_base: vec![Scalar::zero(), Scalar::zero()],
        outputs,
    }
}

fn expect_rejection(report: crate::jets::ValidationReport, needle: &str) -> Option<String> {
    match report.failure_matching(needle) {
        Some(f) if f.witness.is_some() => None,
        Some(_) => Some(format!("`{needle}` failed without a witness")),
        None => Some(format!("mutant not rejected by `{needle}`")),
    }
}

/// Every documented mutant is rejected with a concrete witness.
pub fn negative(params: &SuiteParams) -> Vec<CheckOutcome> {
    let mut c = Checks::default();
    let ns = params.ns(0, 5);
    for name in ["lemma_diff", "lemma_add"] {
        for &n in &ns {
            for (label, bad) in corruptions(name, n) {
                check_diagram(
                    &mut c,
                    format!("negative/{name}/n={n}/{label}"),
                    &bad,
                    false,
                );
            }
        }
    }
    let (a1, a2) = (sym("a1_1"), sym("a2_1"));
    let mutants = [
        (
            "jet b1 = a1^2, b2 = a1^2 + a2",
            line_jet_mutant(vec![
                vec![a1.clone(), a2.clone()],
                vec![a1.pow(2), &a1.pow(2) + &a2],
            ]),
            "homogeneity",
        ),
        (
            "jet b2 = a1^3",
            line_jet_mutant(vec![
                vec![a1.clone(), a2.clone()],
                vec![Scalar::zero(), a1.pow(3)],
            ]),
            "homogeneity",
        ),
        (
            "jet b1 = a1, b2 = 2 a2",
            line_jet_mutant(vec![
                vec![a1.clone(), a2.clone()],
                vec![a1.clone(), a2.scale(&crate::scalar::int(2))],
            ]),
            "reparametrization",
        ),
    ];
    for (label, cand, needle) in mutants {
        c.run(
            format!("negative/{label}"),
            "a mutant tangential is rejected",
            || Ok(expect_rejection(validate_tangential(&cand), needle)),
        );
    }
    let form = FormCandidate {
        variant: Variant::Line,
        order: 2,
        point: BundlePoint::origin(1, 1),
        outputs: vec![a2],
    };
    c.run(
        "negative/form omega = a2".into(),
        "ω(γ∘ρ) = 0 fails for ρ = d^2",
        || Ok(expect_rejection(validate_form(&form), "c2 d^2")),
    );
    let cube_form = FormCandidate {
        variant: Variant::Cube,
        order: 2,
        point: BundlePoint::origin(1, 1),
        outputs: vec![sym("a1_1").pow(2)],
    };
    c.run(
        "negative/cube form omega = a_{1}^2".into(),
        "a D^n-form is linear in each axis",
        || Ok(expect_rejection(validate_form(&cube_form), "linearity")),
    );
    c.done()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(out: &[CheckOutcome]) {
        assert!(!out.is_empty());
        for o in out {
            assert!(o.passed, "{}: {:?}", o.id, o.witness);
        }
    }

    #[test]
    fn small_suites_pass() {
        all_pass(&simple_dimensions());
        all_pass(&degree_table());
    }

    #[test]
    fn every_builtin_diagram_certifies() {
        for name in crate::quasicolim::BUILTIN_NAMES {
            let params = SuiteParams {
                name: Some(name.to_string()),
                ..SuiteParams::default()
            };
            let out = quasicolim_suite(&params).unwrap();
            assert!(out.iter().any(|o| o.id == format!("quasicolim/{name}/n=5")));
            all_pass(&out);
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            run_suite("nope", &SuiteParams::default()),
            Err(Error::InvalidSuite(_))
        ));
    }

    #[test]
    fn permutations_of_three() {
        assert_eq!(permutations(3).len(), 6);
    }
}
