use std::time::Instant;

use serde_json::json;
use weiljet::infinitesimal::SpaceDescriptor;
use weiljet::jets::{form_space_dimension, Variant};
use weiljet::microcube::{strong_add, strong_diff, Microcube, SimplePoly, Tangent};
use weiljet::scalar::Scalar;
use weiljet::verify::{run_suite, SuiteParams, DEFAULT_SEED};
use weiljet::weil::{Exponents, WeilAlgebra};

use crate::ast::{Action, Command, CubeExpr, CubeLiteral};
use crate::codec::{algebra_json, element_json, MAX_DIMENSION};
use crate::eval::{eval_element, eval_scalar};
use crate::report::{Record, Report};

/// Largest `p`, `q` accepted by the suites and `dim forms`.
pub const MAX_PQ: usize = 3;
/// Largest `n` accepted by the suites and `dim forms`.
pub const MAX_N: u32 = 5;

type Failure = String;

fn estimated_dimension(s: &SpaceDescriptor) -> u128 {
    match s {
        SpaceDescriptor::Point => 1,
        SpaceDescriptor::Line(n) => *n as u128 + 1,
        SpaceDescriptor::Cube(m) | SpaceDescriptor::DmN(m, _) => 1u128 << (*m).min(100),
        SpaceDescriptor::Simplicial(s) => 1u128 << s.degree().min(100),
        SpaceDescriptor::OPlus(a, b) => {
            estimated_dimension(a).saturating_add(estimated_dimension(b))
        }
        SpaceDescriptor::Product(a, b) => {
            estimated_dimension(a).saturating_mul(estimated_dimension(b))
        }
    }
}

fn algebra_of(s: &SpaceDescriptor) -> Result<WeilAlgebra, Failure> {
    let d = estimated_dimension(s);
    if d > MAX_DIMENSION as u128 {
        return Err(format!(
            "the algebra of {s} may have dimension {d}, above {MAX_DIMENSION}"
        ));
    }
    Ok(s.algebra())
}

fn algebra_text(s: &SpaceDescriptor, alg: &WeilAlgebra) -> String {
    let mut ideal: Vec<&Exponents> = alg.ideal().iter().collect();
    ideal.sort_by(|a, b| {
        let deg = |m: &Exponents| m.iter().sum::<u32>();
        deg(a).cmp(&deg(b)).then_with(|| b.cmp(a))
    });
    let rels: Vec<String> = ideal.into_iter().map(|m| alg.monomial_string(m)).collect();
    let basis: Vec<String> = alg.basis().iter().map(|m| alg.monomial_string(m)).collect();
    format!(
        "W({s}) = Q[{}] / ({})\ndimension {}\nbasis {}",
        alg.generators().join(", "),
        rels.join(", "),
        alg.dimension(),
        basis.join(", ")
    )
}

fn dim_simple(
    poly: &crate::ast::Expr,
    space: &SpaceDescriptor,
    aux: &Option<(String, SpaceDescriptor)>,
) -> Result<(serde_json::Value, String), Failure> {
    let k = space
        .line_order()
        .ok_or_else(|| format!("simple polynomials live on D_n(k), not {space}"))?;
    let aux_alg = match aux {
        None => WeilAlgebra::point(),
        Some((name, s)) => {
            let l = s
                .line_order()
                .ok_or_else(|| format!("{name} must range over some D_n(l), not {s}"))?;
            if name == "d" {
                return Err("the auxiliary scalar cannot be called `d`".into());
            }
            WeilAlgebra::truncated(name, l)
        }
    };
    let alg = SpaceDescriptor::Line(k).algebra().tensor(&aux_alg);
    let element = eval_element(poly, &alg).map_err(|e| e.to_string())?;
    let rho = SimplePoly::from_element(k, aux_alg, element).map_err(|e| e.to_string())?;
    let dim = rho.dimension().map_err(|e| e.to_string())?;
    Ok((json!(dim), format!("dim_{k}({poly}) = {dim}")))
}

fn dim_space(s: &SpaceDescriptor) -> Result<(serde_json::Value, String), Failure> {
    let alg = algebra_of(s)?;
    let dd = s.degree_and_dimension();
    let mut text = format!("{s}: algebra dimension {}", alg.dimension());
    if let Some((deg, dim)) = dd {
        text.push_str(&format!(", degree {deg}, dimension {dim}"));
    }
    Ok((
        json!({
            "degree": dd.map(|d| d.0),
            "dimension": dd.map(|d| d.1),
            "algebra_dimension": alg.dimension(),
        }),
        text,
    ))
}

fn dim_forms(
    p: usize,
    q: usize,
    n: u32,
    variant: Variant,
) -> Result<(serde_json::Value, String), Failure> {
    if p > MAX_PQ || q > MAX_PQ || n > MAX_N {
        return Err(format!(
            "dim forms supports p, q <= {MAX_PQ} and n <= {MAX_N}"
        ));
    }
    let fs = form_space_dimension(p, q, n, variant).map_err(|e| e.to_string())?;
    Ok((
        json!({"dimension": fs.dimension, "psi_rank": fs.psi_rank}),
        format!("{}", fs.dimension),
    ))
}

fn cube_literal(c: &CubeLiteral) -> Result<Microcube, Failure> {
    let alg = algebra_of(&c.shape)?;
    let slots = alg.dimension() - 1;
    if c.coeffs.len() != slots {
        return Err(format!(
            "{} has {slots} coefficient slots, {} given",
            c.shape,
            c.coeffs.len()
        ));
    }
    if let Some(row) = c.coeffs.iter().find(|r| r.len() != c.base.len()) {
        return Err(format!(
            "a slot has {} entries for {} coordinates",
            row.len(),
            c.base.len()
        ));
    }
    let point = WeilAlgebra::point();
    let base = c
        .base
        .iter()
        .map(eval_scalar)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let mut coeffs = vec![Vec::with_capacity(slots); base.len()];
    for row in &c.coeffs {
        for (i, e) in row.iter().enumerate() {
            coeffs[i].push(point.constant(eval_scalar(e).map_err(|e| e.to_string())?));
        }
    }
    Microcube::from_coefficients(c.shape.clone(), point, base, coeffs).map_err(|e| e.to_string())
}

fn as_tangent(m: &Microcube) -> Result<Tangent, Failure> {
    if m.shape().line_order() != Some(1) {
        return Err(format!(
            "expected a tangent (shape D), got shape {}",
            m.shape()
        ));
    }
    let dir = (0..m.arity()).map(|i| m.coefficient(i, 1)).collect();
    Tangent::new(m.aux().clone(), m.base().to_vec(), dir).map_err(|e| e.to_string())
}

fn eval_cube(c: &CubeExpr) -> Result<Microcube, Failure> {
    let err = |e: weiljet::Error| e.to_string();
    match c {
        CubeExpr::Literal(l) => cube_literal(l),
        CubeExpr::Diff(a, b) => Ok(strong_diff(&eval_cube(a)?, &eval_cube(b)?)
            .map_err(err)?
            .as_microcube()
            .clone()),
        CubeExpr::Add(t, g) => {
            strong_add(&as_tangent(&eval_cube(t)?)?, &eval_cube(g)?).map_err(err)
        }
        CubeExpr::Scale(k, g) => {
            let k: Scalar = eval_scalar(k).map_err(|e| e.to_string())?;
            let g = eval_cube(g)?;
            match g.shape() {
                SpaceDescriptor::Cube(m) => (1..=*m)
                    .try_fold(g.clone(), |g, i| g.scale_axis(&k, i))
                    .map_err(err),
                _ => g.scale(&k).map_err(err),
            }
        }
    }
}

fn value_report(
    cmd: &Command,
    suite: &str,
    anchor: &str,
    f: impl FnOnce() -> Result<(serde_json::Value, String), Failure>,
) -> Report {
    let start = Instant::now();
    let (record, value, text) = match f() {
        Ok((v, t)) => (Record::pass(suite, anchor), Some(v), t),
        Err(w) => (Record::fail(suite, anchor, w), None, String::new()),
    };
    let mut record = record;
    record.elapsed_ms = start.elapsed().as_millis() as u64;
    let mut report = Report::new(cmd.to_string(), suite, None, vec![record]);
    report.value = value;
    report.text = Some(text);
    report
}

fn check(cmd: &Command, suite: &str) -> Report {
    let o = &cmd.options;
    let seed = o.seed.unwrap_or(DEFAULT_SEED);
    let out_of_range = o.p.is_some_and(|p| p == 0 || p > MAX_PQ)
        || o.q.is_some_and(|q| q == 0 || q > MAX_PQ)
        || o.n.is_some_and(|n| n > MAX_N);
    let records = if out_of_range {
        vec![Record::fail(
            format!("{suite}/parameters"),
            "suite parameters",
            format!("suites support 1 <= p, q <= {MAX_PQ} and n <= {MAX_N}"),
        )]
    } else {
        let params = SuiteParams {
            p: o.p,
            q: o.q,
            n: o.n,
            seed,
            name: o.name.clone(),
        };
        match run_suite(suite, &params) {
            Ok(outcomes) => outcomes.into_iter().map(Record::from_outcome).collect(),
            Err(e) => vec![Record::fail(suite, "suite", e.to_string())],
        }
    };
    Report::new(cmd.to_string(), suite, Some(seed), records)
}

/// Executes a parsed command. Library errors become failed records.
pub fn run(cmd: &Command) -> Report {
    match &cmd.action {
        Action::Algebra(s) => value_report(cmd, "algebra", "the Weil algebra of a space", || {
            algebra_of(s).map(|alg| {
                (
                    serde_json::to_value(algebra_json(&alg)).expect("serializable"),
                    algebra_text(s, &alg),
                )
            })
        }),
        Action::DimSimple { poly, space, aux } => {
            value_report(cmd, "dim-simple", "least m with rho^(m+1) = 0", || {
                dim_simple(poly, space, aux)
            })
        }
        Action::DimSpace(s) => {
            value_report(cmd, "dim-space", "degree and dimension of a space", || {
                dim_space(s)
            })
        }
        Action::DimForms => {
            let o = &cmd.options;
            let (p, q, n) = (o.p.unwrap_or(1), o.q.unwrap_or(1), o.n.unwrap_or(1));
            value_report(
                cmd,
                "dim-forms",
                "dimension of the space of symmetric forms",
                || dim_forms(p, q, n, o.variant.unwrap_or(Variant::Line)),
            )
        }
        Action::EvalElement { expr, space } => {
            value_report(cmd, "eval", "normal form in the Weil algebra", || {
                algebra_of(space).and_then(|alg| {
                    let x = eval_element(expr, &alg).map_err(|e| e.to_string())?;
                    Ok((
                        serde_json::to_value(element_json(&x)).expect("serializable"),
                        x.to_string(),
                    ))
                })
            })
        }
        Action::EvalCube(c) => value_report(cmd, "eval", "microcube value", || {
            eval_cube(c).map(|m| (json!(m.to_string()), m.to_string()))
        }),
        Action::Check(suite) => check(cmd, suite),
        Action::Report => check(cmd, "all"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_command;

    fn value(src: &str) -> serde_json::Value {
        let r = run(&parse_command(src).unwrap());
        assert_eq!(r.exit_code(), 0, "{}", r.render_text());
        r.value.unwrap()
    }

    #[test]
    fn simple_dimensions() {
        assert_eq!(value("dim simple d + d^2 in D_n(3)"), json!(3));
        assert_eq!(value("dim simple d^2 + d^3 in D_n(3)"), json!(1));
        assert_eq!(value("dim simple e*d in D_n(3) with e in D_n(2)"), json!(2));
    }

    #[test]
    fn form_dimension() {
        assert_eq!(value("dim forms --p 2 --q 1 --n 2")["dimension"], json!(3));
    }

    #[test]
    fn strong_difference_of_literals() {
        let v = value("eval diff(cube D_n(2) base [0] coeffs [[a], [b]], cube D_n(2) base [0] coeffs [[a], [c]])");
        assert_eq!(v, json!("cube D base [0] coeffs [[(b - c)]]"));
        let v =
            value("eval add(cube D base [0] coeffs [[t]], cube D_n(2) base [0] coeffs [[a], [b]])");
        assert_eq!(v, json!("cube D_n(2) base [0] coeffs [[a], [(b + t)]]"));
    }

    #[test]
    fn library_errors_become_failed_records() {
        for src in [
            "eval diff(cube D_n(2) base [0] coeffs [[a], [b]], cube D_n(2) base [0] coeffs [[c], [b]])",
            "dim simple 1 + d in D_n(3)",
            "algebra prod(D^12, D^12)",
            "eval cube D_n(2) base [0] coeffs [[a]]",
            "check scaling --p 9",
        ] {
            let r = run(&parse_command(src).unwrap());
            assert_eq!(r.exit_code(), 1, "{src}");
            assert!(r.records.iter().all(|x| x.witness.is_some()), "{src}");
        }
    }

    #[test]
    fn seeded_checks_are_deterministic() {
        let cmd = parse_command("check affine --p 1 --q 1 --n 2 --seed 7").unwrap();
        let a = run(&cmd).without_timings();
        let b = run(&cmd).without_timings();
        assert_eq!(a.exit_code(), 0, "{}", a.render_text());
        assert_eq!(a, b);
    }
}
