//! JSON encoding of Weil algebras and their elements.
//!
//! ```json
//! {"generators": ["d"], "ideal": [[3]], "dimension": 3}
//! {"algebra": {...}, "terms": [{"monomial": [1], "coefficient": "1/2*x"}]}
//! ```
//!
//! Coefficients are expressions in free symbols. `dimension` is optional on
//! input and checked when present.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use weiljet::scalar::Scalar;
use weiljet::weil::{WeilAlgebra, WeilElement};

use crate::eval::{eval_scalar, EvalError};
use crate::parse::{parse_expr, ParseError};

/// Largest algebra dimension a decoder will build.
pub const MAX_DIMENSION: u64 = 4096;
const MAX_GENERATORS: usize = 16;
const MAX_RELATIONS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub generators: Vec<String>,
    pub ideal: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub monomial: Vec<u32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub algebra: AlgebraJson,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeError {
    Json(String),
    Invalid(String),
    Coefficient(ParseError),
    Evaluate(EvalError),
    Algebra(weiljet::Error),
}

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeError::Json(e) => write!(f, "malformed JSON: {e}"),
            DecodeError::Invalid(e) => f.write_str(e),
            DecodeError::Coefficient(e) => write!(f, "coefficient: {e}"),
            DecodeError::Evaluate(e) => write!(f, "coefficient: {e}"),
            DecodeError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DecodeError {}

pub fn algebra_json(alg: &WeilAlgebra) -> AlgebraJson {
    AlgebraJson {
        generators: alg.generators().to_vec(),
        ideal: alg.ideal().to_vec(),
        dimension: Some(alg.dimension()),
    }
}

pub fn element_json(x: &WeilElement) -> ElementJson {
    let alg = x.algebra();
    ElementJson {
        algebra: algebra_json(alg),
        terms: alg
            .basis()
            .iter()
            .zip(x.coefficients())
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| TermJson {
                monomial: m.clone(),
                coefficient: c.to_string(),
            })
            .collect(),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Builds the algebra after bounding its dimension by the product of the
/// pure-power exponents, so hostile input cannot request a huge basis.
pub fn algebra_from_json(a: &AlgebraJson) -> Result<WeilAlgebra, DecodeError> {
    let k = a.generators.len();
    if k > MAX_GENERATORS || a.ideal.len() > MAX_RELATIONS {
        return Err(DecodeError::Invalid(format!(
            "at most {MAX_GENERATORS} generators and {MAX_RELATIONS} relations"
        )));
    }
    if let Some(g) = a.generators.iter().find(|g| !is_identifier(g)) {
        return Err(DecodeError::Invalid(format!(
            "generator name `{g}` is not an identifier"
        )));
    }
    let mut bound: u64 = 1;
    for i in 0..k {
        let pure = a
            .ideal
            .iter()
            .filter(|m| {
                m.len() == k && m[i] > 0 && m.iter().enumerate().all(|(j, &e)| j == i || e == 0)
            })
            .map(|m| m[i] as u64)
            .min();
        // A missing pure power is reported by the algebra constructor.
        bound = bound.saturating_mul(pure.unwrap_or(1));
    }
    if bound > MAX_DIMENSION {
        return Err(DecodeError::Invalid(format!(
            "algebra dimension may reach {bound}, above {MAX_DIMENSION}"
        )));
    }
    let alg =
        WeilAlgebra::new(a.generators.clone(), a.ideal.clone()).map_err(DecodeError::Algebra)?;
    if let Some(d) = a.dimension {
        if d != alg.dimension() {
            return Err(DecodeError::Invalid(format!(
                "declared dimension {d}, actual {}",
                alg.dimension()
            )));
        }
    }
    Ok(alg)
}

pub fn element_from_json(e: &ElementJson) -> Result<WeilElement, DecodeError> {
    let alg = algebra_from_json(&e.algebra)?;
    let gens: BTreeSet<&str> = alg.generators().iter().map(String::as_str).collect();
    let mut coeffs = vec![Scalar::zero(); alg.dimension()];
    let mut seen = BTreeSet::new();
    for t in &e.terms {
        let idx = alg.index_of(&t.monomial).ok_or_else(|| {
            DecodeError::Invalid(format!("monomial {:?} is not a basis monomial", t.monomial))
        })?;
        if !seen.insert(idx) {
            return Err(DecodeError::Invalid(format!(
                "monomial {:?} listed twice",
                t.monomial
            )));
        }
        let c = eval_scalar(&parse_expr(&t.coefficient).map_err(DecodeError::Coefficient)?)
            .map_err(DecodeError::Evaluate)?;
        if let Some(s) = c.symbols().into_iter().find(|s| gens.contains(s.name())) {
            return Err(DecodeError::Invalid(format!(
                "coefficient uses the generator `{s}`"
            )));
        }
        coeffs[idx] = c;
    }
    alg.from_coefficients(coeffs).map_err(DecodeError::Algebra)
}

pub fn decode_algebra_json(text: &str) -> Result<WeilAlgebra, DecodeError> {
    let a: AlgebraJson =
        serde_json::from_str(text).map_err(|e| DecodeError::Json(e.to_string()))?;
    algebra_from_json(&a)
}

pub fn decode_element_json(text: &str) -> Result<WeilElement, DecodeError> {
    let e: ElementJson =
        serde_json::from_str(text).map_err(|e| DecodeError::Json(e.to_string()))?;
    element_from_json(&e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use weiljet::infinitesimal::SpaceDescriptor;

    #[test]
    fn algebras_round_trip() {
        for s in [
            SpaceDescriptor::Line(3),
            SpaceDescriptor::Cube(2),
            SpaceDescriptor::DmN(3, 2),
        ] {
            let alg = s.algebra();
            let text = serde_json::to_string(&algebra_json(&alg)).unwrap();
            assert_eq!(decode_algebra_json(&text).unwrap(), alg);
        }
    }

    #[test]
    fn elements_round_trip() {
        let alg = SpaceDescriptor::Cube(2).algebra();
        let x = &(&alg.generator(0) * &alg.generator(1)).scale(&Scalar::symbol("a"))
            + &alg.generator(0);
        let text = serde_json::to_string(&element_json(&x)).unwrap();
        assert_eq!(decode_element_json(&text).unwrap(), x);
    }

    #[test]
    fn hostile_inputs_are_rejected() {
        assert!(matches!(
            decode_algebra_json(r#"{"generators":["x","y"],"ideal":[[100000,0],[0,100000]]}"#),
            Err(DecodeError::Invalid(_))
        ));
        assert!(matches!(
            decode_algebra_json(r#"{"generators":["x"],"ideal":[]}"#),
            Err(DecodeError::Algebra(weiljet::Error::NotWeil(_)))
        ));
        assert!(matches!(
            decode_algebra_json(r#"{"generators":["x"],"ideal":[[2]],"dimension":3}"#),
            Err(DecodeError::Invalid(_))
        ));
        assert!(matches!(
            decode_algebra_json("{"),
            Err(DecodeError::Json(_))
        ));
        let alg = r#"{"generators":["d"],"ideal":[[2]]}"#;
        let bad_monomial =
            format!(r#"{{"algebra":{alg},"terms":[{{"monomial":[2],"coefficient":"1"}}]}}"#);
        assert!(matches!(
            decode_element_json(&bad_monomial),
            Err(DecodeError::Invalid(_))
        ));
        let uses_generator =
            format!(r#"{{"algebra":{alg},"terms":[{{"monomial":[1],"coefficient":"d"}}]}}"#);
        assert!(matches!(
            decode_element_json(&uses_generator),
            Err(DecodeError::Invalid(_))
        ));
        let bad_coeff =
            format!(r#"{{"algebra":{alg},"terms":[{{"monomial":[1],"coefficient":"1 +"}}]}}"#);
        assert!(matches!(
            decode_element_json(&bad_coeff),
            Err(DecodeError::Coefficient(_))
        ));
    }
}
