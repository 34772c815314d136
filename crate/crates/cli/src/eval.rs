//! Evaluation of expression trees into scalars or Weil-algebra elements.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use weiljet::scalar::{Rational, Scalar};
use weiljet::weil::{WeilAlgebra, WeilElement};

use crate::ast::Expr;

/// Intermediate results with more terms than this are refused.
pub const MAX_TERMS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalError(pub String);

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for EvalError {}

type EResult<T> = Result<T, EvalError>;

/// The ring an expression is evaluated in.
trait Domain {
    type V: Clone + fmt::Display;
    fn rational(&self, r: Rational) -> Self::V;
    fn symbol(&self, name: &str) -> Self::V;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn as_rational(&self, v: &Self::V) -> Option<Rational>;
    fn size(&self, v: &Self::V) -> usize;
}

struct Scalars;

impl Domain for Scalars {
    type V = Scalar;
    fn rational(&self, r: Rational) -> Scalar {
        Scalar::from_rational(r)
    }
    fn symbol(&self, name: &str) -> Scalar {
        Scalar::symbol(name)
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn as_rational(&self, v: &Scalar) -> Option<Rational> {
        v.as_rational()
    }
    fn size(&self, v: &Scalar) -> usize {
        v.num_terms()
    }
}

struct Elements<'a>(&'a WeilAlgebra);

impl Domain for Elements<'_> {
    type V = WeilElement;
    fn rational(&self, r: Rational) -> WeilElement {
        self.0.constant(Scalar::from_rational(r))
    }
    fn symbol(&self, name: &str) -> WeilElement {
        self.0
            .generator_named(name)
            .unwrap_or_else(|| self.0.constant(Scalar::symbol(name)))
    }
    fn add(&self, a: &WeilElement, b: &WeilElement) -> WeilElement {
        a + b
    }
    fn mul(&self, a: &WeilElement, b: &WeilElement) -> WeilElement {
        a * b
    }
    fn as_rational(&self, v: &WeilElement) -> Option<Rational> {
        let cs = v.coefficients();
        if cs[1..].iter().all(Scalar::is_zero) {
            cs[0].as_rational()
        } else {
            None
        }
    }
    fn size(&self, v: &WeilElement) -> usize {
        v.coefficients().iter().map(Scalar::num_terms).sum()
    }
}

fn checked<D: Domain>(d: &D, v: D::V) -> EResult<D::V> {
    if d.size(&v) > MAX_TERMS {
        Err(EvalError(format!(
            "intermediate result exceeds {MAX_TERMS} terms"
        )))
    } else {
        Ok(v)
    }
}

fn eval_in<D: Domain>(d: &D, e: &Expr) -> EResult<D::V> {
    Ok(match e {
        Expr::Num(n) => d.rational(Rational::from_integer(BigInt::from(n.clone()))),
        Expr::Sym(s) => d.symbol(s),
        Expr::Neg(a) => d.mul(&d.rational(-Rational::one()), &eval_in(d, a)?),
        Expr::Add(a, b) => checked(d, d.add(&eval_in(d, a)?, &eval_in(d, b)?))?,
        Expr::Sub(a, b) => {
            let nb = d.mul(&d.rational(-Rational::one()), &eval_in(d, b)?);
            checked(d, d.add(&eval_in(d, a)?, &nb))?
        }
        Expr::Mul(a, b) => {
            let (x, y) = (eval_in(d, a)?, eval_in(d, b)?);
            if d.size(&x).saturating_mul(d.size(&y)) > MAX_TERMS * 8 {
                return Err(EvalError(format!("product exceeds {MAX_TERMS} terms")));
            }
            checked(d, d.mul(&x, &y))?
        }
        Expr::Div(a, b) => {
            let divisor = eval_in(d, b)?;
            let r = d
                .as_rational(&divisor)
                .ok_or_else(|| EvalError(format!("division by the non-constant {divisor}")))?;
            if r.is_zero() {
                return Err(EvalError("division by zero".into()));
            }
            d.mul(&eval_in(d, a)?, &d.rational(r.recip()))
        }
        Expr::Pow(a, k) => {
            let base = eval_in(d, a)?;
            let mut acc = d.rational(Rational::one());
            let mut sq = base;
            let mut k = *k;
            while k > 0 {
                if k & 1 == 1 {
                    if d.size(&acc).saturating_mul(d.size(&sq)) > MAX_TERMS * 8 {
                        return Err(EvalError(format!("power exceeds {MAX_TERMS} terms")));
                    }
                    acc = checked(d, d.mul(&acc, &sq))?;
                }
                k >>= 1;
                if k > 0 {
                    if d.size(&sq).saturating_mul(d.size(&sq)) > MAX_TERMS * 8 {
                        return Err(EvalError(format!("power exceeds {MAX_TERMS} terms")));
                    }
                    sq = checked(d, d.mul(&sq, &sq))?;
                }
            }
            acc
        }
    })
}

/// Evaluates with every identifier a free symbol.
pub fn eval_scalar(e: &Expr) -> Result<Scalar, EvalError> {
    eval_in(&Scalars, e)
}

/// Evaluates in `alg`: identifiers naming generators of `alg` are those
/// generators, every other identifier is a free scalar symbol.
pub fn eval_element(e: &Expr, alg: &WeilAlgebra) -> Result<WeilElement, EvalError> {
    eval_in(&Elements(alg), e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;
    use weiljet::scalar::rat;

    #[test]
    fn scalars_normalize() {
        let s = eval_scalar(&parse_expr("(x + 1)^2 - x^2 - 2*x").unwrap()).unwrap();
        assert_eq!(s, Scalar::one());
        let s = eval_scalar(&parse_expr("3/6*y").unwrap()).unwrap();
        assert_eq!(s, Scalar::symbol("y").scale(&rat(1, 2)));
    }

    #[test]
    fn elements_truncate() {
        let alg = WeilAlgebra::truncated("d", 2);
        let v = eval_element(&parse_expr("(d + a*d^2)^2").unwrap(), &alg).unwrap();
        assert_eq!(v, alg.generator(0).pow(2));
    }

    #[test]
    fn division_needs_a_nonzero_constant() {
        assert!(eval_scalar(&parse_expr("x/y").unwrap()).is_err());
        assert!(eval_scalar(&parse_expr("x/(2 - 2)").unwrap()).is_err());
        let alg = WeilAlgebra::truncated("d", 2);
        assert!(eval_element(&parse_expr("1/d").unwrap(), &alg).is_err());
    }

    #[test]
    fn oversized_powers_are_refused() {
        assert!(eval_scalar(&parse_expr("(a+b+c+e+f+g+h)^200").unwrap()).is_err());
        assert!(eval_scalar(&parse_expr("x^256").unwrap()).is_ok());
    }
}
