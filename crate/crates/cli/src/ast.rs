//! Syntax trees for the command language and their pretty-printer. Printing
//! then parsing yields the same tree.

use std::fmt;

use num_bigint::BigUint;
use weiljet::infinitesimal::SpaceDescriptor;
use weiljet::jets::Variant;

/// A polynomial expression over rationals and named symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigUint),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::Sym(_) => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.precedence() < min;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(n) => write!(f, "{n}")?,
            Expr::Sym(s) => f.write_str(s)?,
            Expr::Neg(e) => {
                f.write_str("-")?;
                // `--` lexes as a flag marker, so a nested negation is bracketed.
                e.write(f, if matches!(**e, Expr::Neg(_)) { 4 } else { 3 })?;
            }
            Expr::Add(a, b) => {
                a.write(f, 1)?;
                f.write_str(" + ")?;
                b.write(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.write(f, 1)?;
                f.write_str(" - ")?;
                b.write(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.write(f, 2)?;
                f.write_str("*")?;
                b.write(f, 3)?;
            }
            Expr::Div(a, b) => {
                a.write(f, 2)?;
                f.write_str("/")?;
                b.write(f, 3)?;
            }
            Expr::Pow(a, k) => {
                a.write(f, 5)?;
                write!(f, "^{k}")?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// `cube <space> base [..] coeffs [[..], ..]`: one inner list per basis
/// slot of the shape algebra, one entry per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeLiteral {
    pub shape: SpaceDescriptor,
    pub base: Vec<Expr>,
    pub coeffs: Vec<Vec<Expr>>,
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    f.write_str("[")?;
    for (k, e) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str("]")
}

impl fmt::Display for CubeLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cube {} base ", self.shape)?;
        write_list(f, &self.base)?;
        f.write_str(" coeffs [")?;
        for (k, row) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write_list(f, row)?;
        }
        f.write_str("]")
    }
}

/// Microcube-valued expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubeExpr {
    Literal(CubeLiteral),
    /// Strong difference of two microcubes.
    Diff(Box<CubeExpr>, Box<CubeExpr>),
    /// Strong addition of a tangent to a microcube.
    Add(Box<CubeExpr>, Box<CubeExpr>),
    Scale(Expr, Box<CubeExpr>),
}

impl fmt::Display for CubeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeExpr::Literal(c) => write!(f, "{c}"),
            CubeExpr::Diff(a, b) => write!(f, "diff({a}, {b})"),
            CubeExpr::Add(a, b) => write!(f, "add({a}, {b})"),
            CubeExpr::Scale(s, c) => write!(f, "scale({s}, {c})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// Show the Weil algebra of a space.
    Algebra(SpaceDescriptor),
    /// `dim_n` of a simple polynomial, optionally with one auxiliary
    /// nilpotent scalar `name` ranging over a second space.
    DimSimple {
        poly: Expr,
        space: SpaceDescriptor,
        aux: Option<(String, SpaceDescriptor)>,
    },
    /// Degree and dimension of a space.
    DimSpace(SpaceDescriptor),
    /// Dimension of the space of symmetric forms, from the flags.
    DimForms,
    /// Normal form of a polynomial in the algebra of a space.
    EvalElement {
        expr: Expr,
        space: SpaceDescriptor,
    },
    EvalCube(CubeExpr),
    Check(String),
    /// Every suite.
    Report,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub json: bool,
    pub seed: Option<u64>,
    pub n: Option<u32>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub name: Option<String>,
    pub variant: Option<Variant>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub action: Action,
    pub options: Options,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Algebra(s) => write!(f, "algebra {s}"),
            Action::DimSimple { poly, space, aux } => {
                write!(f, "dim simple {poly} in {space}")?;
                if let Some((name, s)) = aux {
                    write!(f, " with {name} in {s}")?;
                }
                Ok(())
            }
            Action::DimSpace(s) => write!(f, "dim space {s}"),
            Action::DimForms => f.write_str("dim forms"),
            Action::EvalElement { expr, space } => write!(f, "eval {expr} in {space}"),
            Action::EvalCube(c) => write!(f, "eval {c}"),
            Action::Check(s) => write!(f, "check {s}"),
            Action::Report => f.write_str("report"),
        }
    }
}

impl fmt::Display for Options {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.json {
            f.write_str(" --json")?;
        }
        if let Some(s) = self.seed {
            write!(f, " --seed {s}")?;
        }
        if let Some(n) = self.n {
            write!(f, " --n {n}")?;
        }
        if let Some(p) = self.p {
            write!(f, " --p {p}")?;
        }
        if let Some(q) = self.q {
            write!(f, " --q {q}")?;
        }
        if let Some(name) = &self.name {
            write!(f, " --name {name}")?;
        }
        if let Some(v) = self.variant {
            f.write_str(match v {
                Variant::Line => " --variant line",
                Variant::Cube => " --variant cube",
            })?;
        }
        Ok(())
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.action, self.options)
    }
}
