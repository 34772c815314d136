//! Recursive-descent parser for the command language.
//!
//! ```text
//! command  := action flag*
//! action   := "algebra" space
//!           | "dim" "simple" expr "in" space ("with" IDENT "in" space)?
//!           | "dim" "space" space | "dim" "forms"
//!           | "eval" cube | "eval" expr "in" space
//!           | "check" NAME ("-" NAME)* | "report"
//! flag     := "--json" | "--seed" INT | "--n" INT | "--p" INT | "--q" INT
//!           | "--name" IDENT | "--variant" ("line" | "cube")
//! space    := "point" | "D" | "D_n" "(" INT ")" | "D^" INT
//!           | "D" "(" INT ")" ("_" INT)? | "D" "(" INT ";" rel ("," rel)* ")"
//!           | ("oplus" | "prod") "(" space "," space ")"
//! rel      := "[" INT ("," INT)* "]"
//! cube     := "cube" space "base" list "coeffs" "[" list ("," list)* "]"
//!           | ("diff" | "add") "(" cube "," cube ")" | "scale" "(" expr "," cube ")"
//! list     := "[" (expr ("," expr)*)? "]"
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := "-" unary | atom ("^" INT)?
//! atom     := INT | IDENT | "(" expr ")"
//! ```

use std::fmt;

use num_bigint::BigUint;
use weiljet::infinitesimal::{SimplicialSpace, SpaceDescriptor};
use weiljet::jets::Variant;
use weiljet::quasicolim::BUILTIN_NAMES;
use weiljet::verify::SUITE_NAMES;

use crate::ast::{Action, Command, CubeExpr, CubeLiteral, Expr, Options};
use crate::lex::{tokenize, Spanned, Tok};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 256;
/// Largest degree `m` of `D^m`, `D(m)_n`, `D(m;S)`.
pub const MAX_DEGREE: usize = 12;
/// Largest order `n` of `D_n`.
pub const MAX_ORDER: u32 = 64;
const MAX_DEPTH: usize = 64;

/// A parse failure: byte offset, the tokens that would have been accepted
/// there, and what was found instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub fn new(offset: usize, expected: &[&str], found: impl Into<String>) -> Self {
        ParseError {
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at byte {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

pub type PResult<T> = Result<T, ParseError>;

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn new(input: &str) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(input)?,
            pos: 0,
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].offset
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::new(self.offset(), expected, self.peek().describe())
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        if self.is_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{kw}`")]))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn int<T: TryFrom<u64>>(&mut self, what: &str, max: u64) -> PResult<T> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Int(s) => {
                let v = s.parse::<u64>().ok().filter(|&v| v <= max);
                let v = v.and_then(|v| T::try_from(v).ok());
                match v {
                    Some(v) => {
                        self.bump();
                        Ok(v)
                    }
                    None => Err(ParseError::new(
                        offset,
                        &[&format!("{what} at most {max}")],
                        format!("number {s}"),
                    )),
                }
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::new(
                self.offset(),
                &["shallower nesting"],
                self.peek().describe(),
            ));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    // Expressions.

    fn expr(&mut self) -> PResult<Expr> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        self.leave();
        Ok(lhs)
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            self.enter()?;
            let e = self.unary()?;
            self.leave();
            return Ok(Expr::Neg(Box::new(e)));
        }
        let atom = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let k = self.int("exponent", MAX_EXPONENT as u64)?;
            return Ok(Expr::Pow(Box::new(atom), k));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                Ok(Expr::Num(s.parse::<BigUint>().expect("digits")))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Sym(s))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.error(&["number", "symbol", "`(`", "`-`"])),
        }
    }

    // Spaces.

    fn space(&mut self) -> PResult<SpaceDescriptor> {
        self.enter()?;
        let offset = self.offset();
        let name = self.ident("space")?;
        let s = match name.as_str() {
            "point" => SpaceDescriptor::Point,
            "D_n" => {
                self.expect(Tok::LParen, "`(`")?;
                let n = self.int("order", MAX_ORDER as u64)?;
                self.expect(Tok::RParen, "`)`")?;
                SpaceDescriptor::Line(n)
            }
            "D" => match self.peek() {
                Tok::Caret => {
                    self.bump();
                    SpaceDescriptor::Cube(self.int("degree", MAX_DEGREE as u64)?)
                }
                Tok::LParen => {
                    self.bump();
                    self.d_of_m()?
                }
                _ => SpaceDescriptor::Line(1),
            },
            "oplus" | "prod" => {
                self.expect(Tok::LParen, "`(`")?;
                let a = self.space()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.space()?;
                self.expect(Tok::RParen, "`)`")?;
                if name == "oplus" {
                    SpaceDescriptor::OPlus(Box::new(a), Box::new(b))
                } else {
                    SpaceDescriptor::Product(Box::new(a), Box::new(b))
                }
            }
            _ => {
                return Err(ParseError::new(
                    offset,
                    &["`point`", "`D`", "`D_n`", "`oplus`", "`prod`"],
                    format!("`{name}`"),
                ))
            }
        };
        self.leave();
        Ok(s)
    }

    /// After `D(`: `m)`, `m)_n` or `m; rel, ..)`.
    fn d_of_m(&mut self) -> PResult<SpaceDescriptor> {
        let m: usize = self.int("degree", MAX_DEGREE as u64)?;
        if *self.peek() == Tok::Semi {
            self.bump();
            let start = self.offset();
            let mut rels = vec![self.relation(m)?];
            while *self.peek() == Tok::Comma {
                self.bump();
                rels.push(self.relation(m)?);
            }
            self.expect(Tok::RParen, "`)`")?;
            let s = SimplicialSpace::new(m, rels)
                .map_err(|e| ParseError::new(start, &["valid relations"], e.to_string()))?;
            return Ok(SpaceDescriptor::from_simplicial(s));
        }
        self.expect(Tok::RParen, "`;` or `)`")?;
        let n = if *self.peek() == Tok::Underscore {
            self.bump();
            self.int("order", MAX_DEGREE as u64)?
        } else {
            1
        };
        Ok(SpaceDescriptor::d_m_n(m, n))
    }

    fn relation(&mut self, m: usize) -> PResult<Vec<usize>> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut out = vec![self.int("index", m as u64)?];
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.int("index", m as u64)?);
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(out)
    }

    // Microcubes.

    fn list(&mut self) -> PResult<Vec<Expr>> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut out = Vec::new();
        if *self.peek() != Tok::RBracket {
            out.push(self.expr()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                out.push(self.expr()?);
            }
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(out)
    }

    fn cube_literal(&mut self) -> PResult<CubeLiteral> {
        self.keyword("cube")?;
        let shape = self.space()?;
        self.keyword("base")?;
        let base = self.list()?;
        self.keyword("coeffs")?;
        self.expect(Tok::LBracket, "`[`")?;
        let mut coeffs = Vec::new();
        if *self.peek() != Tok::RBracket {
            coeffs.push(self.list()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                coeffs.push(self.list()?);
            }
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(CubeLiteral {
            shape,
            base,
            coeffs,
        })
    }

    fn starts_cube(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) if s == "cube" => true,
            Tok::Ident(s) if s == "diff" || s == "add" || s == "scale" => {
                *self.peek_at(1) == Tok::LParen
            }
            _ => false,
        }
    }

    fn cube(&mut self) -> PResult<CubeExpr> {
        self.enter()?;
        let c = match self.peek().clone() {
            Tok::Ident(s) if s == "cube" => CubeExpr::Literal(self.cube_literal()?),
            Tok::Ident(s) if s == "diff" || s == "add" || s == "scale" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let c = if s == "scale" {
                    let k = self.expr()?;
                    self.expect(Tok::Comma, "`,`")?;
                    CubeExpr::Scale(k, Box::new(self.cube()?))
                } else {
                    let a = self.cube()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let b = self.cube()?;
                    if s == "diff" {
                        CubeExpr::Diff(Box::new(a), Box::new(b))
                    } else {
                        CubeExpr::Add(Box::new(a), Box::new(b))
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                c
            }
            _ => return Err(self.error(&["`cube`", "`diff`", "`add`", "`scale`"])),
        };
        self.leave();
        Ok(c)
    }

    // Commands.

    fn action(&mut self) -> PResult<Action> {
        let offset = self.offset();
        let verb = self.ident("command")?;
        Ok(match verb.as_str() {
            "algebra" => Action::Algebra(self.space()?),
            "dim" => {
                let offset = self.offset();
                match self.ident("`simple`, `space` or `forms`")?.as_str() {
                    "simple" => {
                        let poly = self.expr()?;
                        self.keyword("in")?;
                        let space = self.space()?;
                        let aux = if self.is_keyword("with") {
                            self.bump();
                            let name = self.ident("symbol")?;
                            self.keyword("in")?;
                            Some((name, self.space()?))
                        } else {
                            None
                        };
                        Action::DimSimple { poly, space, aux }
                    }
                    "space" => Action::DimSpace(self.space()?),
                    "forms" => Action::DimForms,
                    other => {
                        return Err(ParseError::new(
                            offset,
                            &["`simple`", "`space`", "`forms`"],
                            format!("`{other}`"),
                        ))
                    }
                }
            }
            "eval" => {
                if self.starts_cube() {
                    Action::EvalCube(self.cube()?)
                } else {
                    let expr = self.expr()?;
                    self.keyword("in")?;
                    Action::EvalElement {
                        expr,
                        space: self.space()?,
                    }
                }
            }
            "check" => {
                let offset = self.offset();
                let mut name = self.ident("suite name")?;
                while *self.peek() == Tok::Minus {
                    self.bump();
                    name.push('-');
                    name.push_str(&self.ident("suite name")?);
                }
                if name != "all" && !SUITE_NAMES.contains(&name.as_str()) {
                    let mut expected: Vec<&str> = SUITE_NAMES.to_vec();
                    expected.push("all");
                    return Err(ParseError::new(offset, &expected, format!("`{name}`")));
                }
                Action::Check(name)
            }
            "report" => Action::Report,
            other => {
                return Err(ParseError::new(
                    offset,
                    &["`algebra`", "`dim`", "`eval`", "`check`", "`report`"],
                    format!("`{other}`"),
                ))
            }
        })
    }

    fn options(&mut self) -> PResult<Options> {
        let mut o = Options::default();
        while *self.peek() == Tok::DashDash {
            self.bump();
            let offset = self.offset();
            let flag = self.ident("flag name")?;
            let duplicate = match flag.as_str() {
                "json" => std::mem::replace(&mut o.json, true),
                "seed" => o.seed.replace(self.int("seed", u64::MAX)?).is_some(),
                "n" => o.n.replace(self.int("order", MAX_ORDER as u64)?).is_some(),
                "p" => {
                    o.p.replace(self.int("base dimension", MAX_DEGREE as u64)?)
                        .is_some()
                }
                "q" => {
                    o.q.replace(self.int("fiber dimension", MAX_DEGREE as u64)?)
                        .is_some()
                }
                "name" => {
                    let at = self.offset();
                    let name = self.ident("diagram name")?;
                    if !BUILTIN_NAMES.contains(&name.as_str()) {
                        return Err(ParseError::new(at, &BUILTIN_NAMES, format!("`{name}`")));
                    }
                    o.name.replace(name).is_some()
                }
                "variant" => {
                    let at = self.offset();
                    let v = match self.ident("`line` or `cube`")?.as_str() {
                        "line" => Variant::Line,
                        "cube" => Variant::Cube,
                        other => {
                            return Err(ParseError::new(
                                at,
                                &["`line`", "`cube`"],
                                format!("`{other}`"),
                            ))
                        }
                    };
                    o.variant.replace(v).is_some()
                }
                other => {
                    return Err(ParseError::new(
                        offset,
                        &["json", "seed", "n", "p", "q", "name", "variant"],
                        format!("`{other}`"),
                    ))
                }
            };
            if duplicate {
                return Err(ParseError::new(
                    offset,
                    &["a flag not given before"],
                    format!("`--{flag}`"),
                ));
            }
        }
        Ok(o)
    }

    fn command(&mut self) -> PResult<Command> {
        let action = self.action()?;
        let options = self.options()?;
        if action == Action::DimForms {
            for (flag, given) in [
                ("`--p`", options.p.is_some()),
                ("`--q`", options.q.is_some()),
                ("`--n`", options.n.is_some()),
            ] {
                if !given {
                    return Err(self.error(&[flag]));
                }
            }
        }
        if *self.peek() != Tok::Eof {
            return Err(self.error(&["`--`", "end of input"]));
        }
        Ok(Command { action, options })
    }
}

pub fn parse_command(input: &str) -> PResult<Command> {
    Parser::new(input)?.command()
}

pub fn parse_expr(input: &str) -> PResult<Expr> {
    let mut p = Parser::new(input)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_space(input: &str) -> PResult<SpaceDescriptor> {
    let mut p = Parser::new(input)?;
    let s = p.space()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_cube(input: &str) -> PResult<CubeExpr> {
    let mut p = Parser::new(input)?;
    let c = p.cube()?;
    p.finish()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Box<Expr> {
        Box::new(Expr::Sym(s.into()))
    }

    #[test]
    fn doubled_operator_is_rejected_at_the_second() {
        let err = parse_expr("d + + d").unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(err.expected.contains(&"symbol".to_string()));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_expr("a - b - c").unwrap(),
            Expr::Sub(Box::new(Expr::Sub(sym("a"), sym("b"))), sym("c"))
        );
        assert_eq!(
            parse_expr("-x^2").unwrap(),
            Expr::Neg(Box::new(Expr::Pow(sym("x"), 2)))
        );
        assert_eq!(
            parse_expr("a + b*c").unwrap(),
            Expr::Add(sym("a"), Box::new(Expr::Mul(sym("b"), sym("c"))))
        );
    }

    #[test]
    fn spaces() {
        assert_eq!(parse_space("D").unwrap(), SpaceDescriptor::Line(1));
        assert_eq!(parse_space("D_n(3)").unwrap(), SpaceDescriptor::Line(3));
        assert_eq!(parse_space("D^3").unwrap(), SpaceDescriptor::Cube(3));
        assert_eq!(parse_space("D(4)_2").unwrap(), SpaceDescriptor::DmN(4, 2));
        assert_eq!(parse_space("D(3)").unwrap(), SpaceDescriptor::DmN(3, 1));
        let s = parse_space("D(3; [1,2])").unwrap();
        assert_eq!(
            s,
            SpaceDescriptor::Simplicial(SimplicialSpace::new(3, vec![vec![1, 2]]).unwrap())
        );
        assert_eq!(
            parse_space("oplus(D_n(2), D)").unwrap(),
            SpaceDescriptor::OPlus(
                Box::new(SpaceDescriptor::Line(2)),
                Box::new(SpaceDescriptor::Line(1))
            )
        );
    }

    #[test]
    fn bad_relation_index_is_located() {
        let err = parse_space("D(3; [1,4])").unwrap_err();
        assert_eq!(err.offset, 8);
        let err = parse_space("D(3; [2,1])").unwrap_err();
        assert_eq!(err.offset, 5);
    }

    #[test]
    fn commands() {
        let c = parse_command("dim simple d + d^2 in D_n(3)").unwrap();
        assert!(matches!(c.action, Action::DimSimple { aux: None, .. }));
        let c = parse_command("check quasicolim --name lemma_diff --n 3").unwrap();
        assert_eq!(c.action, Action::Check("quasicolim".into()));
        assert_eq!(
            (c.options.name.as_deref(), c.options.n),
            (Some("lemma_diff"), Some(3))
        );
        let c = parse_command("check phi-psi --p 2 --q 1 --n 3").unwrap();
        assert_eq!(c.action, Action::Check("phi-psi".into()));
        let c = parse_command("eval cube D_n(2) base [0] coeffs [[a1],[a2]]").unwrap();
        assert!(matches!(c.action, Action::EvalCube(CubeExpr::Literal(_))));
    }

    #[test]
    fn command_errors() {
        let err = parse_command("check nonsense").unwrap_err();
        assert_eq!(err.offset, 6);
        assert!(err.expected.iter().any(|e| e == "affine"));
        let err = parse_command("dim forms --p 2 --n 2").unwrap_err();
        assert_eq!(err.expected, vec!["`--q`"]);
        let err = parse_command("report --seed 1 --seed 2").unwrap_err();
        assert_eq!(err.offset, 18);
        let err = parse_command("algebra D --bogus").unwrap_err();
        assert_eq!(err.offset, 12);
    }

    #[test]
    fn limits_are_parse_errors() {
        assert!(parse_expr("x^257").is_err());
        assert!(parse_space("D^13").is_err());
        let deep = format!("{}x{}", "(".repeat(200), ")".repeat(200));
        assert!(parse_expr(&deep).is_err());
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "-(-x)",
            "a - (b - c)",
            "(a + b)^3*c/2",
            "a*-b + -c",
            "(-x)^2 - x^2",
            "1/2*x^2*y - 3",
        ] {
            let e = parse_expr(src).unwrap();
            assert_eq!(
                parse_expr(&e.to_string()).unwrap(),
                e,
                "{src} printed as {e}"
            );
        }
        for src in [
            "algebra oplus(D(3; [1,2], [1,3]), prod(D, D^2)) --json",
            "dim simple e*d in D_n(3) with e in D_n(2)",
            "eval add(diff(cube D base [x] coeffs [[1]], cube D base [x] coeffs [[0]]), cube D_n(2) base [0] coeffs [[a], [b]])",
            "eval scale(alpha, cube D^2 base [0, 1] coeffs [[a, b], [c, d], [e, f]]) --seed 7",
            "dim forms --n 2 --p 2 --q 1 --variant cube",
        ] {
            let c = parse_command(src).unwrap();
            assert_eq!(parse_command(&c.to_string()).unwrap(), c, "{src} printed as {c}");
        }
    }
}
