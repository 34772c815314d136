use crate::parse::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    DashDash,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Underscore,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("number {s}"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::DashDash => "`--`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Underscore => "`_`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

/// A token and its byte offset in the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub offset: usize,
}

/// Splits `input` into tokens. `#` starts a comment that runs to the end
/// of the line.
pub fn tokenize(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(input[start..i].to_string())
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(input[start..i].to_string())
        } else {
            i += 1;
            match c {
                b'+' => Tok::Plus,
                b'-' if bytes.get(i) == Some(&b'-') => {
                    i += 1;
                    Tok::DashDash
                }
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'/' => Tok::Slash,
                b'^' => Tok::Caret,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'[' => Tok::LBracket,
                b']' => Tok::RBracket,
                b',' => Tok::Comma,
                b';' => Tok::Semi,
                b'_' => Tok::Underscore,
                _ => {
                    let found = input[start..]
                        .chars()
                        .next()
                        .map_or(String::new(), |ch| format!("`{ch}`"));
                    return Err(ParseError::new(start, &["a token"], found));
                }
            }
        };
        out.push(Spanned { tok, offset: start });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        offset: input.len(),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_and_kinds() {
        let toks = tokenize("D(4)_2 --n 3 # note").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("D".into()),
                Tok::LParen,
                Tok::Int("4".into()),
                Tok::RParen,
                Tok::Underscore,
                Tok::Int("2".into()),
                Tok::DashDash,
                Tok::Ident("n".into()),
                Tok::Int("3".into()),
                Tok::Eof,
            ]
        );
        assert_eq!(toks[6].offset, 7);
        assert_eq!(toks.last().unwrap().offset, 19);
    }

    #[test]
    fn identifiers_keep_underscores() {
        let toks = tokenize("D_n(3) a1_2").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("D_n".into()));
        assert_eq!(toks[4].tok, Tok::Ident("a1_2".into()));
    }

    #[test]
    fn stray_character_is_reported_at_its_offset() {
        let err = tokenize("d + $").unwrap_err();
        assert_eq!(err.offset, 4);
    }
}
