use std::fmt;

use crate::error::{ParseError, SourceSpan};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    /// Lowercase-initial identifier (constants, predicates, keywords).
    Ident(String),
    /// Uppercase- or underscore-initial identifier.
    Var(String),
    Int(i64),
    /// Decimal number with a fraction or exponent, kept as written.
    Float(String),
    /// `#name` directive or literal.
    Hash(String),
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Var(s) | Tok::Float(s) => write!(f, "`{s}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::Hash(s) => write!(f, "`#{s}`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

// Longest first so that prefixes do not shadow longer operators.
const PUNCT: &[&str] = &[
    ":-", ":~", "::", "->", "!=", "<=", ">=", "..", "(", ")", "{", "}", "[", "]", ".", ",", ";", ":", "|", "=",
    "<", ">", "~", "&", "-", "/", "@",
];

pub fn tokenize(text: &str, file: Option<&str>) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, message: String| ParseError {
        span: SourceSpan {
            file: file.map(str::to_string),
            line,
            column,
        },
        message,
        expected: Vec::new(),
    };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if c.is_ascii_uppercase() || c == '_' {
                Tok::Var(word)
            } else {
                Tok::Ident(word)
            }
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut float = false;
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                float = true;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    float = true;
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let word: String = chars[start..i].iter().collect();
            if float {
                Tok::Float(word)
            } else {
                match word.parse() {
                    Ok(n) => Tok::Int(n),
                    Err(_) => return Err(err(start_line, start_col, format!("integer {word} out of range"))),
                }
            }
        } else if c == '#' {
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if i == start + 1 {
                return Err(err(start_line, start_col, "expected a directive name after `#`".into()));
            }
            Tok::Hash(chars[start + 1..i].iter().collect())
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match PUNCT.iter().find(|p| rest.starts_with(**p)) {
                Some(p) => {
                    i += p.chars().count();
                    Tok::Punct(p)
                }
                None => return Err(err(start_line, start_col, format!("unexpected character `{c}`"))),
            }
        };
        col += i - start;
        out.push(Token {
            tok,
            line: start_line,
            column: start_col,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s, None).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn numbers_ranges_and_dots() {
        assert_eq!(
            toks("1..6 0.6 2. 1e-3"),
            vec![
                Tok::Int(1),
                Tok::Punct(".."),
                Tok::Int(6),
                Tok::Float("0.6".into()),
                Tok::Int(2),
                Tok::Punct("."),
                Tok::Float("1e-3".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn operators_and_comments() {
        assert_eq!(
            toks("a :- not b. % comment\n:~ c. [1]"),
            vec![
                Tok::Ident("a".into()),
                Tok::Punct(":-"),
                Tok::Ident("not".into()),
                Tok::Ident("b".into()),
                Tok::Punct("."),
                Tok::Punct(":~"),
                Tok::Ident("c".into()),
                Tok::Punct("."),
                Tok::Punct("["),
                Tok::Int(1),
                Tok::Punct("]"),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_are_tracked() {
        let t = tokenize("a.\n  b", None).unwrap();
        assert_eq!((t[2].line, t[2].column), (2, 3));
    }
}
