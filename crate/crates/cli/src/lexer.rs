//! Tokens of the session language.

use num_bigint::BigUint;

use crate::error::{Pos, SessionError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigUint),
    Str(String),
    /// Single punctuation character, or `->`.
    Sym(&'static str),
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Str(s) => format!("{s:?}"),
            Tok::Sym(s) => format!("`{s}`"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
    /// Byte offsets, used to tell `check-retraction` from `check - retraction`.
    pub start: usize,
    pub end: usize,
}

const SYMBOLS: &[&str] = &["=", "[", "]", "(", ")", "{", "}", ",", "/", "+", "-", "*", "^", ":"];

pub fn tokenize(text: &str) -> Result<Vec<Token>, SessionError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let advance = |c: char, line: &mut usize, col: &mut usize| {
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while let Some(&(start, c)) = chars.peek() {
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(c, &mut line, &mut col);
            chars.next();
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                advance(c, &mut line, &mut col);
                chars.next();
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\'' {
                    end = i + c.len_utf8();
                    advance(c, &mut line, &mut col);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(text[start..end].to_string()), pos, start, end });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_ascii_digit() {
                    end = i + 1;
                    advance(c, &mut line, &mut col);
                    chars.next();
                } else {
                    break;
                }
            }
            let n: BigUint = text[start..end].parse().expect("digits");
            out.push(Token { tok: Tok::Int(n), pos, start, end });
            continue;
        }
        if c == '"' {
            advance(c, &mut line, &mut col);
            chars.next();
            let mut s = String::new();
            let mut closed = None;
            while let Some((i, c)) = chars.next() {
                advance(c, &mut line, &mut col);
                match c {
                    '"' => {
                        closed = Some(i + 1);
                        break;
                    }
                    '\\' => match chars.next() {
                        Some((_, e @ ('"' | '\\'))) => {
                            advance(e, &mut line, &mut col);
                            s.push(e);
                        }
                        Some((_, 'n')) => {
                            col += 1;
                            s.push('\n');
                        }
                        _ => return Err(SessionError::syntax(Pos { line, col }, "a valid escape", "`\\`")),
                    },
                    '\n' => return Err(SessionError::syntax(pos, "a closing quote", "end of line")),
                    c => s.push(c),
                }
            }
            let end = closed.ok_or_else(|| SessionError::syntax(pos, "a closing quote", "end of input"))?;
            out.push(Token { tok: Tok::Str(s), pos, start, end });
            continue;
        }
        if c == '-' && text[start..].starts_with("->") {
            chars.next();
            chars.next();
            col += 2;
            out.push(Token { tok: Tok::Sym("->"), pos, start, end: start + 2 });
            continue;
        }
        if let Some(sym) = SYMBOLS.iter().find(|s| s.starts_with(c)) {
            advance(c, &mut line, &mut col);
            chars.next();
            out.push(Token { tok: Tok::Sym(sym), pos, start, end: start + 1 });
            continue;
        }
        return Err(SessionError::syntax(pos, "a token", &format!("{c:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_kinds() {
        let toks = tokenize("ring B = Q[X]  # note\n  task t = check-retraction(pi)").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("ring".into()));
        let task = toks.iter().find(|t| t.tok == Tok::Ident("task".into())).unwrap();
        assert_eq!((task.pos.line, task.pos.col), (2, 3));
        assert!(toks.iter().any(|t| t.tok == Tok::Sym("-")));
        assert!(tokenize("x -> y").unwrap().iter().any(|t| t.tok == Tok::Sym("->")));
        let err = tokenize("ring ~").unwrap_err();
        assert!(err.to_string().contains("1:6"));
        assert!(tokenize("\"open").is_err());
    }
}
