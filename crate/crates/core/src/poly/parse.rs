//! Polynomial literals: identifiers, `^` powers, `*` products, `+`/`-`,
//! parentheses and rational literals such as `3/4`. Whitespace is ignored.

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::field::BaseField;
use super::polynomial::Polynomial;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

fn lex(src: &str) -> Result<Lexer> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            toks.push((Tok::Num(s.parse().expect("digits")), off));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            toks.push((Tok::Ident(s), off));
        } else if "+-*^/()".contains(c) {
            toks.push((Tok::Sym(c), off));
            i += 1;
        } else {
            return Err(perr(off, format!("unexpected character '{c}' in polynomial")));
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: src.len(),
    })
}

/// A parse error carrying the byte offset within the polynomial text; the
/// session parser converts offsets to line/column.
fn perr(offset: usize, message: String) -> Error {
    Error::Parse {
        line: 0,
        column: offset,
        message,
    }
}

struct Parser<'a> {
    lx: Lexer,
    names: &'a [String],
    field: BaseField,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.lx.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.lx.toks.get(self.lx.pos).map(|(_, o)| *o).unwrap_or(self.lx.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.lx.toks.get(self.lx.pos).map(|(t, _)| t.clone());
        self.lx.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.lx.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            let off = self.offset();
            match self.bump() {
                Some(Tok::Num(e)) => {
                    let e: u32 = e.try_into().map_err(|_| perr(off, "exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(perr(off, "expected a nonnegative integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Num(num)) => {
                if self.eat('/') {
                    let doff = self.offset();
                    match self.bump() {
                        Some(Tok::Num(den)) => {
                            let c = self
                                .field
                                .from_ratio(&num, &den)
                                .map_err(|e| perr(doff, e.to_string()))?;
                            Ok(Polynomial::constant(self.field, self.n(), c))
                        }
                        _ => Err(perr(doff, "expected an integer denominator".into())),
                    }
                } else {
                    Ok(Polynomial::constant(self.field, self.n(), self.field.from_bigint(&num)))
                }
            }
            Some(Tok::Ident(name)) => match self.names.iter().position(|n| *n == name) {
                Some(i) => Ok(Polynomial::var(self.field, self.n(), i)),
                None => Err(perr(off, format!("unknown variable '{name}'"))),
            },
            Some(Tok::Sym('(')) => {
                let p = self.expr()?;
                if !self.eat(')') {
                    return Err(perr(self.offset(), "expected ')'".into()));
                }
                Ok(p)
            }
            Some(Tok::Sym('-')) => Ok(-&self.atom()?),
            Some(t) => Err(perr(off, format!("unexpected token {t:?}"))),
            None => Err(perr(off, "unexpected end of polynomial".into())),
        }
    }
}

/// Parses a polynomial over `field` in the named variables. Errors report the
/// byte offset in `column` with `line` set to zero.
pub fn parse_polynomial(src: &str, names: &[String], field: BaseField) -> Result<Polynomial> {
    let mut p = Parser {
        lx: lex(src)?,
        names,
        field,
    };
    if p.lx.toks.is_empty() {
        return Err(perr(0, "empty polynomial".into()));
    }
    let poly = p.expr()?;
    if p.lx.pos < p.lx.toks.len() {
        return Err(perr(p.offset(), "trailing input after polynomial".into()));
    }
    Ok(poly)
}
