//! Textual polynomial syntax.
//!
//! Variables are identifiers, operators are `+ - * ^` with the usual
//! precedence, parentheses group, and integer literals are reduced mod p.
//! Multiplication must be written out: `2*x`, never `2x`.

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str, line: usize) -> Result<Lexer> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            toks.push((Tok::Int(chars[start..i].iter().collect()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*^()".contains(c) {
            toks.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(parse_error(line, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(Lexer { toks })
}

fn parse_error(line: usize, column: usize, message: String) -> Error {
    Error::Parse { line, column, message }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: Ring,
    names: &'a [String],
    line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(parse_error(self.line, self.col(), message.into()))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.eat('*') {
            let f = self.power()?;
            acc = &acc * &f;
        }
        if let Some(Tok::Int(_) | Tok::Ident(_)) = self.peek() {
            return self.err("implicit multiplication is not accepted; write '*'");
        }
        if self.peek() == Some(&Tok::Op('(')) {
            return self.err("implicit multiplication is not accepted; write '*'");
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(digits)) => {
                self.pos += 1;
                let e: u32 = digits
                    .parse()
                    .map_err(|_| parse_error(self.line, col, format!("exponent {digits} is too large")))?;
                base.pow(e).map_err(|e| parse_error(self.line, col, e.to_string()))
            }
            _ => self.err("expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(digits)) => {
                self.pos += 1;
                let f = self.ring.field;
                let p = f.modulus() as u64;
                let v = digits.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                Ok(Polynomial::constant(self.ring, v as i64))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(parse_error(self.line, col, format!("unknown identifier {name}"))),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses one polynomial over `ring` whose variables are called `names`.
/// Errors report `line` and the 1-based column within `text`.
pub fn parse_polynomial(text: &str, names: &[String], ring: Ring, line: usize) -> Result<Polynomial> {
    if names.len() != ring.nvars {
        return Err(Error::LengthMismatch {
            expected: ring.nvars,
            got: names.len(),
        });
    }
    let lexer = lex(text, line)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        ring,
        names,
        line,
        end_col: text.chars().count() + 1,
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let f = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

/// True for strings usable as variable names.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn ring(p: u32, n: usize) -> Ring {
        Ring::new(PrimeField::new(p).unwrap(), n)
    }

    #[test]
    fn parses_basic_syntax() {
        let r = ring(65521, 2);
        let n = names(&["x", "y"]);
        let f = parse_polynomial("x*y", &n, r, 1).unwrap();
        assert_eq!(f, &Polynomial::var(r, 0) * &Polynomial::var(r, 1));
        let g = parse_polynomial("-(x + 2*y)^2 - 3", &n, r, 1).unwrap();
        assert_eq!(g.to_string_with(&n), "-x^2 - 4*x*y - 4*y^2 - 3");
        let h = parse_polynomial("65523*x", &n, r, 1).unwrap();
        assert_eq!(h, Polynomial::var(r, 0).scale(2));
    }

    #[test]
    fn reports_errors_with_positions() {
        let r = ring(65521, 1);
        let n = names(&["x"]);
        assert_eq!(
            parse_polynomial("x + y", &n, r, 3).unwrap_err(),
            Error::Parse {
                line: 3,
                column: 5,
                message: "unknown identifier y".into()
            }
        );
        assert!(matches!(
            parse_polynomial("2x", &n, r, 1),
            Err(Error::Parse { column: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("x +", &n, r, 1),
            Err(Error::Parse { column: 4, .. })
        ));
        assert!(matches!(parse_polynomial("(x", &n, r, 1), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_polynomial("x $ 1", &n, r, 1),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!(matches!(parse_polynomial("x^y", &n, r, 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("", &n, r, 1), Err(Error::Parse { .. })));
    }

    fn poly3() -> impl Strategy<Value = Polynomial> {
        let r = ring(65521, 3);
        proptest::collection::vec((proptest::collection::vec(0u32..4, 3), 0u32..65521), 0..6).prop_map(move |ts| {
            Polynomial::from_terms(
                r,
                ts.into_iter()
                    .map(|(e, c)| (crate::monomial::Monomial::from_exponents(&e).unwrap(), c)),
            )
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(f in poly3()) {
            let n = names(&["a", "b", "c"]);
            let text = f.to_string_with(&n);
            prop_assert_eq!(parse_polynomial(&text, &n, f.ring(), 1).unwrap(), f);
        }
    }
}
