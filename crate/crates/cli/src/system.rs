//! The polynomial-system text format.
//!
//! ```text
//! # comments start with '#'
//! vars x, y, z
//! char 65521
//! x*y
//! z*x - 3
//! ```
//!
//! The `char` line is optional and defaults to 65521.

use equidim::parse::{is_identifier, parse_polynomial};
use equidim::{Error, Polynomial, PrimeField, Ring, DEFAULT_PRIME};

/// A validated system: every polynomial parses over the declared variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub variables: Vec<String>,
    pub characteristic: u32,
    pub polynomials: Vec<String>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Strips a trailing comment, keeping column positions intact.
fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn leading_ws(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

fn parse_vars(rest: &str, line: usize, offset: usize) -> Result<Vec<String>, Error> {
    let mut vars: Vec<String> = Vec::new();
    let mut col = offset;
    for piece in rest.split(',') {
        let name = piece.trim();
        let at = col + leading_ws(piece);
        if !is_identifier(name) {
            return Err(err(line, at, format!("invalid variable name '{name}'")));
        }
        if vars.iter().any(|v| v == name) {
            return Err(err(line, at, format!("duplicate variable {name}")));
        }
        vars.push(name.to_string());
        col += piece.chars().count() + 1;
    }
    Ok(vars)
}

impl SystemFile {
    /// Parses and validates a system file.
    pub fn parse(text: &str) -> Result<SystemFile, Error> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, content(l)))
            .filter(|(_, l)| !l.trim().is_empty());

        let (vline, vtext) = lines.next().ok_or_else(|| err(1, 1, "expected a 'vars' line"))?;
        let start = leading_ws(vtext);
        let body = &vtext[vtext.len() - vtext.trim_start().len()..];
        let rest = body
            .strip_prefix("vars")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| err(vline, start + 1, "expected a 'vars' line"))?;
        let variables = parse_vars(rest, vline, start + 5)?;

        let mut characteristic = DEFAULT_PRIME;
        let mut polynomials = Vec::new();
        let mut first = true;
        for (lineno, l) in lines {
            let trimmed = l.trim();
            if first {
                first = false;
                if let Some(rest) = trimmed
                    .strip_prefix("char")
                    .filter(|r| r.starts_with(char::is_whitespace))
                {
                    let col = leading_ws(l) + 4 + leading_ws(rest) + 1;
                    let value = rest.trim();
                    let p: u64 = value
                        .parse()
                        .map_err(|_| err(lineno, col, format!("invalid characteristic '{value}'")))?;
                    characteristic = u32::try_from(p)
                        .ok()
                        .and_then(|p| PrimeField::new(p).ok())
                        .map(PrimeField::modulus)
                        .ok_or_else(|| {
                            err(
                                lineno,
                                col,
                                format!("characteristic {p} is not an odd prime below 2^31"),
                            )
                        })?;
                    continue;
                }
            }
            polynomials.push((lineno, l.to_string()));
        }

        let file = SystemFile {
            variables,
            characteristic,
            polynomials: Vec::new(),
        };
        let ring = file.ring();
        for (lineno, l) in &polynomials {
            parse_polynomial(l, &file.variables, ring, *lineno)?;
        }
        Ok(SystemFile {
            polynomials: polynomials.into_iter().map(|(_, l)| l.trim().to_string()).collect(),
            ..file
        })
    }

    /// Builds a system from polynomials over `ring` named by `variables`.
    pub fn from_polynomials(variables: Vec<String>, ring: Ring, polys: &[Polynomial]) -> SystemFile {
        SystemFile {
            polynomials: polys.iter().map(|f| f.to_string_with(&variables)).collect(),
            variables,
            characteristic: ring.field.modulus(),
        }
    }

    pub fn ring(&self) -> Ring {
        let field = PrimeField::new(self.characteristic).expect("validated characteristic");
        Ring::new(field, self.variables.len())
    }

    /// The polynomials, parsed over [`SystemFile::ring`].
    pub fn parsed(&self) -> Result<Vec<Polynomial>, Error> {
        let ring = self.ring();
        self.polynomials
            .iter()
            .enumerate()
            .map(|(i, s)| parse_polynomial(s, &self.variables, ring, i + 1))
            .collect()
    }

    /// Renders the system in the file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("vars {}\nchar {}\n", self.variables.join(", "), self.characteristic);
        for p in &self.polynomials {
            out.push_str(p);
            out.push('\n');
        }
        out
    }
}
