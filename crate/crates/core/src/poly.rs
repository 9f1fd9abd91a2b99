//! Sparse multivariate polynomials over GF(p).

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::monomial::{Monomial, MonomialOrder};

/// Coefficient field, number of variables and term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    pub field: PrimeField,
    pub nvars: usize,
    pub order: MonomialOrder,
}

impl Ring {
    pub fn new(field: PrimeField, nvars: usize) -> Self {
        Ring {
            field,
            nvars,
            order: MonomialOrder::Grevlex,
        }
    }

    pub fn with_order(self, order: MonomialOrder) -> Self {
        Ring { order, ..self }
    }

    /// The ring with `extra` trailing variables.
    pub fn extended(self, extra: usize, order: MonomialOrder) -> Self {
        Ring {
            field: self.field,
            nvars: self.nvars + extra,
            order,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: u32,
}

/// A polynomial; terms have nonzero coefficients and strictly decreasing
/// monomials under the ring's order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: Ring, c: i64) -> Self {
        let c = ring.field.reduce_i64(c);
        let mut p = Polynomial::zero(ring);
        if c != 0 {
            p.terms.push(Term {
                mono: Monomial::one(ring.nvars),
                coeff: c,
            });
        }
        p
    }

    pub fn one(ring: Ring) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn var(ring: Ring, i: usize) -> Self {
        Polynomial {
            ring,
            terms: vec![Term {
                mono: Monomial::var(ring.nvars, i),
                coeff: 1,
            }],
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zero coefficients.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let f = ring.field;
        let mut v: Vec<Term> = terms
            .into_iter()
            .map(|(mono, coeff)| {
                debug_assert_eq!(mono.nvars(), ring.nvars);
                Term {
                    mono,
                    coeff: coeff % f.modulus(),
                }
            })
            .collect();
        v.sort_by(|a, b| ring.order.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff = f.add(last.coeff, t.coeff),
                _ => {
                    if out.last().is_some_and(|l| l.coeff == 0) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff == 0) {
            out.pop();
        }
        Polynomial { ring, terms: out }
    }

    /// Trusts that `terms` is already canonical.
    pub(crate) fn from_sorted_terms(ring: Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Polynomial { ring, terms }
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn leading_term(&self) -> Result<(Monomial, FieldElement)> {
        let t = self.terms.first().ok_or(Error::ZeroPolynomial)?;
        Ok((t.mono.clone(), self.ring.field.element(t.coeff as i64)))
    }

    #[inline]
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].mono
    }

    #[inline]
    pub fn lc(&self) -> u32 {
        self.terms[0].coeff
    }

    /// Variables that occur in some term.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exponent(i) > 0)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.modulus();
        if c == 0 {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    coeff: f.mul(t.coeff, c),
                })
                .collect(),
        }
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        let inv = self.ring.field.inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field.modulus() - 1)
    }

    pub fn mul_term(&self, mono: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field;
        if c.is_multiple_of(f.modulus()) {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.mul(mono),
                    coeff: f.mul(t.coeff, c),
                })
                .collect(),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let f = self.ring.field;
        let ord = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let adj = |c: u32| if negate { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match ord.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        mono: b[j].mono.clone(),
                        coeff: adj(b[j].coeff),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].coeff, adj(b[j].coeff));
                    if c != 0 {
                        out.push(Term {
                            mono: a[i].mono.clone(),
                            coeff: c,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term {
            mono: t.mono.clone(),
            coeff: adj(t.coeff),
        }));
        Polynomial {
            ring: self.ring,
            terms: out,
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let f = self.ring.field;
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for s in &self.terms {
            for t in &other.terms {
                prods.push((s.mono.try_mul(&t.mono)?, f.mul(s.coeff, t.coeff)));
            }
        }
        Ok(Polynomial::from_terms(self.ring, prods))
    }

    pub fn try_arith(&self, other: &Polynomial, op: PolyOp) -> Result<Polynomial> {
        match op {
            PolyOp::Add => self.try_add(other),
            PolyOp::Sub => self.try_sub(other),
            PolyOp::Mul => self.try_mul(other),
        }
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.ring);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Re-sorts the terms for a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.ring.order {
            return self.clone();
        }
        let ring = self.ring.with_order(order);
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Polynomial { ring, terms }
    }

    /// Embeds into a ring with `extra` trailing variables and the given order.
    pub fn extend(&self, extra: usize, order: MonomialOrder) -> Polynomial {
        let ring = self.ring.extended(extra, order);
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term {
                mono: t.mono.extend(extra),
                coeff: t.coeff,
            })
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Polynomial { ring, terms }
    }

    /// Restricts to the first `nvars` variables; the rest must not occur.
    pub fn truncate(&self, nvars: usize, order: MonomialOrder) -> Polynomial {
        let ring = Ring {
            field: self.ring.field,
            nvars,
            order,
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term {
                mono: t.mono.truncate(nvars),
                coeff: t.coeff,
            })
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Polynomial { ring, terms }
    }

    /// Renames variables: slot `i` becomes slot `map[i]` of `ring`.
    pub fn remap(&self, map: &[usize], ring: Ring) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.terms.iter().map(|t| (t.mono.remap(map, ring.nvars), t.coeff)),
        )
    }

    /// Evaluates at a point given by residues.
    pub fn eval(&self, point: &[u32]) -> u32 {
        let f = self.ring.field;
        let mut acc = 0u32;
        for t in &self.terms {
            let mut v = t.coeff;
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e > 0 {
                    v = f.mul(v, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`; exponents are reduced
    /// mod p, so terms whose exponent is divisible by p vanish.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let f = self.ring.field;
        let terms = self.terms.iter().filter_map(|t| {
            let e = t.mono.exponent(i);
            if e == 0 {
                return None;
            }
            let c = f.mul(t.coeff, f.reduce_u64(e as u64));
            if c == 0 {
                return None;
            }
            let mut m = t.mono.clone();
            m.set_exponent(i, e - 1).ok()?;
            Some((m, c))
        });
        Polynomial::from_terms(self.ring, terms)
    }

    /// Writes the polynomial with the given variable names.
    pub fn to_string_with(&self, names: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let p = self.ring.field.modulus();
        let mut s = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            // print residues above p/2 as negatives
            let (neg, c) = if t.coeff > p / 2 {
                (true, p - t.coeff)
            } else {
                (false, t.coeff)
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || t.mono.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", names[i].as_ref(), e)),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    /// Default names `x1, x2, ...`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&Polynomial::default_names(self.ring.nvars)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&Polynomial::default_names(self.ring.nvars)))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                match self.$try(rhs) {
                    Ok(p) => p,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

/// `count` affine-linear forms with every coefficient (constant term
/// included) uniform in GF(p).
pub fn random_affine_forms<R: Rng + ?Sized>(ring: Ring, count: usize, rng: &mut R) -> Vec<Polynomial> {
    let p = ring.field.modulus();
    (0..count)
        .map(|_| {
            let mut terms = Vec::with_capacity(ring.nvars + 1);
            for i in 0..ring.nvars {
                terms.push((Monomial::var(ring.nvars, i), rng.gen_range(0..p)));
            }
            terms.push((Monomial::one(ring.nvars), rng.gen_range(0..p)));
            Polynomial::from_terms(ring, terms)
        })
        .collect()
}

/// All exponent vectors of total degree at most `degree` supported on `vars`,
/// in a fixed enumeration order.
pub fn monomials_up_to(nvars: usize, vars: &[usize], degree: u32) -> Vec<Monomial> {
    fn rec(vars: &[usize], left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => out.push(cur.clone()),
            Some((&v, rest)) => {
                for e in 0..=left {
                    cur.set_exponent(v, e).expect("small exponent");
                    rec(rest, left - e, cur, out);
                }
                cur.set_exponent(v, 0).expect("zero exponent");
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Monomial::one(nvars);
    rec(vars, degree, &mut cur, &mut out);
    out
}

/// Uniformly random coefficients on every monomial of degree at most
/// `degree` in the variables `vars`.
pub fn random_dense<R: Rng + ?Sized>(ring: Ring, vars: &[usize], degree: u32, rng: &mut R) -> Polynomial {
    let p = ring.field.modulus();
    let monos = monomials_up_to(ring.nvars, vars, degree);
    Polynomial::from_terms(ring, monos.into_iter().map(|m| (m, rng.gen_range(0..p))))
}
