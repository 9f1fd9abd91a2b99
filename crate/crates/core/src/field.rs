//! Arithmetic in prime fields GF(p) for odd primes p < 2^31.
//!
//! The hot paths (polynomial and Gröbner basis code) work on raw `u32`
//! residues through [`PrimeField`]; [`FieldElement`] is the checked value
//! type exposed to callers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// The characteristic used when none is given.
pub const DEFAULT_PRIME: u32 = 65521;

/// A prime field context. Cheap to copy; immutable once built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

/// Deterministic trial-division primality test; fine for p < 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    /// Builds GF(p). `p` must be an odd prime below 2^31.
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !(3..(1 << 31)).contains(&p) || !is_prime(p as u64) {
            return Err(FieldError::InvalidModulus(p as u64));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn reduce_u64(self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce_i64(s0))
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn element(self, value: i64) -> FieldElement {
        FieldElement {
            value: self.reduce_i64(value),
            field: self,
        }
    }

    pub fn zero(self) -> FieldElement {
        FieldElement { value: 0, field: self }
    }

    pub fn one(self) -> FieldElement {
        FieldElement { value: 1, field: self }
    }
}

/// An element of GF(p) tagged with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

/// The binary operations of [`FieldElement::try_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Checked binary arithmetic; fails when the operands live in different fields.
    pub fn try_arith(self, other: FieldElement, op: FieldOp) -> Result<FieldElement, FieldError> {
        if self.field != other.field {
            return Err(FieldError::Mismatch {
                left: self.field.p,
                right: other.field.p,
            });
        }
        let f = self.field;
        let value = match op {
            FieldOp::Add => f.add(self.value, other.value),
            FieldOp::Sub => f.sub(self.value, other.value),
            FieldOp::Mul => f.mul(self.value, other.value),
        };
        Ok(FieldElement { value, field: f })
    }

    pub fn inv(self) -> Result<FieldElement, FieldError> {
        Ok(FieldElement {
            value: self.field.inv(self.value)?,
            field: self.field,
        })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// The operator impls panic on mixed fields; use `try_arith` to get an error instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                match self.try_arith(rhs, $op) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

binop!(Add, add, FieldOp::Add);
binop!(Sub, sub, FieldOp::Sub);
binop!(Mul, mul, FieldOp::Mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn small_field_examples() {
        let f = gf(5);
        assert_eq!((f.element(3) + f.element(4)).value(), 2);
        assert_eq!((f.element(0) * f.element(4)).value(), 0);
        assert_eq!(f.element(1).inv().unwrap().value(), 1);
        assert_eq!(f.element(2).inv().unwrap().value(), 3);
    }

    #[test]
    fn default_field_examples() {
        let f = PrimeField::default();
        assert_eq!(f.modulus(), 65521);
        assert_eq!((-f.one()).value(), 65520);
        assert_eq!(f.element(65520).inv().unwrap().value(), 65520);
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(gf(7).zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = gf(5).element(1);
        let b = gf(7).element(1);
        assert!(matches!(
            a.try_arith(b, FieldOp::Add),
            Err(FieldError::Mismatch { left: 5, right: 7 })
        ));
    }

    #[test]
    fn bad_moduli() {
        for p in [0u32, 1, 2, 4, 9, 65535, 1 << 31] {
            assert!(PrimeField::new(p).is_err(), "{p}");
        }
        assert!(PrimeField::new(2147483647).is_ok());
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u32..65521, b in 0u32..65521, c in 0u32..65521) {
            let f = PrimeField::default();
            let (a, b, c) = (f.element(a as i64), f.element(b as i64), f.element(c as i64));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(-(-a), a);
            prop_assert_eq!(a - b, a + (-b));
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), f.one());
            }
        }

        #[test]
        fn inverse_large_prime(a in 1u32..2147483647) {
            let f = PrimeField::new(2147483647).unwrap();
            let x = f.element(a as i64);
            prop_assert_eq!((x * x.inv().unwrap()).value(), 1);
        }
    }
}
