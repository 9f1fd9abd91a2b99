//! Monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest exponent a single variable may carry.
pub const EXPONENT_CAP: u32 = 32767;

/// Exponents per packed word.
const PER_WORD: usize = 4;
/// Bits per exponent lane.
pub(crate) const LANE: u32 = 16;
const LANE_MASK: u64 = 0xffff;
/// High bit of every lane.
const HIGH: u64 = 0x8000_8000_8000_8000;
const LOW: u64 = 0x7fff_7fff_7fff_7fff;
/// Inline word capacity; rings of up to 16 variables never allocate.
const INLINE: usize = 4;

/// A monomial order.
///
/// `Elim { block }` treats the trailing `block` variable slots as an
/// eliminated block ranked above all other variables: monomials are compared
/// first by grevlex restricted to that block and ties are broken by grevlex on
/// the leading slots. Auxiliary variables (saturation, intersection) are always
/// appended as trailing slots, so the user's variables never get re-indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Elim {
        block: usize,
    },
}

/// Exponent vector packed 16 bits per variable, last variable first and
/// most significant, so that the reverse-lexicographic tie-break of grevlex
/// is a comparison of whole words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    words: SmallVec<[u64; INLINE]>,
    nvars: u32,
    deg: u32,
}

#[inline]
fn slot(nvars: usize, i: usize) -> (usize, u32) {
    let r = nvars - 1 - i;
    (r / PER_WORD, 64 - LANE - LANE * (r % PER_WORD) as u32)
}

/// Lane-wise combination of two packed word vectors.
#[inline]
fn zip_words(a: &[u64], b: &[u64], f: impl Fn(u64, u64) -> u64) -> SmallVec<[u64; INLINE]> {
    let n = a.len();
    if n <= INLINE {
        let mut buf = [0u64; INLINE];
        for i in 0..n {
            buf[i] = f(a[i], b[i]);
        }
        SmallVec::from_buf_and_len(buf, n)
    } else {
        a.iter().zip(b.iter()).map(|(&x, &y)| f(x, y)).collect()
    }
}

#[inline]
fn nonzero_lanes(w: u64) -> u64 {
    // lanes stay below the high bit, so adding LOW sets it iff the lane is nonzero
    (w + LOW) & HIGH
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            words: SmallVec::from_elem(0, nvars.div_ceil(PER_WORD)),
            nvars: nvars as u32,
            deg: 0,
        }
    }

    /// The monomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        let (w, s) = slot(nvars, i);
        m.words[w] |= 1 << s;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        let mut m = Monomial::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.set_exponent(i, e)?;
        }
        Ok(m)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> Vec<u32> {
        (0..self.nvars()).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        let (w, s) = slot(self.nvars(), i);
        ((self.words[w] >> s) & LANE_MASK) as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit `i mod 64` is set when variable `i` occurs.
    pub fn divmask(&self) -> u64 {
        let mut m = 0u64;
        for i in 0..self.nvars() {
            if self.exponent(i) != 0 {
                m |= 1 << (i & 63);
            }
        }
        m
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars, other.nvars);
        let words = zip_words(&self.words, &other.words, |a, b| a + b);
        if words.iter().fold(0, |acc, w| acc | w) & HIGH != 0 {
            return Err(Error::ExponentOverflow { cap: EXPONENT_CAP });
        }
        Ok(Monomial {
            words,
            nvars: self.nvars,
            deg: self.deg + other.deg,
        })
    }

    /// Product; exponent overflow is a hard failure.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        match self.try_mul(other) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg
            && self
                .words
                .iter()
                .zip(other.words.iter())
                .all(|(&a, &b)| ((b | HIGH) - a) & HIGH == HIGH)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            words: zip_words(&other.words, &self.words, |b, a| b - a),
            nvars: self.nvars,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let words = zip_words(&self.words, &other.words, |a, b| {
            // all ones in every lane where a >= b
            let ge = (((a | HIGH) - b) & HIGH) >> (LANE - 1);
            let mask = ge * LANE_MASK;
            (a & mask) | (b & !mask)
        });
        let deg = words.iter().map(|w| lane_sum(*w)).sum();
        Monomial {
            words,
            nvars: self.nvars,
            deg,
        }
    }

    /// True when the two monomials share no variable.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(&a, &b)| nonzero_lanes(a) & nonzero_lanes(b) == 0)
    }

    /// Variables present, as a bitmask (requires at most 64 variables).
    pub fn support_mask(&self) -> u64 {
        debug_assert!(self.nvars() <= 64);
        self.divmask()
    }

    /// Same exponents with `extra` zero slots appended.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut m = Monomial::one(self.nvars() + extra);
        self.copy_into(&mut m);
        m
    }

    /// Drops the trailing slots beyond `nvars`; they must be zero.
    pub fn truncate(&self, nvars: usize) -> Monomial {
        debug_assert!((nvars..self.nvars()).all(|i| self.exponent(i) == 0));
        let mut m = Monomial::one(nvars);
        for i in 0..nvars {
            m.put(i, self.exponent(i));
        }
        m.deg = self.deg;
        m
    }

    fn copy_into(&self, m: &mut Monomial) {
        for i in 0..self.nvars() {
            m.put(i, self.exponent(i));
        }
        m.deg = self.deg;
    }

    /// Rewrites variable slots: slot `i` moves to `map[i]` in a ring of `nvars` variables.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut exps = vec![0u32; nvars];
        for i in 0..self.nvars() {
            exps[map[i]] += self.exponent(i);
        }
        Monomial::from_exponents(&exps).expect("remapped exponents stay within the cap")
    }

    #[inline]
    fn put(&mut self, i: usize, e: u32) {
        let (w, s) = slot(self.nvars(), i);
        self.words[w] = (self.words[w] & !(LANE_MASK << s)) | ((e as u64) << s);
    }

    pub fn set_exponent(&mut self, i: usize, e: u32) -> Result<()> {
        if e > EXPONENT_CAP {
            return Err(Error::ExponentOverflow { cap: EXPONENT_CAP });
        }
        self.deg = self.deg - self.exponent(i) + e;
        self.put(i, e);
        Ok(())
    }

    /// The packed exponent words (last variable in the top lane of word 0).
    #[inline]
    pub(crate) fn packed_words(&self) -> &[u64] {
        &self.words
    }

    /// Grevlex reverse-lexicographic tie-break on whole words.
    #[inline]
    fn revlex_words(&self, other: &Monomial) -> Ordering {
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

#[inline]
fn lane_sum(w: u64) -> u32 {
    (0..PER_WORD as u32)
        .map(|k| ((w >> (LANE * k)) & LANE_MASK) as u32)
        .sum()
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

#[inline]
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Compares two monomials of the same length.
    #[inline]
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::Grevlex => a.deg.cmp(&b.deg).then_with(|| a.revlex_words(b)),
            MonomialOrder::Elim { block: 1 } => {
                // the eliminated variable is the top lane of the first word
                (a.words[0] >> (64 - LANE))
                    .cmp(&(b.words[0] >> (64 - LANE)))
                    .then_with(|| a.deg.cmp(&b.deg))
                    .then_with(|| a.revlex_words(b))
            }
            MonomialOrder::Elim { block } => {
                let (ea, eb) = (a.exponents(), b.exponents());
                let split = a.nvars() - block;
                let (ra, ta) = ea.split_at(split);
                let (rb, tb) = eb.split_at(split);
                let sum = |e: &[u32]| e.iter().sum::<u32>();
                sum(ta)
                    .cmp(&sum(tb))
                    .then_with(|| revlex(ta, tb))
                    .then_with(|| sum(ra).cmp(&sum(rb)))
                    .then_with(|| revlex(ra, rb))
            }
        }
    }

    /// Checked comparison: rejects monomials of different lengths and
    /// elimination blocks that swallow every variable.
    pub fn try_cmp(self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::LengthMismatch {
                expected: a.nvars(),
                got: b.nvars(),
            });
        }
        if let MonomialOrder::Elim { block } = self {
            if block >= a.nvars() {
                return Err(Error::InvalidArgument(format!(
                    "elimination block of {block} needs more than {} variables",
                    a.nvars()
                )));
            }
        }
        Ok(self.cmp(a, b))
    }

    pub fn name(self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Elim { block } => format!("elim({block})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 2])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 1]), &m(&[2, 1])), Ordering::Equal);
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn overflow_is_an_error() {
        let a = m(&[20000, 0]);
        assert!(a.try_mul(&a).is_err());
        assert!(Monomial::from_exponents(&[EXPONENT_CAP + 1]).is_err());
        let b = m(&[EXPONENT_CAP - 1, 3]);
        assert_eq!(b.mul(&m(&[1, 0])).exponent(0), EXPONENT_CAP);
    }

    #[test]
    fn length_mismatch() {
        let o = MonomialOrder::Grevlex;
        assert!(o.try_cmp(&m(&[1]), &m(&[1, 0])).is_err());
        assert!(MonomialOrder::Elim { block: 2 }
            .try_cmp(&m(&[1, 0]), &m(&[0, 1]))
            .is_err());
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::Elim { block: 1 };
        // t is the trailing slot: t < x^5 in grevlex but t > x^5 here
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[5, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 1])), Ordering::Greater);
    }

    fn mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, n).prop_map(|v| Monomial::from_exponents(&v).unwrap())
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Elim { block: 1 }),
            Just(MonomialOrder::Elim { block: 2 }),
        ]
    }

    proptest! {
        #[test]
        fn total_multiplicative_well_order(o in order(), a in mono(4), b in mono(4), c in mono(4)) {
            // trichotomy / antisymmetry
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            // transitivity
            if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
            }
            // multiplicativity
            prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), o.cmp(&a, &b));
            // 1 is minimal
            prop_assert_ne!(o.cmp(&Monomial::one(4), &a), Ordering::Greater);
        }

        #[test]
        fn grevlex_refines_degree(a in mono(4), b in mono(4)) {
            if a.degree() < b.degree() {
                prop_assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b), Ordering::Less);
            }
        }

        #[test]
        fn elim_eliminates(a in mono(4), b in mono(4)) {
            let o = MonomialOrder::Elim { block: 1 };
            if a.exponent(3) > 0 && b.exponent(3) == 0 {
                prop_assert_eq!(o.cmp(&a, &b), Ordering::Greater);
            }
        }

        #[test]
        fn lcm_and_division(a in mono(3), b in mono(3)) {
            let l = a.lcm(&b);
            prop_assert!(a.divides(&l) && b.divides(&l));
            prop_assert_eq!(a.quotient_of(&l).mul(&a), l);
        }

        #[test]
        fn packed_ops_match_exponent_vectors(
            a in proptest::collection::vec(0u32..60, 11),
            b in proptest::collection::vec(0u32..60, 11),
        ) {
            let (ma, mb) = (m(&a), m(&b));
            prop_assert_eq!(ma.exponents(), a.clone());
            let prod: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            prop_assert_eq!(ma.mul(&mb).exponents(), prod.clone());
            prop_assert_eq!(ma.mul(&mb).degree(), prod.iter().sum::<u32>());
            let lcm: Vec<u32> = a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect();
            prop_assert_eq!(ma.lcm(&mb).exponents(), lcm.clone());
            prop_assert_eq!(ma.lcm(&mb).degree(), lcm.iter().sum::<u32>());
            prop_assert_eq!(ma.divides(&mb), a.iter().zip(&b).all(|(x, y)| x <= y));
            prop_assert_eq!(ma.is_coprime(&mb), a.iter().zip(&b).all(|(x, y)| *x == 0 || *y == 0));
            // the packed comparison agrees with the textbook definition
            let deg = |e: &[u32]| e.iter().sum::<u32>();
            let want = deg(&a).cmp(&deg(&b)).then_with(|| revlex(&a, &b));
            prop_assert_eq!(MonomialOrder::Grevlex.cmp(&ma, &mb), want);
            let want = a[10].cmp(&b[10]).then_with(|| deg(&a).cmp(&deg(&b))).then_with(|| revlex(&a, &b));
            prop_assert_eq!(MonomialOrder::Elim { block: 1 }.cmp(&ma, &mb), want);
        }
    }
}
