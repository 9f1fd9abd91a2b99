//! Saturation, radical membership, intersection, dimension and degree.

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};

use super::{buchberger_in, from_reduced_unchecked, GroebnerBasis};

/// `f` lies in the ideal of `gb`.
pub fn ideal_member(f: &Polynomial, gb: &GroebnerBasis) -> bool {
    gb.contains(f)
}

/// Grevlex basis of the elimination ideal `(⟨gens⟩ + ⟨extra⟩) ∩ R`, where
/// `extra` lives in `R[t]` with `t` as trailing slot.
fn eliminate_last(ring: Ring, gens: &[Polynomial], extra: Vec<Polynomial>) -> GroebnerBasis {
    let elim = MonomialOrder::Elim { block: 1 };
    let big = ring.extended(1, elim);
    let mut input: Vec<Polynomial> = gens.iter().map(|g| g.extend(1, elim)).collect();
    input.extend(extra);
    let gb = buchberger_in(big, &input);
    if gb.is_unit() {
        return GroebnerBasis::unit(ring);
    }
    let t = ring.nvars;
    let kept: Vec<Polynomial> = gb
        .into_gens()
        .into_iter()
        .filter(|g| !g.uses_var(t))
        .map(|g| g.truncate(t, ring.order))
        .collect();
    // the t-free part of a reduced elimination basis is a reduced basis for
    // the restricted order, which is grevlex on the remaining slots
    from_reduced_unchecked(ring, kept)
}

/// `t * g - 1` in the ring with one extra trailing variable.
fn rabinowitsch(g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let big = g.extend(1, order);
    let ring = big.ring();
    let t = Polynomial::var(ring, ring.nvars - 1);
    &(&t * &big) - &Polynomial::one(ring)
}

/// Reduced grevlex basis of the saturation `⟨gens⟩ : g^∞`, computed by
/// eliminating `t` from `⟨gens⟩ + ⟨t·g − 1⟩`.
pub fn saturate(gens: &[Polynomial], g: &Polynomial) -> Result<GroebnerBasis> {
    if g.is_zero() {
        return Err(Error::ZeroSaturator);
    }
    let ring = g.ring().with_order(MonomialOrder::Grevlex);
    for f in gens {
        if f.ring().nvars != ring.nvars || f.ring().field != ring.field {
            return Err(Error::RingMismatch);
        }
    }
    if g.is_constant() {
        return Ok(buchberger_in(ring, gens));
    }
    if gens.iter().any(|f| f.is_constant()) {
        return Ok(GroebnerBasis::unit(ring));
    }
    let elim = MonomialOrder::Elim { block: 1 };
    Ok(eliminate_last(
        ring,
        gens,
        vec![rabinowitsch(&g.with_order(MonomialOrder::Grevlex), elim)],
    ))
}

/// Successive saturation by each factor; nonzero constants are skipped.
pub fn saturate_by_all(gens: &[Polynomial], factors: &[Polynomial]) -> Result<GroebnerBasis> {
    let ring = match gens.first().or(factors.first()) {
        Some(f) => f.ring().with_order(MonomialOrder::Grevlex),
        None => return Err(Error::InvalidArgument("cannot infer ring from empty input".into())),
    };
    saturate_by_all_in(ring, gens, factors)
}

pub(crate) fn saturate_by_all_in(ring: Ring, gens: &[Polynomial], factors: &[Polynomial]) -> Result<GroebnerBasis> {
    let mut gb = buchberger_in(ring, gens);
    for g in factors {
        if g.is_zero() {
            return Err(Error::ZeroSaturator);
        }
        if gb.is_unit() {
            break;
        }
        if g.is_constant() || gb.is_empty() {
            continue;
        }
        gb = saturate(gb.gens(), g)?;
    }
    Ok(gb)
}

/// `f` vanishes on `V(gb)`: the ideal `gb + ⟨t·f − 1⟩` is the unit ideal.
///
/// Unit-ness does not depend on the term order, so the test runs in grevlex
/// on all `n + 1` variables rather than in an elimination order.
pub fn radical_member(f: &Polynomial, gb: &GroebnerBasis) -> bool {
    radical_member_gens(f, gb.gens(), Some(gb))
}

pub(crate) fn radical_member_gens(f: &Polynomial, gens: &[Polynomial], known_gb: Option<&GroebnerBasis>) -> bool {
    if f.is_zero() {
        return true;
    }
    if let Some(gb) = known_gb {
        if gb.is_unit() || gb.contains(f) {
            return true;
        }
    }
    if f.is_constant() {
        return gens.iter().any(|g| g.is_constant());
    }
    if let Some(gb) = known_gb.filter(|gb| is_zero_dimensional(gb)) {
        return nilpotent_mod(f, gb);
    }
    let order = MonomialOrder::Grevlex;
    let big_ring = f.ring().extended(1, order);
    let mut input: Vec<Polynomial> = gens.iter().map(|g| g.extend(1, order)).collect();
    input.push(rabinowitsch(&f.with_order(order), order));
    buchberger_in(big_ring, &input).is_unit()
}

/// Every variable has a pure power among the leading monomials.
fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    let n = gb.ring().nvars;
    let mut seen = vec![false; n];
    for m in gb.leading_monomials() {
        let mut support = (0..n).filter(|&i| m.exponent(i) > 0);
        if let (Some(i), None) = (support.next(), support.next()) {
            seen[i] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

/// `f` is nilpotent in the finite-dimensional algebra `R / ⟨gb⟩`. The
/// nilpotency index is at most the dimension `D` of the algebra, so it is
/// enough to square until the exponent reaches `D`.
fn nilpotent_mod(f: &Polynomial, gb: &GroebnerBasis) -> bool {
    let dim = quotient_degree(gb).expect("zero-dimensional basis");
    let mut h = gb.normal_form(f);
    let mut power = 1u64;
    while !h.is_zero() && power < dim {
        h = gb.normal_form(&(&h * &h));
        power *= 2;
    }
    h.is_zero()
}

/// `⟨g1⟩ ∩ ⟨g2⟩` via elimination of `t` from `⟨t·g1, (1 − t)·g2⟩`.
pub fn ideal_intersect(g1: &GroebnerBasis, g2: &GroebnerBasis) -> Result<GroebnerBasis> {
    let ring = g1.ring();
    if ring.nvars != g2.ring().nvars || ring.field != g2.ring().field {
        return Err(Error::RingMismatch);
    }
    let ring = ring.with_order(MonomialOrder::Grevlex);
    if g1.is_empty() || g2.is_empty() {
        return Ok(GroebnerBasis::zero(ring));
    }
    let elim = MonomialOrder::Elim { block: 1 };
    let big = ring.extended(1, elim);
    let t = Polynomial::var(big, ring.nvars);
    let one_minus_t = &Polynomial::one(big) - &t;
    let mut extra = Vec::new();
    for g in g1.gens() {
        extra.push(&t * &g.extend(1, elim));
    }
    for g in g2.gens() {
        extra.push(&one_minus_t * &g.extend(1, elim));
    }
    Ok(eliminate_last(ring, &[], extra))
}

/// Krull dimension of `R / ⟨gb⟩`: `n` minus the size of a smallest variable
/// set meeting the support of every leading monomial.
pub fn dimension(gb: &GroebnerBasis) -> Result<usize> {
    if gb.is_unit() {
        return Err(Error::EmptyVariety);
    }
    let n = gb.ring().nvars;
    if n > 64 {
        return Err(Error::InvalidArgument("dimension supports at most 64 variables".into()));
    }
    let mut supports: Vec<u64> = gb.leading_monomials().map(|m| m.support_mask()).collect();
    supports.sort_unstable();
    supports.dedup();
    // keep only inclusion-minimal supports
    let minimal: Vec<u64> = supports
        .iter()
        .copied()
        .filter(|&s| !supports.iter().any(|&o| o != s && o & s == o))
        .collect();
    let mut best = n;
    min_hitting_set(&minimal, 0, 0, &mut best);
    Ok(n - best)
}

fn min_hitting_set(sets: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    // the unhit set with fewest elements
    let unhit = sets.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones());
    match unhit {
        None => *best = size,
        Some(&s) => {
            let mut bits = s;
            while bits != 0 {
                let v = bits & bits.wrapping_neg();
                min_hitting_set(sets, chosen | v, size + 1, best);
                bits &= bits - 1;
            }
        }
    }
}

/// Number of standard monomials of a zero-dimensional ideal.
pub fn quotient_degree(gb: &GroebnerBasis) -> Result<u64> {
    if gb.is_unit() {
        return Ok(0);
    }
    let d = dimension(gb)?;
    if d > 0 {
        return Err(Error::PositiveDimensional(d));
    }
    let n = gb.ring().nvars;
    let lms: Vec<&Monomial> = gb.leading_monomials().collect();
    // pure-power bounds exist for every variable in the zero-dimensional case
    let mut bound = vec![u32::MAX; n];
    for m in &lms {
        let support: Vec<usize> = (0..n).filter(|&i| m.exponent(i) > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            bound[i] = bound[i].min(m.exponent(i));
        }
    }
    let mut cur = Monomial::one(n);
    Ok(count_standard(&lms, &bound, 0, &mut cur))
}

fn count_standard(lms: &[&Monomial], bound: &[u32], var: usize, cur: &mut Monomial) -> u64 {
    if var == bound.len() {
        return 1;
    }
    let mut total = 0;
    let mut e = 0;
    while e < bound[var] {
        cur.set_exponent(var, e).expect("bounded exponent");
        // prune once the partial monomial is already divisible (later slots are zero)
        if lms.iter().any(|m| m.divides(cur)) {
            break;
        }
        total += count_standard(lms, bound, var + 1, cur);
        e += 1;
    }
    cur.set_exponent(var, 0).expect("zero exponent");
    total
}
