//! Buchberger's algorithm and the ideal-theoretic toolkit built on it.

mod ideal;
mod reduce;

use std::cmp::Ordering;

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};

pub(crate) use ideal::saturate_by_all_in;
pub use ideal::{dimension, ideal_intersect, ideal_member, quotient_degree, radical_member, saturate, saturate_by_all};
use reduce::{normal_form_with, reduce_sum, Reducers};

/// A reduced Gröbner basis: monic, inter-reduced, sorted by increasing
/// leading monomial. Two bases of the same ring are equal iff their ideals are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroebnerBasis {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl GroebnerBasis {
    /// The basis of the zero ideal.
    pub fn zero(ring: Ring) -> Self {
        GroebnerBasis { ring, gens: Vec::new() }
    }

    pub fn unit(ring: Ring) -> Self {
        GroebnerBasis {
            ring,
            gens: vec![Polynomial::one(ring)],
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<Polynomial> {
        self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_constant()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.gens.iter().map(|g| g.lm())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let f = f.with_order(self.ring.order);
        normal_form_with(&f, &Reducers::new(self.gens.iter()))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// True when every generator of `other` lies in this ideal.
    pub fn contains_all(&self, other: &[Polynomial]) -> bool {
        other.iter().all(|g| self.contains(g))
    }
}

/// A critical pair `(i, j)` of basis indices.
#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    ring: Ring,
    polys: Vec<Polynomial>,
    sugar: Vec<u32>,
    /// Indices of the current (non-redundant) basis.
    basis: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn pair_cmp(order: MonomialOrder, a: &Pair, b: &Pair) -> Ordering {
        a.sugar.cmp(&b.sugar).then_with(|| order.cmp(&a.lcm, &b.lcm))
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let order = self.ring.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| Self::pair_cmp(order, &self.pairs[a], &self.pairs[b]))?;
        Some(self.pairs.swap_remove(best))
    }

    fn reduce(&self, summands: Vec<(&Polynomial, Monomial, u32, usize)>) -> Polynomial {
        let reducers = Reducers::new(self.basis.iter().map(|&k| &self.polys[k]));
        reduce_sum(self.ring, summands, &reducers, true)
    }

    /// Gebauer–Möller installation of a new basis element.
    fn update(&mut self, h: Polynomial, sugar: u32) {
        let hidx = self.polys.len();
        let hlm = h.lm().clone();
        self.polys.push(h);
        self.sugar.push(sugar);

        struct Cand {
            g: usize,
            lcm: Monomial,
            coprime: bool,
        }
        let mut cands: Vec<Cand> = self
            .basis
            .iter()
            .map(|&g| {
                let glm = self.polys[g].lm();
                Cand {
                    g,
                    lcm: glm.lcm(&hlm),
                    coprime: glm.is_coprime(&hlm),
                }
            })
            .collect();

        // criterion M: drop (g,h) when some other lcm(g',h) properly divides lcm(g,h)
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a != b && keep[b] && cands[b].lcm.divides(&cands[a].lcm) && cands[b].lcm != cands[a].lcm {
                    keep[a] = false;
                    break;
                }
            }
        }
        // criterion F: among equal lcms keep one, preferring a coprime pair
        let mut kept: Vec<Cand> = Vec::new();
        for (c, k) in cands.drain(..).zip(keep) {
            if !k {
                continue;
            }
            if let Some(existing) = kept.iter_mut().find(|e| e.lcm == c.lcm) {
                if c.coprime {
                    existing.coprime = true;
                }
                continue;
            }
            kept.push(c);
        }

        // criterion B on old pairs
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(hlm.divides(&p.lcm) && polys[p.i].lm().lcm(&hlm) != p.lcm && polys[p.j].lm().lcm(&hlm) != p.lcm)
        });

        let hs = self.sugar[hidx];
        let hdeg = self.polys[hidx].lm().degree();
        for c in kept {
            if c.coprime {
                continue;
            }
            let g = c.g;
            let gs = self.sugar[g];
            let gdeg = self.polys[g].lm().degree();
            let l = c.lcm.degree();
            let sugar = (gs + l - gdeg).max(hs + l - hdeg);
            self.pairs.push(Pair {
                i: g,
                j: hidx,
                lcm: c.lcm,
                sugar,
            });
        }

        self.basis.retain(|&g| !hlm.divides(polys[g].lm()));
        self.basis.push(hidx);
    }
}

/// Sugar degree of an input polynomial.
fn input_sugar(f: &Polynomial) -> u32 {
    f.total_degree().unwrap_or(0)
}

/// Reduced Gröbner basis of the ideal generated by `input` under `order`.
///
/// Buchberger's algorithm with Gebauer–Möller pair elimination and the sugar
/// flavour of the normal selection strategy. A nonzero constant anywhere
/// short-circuits to `{1}`.
pub fn buchberger(input: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    let ring = match input.first() {
        Some(f) => f.ring().with_order(order),
        None => panic!("buchberger needs the ring; use buchberger_in for empty input"),
    };
    buchberger_in(ring, input)
}

/// As [`buchberger`], with the ring given explicitly (allows empty input).
pub fn buchberger_in(ring: Ring, input: &[Polynomial]) -> GroebnerBasis {
    let mut polys: Vec<Polynomial> = input
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| {
            assert_eq!(f.ring().nvars, ring.nvars, "polynomial ring mismatch");
            assert_eq!(f.ring().field, ring.field, "coefficient field mismatch");
            f.with_order(ring.order).monic()
        })
        .collect();
    if polys.iter().any(|f| f.is_constant()) {
        return GroebnerBasis::unit(ring);
    }
    if polys.is_empty() {
        return GroebnerBasis::zero(ring);
    }
    polys.sort_by(|a, b| {
        a.lm()
            .degree()
            .cmp(&b.lm().degree())
            .then_with(|| ring.order.cmp(a.lm(), b.lm()))
    });
    polys.dedup();

    let mut eng = Engine {
        ring,
        polys: Vec::new(),
        sugar: Vec::new(),
        basis: Vec::new(),
        pairs: Vec::new(),
    };
    for f in polys {
        let one = Monomial::one(ring.nvars);
        let h = eng.reduce(vec![(&f, one, 1, 0)]);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return GroebnerBasis::unit(ring);
        }
        let s = input_sugar(&f).max(input_sugar(&h));
        eng.update(h.monic(), s);
    }
    while let Some(pair) = eng.select_pair() {
        let (pi, pj) = (&eng.polys[pair.i], &eng.polys[pair.j]);
        let mi = pi.lm().quotient_of(&pair.lcm);
        let mj = pj.lm().quotient_of(&pair.lcm);
        let minus_one = ring.field.modulus() - 1;
        let s = eng.reduce(vec![(pi, mi, 1, 1), (pj, mj, minus_one, 1)]);
        if s.is_zero() {
            continue;
        }
        if s.is_constant() {
            return GroebnerBasis::unit(ring);
        }
        eng.update(s.monic(), pair.sugar);
    }
    let basis: Vec<Polynomial> = eng.basis.iter().map(|&k| eng.polys[k].clone()).collect();
    interreduce(ring, basis)
}

/// Turns a (minimal) Gröbner basis into the reduced one, sorted by leading monomial.
fn interreduce(ring: Ring, mut basis: Vec<Polynomial>) -> GroebnerBasis {
    // drop elements whose leading monomial is divisible by another's
    basis.sort_by(|a, b| ring.order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Polynomial> = Vec::with_capacity(basis.len());
    for g in basis {
        if !minimal.iter().any(|m| m.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others = Reducers::new(minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g));
        let g = &minimal[k];
        let one = Monomial::one(ring.nvars);
        // the leading term is irreducible; reduce the tail only
        let tail = reduce_sum(ring, vec![(g, one.clone(), 1, 1)], &others, true);
        let mut terms = vec![g.terms()[0].clone()];
        terms.extend(tail.terms().iter().cloned());
        reduced.push(Polynomial::from_sorted_terms(ring, terms));
    }
    GroebnerBasis { ring, gens: reduced }
}

/// Builds a basis object from polynomials already known to form a reduced
/// Gröbner basis (e.g. the `t`-free part of an elimination basis).
pub(crate) fn from_reduced_unchecked(ring: Ring, mut gens: Vec<Polynomial>) -> GroebnerBasis {
    gens.sort_by(|a, b| ring.order.cmp(a.lm(), b.lm()));
    GroebnerBasis { ring, gens }
}

/// Buchberger's criterion: every S-polynomial of `gens` reduces to zero.
/// Used as a post-hoc check in tests.
pub fn satisfies_buchberger_criterion(gens: &[Polynomial]) -> bool {
    if gens.is_empty() {
        return true;
    }
    let ring = gens[0].ring();
    let monic: Vec<Polynomial> = gens.iter().map(|g| g.monic()).collect();
    let reducers = Reducers::new(monic.iter());
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            let l = monic[i].lm().lcm(monic[j].lm());
            let mi = monic[i].lm().quotient_of(&l);
            let mj = monic[j].lm().quotient_of(&l);
            let s = reduce_sum(
                ring,
                vec![(&monic[i], mi, 1, 1), (&monic[j], mj, ring.field.modulus() - 1, 1)],
                &reducers,
                true,
            );
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}

/// True when `gens` is a reduced Gröbner basis: monic, Buchberger-closed and
/// no term of any element divisible by another element's leading monomial.
pub fn is_reduced_groebner_basis(gens: &[Polynomial]) -> bool {
    if !gens.iter().all(|g| !g.is_zero() && g.lc() == 1) {
        return false;
    }
    for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate() {
            if i != j && g.terms().iter().any(|t| h.lm().divides(&t.mono)) {
                return false;
            }
        }
    }
    satisfies_buchberger_criterion(gens)
}
