//! Incremental equidimensional decomposition.
//!
//! [`equidim`] starts from the whole affine space and cuts it by one equation
//! at a time with [`split`]. A cut either meets every component properly, in
//! which case the cell just loses one dimension, or it contains some
//! components, in which case the cell is separated into the part lying in
//! the hypersurface and the remainder, the latter being cleaned up by
//! [`remove`] or [`remove_prime`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cells::{AffineCell, Backend};
use crate::error::Result;
use crate::poly::{Polynomial, Ring};

/// How the input equations are ordered before decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputOrder {
    /// Stable sort by total degree, ascending.
    #[default]
    ByDegree,
    /// Stable sort by number of terms, ascending.
    BySupport,
    /// Keep the given order.
    AsIs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub backend: Backend,
    pub order: InputOrder,
    pub seed: u64,
    /// Use the plain recursive `remove` instead of `remove′`.
    pub use_classic_remove: bool,
    /// Record every proper and improper branch taken.
    pub trace: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            backend: Backend::Witness,
            order: InputOrder::ByDegree,
            seed: 0,
            use_classic_remove: false,
            trace: false,
        }
    }
}

/// A branch taken by [`split`].
#[derive(Clone, Debug)]
pub enum TraceEvent {
    /// `X ∩ V(f)` was computed as a proper intersection.
    Proper { parent_dim: usize, child: Box<AffineCell> },
    /// `f` vanished on some component of `X`; `restricted` is `X ∩ V(g)` for
    /// the chosen separator `g`.
    Improper {
        parent: Box<AffineCell>,
        restricted: Box<AffineCell>,
    },
}

/// Candidate separators `basis(X \ V(f))` computed at ancestors of the
/// current cell for the current `f`. Each recursion level extends a copy,
/// so siblings never see each other's entries.
#[derive(Clone, Debug, Default)]
pub struct GCache {
    candidates: Vec<Polynomial>,
}

impl GCache {
    pub fn new() -> Self {
        GCache::default()
    }

    pub fn candidates(&self) -> &[Polynomial] {
        &self.candidates
    }

    fn extended(&self, more: &[Polynomial]) -> GCache {
        let mut candidates = self.candidates.clone();
        candidates.extend(more.iter().cloned());
        GCache { candidates }
    }
}

/// Mutable state threaded through one decomposition.
pub struct Context<'r, R: Rng + ?Sized> {
    pub rng: &'r mut R,
    pub use_classic_remove: bool,
    pub trace: Option<Vec<TraceEvent>>,
}

impl<'r, R: Rng + ?Sized> Context<'r, R> {
    pub fn new(rng: &'r mut R) -> Self {
        Context {
            rng,
            use_classic_remove: false,
            trace: None,
        }
    }

    fn record(&mut self, ev: impl FnOnce() -> TraceEvent) {
        if let Some(t) = self.trace.as_mut() {
            t.push(ev());
        }
    }
}

/// The candidate not vanishing on `x` with smallest total degree, then
/// fewest terms, then latest position (the largest leading monomial, for a
/// basis). Candidates are tested in that order, so the radical-membership
/// tests stop at the first hit.
fn pick_separator<'a>(x: &AffineCell, cands: &'a [Polynomial]) -> Option<&'a Polynomial> {
    let mut idx: Vec<usize> = (0..cands.len()).collect();
    idx.sort_by_key(|&i| {
        (
            cands[i].total_degree().unwrap_or(0),
            cands[i].num_terms(),
            std::cmp::Reverse(i),
        )
    });
    idx.into_iter().map(|i| &cands[i]).find(|g| !x.rad_member(g))
}

/// Partition of `X ∩ V(f)` into equidimensional cells, for equidimensional `X`.
pub fn split<R: Rng + ?Sized>(
    x: &AffineCell,
    f: &Polynomial,
    cache: &GCache,
    ctx: &mut Context<'_, R>,
) -> Result<Vec<AffineCell>> {
    if x.is_empty() {
        return Ok(Vec::new());
    }
    if f.is_zero() {
        return Ok(vec![x.clone()]);
    }
    if x.is_proper(f)? {
        return proper_cut(x, f, ctx);
    }
    // a cached separator from an ancestor, if one still separates
    let cached = pick_separator(x, cache.candidates()).cloned();
    let (g, cache) = match cached {
        Some(g) => (g, cache.clone()),
        None => {
            let outside = x.subtract_hypersurface(f)?;
            let gens = outside.basis().gens().to_vec();
            match pick_separator(x, &gens) {
                Some(g) => (g.clone(), cache.extended(&gens)),
                // every element vanishes on X: the intersection was proper after all
                None => return proper_cut(x, f, ctx),
            }
        }
    };
    let h = x.subtract_hypersurface(&g)?.basis().gens().to_vec();
    let mut out = Vec::new();
    push_nonempty(&mut out, x.intersect_components(&h)?);
    let restricted = x.intersect_components(std::slice::from_ref(&g))?;
    ctx.record(|| TraceEvent::Improper {
        parent: Box::new(x.clone()),
        restricted: Box::new(restricted.clone()),
    });
    let pieces = if ctx.use_classic_remove {
        remove(&restricted, &h, ctx)?
    } else {
        remove_prime(&restricted, &h, ctx)?
    };
    for y in &pieces {
        out.extend(split(y, f, &cache, ctx)?);
    }
    Ok(out)
}

fn proper_cut<R: Rng + ?Sized>(x: &AffineCell, f: &Polynomial, ctx: &mut Context<'_, R>) -> Result<Vec<AffineCell>> {
    let d = x.dim()?;
    if x.backend() == Backend::Witness && d == 0 {
        // a proper cut of finitely many points is empty
        return Ok(Vec::new());
    }
    let y = x.intersect_proper(f, ctx.rng)?;
    ctx.record(|| TraceEvent::Proper {
        parent_dim: d,
        child: Box::new(y.clone()),
    });
    let mut out = Vec::new();
    push_nonempty(&mut out, y);
    Ok(out)
}

fn push_nonempty(out: &mut Vec<AffineCell>, c: AffineCell) {
    if !c.is_empty() {
        out.push(c);
    }
}

/// Partition of `X \ V(H)`, assumed equidimensional, by the recursion
/// `X \ V(H) = (X \ V(h)) ⊔ ((X \ V(H′)) ∩ V(h))` with `h` the first element.
pub fn remove<R: Rng + ?Sized>(x: &AffineCell, h: &[Polynomial], ctx: &mut Context<'_, R>) -> Result<Vec<AffineCell>> {
    let Some((first, rest)) = h.split_first() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    push_nonempty(&mut out, x.subtract_hypersurface(first)?);
    for y in remove(x, rest, ctx)? {
        out.extend(split(&y, first, &GCache::new(), ctx)?);
    }
    Ok(out)
}

/// Partition of `X \ V(H)` into the pieces `(X \ V(h_i)) ∩ V(h_1, …, h_{i−1})`,
/// cutting each piece properly where possible and splitting otherwise.
pub fn remove_prime<R: Rng + ?Sized>(
    x: &AffineCell,
    h: &[Polynomial],
    ctx: &mut Context<'_, R>,
) -> Result<Vec<AffineCell>> {
    let mut out = Vec::new();
    for (i, hi) in h.iter().enumerate() {
        let mut xi = Some(x.subtract_hypersurface(hi)?);
        let mut pending: Vec<&Polynomial> = Vec::new();
        for hj in &h[..i] {
            let Some(c) = xi.as_ref().filter(|c| !c.is_empty()) else {
                break;
            };
            if c.is_proper(hj)? {
                xi = proper_cut(c, hj, ctx)?.pop();
            } else {
                pending.push(hj);
            }
        }
        let Some(xi) = xi.filter(|c| !c.is_empty()) else {
            continue;
        };
        let mut cells = vec![xi];
        for hj in pending {
            let mut next = Vec::new();
            for y in &cells {
                next.extend(split(y, hj, &GCache::new(), ctx)?);
            }
            cells = next;
        }
        out.extend(cells);
    }
    Ok(out)
}

/// Orders the input equations; returns the permutation applied alongside.
pub fn order_input(f: &[Polynomial], strategy: InputOrder) -> (Vec<Polynomial>, Vec<usize>) {
    let mut idx: Vec<usize> = (0..f.len()).collect();
    match strategy {
        InputOrder::ByDegree => idx.sort_by_key(|&i| f[i].total_degree().unwrap_or(0)),
        InputOrder::BySupport => idx.sort_by_key(|&i| f[i].num_terms()),
        InputOrder::AsIs => {}
    }
    (idx.iter().map(|&i| f[i].clone()).collect(), idx)
}

/// An output cell with its dimension and degree.
#[derive(Clone, Debug)]
pub struct Component {
    pub cell: AffineCell,
    pub dim: usize,
    pub degree: u64,
}

#[derive(Clone, Debug)]
pub struct DecompositionOutput {
    pub cells: Vec<Component>,
    /// `input_order[k]` is the index in the original input of the `k`-th
    /// equation processed.
    pub input_order: Vec<usize>,
    pub seed: u64,
    pub backend: Backend,
    pub trace: Vec<TraceEvent>,
}

/// Partition of `V(F)` into pairwise-disjoint equidimensional cells.
pub fn equidim(ring: Ring, f: &[Polynomial], config: &Config) -> Result<DecompositionOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (ordered, input_order) = order_input(f, config.order);
    let mut ctx = Context {
        rng: &mut rng,
        use_classic_remove: config.use_classic_remove,
        trace: config.trace.then(Vec::new),
    };
    let mut cells = vec![AffineCell::full_space(ring, config.backend, ctx.rng)?];
    for fk in &ordered {
        let mut next = Vec::new();
        for x in &cells {
            next.extend(split(x, fk, &GCache::new(), &mut ctx)?);
        }
        cells = next;
    }
    let mut out = Vec::with_capacity(cells.len());
    for cell in cells {
        let (dim, degree) = cell.dim_degree(ctx.rng)?;
        out.push(Component { cell, dim, degree });
    }
    let trace = ctx.trace.take().unwrap_or_default();
    Ok(DecompositionOutput {
        cells: out,
        input_order,
        seed: config.seed,
        backend: config.backend,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groebner::buchberger_in;

    fn ring(n: usize) -> Ring {
        Ring::new(PrimeField::default(), n)
    }

    fn vars(r: Ring) -> Vec<Polynomial> {
        (0..r.nvars).map(|i| Polynomial::var(r, i)).collect()
    }

    fn cell(r: Ring, backend: Backend, gens: &[Polynomial], factors: &[Polynomial], d: usize) -> AffineCell {
        match backend {
            Backend::Gb => AffineCell::gb_from_parts(r, gens, factors.to_vec()).unwrap(),
            Backend::Witness => {
                AffineCell::witness_from_parts(r, gens.to_vec(), factors.to_vec(), d, &mut ChaCha8Rng::seed_from_u64(3))
                    .unwrap()
            }
        }
    }

    /// (basis, factors) of each cell, with bases compared as reduced GBs.
    fn shapes(cells: &[AffineCell]) -> Vec<(Vec<Polynomial>, Vec<Polynomial>)> {
        cells
            .iter()
            .map(|c| (c.basis().gens().to_vec(), c.factors().to_vec()))
            .collect()
    }

    fn run_split(x: &AffineCell, f: &Polynomial) -> Vec<AffineCell> {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut ctx = Context::new(&mut rng);
        split(x, f, &GCache::new(), &mut ctx).unwrap()
    }

    #[test]
    fn split_example_two_planes() {
        let r = ring(4);
        let v = vars(r);
        let (x, y, z, w) = (&v[0], &v[1], &v[2], &v[3]);
        for backend in [Backend::Gb, Backend::Witness] {
            let xc = cell(r, backend, &[x * y, z * w], &[], 2);
            let out = run_split(&xc, &(x * z));
            let got = shapes(&out);
            assert_eq!(got.len(), 2, "{backend:?}");
            assert_eq!(got[0].0, buchberger_in(r, &[x.clone(), z * w]).into_gens());
            assert!(got[0].1.is_empty());
            assert_eq!(got[1].0, buchberger_in(r, &[y.clone(), z.clone()]).into_gens());
            assert_eq!(got[1].1, vec![x.clone()]);
        }
    }

    #[test]
    fn split_intro_example() {
        let r = ring(3);
        let v = vars(r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        for backend in [Backend::Gb, Backend::Witness] {
            let xc = cell(r, backend, &[x * y], &[], 2);
            let got = shapes(&run_split(&xc, &(x * z)));
            assert_eq!(got.len(), 2);
            assert_eq!(got[0], (vec![x.clone()], vec![]));
            assert_eq!(got[1].0, buchberger_in(r, &[y.clone(), z.clone()]).into_gens());
            assert_eq!(got[1].1, vec![x.clone()]);
        }
    }

    #[test]
    fn split_trivial_cases() {
        let r = ring(3);
        let v = vars(r);
        let x = &v[0];
        for backend in [Backend::Gb, Backend::Witness] {
            let a = AffineCell::full_space(r, backend, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
            let got = shapes(&run_split(&a, x));
            assert_eq!(got, vec![(vec![x.clone()], vec![])]);
            let line = cell(r, backend, std::slice::from_ref(x), &[], 2);
            let got = shapes(&run_split(&line, x));
            assert_eq!(got, vec![(vec![x.clone()], vec![])]);
            let empty = cell(r, backend, &[Polynomial::one(r)], &[], 2);
            assert!(run_split(&empty, x).is_empty());
            let got = shapes(&run_split(&line, &Polynomial::zero(r)));
            assert_eq!(got, vec![(vec![x.clone()], vec![])]);
        }
    }

    #[test]
    fn remove_examples() {
        let r = ring(2);
        let v = vars(r);
        let (x, y) = (&v[0], &v[1]);
        for classic in [true, false] {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            let a = AffineCell::full_space(r, Backend::Gb, &mut rng).unwrap();
            let mut ctx = Context::new(&mut rng);
            ctx.use_classic_remove = classic;
            let run = |h: &[Polynomial], ctx: &mut Context<'_, ChaCha8Rng>| {
                if classic {
                    remove(&a, h, ctx).unwrap()
                } else {
                    remove_prime(&a, h, ctx).unwrap()
                }
            };
            assert!(run(&[], &mut ctx).is_empty());
            let one = shapes(&run(std::slice::from_ref(x), &mut ctx));
            assert_eq!(one, vec![(vec![], vec![x.clone()])]);
            let two = shapes(&run(&[x.clone(), y.clone()], &mut ctx));
            assert_eq!(two.len(), 2);
            assert!(two.contains(&(vec![], vec![x.clone()])));
            assert!(two.contains(&(vec![x.clone()], vec![y.clone()])));
        }
    }

    #[test]
    fn order_input_examples() {
        let r = ring(3);
        let v = vars(r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let f = vec![&(x * x) + y, x.clone()];
        assert_eq!(
            order_input(&f, InputOrder::ByDegree),
            (vec![x.clone(), &(x * x) + y], vec![1, 0])
        );
        let g = vec![&(x + y) + z, x * y];
        assert_eq!(order_input(&g, InputOrder::BySupport).0, vec![x * y, &(x + y) + z]);
        assert_eq!(order_input(&g, InputOrder::AsIs).0, g);
    }

    #[test]
    fn equidim_examples() {
        let r = ring(4);
        let v = vars(r);
        let (x, y, z, w) = (&v[0], &v[1], &v[2], &v[3]);
        for backend in [Backend::Gb, Backend::Witness] {
            let config = Config {
                backend,
                ..Config::default()
            };
            let out = equidim(r, &[], &config).unwrap();
            assert_eq!(out.cells.len(), 1);
            assert_eq!((out.cells[0].dim, out.cells[0].degree), (4, 1));

            let out = equidim(r, &[x * y], &config).unwrap();
            assert_eq!(out.cells.len(), 1);
            assert_eq!((out.cells[0].dim, out.cells[0].degree), (3, 2));

            let out = equidim(r, &[x * y, z * w, x * z], &config).unwrap();
            assert!(out.cells.iter().all(|c| c.dim == 2));
            assert_eq!(out.cells.iter().map(|c| c.degree).sum::<u64>(), 3);
        }
    }

    #[test]
    fn equidim_is_deterministic() {
        let r = ring(3);
        let v = vars(r);
        let f = [&v[0] * &v[1], &v[0] * &v[2]];
        let config = Config {
            seed: 42,
            ..Config::default()
        };
        let a = equidim(r, &f, &config).unwrap();
        let b = equidim(r, &f, &config).unwrap();
        let key = |o: &DecompositionOutput| {
            o.cells
                .iter()
                .map(|c| {
                    (
                        c.cell.equations().to_vec(),
                        c.cell.factors().to_vec(),
                        c.cell.witness().cloned(),
                    )
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(key(&a), key(&b));
    }
}
