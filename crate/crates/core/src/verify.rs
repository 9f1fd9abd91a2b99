//! Independent checkers for decompositions.
//!
//! Point enumeration and the monomial oracle share no code with the
//! Gröbner engine. The partition and dimension checks do use it, but only
//! through saturation-to-unit and radical-membership tests that are exact.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::Serialize;

use crate::cells::{make_witness, AffineCell};
use crate::error::{Error, Result};
use crate::groebner::{dimension, radical_member, saturate_by_all_in};
use crate::poly::{Polynomial, Ring};

/// Largest characteristic accepted by [`enumerate_points`].
pub const MAX_ENUM_PRIME: u32 = 11;
/// Largest number of variables accepted by [`enumerate_points`].
pub const MAX_ENUM_VARS: usize = 4;
/// Largest number of variables accepted by [`monomial_facets_oracle`].
pub const MAX_ORACLE_VARS: usize = 12;

/// A set of rational points, each an `n`-vector of residues.
pub type PointSet = BTreeSet<Vec<u32>>;

/// All `a ∈ GF(p)^n` with `f(a) = 0` for `f ∈ F` and `g(a) ≠ 0` for `g ∈ G`.
pub fn enumerate_points(ring: Ring, f: &[Polynomial], g: &[Polynomial]) -> Result<PointSet> {
    let p = ring.field.modulus();
    let n = ring.nvars;
    if p > MAX_ENUM_PRIME || n > MAX_ENUM_VARS {
        return Err(Error::CostGuard(format!(
            "point enumeration needs p <= {MAX_ENUM_PRIME} and n <= {MAX_ENUM_VARS}, got p = {p}, n = {n}"
        )));
    }
    for h in f.iter().chain(g) {
        if h.ring().nvars != n || h.ring().field != ring.field {
            return Err(Error::RingMismatch);
        }
    }
    let mut out = PointSet::new();
    let mut point = vec![0u32; n];
    loop {
        if f.iter().all(|h| h.eval(&point) == 0) && g.iter().all(|h| h.eval(&point) != 0) {
            out.insert(point.clone());
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            point[i] += 1;
            if point[i] < p {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

/// Rational points of a cell.
pub fn cell_points(cell: &AffineCell) -> Result<PointSet> {
    enumerate_points(cell.ring(), cell.equations(), cell.factors())
}

/// Minimal primes `⟨S⟩` of a squarefree monomial ideal, grouped by the
/// dimension `n − |S|` of `V(S)`. Each `S` is a sorted list of variable indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FacetDecomposition {
    pub by_dimension: BTreeMap<usize, BTreeSet<Vec<usize>>>,
}

impl FacetDecomposition {
    /// Number of components in each dimension.
    pub fn counts(&self) -> BTreeMap<usize, u64> {
        self.by_dimension.iter().map(|(&d, s)| (d, s.len() as u64)).collect()
    }
}

/// Brute-force minimal-prime search over all variable subsets.
pub fn monomial_facets_oracle(ring: Ring, f: &[Polynomial]) -> Result<FacetDecomposition> {
    let n = ring.nvars;
    if n > MAX_ORACLE_VARS {
        return Err(Error::CostGuard(format!(
            "monomial oracle needs n <= {MAX_ORACLE_VARS}, got {n}"
        )));
    }
    let mut supports = Vec::with_capacity(f.len());
    for h in f {
        if h.is_zero() {
            continue;
        }
        let exps = h.lm().exponents();
        if h.num_terms() != 1 || exps.iter().any(|&e| e > 1) {
            return Err(Error::NotSquarefreeMonomial(h.to_string()));
        }
        supports.push(
            exps.iter()
                .enumerate()
                .filter(|&(_, &e)| e == 1)
                .fold(0u32, |m, (i, _)| m | 1 << i),
        );
    }
    let covers = |s: u32| supports.iter().all(|&m| m & s != 0);
    let mut out = FacetDecomposition::default();
    for s in 0u32..(1 << n) {
        if !covers(s) {
            continue;
        }
        let minimal = (0..n).filter(|&i| s >> i & 1 == 1).all(|i| !covers(s & !(1 << i)));
        if minimal {
            let vars: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
            out.by_dimension.entry(n - vars.len()).or_default().insert(vars);
        }
    }
    Ok(out)
}

/// Outcome of [`compare_with_facets`]. Variable sets `S` stand for `V(S)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FacetComparison {
    /// Facets that are a closure component of no cell.
    pub missing: Vec<Vec<usize>>,
    /// Facets that are a closure component of more than one cell.
    pub repeated: Vec<Vec<usize>>,
    /// Closure components contained in no facet.
    pub stray: Vec<Vec<usize>>,
    /// Cells whose closure components disagree with the reported
    /// dimension or degree.
    pub inconsistent: Vec<usize>,
    /// Closure components strictly inside a facet. These are allowed: a
    /// partition can leave a lower-dimensional remainder of a facet whose
    /// dense part went to another cell.
    pub embedded: Vec<Vec<usize>>,
}

impl FacetComparison {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.repeated.is_empty() && self.stray.is_empty() && self.inconsistent.is_empty()
    }
}

/// Compares a decomposition of the squarefree monomial system `f` with its
/// facets, via the closure components of every cell. Each entry of `cells`
/// is `(cell, dimension, degree)`; cell bases must be squarefree monomial,
/// which holds for any decomposition of a monomial system.
pub fn compare_with_facets(
    ring: Ring,
    f: &[Polynomial],
    cells: &[(&AffineCell, usize, u64)],
) -> Result<FacetComparison> {
    let facets: BTreeSet<Vec<usize>> = monomial_facets_oracle(ring, f)?
        .by_dimension
        .into_values()
        .flatten()
        .collect();
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut out = FacetComparison::default();
    for (i, &(cell, dim, degree)) in cells.iter().enumerate() {
        let parts = monomial_facets_oracle(ring, cell.basis().gens())?;
        let consistent = parts.by_dimension.len() == 1 && parts.counts().get(&dim) == Some(&degree);
        if !consistent {
            out.inconsistent.push(i);
        }
        for s in parts.by_dimension.into_values().flatten() {
            if facets.contains(&s) {
                *seen.entry(s).or_default() += 1;
            } else if facets.iter().any(|t| t.iter().all(|v| s.contains(v))) {
                out.embedded.push(s);
            } else {
                out.stray.push(s);
            }
        }
    }
    for s in facets {
        match seen.get(&s) {
            None => out.missing.push(s),
            Some(&k) if k > 1 => out.repeated.push(s),
            Some(_) => {}
        }
    }
    Ok(out)
}

/// Outcome of [`check_partition`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub disjoint: bool,
    /// Index pairs of cells that meet.
    pub overlapping: Vec<(usize, usize)>,
    pub membership: bool,
    /// `(cell, input)` pairs where the input does not vanish on the cell.
    pub nonvanishing: Vec<(usize, usize)>,
    /// Point-set equality with `V(F)`; `None` when the cost guard refuses.
    pub points: Option<bool>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.disjoint && self.membership && self.points != Some(false)
    }
}

/// Index pairs of cells whose intersection is nonempty: `X_i ∩ X_j = ∅`
/// exactly when `F_i ∪ F_j` saturated by all factors of both is the unit ideal.
pub fn overlapping_pairs(cells: &[AffineCell]) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            let (a, b) = (&cells[i], &cells[j]);
            if a.ring().nvars != b.ring().nvars || a.ring().field != b.ring().field {
                return Err(Error::RingMismatch);
            }
            let ring = a.ring();
            let mut gens: Vec<Polynomial> = a.equations().to_vec();
            gens.extend(b.equations().iter().map(|h| h.with_order(ring.order)));
            let mut factors = a.factors().to_vec();
            factors.extend(b.factors().iter().map(|h| h.with_order(ring.order)));
            if !saturate_by_all_in(ring, &gens, &factors)?.is_unit() {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// `(cell, input)` pairs where the input is not in `rad I(cell)`. Uses the
/// exact basis of each cell.
pub fn nonvanishing_pairs(cells: &[AffineCell], f: &[Polynomial]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, cell) in cells.iter().enumerate() {
        let basis = cell.basis();
        for (k, h) in f.iter().enumerate() {
            if !radical_member(&h.with_order(cell.ring().order), basis) {
                out.push((i, k));
            }
        }
    }
    out
}

/// Compares the rational points of the cells with those of `V(F)`: the
/// cells must be pairwise disjoint and cover exactly `V(F)`.
pub fn points_match(ring: Ring, cells: &[AffineCell], f: &[Polynomial]) -> Result<bool> {
    let target = enumerate_points(ring, f, &[])?;
    let mut seen = PointSet::new();
    for cell in cells {
        for pt in cell_points(cell)? {
            if !seen.insert(pt) {
                return Ok(false);
            }
        }
    }
    Ok(seen == target)
}

/// Checks that `cells` partition `V(F)`. Failures are reported, not raised;
/// only ring mismatches produce an error.
pub fn check_partition(ring: Ring, cells: &[AffineCell], f: &[Polynomial]) -> Result<PartitionReport> {
    let overlapping = overlapping_pairs(cells)?;
    let nonvanishing = nonvanishing_pairs(cells, f);
    let points = match points_match(ring, cells, f) {
        Ok(v) => Some(v),
        Err(Error::CostGuard(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(PartitionReport {
        disjoint: overlapping.is_empty(),
        overlapping,
        membership: nonvanishing.is_empty(),
        nonvanishing,
        points,
    })
}

/// Outcome of [`check_top_dimension`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopDimensionReport {
    pub claimed: usize,
    /// A codimension-`d` cut is nonempty and zero-dimensional.
    pub lower: bool,
    /// A codimension-`d + 1` cut is empty.
    pub upper: bool,
}

impl TopDimensionReport {
    pub fn passed(&self) -> bool {
        self.lower && self.upper
    }
}

/// Certifies, for generic random cuts, that the top dimension of `X` is `d`.
/// Lower-dimensional components are not detected.
pub fn check_top_dimension<R: Rng + ?Sized>(cell: &AffineCell, d: usize, rng: &mut R) -> TopDimensionReport {
    let ring = cell.ring();
    let cut = |k: usize, rng: &mut R| make_witness(ring, cell.equations(), cell.factors(), k, rng);
    let lower = match cut(d, rng) {
        Ok((w, _)) => !w.is_unit() && dimension(&w).is_ok_and(|k| k == 0),
        Err(_) => false,
    };
    let upper = match cut(d + 1, rng) {
        Ok((w, _)) => w.is_unit(),
        Err(_) => false,
    };
    TopDimensionReport {
        claimed: d,
        lower,
        upper,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::Backend;
    use crate::decomp::{equidim, Config};
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(p: u32, n: usize) -> Ring {
        Ring::new(PrimeField::new(p).unwrap(), n)
    }

    fn vars(r: Ring) -> Vec<Polynomial> {
        (0..r.nvars).map(|i| Polynomial::var(r, i)).collect()
    }

    fn pts(v: &[&[u32]]) -> PointSet {
        v.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn enumerate_examples() {
        let r = ring(3, 1);
        let x = Polynomial::var(r, 0);
        assert_eq!(
            enumerate_points(r, std::slice::from_ref(&x), &[]).unwrap(),
            pts(&[&[0]])
        );
        assert_eq!(enumerate_points(r, &[], &[x]).unwrap(), pts(&[&[1], &[2]]));
        let r = ring(3, 2);
        let v = vars(r);
        assert_eq!(enumerate_points(r, &[&v[0] * &v[1]], &[]).unwrap().len(), 5);
    }

    #[test]
    fn enumerate_refuses_large_instances() {
        assert!(matches!(
            enumerate_points(ring(13, 1), &[], &[]),
            Err(Error::CostGuard(_))
        ));
        assert!(matches!(
            enumerate_points(ring(3, 5), &[], &[]),
            Err(Error::CostGuard(_))
        ));
    }

    fn facets(d: usize, sets: &[&[usize]]) -> FacetDecomposition {
        let mut out = FacetDecomposition::default();
        out.by_dimension.insert(d, sets.iter().map(|s| s.to_vec()).collect());
        out
    }

    #[test]
    fn oracle_examples() {
        let r = ring(65521, 2);
        let v = vars(r);
        assert_eq!(
            monomial_facets_oracle(r, &[&v[0] * &v[1]]).unwrap(),
            facets(1, &[&[0], &[1]])
        );
        let r = ring(65521, 4);
        let v = vars(r);
        let (x, y, z, w) = (&v[0], &v[1], &v[2], &v[3]);
        assert_eq!(
            monomial_facets_oracle(r, &[x * y, z * w, x * z]).unwrap(),
            facets(2, &[&[0, 2], &[0, 3], &[1, 2]])
        );
        let r = ring(65521, 3);
        assert_eq!(
            monomial_facets_oracle(r, &[Polynomial::var(r, 0)]).unwrap(),
            facets(2, &[&[0]])
        );
    }

    #[test]
    fn oracle_rejects_bad_input() {
        let r = ring(65521, 2);
        let v = vars(r);
        assert!(matches!(
            monomial_facets_oracle(r, &[&v[0] + &v[1]]),
            Err(Error::NotSquarefreeMonomial(_))
        ));
        assert!(matches!(
            monomial_facets_oracle(r, &[&v[0] * &v[0]]),
            Err(Error::NotSquarefreeMonomial(_))
        ));
        assert!(matches!(
            monomial_facets_oracle(ring(65521, 13), &[]),
            Err(Error::CostGuard(_))
        ));
    }

    #[test]
    fn facet_comparison_allows_embedded_remainders() {
        let r = ring(65521, 4);
        let v = vars(r);
        let f = vec![
            &v[2] * &v[3],
            &v[0] * &v[1],
            &v[1] * &v[3],
            &v[0] * &v[2],
            &v[0] * &v[3],
        ];
        let out = equidim(
            r,
            &f,
            &Config {
                backend: Backend::Gb,
                ..Config::default()
            },
        )
        .unwrap();
        let mut by_dim: BTreeMap<usize, u64> = BTreeMap::new();
        for c in &out.cells {
            *by_dim.entry(c.dim).or_default() += c.degree;
        }
        // the facets are the plane V(x1, x4) and the lines V(x1, x2, x3), V(x2, x3, x4); a line
        // inside the plane is left over as a cell of its own
        assert_eq!(
            monomial_facets_oracle(r, &f).unwrap().counts(),
            BTreeMap::from([(1, 2), (2, 1)])
        );
        assert_eq!(by_dim, BTreeMap::from([(1, 3), (2, 1)]));
        let cells: Vec<_> = out.cells.iter().map(|c| (&c.cell, c.dim, c.degree)).collect();
        let cmp = compare_with_facets(r, &f, &cells).unwrap();
        assert!(cmp.passed(), "{cmp:?}");
        assert_eq!(cmp.embedded.len(), 1);
    }

    #[test]
    fn facet_comparison_failures() {
        let r = ring(65521, 2);
        let v = vars(r);
        let f = vec![&v[0] * &v[1]];
        let x0 = AffineCell::gb_from_parts(r, &[v[0].clone()], vec![]).unwrap();
        let origin = AffineCell::gb_from_parts(r, &v, vec![]).unwrap();
        let cross = AffineCell::gb_from_parts(r, &f, vec![]).unwrap();

        assert!(compare_with_facets(r, &f, &[(&cross, 1, 2)]).unwrap().passed());
        let cmp = compare_with_facets(r, &f, &[(&x0, 1, 1)]).unwrap();
        assert_eq!(cmp.missing, vec![vec![1]]);
        let cmp = compare_with_facets(r, &f, &[(&x0, 1, 1), (&cross, 1, 2)]).unwrap();
        assert_eq!(cmp.repeated, vec![vec![0]]);
        let cmp = compare_with_facets(r, &f, &[(&cross, 1, 1)]).unwrap();
        assert_eq!(cmp.inconsistent, vec![0]);
        let cmp = compare_with_facets(r, &[&(&v[0] * &v[0]) * &v[1]], &[(&cross, 1, 2)]);
        assert!(matches!(cmp, Err(Error::NotSquarefreeMonomial(_))));
        let cmp = compare_with_facets(r, &[v[0].clone()], &[(&x0, 1, 1), (&origin, 0, 1)]).unwrap();
        assert!(cmp.passed());
        assert_eq!(cmp.embedded, vec![vec![0, 1]]);
        let cmp = compare_with_facets(r, &[v[1].clone()], &[(&x0, 1, 1)]).unwrap();
        assert_eq!(cmp.stray, vec![vec![0]]);
    }

    #[test]
    fn partition_examples() {
        let r = ring(65521, 4);
        let v = vars(r);
        let (x, y, z, w) = (&v[0], &v[1], &v[2], &v[3]);
        let f = vec![x * y, z * w, x * z];
        for backend in [Backend::Gb, Backend::Witness] {
            let out = equidim(
                r,
                &f,
                &Config {
                    backend,
                    ..Config::default()
                },
            )
            .unwrap();
            let cells: Vec<AffineCell> = out.cells.into_iter().map(|c| c.cell).collect();
            let rep = check_partition(r, &cells, &f).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.points, None);
        }

        let r = ring(65521, 2);
        let x = Polynomial::var(r, 0);
        let c = AffineCell::gb_from_parts(r, std::slice::from_ref(&x), vec![]).unwrap();
        let rep = check_partition(r, &[c.clone(), c], &[x]).unwrap();
        assert!(!rep.disjoint);
        assert_eq!(rep.overlapping, vec![(0, 1)]);

        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let full = AffineCell::full_space(r, Backend::Gb, &mut rng).unwrap();
        assert!(check_partition(r, &[full], &[]).unwrap().passed());
    }

    #[test]
    fn partition_checks_points_on_small_fields() {
        let r = ring(5, 2);
        let v = vars(r);
        let f = vec![&v[0] * &v[1]];
        let x_axis = AffineCell::gb_from_parts(r, &[v[1].clone()], vec![]).unwrap();
        let y_axis_minus_origin = AffineCell::gb_from_parts(r, &[v[0].clone()], vec![v[1].clone()]).unwrap();
        let good = check_partition(r, &[x_axis.clone(), y_axis_minus_origin], &f).unwrap();
        assert_eq!(good.points, Some(true));
        assert!(good.passed());
        let y_axis = AffineCell::gb_from_parts(r, &[v[0].clone()], vec![]).unwrap();
        let bad = check_partition(r, &[x_axis, y_axis], &f).unwrap();
        assert_eq!(bad.points, Some(false));
        assert!(!bad.disjoint);
    }

    #[test]
    fn membership_failure_is_reported() {
        let r = ring(65521, 2);
        let v = vars(r);
        let c = AffineCell::gb_from_parts(r, &[v[0].clone()], vec![]).unwrap();
        let rep = check_partition(r, &[c], &[v[1].clone()]).unwrap();
        assert!(!rep.membership);
        assert_eq!(rep.nonvanishing, vec![(0, 0)]);
    }

    #[test]
    fn top_dimension_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = ring(65521, 2);
        let v = vars(r);
        let plane = AffineCell::full_space(r, Backend::Gb, &mut rng).unwrap();
        assert!(check_top_dimension(&plane, 2, &mut rng).passed());
        let cross = AffineCell::gb_from_parts(r, &[&v[0] * &v[1]], vec![]).unwrap();
        let rep = check_top_dimension(&cross, 0, &mut rng);
        assert!(!rep.upper && !rep.passed());
        assert!(check_top_dimension(&cross, 1, &mut rng).passed());

        let r = ring(65521, 3);
        let v = vars(r);
        let line = AffineCell::gb_from_parts(r, &[v[1].clone(), v[2].clone()], vec![v[0].clone()]).unwrap();
        assert!(check_top_dimension(&line, 1, &mut rng).passed());
        assert!(!check_top_dimension(&line, 2, &mut rng).passed());
    }
}
