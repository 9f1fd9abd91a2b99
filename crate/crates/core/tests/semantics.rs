//! Point-set semantics of cell operations and of whole decompositions,
//! checked by exhaustive enumeration over small prime fields, plus agreement
//! with the monomial oracle.

use std::collections::BTreeMap;

use equidim::cells::{AffineCell, Backend};
use equidim::decomp::{equidim, Config};
use equidim::poly::monomials_up_to;
use equidim::verify::{cell_points, check_partition, compare_with_facets, enumerate_points, monomial_facets_oracle};
use equidim::{Polynomial, PrimeField, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(p: u32, n: usize) -> Ring {
    Ring::new(PrimeField::new(p).unwrap(), n)
}

/// A random polynomial with up to `max_terms` terms of degree at most 2.
fn sparse(r: Ring, max_terms: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let vars: Vec<usize> = (0..r.nvars).collect();
    let monos = monomials_up_to(r.nvars, &vars, 2);
    let k = rng.gen_range(1..=max_terms);
    let p = r.field.modulus();
    Polynomial::from_terms(
        r,
        (0..k).map(|_| (monos[rng.gen_range(0..monos.len())].clone(), rng.gen_range(1..p))),
    )
}

fn random_cell(r: Ring, rng: &mut ChaCha8Rng) -> AffineCell {
    let gens: Vec<Polynomial> = (0..rng.gen_range(0..=2)).map(|_| sparse(r, 3, rng)).collect();
    let factors: Vec<Polynomial> = (0..rng.gen_range(0..=1))
        .map(|_| sparse(r, 2, rng))
        .filter(|g| !g.is_zero())
        .collect();
    AffineCell::gb_from_parts(r, &gens, factors).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cell_operations_match_point_sets(seed in any::<u64>(), p in prop::sample::select(vec![3u32, 5, 7]), n in 1usize..=2) {
        let r = ring(p, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_cell(r, &mut rng);
        let f = sparse(r, 3, &mut rng);
        let px = cell_points(&x).unwrap();
        let pf = enumerate_points(r, std::slice::from_ref(&f), &[]).unwrap();

        let meet = x.intersect_components(std::slice::from_ref(&f)).unwrap();
        let expected: Vec<_> = px.intersection(&pf).cloned().collect();
        prop_assert_eq!(cell_points(&meet).unwrap().into_iter().collect::<Vec<_>>(), expected.clone());

        let cut = x.intersect_proper(&f, &mut rng).unwrap();
        prop_assert_eq!(cell_points(&cut).unwrap().into_iter().collect::<Vec<_>>(), expected);

        if !f.is_zero() {
            let rest = x.subtract_hypersurface(&f).unwrap();
            let expected: Vec<_> = px.difference(&pf).cloned().collect();
            prop_assert_eq!(cell_points(&rest).unwrap().into_iter().collect::<Vec<_>>(), expected);
        }
    }

    #[test]
    fn decompositions_partition_rational_points(seed in any::<u64>(), p in prop::sample::select(vec![5u32, 7]), n in 1usize..=3) {
        let r = ring(p, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| sparse(r, 4, &mut rng)).collect();
        let out = equidim(r, &f, &Config { backend: Backend::Gb, seed, ..Config::default() }).unwrap();
        let cells: Vec<AffineCell> = out.cells.into_iter().map(|c| c.cell).collect();
        let rep = check_partition(r, &cells, &f).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep);
        prop_assert_eq!(rep.points, Some(true));
    }

    #[test]
    fn monomial_systems_match_the_oracle(seed in any::<u64>(), n in 1usize..=5) {
        let r = ring(65521, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f: Vec<Polynomial> = (0..rng.gen_range(0..=5))
            .map(|_| {
                let mask = rng.gen_range(1u32..(1 << n));
                (0..n).filter(|i| mask >> i & 1 == 1).fold(Polynomial::one(r), |m, i| &m * &Polynomial::var(r, i))
            })
            .collect();
        let oracle = monomial_facets_oracle(r, &f).unwrap().counts();
        for backend in [Backend::Gb, Backend::Witness] {
            let out = equidim(r, &f, &Config { backend, seed, ..Config::default() }).unwrap();
            let cells: Vec<_> = out.cells.iter().map(|c| (&c.cell, c.dim, c.degree)).collect();
            let cmp = compare_with_facets(r, &f, &cells).unwrap();
            prop_assert!(cmp.passed(), "backend {:?}: {:?}", backend, cmp);

            // every facet is dense in exactly one cell, so degree sums bound
            // facet counts from above, with equality in the top dimension
            let mut got: BTreeMap<usize, u64> = BTreeMap::new();
            for c in &out.cells {
                *got.entry(c.dim).or_default() += c.degree;
            }
            for (d, k) in &oracle {
                prop_assert!(got.get(d).copied().unwrap_or(0) >= *k);
            }
            prop_assert_eq!(got.last_key_value(), oracle.last_key_value());
            prop_assert_eq!(got == oracle, cmp.embedded.is_empty());
        }
    }
}
