//! Times grevlex bases of `n` random dense quadrics in `n` variables.
//!
//! cargo run --release -p equidim --example gb_bench -- 6 8

use std::time::Instant;

use equidim::groebner::quotient_degree;
use equidim::poly::random_dense;
use equidim::{buchberger_in, PrimeField, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (lo, hi) = match args.as_slice() {
        [a, b] => (*a, *b),
        [a] => (*a, *a),
        _ => (4, 7),
    };
    for n in lo..=hi {
        let ring = Ring::new(PrimeField::default(), n);
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let vars: Vec<usize> = (0..n).collect();
        let sys: Vec<_> = (0..n).map(|_| random_dense(ring, &vars, 2, &mut rng)).collect();
        let start = Instant::now();
        let gb = buchberger_in(ring, &sys);
        println!(
            "n={n}: {} generators, degree {}, {:.3}s",
            gb.len(),
            quotient_degree(&gb).unwrap(),
            start.elapsed().as_secs_f64()
        );
    }
}
