//! Benchmark families: pseudo-singularity systems `Ps(n)` and sums of squares `sos(s, n)`.

use equidim::poly::random_dense;
use equidim::{Error, Polynomial, PrimeField, Ring};
use rand::Rng;

use crate::system::SystemFile;

/// `Ps(n)`: `n − 1` random dense quadrics `f_i` in `x_1..x_{n−2}, z_1, z_2`
/// and their copies `g_i` with each `x_j` renamed to `y_j`.
pub fn gen_ps<R: Rng + ?Sized>(n: usize, field: PrimeField, rng: &mut R) -> Result<SystemFile, Error> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("Ps(n) needs n >= 3, got {n}")));
    }
    let m = n - 2;
    let nvars = 2 * m + 2;
    let ring = Ring::new(field, nvars);
    let mut names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    names.extend((1..=m).map(|i| format!("y{i}")));
    names.extend(["z1".to_string(), "z2".to_string()]);

    let x_block: Vec<usize> = (0..m).chain([2 * m, 2 * m + 1]).collect();
    // x_j goes to y_j; every other variable stays put
    let rename: Vec<usize> = (0..nvars).map(|i| if i < m { i + m } else { i }).collect();
    let f: Vec<Polynomial> = (0..n - 1).map(|_| random_dense(ring, &x_block, 2, rng)).collect();
    let g: Vec<Polynomial> = f.iter().map(|fi| fi.remap(&rename, ring)).collect();
    let polys: Vec<Polynomial> = f.into_iter().chain(g).collect();
    Ok(SystemFile::from_polynomials(names, ring, &polys))
}

/// `sos(s, n)`: `f = g_1² + … + g_s²` for random dense quadrics `g_i` in
/// `x_1..x_n`, followed by `∂f/∂x_2, …, ∂f/∂x_n`.
pub fn gen_sos<R: Rng + ?Sized>(s: usize, n: usize, field: PrimeField, rng: &mut R) -> Result<SystemFile, Error> {
    if s < 1 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "sos(s, n) needs s >= 1 and n >= 2, got s = {s}, n = {n}"
        )));
    }
    let ring = Ring::new(field, n);
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let all: Vec<usize> = (0..n).collect();
    let mut f = Polynomial::zero(ring);
    for _ in 0..s {
        let g = random_dense(ring, &all, 2, rng);
        f = &f + &(&g * &g);
    }
    let mut polys = vec![f.clone()];
    polys.extend((1..n).map(|j| f.derivative(j)));
    Ok(SystemFile::from_polynomials(names, ring, &polys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use equidim::DEFAULT_PRIME;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn coeffs(f: &Polynomial) -> Vec<u32> {
        let mut c: Vec<u32> = f.terms().iter().map(|t| t.coeff).collect();
        c.sort_unstable();
        c
    }

    #[test]
    fn ps_shape() {
        let s = gen_ps(6, field(), &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(s.variables.len(), 10);
        let polys = s.parsed().unwrap();
        assert_eq!(polys.len(), 10);
        assert!(polys.iter().all(|f| f.total_degree() == Some(2)));
        for i in 0..5 {
            let (f, g) = (&polys[i], &polys[i + 5]);
            assert_eq!(coeffs(f), coeffs(g));
            assert!((0..4).all(|j| !f.uses_var(4 + j) && !g.uses_var(j)));
        }
    }

    #[test]
    fn ps_is_deterministic_per_seed() {
        let a = gen_ps(5, field(), &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = gen_ps(5, field(), &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let c = gen_ps(5, field(), &mut ChaCha8Rng::seed_from_u64(10)).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_ne!(a.to_text(), c.to_text());
        assert!(gen_ps(2, field(), &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn sos_shape() {
        let s = gen_sos(4, 2, field(), &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let polys = s.parsed().unwrap();
        assert_eq!(polys.len(), 2);
        assert_eq!(polys[0].total_degree(), Some(4));
        assert_eq!(polys[1].total_degree(), Some(3));
        let s = gen_sos(5, 3, field(), &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(s.parsed().unwrap().len(), 3);
        assert!(gen_sos(0, 2, field(), &mut ChaCha8Rng::seed_from_u64(1)).is_err());
        assert!(gen_sos(1, 1, field(), &mut ChaCha8Rng::seed_from_u64(1)).is_err());
    }

    #[test]
    fn sos_partials_vanish_mod_small_p() {
        // over GF(3) the derivative of x2^3 vanishes term-wise
        let field = PrimeField::new(3).unwrap();
        let s = gen_sos(1, 2, field, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let polys = s.parsed().unwrap();
        let f = &polys[0];
        assert_eq!(polys[1], f.derivative(1));
        assert!(polys[1].terms().iter().all(|t| t.mono.exponent(1) != 2));
    }
}
