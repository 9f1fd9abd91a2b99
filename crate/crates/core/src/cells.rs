//! Affine cells `X = V(F) \ V(∏G)`.
//!
//! A cell keeps its inequation as a list of factors `G`, and every saturation
//! by `∏G` runs factor by factor. Two representations exist:
//!
//! * [`Backend::Gb`]: `F` is the reduced grevlex basis of the distinguished
//!   ideal `I(X)`, kept saturated by every factor at all times.
//! * [`Backend::Witness`]: `F` is a plain generator list whose saturation is
//!   postponed. The cell carries its dimension `d` and a witness `W`, the
//!   reduced basis of `I(X ∩ L)` for a random affine subspace `L` of
//!   codimension `d`. Radical-membership and properness questions are
//!   answered on `W`, which is correct for a generic choice of `L`.

use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger_in, dimension, quotient_degree, radical_member, saturate, saturate_by_all_in, GroebnerBasis,
};
use crate::monomial::MonomialOrder;
use crate::poly::{random_affine_forms, Polynomial, Ring};

/// Cell representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Gb,
    #[default]
    Witness,
}

#[derive(Clone, Debug)]
enum Repr {
    Gb {
        basis: GroebnerBasis,
    },
    Witness {
        gens: Vec<Polynomial>,
        /// `⟨gens⟩` is already saturated by the first `saturated` factors.
        saturated: usize,
        witness: GroebnerBasis,
        dim: usize,
        forms: Vec<Polynomial>,
        basis: OnceLock<GroebnerBasis>,
    },
}

/// A locally closed set `V(F) \ V(∏G)` over a grevlex polynomial ring.
#[derive(Clone, Debug)]
pub struct AffineCell {
    ring: Ring,
    factors: Vec<Polynomial>,
    repr: Repr,
}

/// Attempts at drawing a generic witness subspace before giving up.
const WITNESS_DRAWS: usize = 32;

fn grevlex(ring: Ring) -> Ring {
    ring.with_order(MonomialOrder::Grevlex)
}

fn check_ring(ring: Ring, f: &Polynomial) -> Result<()> {
    if f.ring().nvars != ring.nvars || f.ring().field != ring.field {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// Draws `d` random affine forms `J` and returns the reduced basis of
/// `⟨gens ∪ J⟩` saturated successively by each factor, together with `J`.
pub fn make_witness<R: Rng + ?Sized>(
    ring: Ring,
    gens: &[Polynomial],
    factors: &[Polynomial],
    d: usize,
    rng: &mut R,
) -> Result<(GroebnerBasis, Vec<Polynomial>)> {
    let ring = grevlex(ring);
    let forms = random_affine_forms(ring, d, rng);
    let mut input: Vec<Polynomial> = gens.iter().map(|g| g.with_order(ring.order)).collect();
    input.extend(forms.iter().cloned());
    let w = saturate_by_all_in(ring, &input, factors)?;
    Ok((w, forms))
}

impl AffineCell {
    /// The whole affine space `V(∅; 1)`.
    pub fn full_space<R: Rng + ?Sized>(ring: Ring, backend: Backend, rng: &mut R) -> Result<Self> {
        let ring = grevlex(ring);
        if ring.nvars == 0 {
            return Err(Error::InvalidArgument(
                "the ambient space needs at least one variable".into(),
            ));
        }
        let repr = match backend {
            Backend::Gb => Repr::Gb {
                basis: GroebnerBasis::zero(ring),
            },
            Backend::Witness => {
                // n random affine forms meet in one point unless they are dependent
                let mut draw = make_witness(ring, &[], &[], ring.nvars, rng)?;
                let mut draws = 1;
                while draw.0.is_unit() || dimension(&draw.0)? != 0 {
                    if draws == WITNESS_DRAWS {
                        return Err(Error::NoGenericSubspace(WITNESS_DRAWS));
                    }
                    draw = make_witness(ring, &[], &[], ring.nvars, rng)?;
                    draws += 1;
                }
                let (witness, forms) = draw;
                Repr::Witness {
                    gens: Vec::new(),
                    saturated: 0,
                    witness,
                    dim: ring.nvars,
                    forms,
                    basis: OnceLock::new(),
                }
            }
        };
        Ok(AffineCell {
            ring,
            factors: Vec::new(),
            repr,
        })
    }

    /// A basis-backed cell from generators and factors; the generators are
    /// saturated by the factors here.
    pub fn gb_from_parts(ring: Ring, gens: &[Polynomial], factors: Vec<Polynomial>) -> Result<Self> {
        let ring = grevlex(ring);
        for f in gens.iter().chain(&factors) {
            check_ring(ring, f)?;
        }
        let factors: Vec<Polynomial> = factors.iter().map(|g| g.with_order(ring.order)).collect();
        let basis = saturate_by_all_in(ring, gens, &factors)?;
        Ok(AffineCell {
            ring,
            factors,
            repr: Repr::Gb { basis },
        })
    }

    /// A witness-backed cell of claimed dimension `d`, with a fresh witness.
    pub fn witness_from_parts<R: Rng + ?Sized>(
        ring: Ring,
        gens: Vec<Polynomial>,
        factors: Vec<Polynomial>,
        d: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let ring = grevlex(ring);
        for f in gens.iter().chain(&factors) {
            check_ring(ring, f)?;
        }
        if factors.iter().any(|g| g.is_zero()) {
            return Err(Error::ZeroSaturator);
        }
        let gens: Vec<Polynomial> = gens.iter().map(|g| g.with_order(ring.order)).collect();
        let factors: Vec<Polynomial> = factors.iter().map(|g| g.with_order(ring.order)).collect();
        let (witness, forms) = make_witness(ring, &gens, &factors, d, rng)?;
        Ok(AffineCell {
            ring,
            factors,
            repr: Repr::Witness {
                gens,
                saturated: 0,
                witness,
                dim: d,
                forms,
                basis: OnceLock::new(),
            },
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn backend(&self) -> Backend {
        match self.repr {
            Repr::Gb { .. } => Backend::Gb,
            Repr::Witness { .. } => Backend::Witness,
        }
    }

    /// The inequation factors `G`.
    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    /// The stored equations: the basis of `I(X)` for the basis backend, the
    /// unsaturated generator list for the witness backend.
    pub fn equations(&self) -> &[Polynomial] {
        match &self.repr {
            Repr::Gb { basis } => basis.gens(),
            Repr::Witness { gens, .. } => gens,
        }
    }

    /// The witness basis, on the witness backend.
    pub fn witness(&self) -> Option<&GroebnerBasis> {
        match &self.repr {
            Repr::Gb { .. } => None,
            Repr::Witness { witness, .. } => Some(witness),
        }
    }

    /// The affine forms cutting out the witness subspace.
    pub fn witness_forms(&self) -> &[Polynomial] {
        match &self.repr {
            Repr::Gb { .. } => &[],
            Repr::Witness { forms, .. } => forms,
        }
    }

    /// Dimension: tracked on the witness backend, computed from the basis otherwise.
    pub fn dim(&self) -> Result<usize> {
        match &self.repr {
            Repr::Gb { basis } => dimension(basis),
            Repr::Witness { witness, dim, .. } => {
                if witness.is_unit() {
                    Err(Error::EmptyVariety)
                } else {
                    Ok(*dim)
                }
            }
        }
    }

    /// True once the cell's basis is known without further computation.
    pub fn has_basis(&self) -> bool {
        match &self.repr {
            Repr::Gb { .. } => true,
            Repr::Witness { basis, .. } => basis.get().is_some(),
        }
    }

    /// `X ∩ V(f)` for an intersection known to be proper.
    pub fn intersect_proper<R: Rng + ?Sized>(&self, f: &Polynomial, rng: &mut R) -> Result<Self> {
        check_ring(self.ring, f)?;
        let f = f.with_order(self.ring.order);
        match &self.repr {
            Repr::Gb { basis } => {
                let mut gens = basis.gens().to_vec();
                gens.push(f);
                let basis = saturate_by_all_in(self.ring, &gens, &self.factors)?;
                Ok(self.with_repr(Repr::Gb { basis }))
            }
            Repr::Witness { gens, dim, .. } => {
                if *dim == 0 {
                    return Err(Error::ZeroDimensionalCut);
                }
                let mut gens = gens.clone();
                gens.push(f);
                let (witness, forms) = make_witness(self.ring, &gens, &self.factors, dim - 1, rng)?;
                Ok(self.with_repr(Repr::Witness {
                    gens,
                    saturated: 0,
                    witness,
                    dim: dim - 1,
                    forms,
                    basis: OnceLock::new(),
                }))
            }
        }
    }

    /// `X ∩ V(H)` when `V(H)` cuts out a union of components of `X`.
    pub fn intersect_components(&self, h: &[Polynomial]) -> Result<Self> {
        for f in h {
            check_ring(self.ring, f)?;
        }
        if h.is_empty() {
            return Ok(self.clone());
        }
        let h: Vec<Polynomial> = h.iter().map(|f| f.with_order(self.ring.order)).collect();
        match &self.repr {
            Repr::Gb { basis } => {
                let mut gens = basis.gens().to_vec();
                gens.extend(h);
                let basis = saturate_by_all_in(self.ring, &gens, &self.factors)?;
                Ok(self.with_repr(Repr::Gb { basis }))
            }
            Repr::Witness {
                gens,
                witness,
                dim,
                forms,
                ..
            } => {
                let mut wgens = witness.gens().to_vec();
                wgens.extend(h.iter().cloned());
                let witness = buchberger_in(self.ring, &wgens);
                let mut gens = gens.clone();
                gens.extend(h);
                Ok(self.with_repr(Repr::Witness {
                    gens,
                    saturated: 0,
                    witness,
                    dim: *dim,
                    forms: forms.clone(),
                    basis: OnceLock::new(),
                }))
            }
        }
    }

    /// `X \ V(f)`.
    pub fn subtract_hypersurface(&self, f: &Polynomial) -> Result<Self> {
        check_ring(self.ring, f)?;
        if f.is_zero() {
            return Err(Error::ZeroSaturator);
        }
        let f = f.with_order(self.ring.order);
        let mut factors = self.factors.clone();
        factors.push(f.clone());
        let repr = match &self.repr {
            Repr::Gb { basis } => Repr::Gb {
                basis: saturate(basis.gens(), &f)?,
            },
            Repr::Witness {
                gens,
                saturated,
                witness,
                dim,
                forms,
                basis,
            } => {
                let witness = saturate(witness.gens(), &f)?;
                // a computed basis is the generator list saturated by every
                // current factor; reuse it so only `f` remains to be applied
                let (gens, saturated) = match basis.get() {
                    Some(b) => (b.gens().to_vec(), self.factors.len()),
                    None => (gens.clone(), *saturated),
                };
                Repr::Witness {
                    gens,
                    saturated,
                    witness,
                    dim: *dim,
                    forms: forms.clone(),
                    basis: OnceLock::new(),
                }
            }
        };
        Ok(AffineCell {
            ring: self.ring,
            factors,
            repr,
        })
    }

    /// `f` vanishes on `X` (equivalently on its closure).
    pub fn rad_member(&self, f: &Polynomial) -> bool {
        let f = f.with_order(self.ring.order);
        match &self.repr {
            Repr::Gb { basis } => radical_member(&f, basis),
            Repr::Witness { witness, .. } => radical_member(&f, witness),
        }
    }

    /// Reduced grevlex basis of `I(X)`: the generators saturated by every
    /// factor. Computed at most once on the witness backend.
    pub fn basis(&self) -> &GroebnerBasis {
        match &self.repr {
            Repr::Gb { basis } => basis,
            Repr::Witness {
                gens, saturated, basis, ..
            } => basis.get_or_init(|| {
                saturate_by_all_in(self.ring, gens, &self.factors[*saturated..]).expect("cell factors are nonzero")
            }),
        }
    }

    /// `X ∩ V(f)` is empty or has dimension `dim X − 1`, for equidimensional `X`.
    ///
    /// The witness backend checks `X ∩ L ∩ V(f) = ∅`. The basis backend checks
    /// deterministically that `f` vanishes on no component of the closure,
    /// i.e. `(I(X) : f^∞) ⊆ rad I(X)`.
    pub fn is_proper(&self, f: &Polynomial) -> Result<bool> {
        check_ring(self.ring, f)?;
        let f = f.with_order(self.ring.order);
        match &self.repr {
            Repr::Gb { basis } => {
                if f.is_zero() {
                    return Ok(basis.is_unit());
                }
                let sat = saturate(basis.gens(), &f)?;
                Ok(sat.gens().iter().all(|h| radical_member(h, basis)))
            }
            Repr::Witness { witness, .. } => {
                let mut gens = witness.gens().to_vec();
                gens.push(f);
                Ok(buchberger_in(self.ring, &gens).is_unit())
            }
        }
    }

    /// Exact on the basis backend; generic-position correct on the witness backend.
    pub fn is_empty(&self) -> bool {
        match &self.repr {
            Repr::Gb { basis } => basis.is_unit(),
            Repr::Witness { witness, .. } => witness.is_unit(),
        }
    }

    /// `(dimension, degree)` of a nonempty equidimensional cell. The degree
    /// is the number of points of the witness counted with multiplicity in
    /// the distinguished ideal; the basis backend builds a fresh witness.
    pub fn dim_degree<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(usize, u64)> {
        if self.is_empty() {
            return Err(Error::EmptyVariety);
        }
        match &self.repr {
            Repr::Witness { witness, dim, .. } => Ok((*dim, quotient_degree(witness)?)),
            Repr::Gb { basis } => {
                let d = dimension(basis)?;
                // over small fields a random subspace can miss every point or
                // meet the closure in a curve; draw again in that case
                for _ in 0..WITNESS_DRAWS {
                    let (w, _) = make_witness(self.ring, basis.gens(), &self.factors, d, rng)?;
                    if !w.is_unit() && dimension(&w)? == 0 {
                        return Ok((d, quotient_degree(&w)?));
                    }
                }
                Err(Error::NoGenericSubspace(WITNESS_DRAWS))
            }
        }
    }

    fn with_repr(&self, repr: Repr) -> Self {
        AffineCell {
            ring: self.ring,
            factors: self.factors.clone(),
            repr,
        }
    }
}
