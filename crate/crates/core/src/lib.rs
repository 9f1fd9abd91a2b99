//! Equidimensional decomposition of affine algebraic sets over GF(p).
//!
//! An algebraic set `V(F)` is partitioned into pairwise-disjoint,
//! equidimensional, locally closed *affine cells* `V(F) \ V(∏G)`, by feeding
//! the equations one at a time through an incremental split procedure. Cells
//! come in two representations: one carrying a Gröbner basis of its ideal,
//! and a lazy one carrying a zero-dimensional *witness* (the cell cut by a
//! random affine subspace of complementary dimension).

pub mod cells;
pub mod decomp;
pub mod error;
pub mod field;
pub mod groebner;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod verify;

pub use cells::{AffineCell, Backend};
pub use decomp::{equidim, Config, DecompositionOutput, InputOrder};
pub use error::{Error, FieldError, Result};
pub use field::{FieldElement, PrimeField, DEFAULT_PRIME};
pub use groebner::{buchberger, buchberger_in, GroebnerBasis};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, Ring};
