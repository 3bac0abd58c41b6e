//! Exact computations with Nichols algebras of diagonal type.
//!
//! Starting from a braiding matrix `q_ij` of cyclotomic numbers the crate
//! builds the Weyl groupoid and a convex order on the positive roots, the
//! Nichols algebra degree by degree, PBW root vectors, the skew-Hopf pairing
//! and the quantum double `u(χ)`, and finally R-matrices both on tensor
//! products of highest-weight modules and in factorized universal form.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod double;
pub mod exactnum;
pub mod freealg;
pub mod hwmod;
pub mod linalg;
pub mod nichols;
pub mod pairing;
pub mod qcombin;
pub mod rmatrix;
pub mod weylgpd;

pub use error::{Error, Result};
pub use exactnum::{Cyclotomic, Field, Order};
