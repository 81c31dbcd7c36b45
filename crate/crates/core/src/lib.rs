//! Exact computations with Witt vectors, modulus curves, finite correspondences,
//! transfers and de Rham–Witt presentations.

pub mod error;
pub mod correspondences;
pub mod drw;
pub mod exact;
pub mod modulus;
pub mod suite;
pub mod transfers;
pub mod witt;

pub use error::{Error, Result};
pub use exact::{Elem, ExactMatrix, FiniteFreeAlgebra, MPoly, PolyRing, Ring, RingElement};
pub use modulus::{ClosedPoint, QDivisorP1, RationalFunctionP1, ZeroCycle};
pub use witt::{BigWittVector, HatWittVector, PTypicalWitt};
