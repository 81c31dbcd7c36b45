//! Exact arithmetic: runtime rings, polynomials, series, matrices, resultants,
//! factorisation and Howell forms.

pub mod algebra;
pub mod arith;
pub mod fp_poly;
pub mod howell;
pub mod matrix;
pub mod mpoly;
pub mod parse;
pub mod qfactor;
pub mod resultant;
pub mod ring;
pub mod series;
pub mod upoly;

pub use algebra::FiniteFreeAlgebra;
pub use fp_poly::factor_monic;
pub use howell::{howell_form, Howell, HowellCertificate};
pub use matrix::ExactMatrix;
pub use mpoly::MPoly;
pub use parse::{parse_elem, parse_ring};
pub use qfactor::factor_monic_q;
pub use resultant::{resultant, resultant_upoly};
pub use ring::{Elem, PolyRing, Ring, RingElement};
pub use series::{series_invert, TruncatedSeries};
pub use upoly::UPoly;
