//! Zero-cycles on `𝔸¹`, the relative Chow group of `(ℙ¹, D)` and its Witt
//! vector normal form.

pub mod cycle;
pub mod function;
pub mod hasse_arf;
pub mod homotopy;
pub mod point;
pub mod samples;

pub use cycle::ZeroCycle;
pub use function::{chow_reduce, divisor_of, is_admissible, ChowClass, Place, QDivisorP1, RationalFunctionP1};
pub use hasse_arf::{hasse_arf_check, HasseArfReport};
pub use homotopy::{check_graph, graph_corpus, GraphBoundaryCheck};
pub use point::{factor_over_field, ClosedPoint};
