//! The de Rham–Witt complex at desk scale: canonical words with their
//! operator calculus, Kähler differentials as the level-one case, bounded
//! presentations reduced by Howell form, and a checker for the axioms of a
//! Witt complex.

pub mod expr;
pub mod instance;
pub mod kahler;
pub mod presentation;
pub mod word;

pub use expr::{evaluate, parse_expression};
pub use instance::{axioms_check, presentation_self_check, AxiomCheck, AxiomReport, DegenerateInstance, KahlerInstance, WittComplexInstance};
pub use kahler::{kahler_differentials, KahlerForm, KahlerModule};
pub use presentation::{
    eta_evaluate, fd_power_reduce, lambda_injectivity, lambda_of, lambda_teich, level1_restriction, level_one_dimensions,
    witt_components, BoundedPresentation, DrwRing, PresentationParams, Verdict,
};
pub use word::{DRWExpression, Factor, WittWord};
