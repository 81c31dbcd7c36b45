//! Big Witt vectors, the extension `Ŵ`, universal tables and p-typical quotients.

pub mod big;
pub mod hat;
pub mod ptypical;
pub mod universal;

pub use big::BigWittVector;
pub use hat::HatWittVector;
pub use ptypical::{idempotent_apply, PTypicalWitt};
pub use universal::{frobenius_table, star_table, UniversalFrobeniusTable, UniversalStarTable};
