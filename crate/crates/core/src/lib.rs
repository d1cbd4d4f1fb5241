//! Mixed ω-algebraic systems over star-omega semirings.

mod buchi;
pub mod checks;
pub mod error;
mod fixpoint;
pub mod format;
pub mod gnf;
pub mod matrix;
pub mod pda;
pub mod semiring;
pub mod series;
pub mod system;

pub use error::{Error, Result};
pub use semiring::{Ext, Semiring};
