//! Exact calculus on orbit spaces of finite linear group actions on `R^n`.

pub mod algebra;
pub mod error;
pub mod exterior;
pub mod golden;
pub mod groebner;
pub mod group_action;
pub mod invariants;
pub mod io;
pub mod quotient;
mod linalg;
pub mod random;

pub use error::{Error, Result};
