//! Representations of the q-deformed algebras so'_q(n) and so'_q(r,s).

pub mod classify;
pub mod cli;
pub mod compactrep;
pub mod degenrep;
pub mod dump;
pub mod error;
pub mod gtbasis;
pub mod matrix;
pub mod qarith;
pub mod verify;

pub use error::{Error, Result};
