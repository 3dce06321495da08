pub mod abelian;
pub mod action;
pub mod cli;
pub mod error;
pub mod gradedalg;
pub mod groebner;
pub mod lattice;
pub mod luna;
pub mod poly;

pub use error::{Error, Result};
