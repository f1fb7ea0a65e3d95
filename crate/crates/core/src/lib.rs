//! Exact symbolic verification engine for higher Chern-Simons structures
//! over differential crossed modules and differential 2-crossed modules.
//!
//! Everything is computed over exact rational numbers: differential forms
//! have polynomial coefficients, algebra data is given by structure
//! constants, and every identity offered by the library is checked to be
//! literally zero rather than small.

pub mod algebra;
pub mod avform;
pub mod catalog;
pub mod chern;
pub mod error;
pub mod gauge;
pub mod genform;
pub mod linalg;
pub mod modfile;
pub mod mutate;
pub mod pairing;
pub mod poly;
pub mod rat;
pub mod rng;
pub mod sform;
pub mod tpoly;
pub mod xi;

pub use error::{Error, Result};
pub use rat::Rat;
