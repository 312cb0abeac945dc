//! Exact commutative algebra: Gröbner bases, syzygies, Koszul homology,
//! colon ideals, free resolutions and integral-closure certificates.

pub mod closure;
pub mod corpus;
pub mod scenarios;
pub mod deadline;
pub mod error;
pub mod groebner;
pub mod koszul;
pub mod modops;
pub mod parallel;
pub mod polyring;
pub mod resolutions;
pub mod text;

pub use error::{Error, Result};
