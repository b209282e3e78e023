//! Exact arithmetic for monomial symmetric polynomials at roots of unity and
//! for powers of the cyclic group determinant.

pub mod cyclotomic;
pub mod error;
pub mod groupdet;
pub mod json;
pub mod msp;
pub mod partitions;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
