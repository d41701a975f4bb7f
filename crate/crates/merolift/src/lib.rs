//! Meromorphic modular forms attached to binary quadratic forms, their theta
//! lifts and vector-valued components, and the regularized Petersson pairing.

pub mod cli;
pub mod cx;
pub mod error;
pub mod expansion;
pub mod geometry;
pub mod lift;
pub mod pairing;
pub mod poly;
pub mod qforms;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub use geometry::{Mat2R, Mat2Z, UhpPoint};
pub use poly::Poly;
pub use qforms::{ClassData, QForm};
