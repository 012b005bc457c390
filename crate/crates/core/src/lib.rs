//! Exact arithmetic for noncommutative Laurent polynomials in two free
//! variables, and machinery for the rank-2 noncommutative cluster recursions
//! of affine type `(2,2)`, `(1,4)` and `(4,1)`.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod freegroup;
pub mod ncpoly;
pub mod pathmodel;
pub mod verify;

pub use error::{Error, Result};
pub use freegroup::{Gen, Word};
pub use ncpoly::{CommPoly, NCPoly, QPoly};
