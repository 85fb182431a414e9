//! Four equivalent models of the alcoves in the `m`-fold dilation of the
//! fundamental alcove of type `A_k`, and the cyclic action they share:
//!
//! * [`affine_shi`]: alcoves as affine permutations, plus the Shi arrangement
//!   and parking-function labelings;
//! * [`cores`]: `(k+1)`-cores below a stack of rectangles;
//! * [`xposet`]: words of length `k` with the action `phi`;
//! * [`words`]: words of length `k+1` summing to `m-1`, under rotation.
//!
//! [`bijact`] builds the equivariant bijection between the last two, including
//! its inverse through partitioned words, and [`sieve`] checks the cyclic
//! sieving phenomenon in exact arithmetic.

pub mod affine_shi;
pub mod bijact;
pub mod cores;
pub mod error;
pub mod hasse;
pub mod sieve;
pub mod words;
pub mod xposet;

pub use error::{Error, Result};
pub use hasse::{Edge, HasseDiagram};
pub use sieve::{csp_check, CspReport, IntPolynomial};
pub use words::Word;
