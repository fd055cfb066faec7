//! Cyclotomic-aware representations of integer polynomial factorizations.
//!
//! The crate provides exact polynomial arithmetic ([`poly`]), cyclotomic
//! generation and detection ([`cyclotomic`]), four factorization
//! vocabularies ([`factorrep`]), a bit-exact binary codec with size
//! accounting ([`codec`]) and the command-line front end ([`cli`]).

pub mod error;
pub mod numtheory;
pub mod poly;
pub mod cyclotomic;
pub mod factorrep;
pub mod codec;
pub mod cli;

pub use error::{Error, Result};
pub use poly::{DensePoly, SparsePoly};
