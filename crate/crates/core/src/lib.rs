//! Exact computation of relative Severi degrees of plane curves.
//!
//! Two independent routes are provided. [`floor`] sums over floor diagrams and
//! their markings directly. [`assembly`] builds the relative node polynomial
//! from templates ([`template`]) and extended templates ([`ext`]). The
//! decomposition maps linking the two live in [`decompose`].

#![no_std]

extern crate alloc;

pub mod assembly;
pub mod decompose;
pub mod error;
pub mod ext;
pub mod floor;
pub mod poly;
pub mod poset;
pub mod seq;
pub mod template;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
