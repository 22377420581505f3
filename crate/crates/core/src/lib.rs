//! Computation with delta-matroids and proper set systems on small ground sets.
//!
//! Everything here is a pure function over immutable values. Ground sets are
//! limited to [`MAX_ELEMENTS`] elements and subsets are encoded as bitmasks
//! over the label order of the owning [`SetSystem`].
//!
//! ```
//! use dmkit_core::{catalog, SetSystem};
//!
//! let t1 = catalog::make_named("T1").unwrap();
//! assert!(!t1.is_delta_matroid());
//! let minor = t1.delete(2).unwrap();
//! assert!(minor.is_delta_matroid());
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bits;
pub mod canonical;
pub mod catalog;
pub mod census;
mod error;
pub mod gf2;
pub mod higgs;
pub mod latticepath;
mod linear;
pub mod matroid;
pub mod minor_scan;
pub mod setsystem;
pub mod stacks;

pub use canonical::{canonical_form, is_isomorphic, CanonicalForm};
pub use error::{Error, Result};
pub use matroid::Matroid;
pub use setsystem::{ElementStatus, FamilyBits, Mask, SeWitness, SetSystem, MAX_ELEMENTS};
