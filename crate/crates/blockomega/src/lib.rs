//! 2-block classification of finite groups in characteristic 2 and
//! decomposition of the conjugation permutation module on involutions.
//!
//! The library enumerates a finite permutation group, computes the central
//! primitive idempotents of its group algebra over a splitting field
//! GF(2^m), classifies each block (real / defect zero), decomposes the
//! permutation module on `{t : t^2 = 1}` into indecomposable summands, and
//! checks that the projective summands biject with the real defect-zero
//! blocks. A separate module covers the symmetric-group combinatorics
//! (2-cores, Murnaghan-Nakayama character values, diagonal hooks).

pub mod blocks;
pub mod catalog;
pub mod config;
pub mod error;
pub mod gf2m;
pub mod gmodule;
pub mod permgroup;
pub mod report;
pub mod symgroup;
pub mod theorem;

pub use config::Config;
pub use error::{Error, Result};
