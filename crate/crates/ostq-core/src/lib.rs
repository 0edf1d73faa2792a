//! Steiner triple systems, their orientations, and the quasigroups they induce.
//!
//! The crate builds Steiner triple systems, equips them with block
//! orientations, derives oriented and canonical oriented Steiner quasigroups
//! as factor-system extensions of `Z2` / `Z3`, checks quasigroup identities
//! by exhaustive evaluation, computes regular-permutation groups, and runs a
//! quasigroup-extension cipher on top of the canonical construction.
//!
//! Everything is table-driven and allocation-only; the crate is `no_std`
//! apart from its tests.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cipher;
pub mod extension;
pub mod laws;
pub mod quasigroup;
pub mod sts;

mod perm;

pub use extension::ExtensionTable;
pub use quasigroup::CayleyTable;
pub use sts::{OrientedTripleSystem, Sign, TripleSystem};
