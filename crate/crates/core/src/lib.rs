//! Exact computations for Z^d-odometers presented by groups
//! `Z^d ⊆ H ⊆ Q^d`: finite approximants, first cohomology and its trace,
//! co-invariants, and deciders for conjugacy, isomorphism, continuous orbit
//! equivalence and orbit equivalence.

pub mod arith;
pub mod classify;
pub mod cli;
pub mod cohomology;
pub mod dsl;
pub mod error;
pub mod hgroup;
pub mod linalg;
pub mod odometer;
pub mod rigid;
pub mod suite;

pub use error::{Error, Result};
