//! Numerical laboratory for Möbius invariants of conformally parametrized
//! tori in the conformal 3- and 4-sphere (lightcone model), the
//! Davey-Stewartson flow on them, and residual-based classification of
//! stationary, strongly isothermic and constrained Willmore tori.

pub mod error;
pub mod field;
pub mod grid;
pub mod minkowski;
pub mod spectral;

pub use error::{Error, Result};
