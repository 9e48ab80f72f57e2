//! Exact enumeration and rigorous bound verification for multiple
//! self-avoiding polygons (MSAPs) — disjoint unions of closed
//! self-avoiding loops — confined to an m×n rectangular grid.
//!
//! The crate works in the mosaic-tile picture: an MSAP corresponds
//! one-to-one with a suitably connected m×n matrix of the seven polygon
//! tiles having no connection point on the outer boundary. On top of the
//! tile algebra ([`tiles`]) sit three exact counting engines
//! ([`enumeration`]), the cling-mosaic cp-ratio machinery
//! ([`clingratios`]), and the bound formulas with their verification
//! reports ([`bounds`]). Every verified quantity is an arbitrary-precision
//! integer or an exact rational; no floating point enters any verdict.

pub mod bounds;
pub mod clingratios;
pub mod enumeration;
mod error;
pub mod tiles;

pub use error::{Error, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = num_bigint::BigUint;

/// Exact rational number; always in reduced form.
pub type ExactRational = num_rational::BigRational;
