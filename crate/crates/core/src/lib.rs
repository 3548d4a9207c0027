//! Stability of rank-1 degree-0 sheaves on the degenerate fibers of an
//! elliptic fibration, and the Jacobian fiber each of them produces.
//!
//! - [`curve_model`]: supported Kodaira fibers as dual graphs.
//! - [`stability`]: the multidegree rule, the subcurve oracle, Jordan-Hölder
//!   graded objects and exhaustive stratification.
//! - [`jacobian`]: the Jacobian fiber type, the `E_p` family of moduli points
//!   and reports over a whole fibration.
//! - [`ingest`]: Weierstrass families over a one-parameter base and their
//!   reduction types.

pub mod curve_model;
pub mod ingest;
pub mod jacobian;
pub mod stability;
