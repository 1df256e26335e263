//! Exact verification of Witt-group identities on a pointless conic.
//!
//! The library implements, over exact rational arithmetic, the function field
//! of the conic y² = ax² + b attached to a rational quaternion division
//! algebra (a,b), its closed points and residue maps, quaternionic and
//! hermitian transfer maps between the associated Witt groups, and a
//! verification harness that certifies the expected identities (vanishing
//! composites, commuting triangles, explicit surjectivity witnesses) with
//! re-checkable certificates.

pub mod arith;
pub mod conic;
pub mod error;
pub mod field;
pub mod forms;
pub mod linalg;
pub mod maps;
pub mod quaternion;
pub mod parse;
pub mod residues;
pub mod rng;
pub mod serialize;
pub mod suite;

pub use error::{Error, Result};
