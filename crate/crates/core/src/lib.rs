//! Exact computations with Weil algebras, infinitesimal spaces, microcubes
//! and jets of formal bundles.

pub mod error;
pub mod infinitesimal;
pub mod jets;
pub mod linalg;
pub mod microcube;
pub mod quasicolim;
pub mod random;
pub mod scalar;
pub mod verify;
pub mod weil;

pub use error::{Error, Result};
