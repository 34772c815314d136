//! Jets of sections of a trivial bundle `R^p x R^q -> R^p`, symmetric
//! forms, and the affine structure relating consecutive orders.

pub mod candidate;
pub mod compare;
pub mod form;
pub mod jet;
pub mod validate;

pub use candidate::{FormCandidate, JetCandidate};
pub use compare::{form_space_dimension, jet_add, jet_diff, phi, psi, FormSpace};
pub use form::{form_basis, SymmetricForm};
pub use jet::{jet_from_section, multi_indices, BundlePoint, Jet, MultiIndex, Variant};
pub use validate::{
    line_form_solution_dimension, validate_form, validate_tangential, ConditionCheck, FormAnsatz,
    ValidationReport,
};
