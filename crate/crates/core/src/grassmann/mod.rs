//! Omega matrices, Plücker coordinates and nonnegativity certificates.

pub mod omega;
pub mod plucker;

pub use omega::{build_omega_resistance, build_omega_response, OmegaForm, OmegaMatrix, ShiftOperator};
pub use plucker::{
    certify_nonnegative, connectivity_indicator, indicator_subset, is_electrical_via_grassmannian,
    is_electrical_via_grassmannian_capped, plucker, plucker_capped, plucker_coordinate, three_term_relation_holds,
    GrassmannVerdict, PluckerVector, Sign, SignCertificate, DEFAULT_PLUCKER_N_CAP,
};
