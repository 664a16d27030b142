//! Fixed points, critical constants, contraction certificates, weighted
//! measures and the small-base atlas.

pub mod atlas;
pub mod certificate;
pub mod constants;
pub mod fixed_points;
pub mod measure;
pub mod roots;
pub mod suitability;

pub use atlas::{atlas_build, atlas_membership, Atlas, Membership, OpenInterval, Witness};
pub use certificate::{
    certify_pow, certify_quad, certify_quad_with_lambda, CertificatePow, CertificateQuad, GridSpec,
};
pub use constants::{
    constants_ab, pow_family_f, quad_range_endpoints, scan_quad_extended, Constants,
};
pub use fixed_points::{
    minus_fixed_point, plus_fixed_points, two_cycle, MinusFixedPoint, PlusFixedPoints, TwoCycle,
};
pub use measure::{contraction_check, phi_measure, ContractionCheck, PhiFamily};
pub use suitability::{suitability_report, Suitability};
