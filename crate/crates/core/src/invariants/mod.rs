//! Intersection numbers on products of projective spaces, slopes and
//! normalization of kernel bundles, and the stability and simplicity
//! certificate engines.

mod certify;
mod numerics;

pub use crate::certificate::{Certificate, Method, Step, StepStatus, Verdict};
pub use certify::{simplicity_certificate, stability_certificate, stability_certificate_with_cap, DEFAULT_CELL_CAP};
pub use numerics::{
    bundle_numerics, candidate_twists, delta_l, intersection_number, kernel_numerics, BundleNumerics, Polarization,
    TwistCandidates,
};
