//! Cohomology of sums of line bundles on products of projective spaces,
//! propagation through two-term resolutions, and `H^0` of twisted exterior
//! powers of kernel bundles.

mod les;
mod table;
mod wedge;

pub use les::{les_cohom, TwoTermResolution};
pub use table::{bott, cohom_sum, euler_char, kunneth, CohomDim, CohomTable, LineBundleSum};
pub use wedge::{h0_wedge_kernel, wedge_complex_terms, wedge_domain_dim};
