//! Matrices whose entries are homogeneous forms of one multidegree, and the
//! exact linear algebra behind rank and kernel computations.

mod exact;
mod matrix;
mod rank;
mod sections;

pub use exact::{
    dense_rank_mod_p, kernel_dim, rank_mod_p, rank_rational, rational_kernel_basis, SparseIntMatrix,
};
pub use matrix::{mat_mul, LinMatrix};
pub use rank::{fiberwise_rank_check, fiberwise_rank_check_with_cap, RankReport, RankStrategy, RankVerdict, DEFAULT_POINT_CAP};
pub use sections::global_sections_map;
