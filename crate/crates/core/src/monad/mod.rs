//! Monad specifications, builders and verification.
//!
//! A monad `0 -> O(-w)^alpha -A-> O^beta -B-> O(w)^gamma -> 0` is stored as
//! the pair of matrices `A` (`beta x alpha`) and `B` (`gamma x beta`) with
//! entries of multidegree `w`.

mod build;
mod spec;
mod verify;

pub use build::{
    band_monad, build_floystad, build_monad, generic_monad, lift_monad, segre_dimension, segre_substitution,
    Construction, MonadInstance, SegreSubstitution,
};
pub use spec::{display_ranks, exists_monad, which_condition, Condition, DisplayRanks, Flavor, MonadSpec};
pub use verify::{verify_monad, verify_monad_with_cap};
