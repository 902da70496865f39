//! Frames of discernment, basic belief assignments, combination rules and
//! the Jousselme distance.

mod combine;
mod distance;
mod frame;
mod mass;

pub use combine::{combine_conjunctive, combine_dempster, combine_disjunctive, global_conflict};
pub use distance::jousselme_distance;
pub use frame::{jaccard, Frame, JaccardMatrix, SubsetId, DENSE_JACCARD_MAX, MAX_FRAME_SIZE};
pub use mass::MassFunction;
