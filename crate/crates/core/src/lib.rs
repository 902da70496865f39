//! Belief-function evidence and conflict-based troll detection.
//!
//! Messages of a discussion thread carry basic belief assignments over
//! `{Off-topic, Senseless, Topic_1..Topic_N}`. Each message is scored by its
//! inclusion-based conflict with everything other users posted before it,
//! users are scored by the mean over their messages, and 2-means on those
//! scores separates trolls (high center) from everyone else.
//!
//! The numeric code is generic over [`Scalar`] (`f64` and `f32`); the
//! aliases below fix the common choice.

pub mod belief;
pub mod clustering;
pub mod conflict;
pub mod error;
pub mod pipeline;
pub mod scalar;
pub mod simulator;

pub use belief::{Frame, MassFunction, SubsetId};
pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Mass = MassFunction<f64>;
pub type Mass32 = MassFunction<f32>;
pub type Thread = pipeline::Thread<f64>;
pub type Thread32 = pipeline::Thread<f32>;
pub type Report = pipeline::ConflictReport<f64>;
pub type Report32 = pipeline::ConflictReport<f32>;
