//! Discussion threads and the message → user conflict aggregation.

mod aggregate;
mod format;
mod thread;

pub use aggregate::{
    analyze, analyze_with, conf_msg, conf_msg_per_user, conf_user, conf_user_with, AnalysisOptions, ClusterCenters,
    ConflictReport, MessageConflict, TrollPartition, UnprecededMessages, UserConflict,
};
pub use format::{FocalRecord, GeneratorInfo, MessageRecord, ThreadFile};
pub use thread::{topic_label, Message, MessageFrame, Thread, UserId, OFF_TOPIC, SENSELESS};
