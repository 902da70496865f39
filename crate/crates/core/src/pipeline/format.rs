//! JSON thread file format.
//!
//! ```json
//! { "topic_count": 2, "relevant_topic": 1,
//!   "users": ["U1", "U2"],
//!   "messages": [ { "rank": 1, "author": "U1",
//!                   "bba": [ {"set": ["Topic_1"], "mass": 0.9732},
//!                            {"set": ["Off-topic", "Senseless", "Topic_1", "Topic_2"], "mass": 0.0268} ] } ] }
//! ```

use serde::{Deserialize, Serialize};

use super::thread::{Message, MessageFrame, Thread, UserId};
use crate::belief::MassFunction;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FocalRecord {
    pub set: Vec<String>,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MessageRecord {
    pub rank: usize,
    pub author: String,
    pub bba: Vec<FocalRecord>,
}

/// PRNG provenance written by the simulator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub algorithm: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreadFile {
    pub topic_count: usize,
    pub relevant_topic: usize,
    pub users: Vec<String>,
    pub messages: Vec<MessageRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorInfo>,
}

impl ThreadFile {
    pub fn from_thread<T: Scalar>(thread: &Thread<T>, generator: Option<GeneratorInfo>) -> Self {
        let frame = thread.frame().frame();
        ThreadFile {
            topic_count: thread.frame().topic_count(),
            relevant_topic: thread.frame().relevant_topic(),
            users: thread.users().iter().map(|u| u.to_string()).collect(),
            messages: thread
                .messages()
                .iter()
                .map(|m| MessageRecord {
                    rank: m.rank,
                    author: m.author.to_string(),
                    bba: m
                        .bba
                        .focal_elements()
                        .iter()
                        .map(|&(s, mass)| FocalRecord {
                            set: frame.labels_of(s).into_iter().map(String::from).collect(),
                            mass: mass.as_f64(),
                        })
                        .collect(),
                })
                .collect(),
            generator,
        }
    }

    /// Validates the file into a thread.
    pub fn to_thread<T: Scalar>(&self) -> Result<Thread<T>> {
        let frame = MessageFrame::new(self.topic_count, self.relevant_topic)?;
        let messages = self
            .messages
            .iter()
            .map(|record| {
                let assignments = record
                    .bba
                    .iter()
                    .map(|f| Ok((frame.frame().subset(&f.set)?, T::lit(f.mass))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Message {
                    author: UserId::from(record.author.as_str()),
                    rank: record.rank,
                    bba: MassFunction::new(frame.frame(), assignments)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let users = self.users.iter().map(|u| UserId::from(u.as_str())).collect();
        Thread::new(frame, users, messages)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("thread file serializes");
        text.push('\n');
        text
    }
}
