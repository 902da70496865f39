use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::belief::{Frame, MassFunction, SubsetId, MAX_FRAME_SIZE};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const OFF_TOPIC: &str = "Off-topic";
pub const SENSELESS: &str = "Senseless";

/// Label of topic `j` (1-based) in the message frame.
pub fn topic_label(j: usize) -> String {
    format!("Topic_{j}")
}

/// Frame characterizing a message: `{Off-topic, Senseless, Topic_1..Topic_N}`.
///
/// One topic is the relevant one; every other topic is a controversy topic.
#[derive(Debug, Clone)]
pub struct MessageFrame {
    topic_count: usize,
    relevant_topic: usize,
    frame: Arc<Frame>,
}

impl MessageFrame {
    pub fn new(topic_count: usize, relevant_topic: usize) -> Result<Self> {
        if topic_count == 0
            || topic_count + 2 > MAX_FRAME_SIZE
            || relevant_topic == 0
            || relevant_topic > topic_count
        {
            return Err(Error::InvalidMessageFrame {
                topic_count,
                relevant_topic,
            });
        }
        let labels = [OFF_TOPIC.to_string(), SENSELESS.to_string()]
            .into_iter()
            .chain((1..=topic_count).map(topic_label));
        Ok(MessageFrame {
            topic_count,
            relevant_topic,
            frame: Frame::new(labels)?,
        })
    }

    pub fn topic_count(&self) -> usize {
        self.topic_count
    }

    pub fn relevant_topic(&self) -> usize {
        self.relevant_topic
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn off_topic(&self) -> SubsetId {
        SubsetId::from_bits(1)
    }

    pub fn senseless(&self) -> SubsetId {
        SubsetId::from_bits(1 << 1)
    }

    /// Singleton of topic `j`, 1-based.
    pub fn topic(&self, j: usize) -> Result<SubsetId> {
        if j == 0 || j > self.topic_count {
            return Err(Error::UnknownLabel(topic_label(j)));
        }
        Ok(SubsetId::from_bits(1 << (j + 1)))
    }

    pub fn relevant(&self) -> SubsetId {
        SubsetId::from_bits(1 << (self.relevant_topic + 1))
    }

    pub fn controversy_topics(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.topic_count).filter(move |&j| j != self.relevant_topic)
    }
}

impl PartialEq for MessageFrame {
    fn eq(&self, other: &Self) -> bool {
        self.topic_count == other.topic_count && self.relevant_topic == other.relevant_topic
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UserId(String);

impl UserId {
    pub fn new(id: impl Into<String>) -> Self {
        UserId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for UserId {
    fn from(id: &str) -> Self {
        UserId(id.to_string())
    }
}

impl From<String> for UserId {
    fn from(id: String) -> Self {
        UserId(id)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Message<T> {
    pub author: UserId,
    /// 1-based position in the thread.
    pub rank: usize,
    pub bba: MassFunction<T>,
}

/// A validated discussion thread.
///
/// Messages are held in rank order; ranks are exactly `1..=M`. Every roster
/// user has posted at least once and the roster has at least two users.
#[derive(Debug, Clone, PartialEq)]
pub struct Thread<T> {
    frame: MessageFrame,
    users: Vec<UserId>,
    messages: Vec<Message<T>>,
}

impl<T: Scalar> Thread<T> {
    pub fn new(frame: MessageFrame, users: Vec<UserId>, mut messages: Vec<Message<T>>) -> Result<Self> {
        if users.len() < 2 {
            return Err(Error::InvalidThread(format!(
                "need at least 2 users, got {}",
                users.len()
            )));
        }
        for (i, user) in users.iter().enumerate() {
            if user.as_str().is_empty() || users[..i].contains(user) {
                return Err(Error::InvalidThread(format!("user id {user:?} is empty or duplicated")));
            }
        }
        messages.sort_by_key(|m| m.rank);
        for (i, message) in messages.iter().enumerate() {
            if message.rank != i + 1 {
                return Err(Error::InvalidThread(format!(
                    "ranks must be exactly 1..={}, found rank {} at position {}",
                    messages.len(),
                    message.rank,
                    i + 1
                )));
            }
            if !users.contains(&message.author) {
                return Err(Error::InvalidThread(format!(
                    "message {} is authored by {:?}, who is not in the roster",
                    message.rank, message.author
                )));
            }
            if !message.bba.frame().same_as(frame.frame()) {
                return Err(Error::InvalidThread(format!(
                    "message {} is not defined on the message frame",
                    message.rank
                )));
            }
        }
        if let Some(silent) = users.iter().find(|u| !messages.iter().any(|m| &m.author == *u)) {
            return Err(Error::InvalidThread(format!("user {silent:?} has no messages")));
        }
        Ok(Thread {
            frame,
            users,
            messages,
        })
    }

    pub fn frame(&self) -> &MessageFrame {
        &self.frame
    }

    pub fn users(&self) -> &[UserId] {
        &self.users
    }

    pub fn messages(&self) -> &[Message<T>] {
        &self.messages
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    pub fn message(&self, rank: usize) -> Result<&Message<T>> {
        rank.checked_sub(1)
            .and_then(|i| self.messages.get(i))
            .ok_or(Error::RankOutOfBounds {
                rank,
                len: self.messages.len(),
            })
    }

    pub fn has_user(&self, user: &UserId) -> bool {
        self.users.contains(user)
    }

    /// Messages of `user`, in rank order.
    pub fn messages_by<'a>(&'a self, user: &'a UserId) -> impl Iterator<Item = &'a Message<T>> + 'a {
        self.messages.iter().filter(move |m| &m.author == user)
    }
}
