//! Conflict aggregation from message pairs up to users.
//!
//! For the message at rank `k` by user `i`:
//!
//! * against one other user `j`: the mean conflict with the `NP_j` messages
//!   `j` posted before rank `k`;
//! * against the thread: the per-user values weighted by `NP_j / NP`, where
//!   `NP` counts all earlier messages by users other than `i`;
//!
//! and a user's score is the mean of their per-message values.

use serde::{Deserialize, Serialize};

use super::thread::{Thread, UserId};
use crate::clustering::kmeans2;
use crate::conflict::conflict;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// How messages with no earlier message from another user enter a user's
/// average.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnprecededMessages {
    /// They score 0 and count in the divisor.
    #[default]
    CountAsZero,
    /// They are left out of the average. A user with only such messages
    /// scores 0.
    Exclude,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub unpreceded: UnprecededMessages,
}

/// Mean conflict between the message at `rank` and the earlier messages of
/// `user`.
pub fn conf_msg_per_user<T: Scalar>(thread: &Thread<T>, rank: usize, user: &UserId) -> Result<T> {
    let message = thread.message(rank)?;
    if !thread.has_user(user) {
        return Err(Error::UnknownUser(user.to_string()));
    }
    if &message.author == user {
        return Err(Error::SameUser(user.to_string()));
    }
    let mut sum = T::zero();
    let mut count = 0usize;
    for prior in thread.messages()[..rank - 1].iter().filter(|m| &m.author == user) {
        sum = sum + conflict(&message.bba, &prior.bba)?.value();
        count += 1;
    }
    if count == 0 {
        return Err(Error::NoPriorMessages(user.to_string()));
    }
    Ok(sum / T::lit(count as f64))
}

/// Conflict of the message at `rank` with every earlier message by other
/// users, together with the number of such messages (`NP`).
fn conf_msg_counted<T: Scalar>(thread: &Thread<T>, rank: usize) -> Result<(T, usize)> {
    let message = thread.message(rank)?;
    let prior = &thread.messages()[..rank - 1];
    let counts: Vec<(&UserId, usize)> = thread
        .users()
        .iter()
        .filter(|u| **u != message.author)
        .map(|u| (u, prior.iter().filter(|m| &m.author == u).count()))
        .filter(|&(_, n)| n > 0)
        .collect();
    let total: usize = counts.iter().map(|&(_, n)| n).sum();
    if total == 0 {
        return Ok((T::zero(), 0));
    }
    let mut value = T::zero();
    for (user, n) in counts {
        let weight = T::lit(n as f64) / T::lit(total as f64);
        value = value + weight * conf_msg_per_user(thread, rank, user)?;
    }
    Ok((value, total))
}

/// Conflict of the message at `rank` with the thread before it. Zero when
/// no other user has posted yet.
pub fn conf_msg<T: Scalar>(thread: &Thread<T>, rank: usize) -> Result<T> {
    conf_msg_counted(thread, rank).map(|(v, _)| v)
}

/// Global conflict of `user`: the mean `conf_msg` over their messages.
pub fn conf_user<T: Scalar>(thread: &Thread<T>, user: &UserId) -> Result<T> {
    conf_user_with(thread, user, &AnalysisOptions::default())
}

pub fn conf_user_with<T: Scalar>(thread: &Thread<T>, user: &UserId, options: &AnalysisOptions) -> Result<T> {
    if !thread.has_user(user) {
        return Err(Error::UnknownUser(user.to_string()));
    }
    let scored = thread
        .messages_by(user)
        .map(|m| conf_msg_counted(thread, m.rank))
        .collect::<Result<Vec<_>>>()?;
    Ok(user_average(&scored, options.unpreceded))
}

fn user_average<T: Scalar>(scored: &[(T, usize)], policy: UnprecededMessages) -> T {
    let (sum, count) = scored
        .iter()
        .filter(|(_, np)| policy == UnprecededMessages::CountAsZero || *np > 0)
        .fold((T::zero(), 0usize), |(s, c), &(v, _)| (s + v, c + 1));
    if count == 0 {
        T::zero()
    } else {
        sum / T::lit(count as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MessageConflict<T> {
    pub rank: usize,
    pub author: UserId,
    /// Earlier messages by other users (`NP`).
    pub prior_messages: usize,
    pub conf_msg: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserConflict<T> {
    pub user: UserId,
    pub messages: usize,
    pub conf_user: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrollPartition {
    pub trolls: Vec<UserId>,
    pub others: Vec<UserId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterCenters<T> {
    pub trolls: T,
    pub others: T,
}

/// Result of running the whole detection on a thread.
///
/// `per_message` is in rank order and `per_user` in roster order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConflictReport<T> {
    pub per_message: Vec<MessageConflict<T>>,
    pub per_user: Vec<UserConflict<T>>,
    pub partition: TrollPartition,
    pub centers: ClusterCenters<T>,
    pub kmeans_iterations: usize,
}

impl<T: Scalar> ConflictReport<T> {
    pub fn conf_user(&self, user: &UserId) -> Option<T> {
        self.per_user.iter().find(|u| &u.user == user).map(|u| u.conf_user)
    }

    pub fn is_troll(&self, user: &UserId) -> bool {
        self.partition.trolls.contains(user)
    }
}

pub fn analyze<T: Scalar>(thread: &Thread<T>) -> Result<ConflictReport<T>> {
    analyze_with(thread, &AnalysisOptions::default())
}

/// Scores every message and user, then splits the users with 2-means; the
/// cluster with the larger center holds the trolls.
pub fn analyze_with<T: Scalar>(thread: &Thread<T>, options: &AnalysisOptions) -> Result<ConflictReport<T>> {
    let per_message = thread
        .messages()
        .iter()
        .map(|m| {
            let (value, np) = conf_msg_counted(thread, m.rank)?;
            Ok(MessageConflict {
                rank: m.rank,
                author: m.author.clone(),
                prior_messages: np,
                conf_msg: value,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let per_user: Vec<UserConflict<T>> = thread
        .users()
        .iter()
        .map(|user| {
            let scored: Vec<(T, usize)> = per_message
                .iter()
                .filter(|m| &m.author == user)
                .map(|m| (m.conf_msg, m.prior_messages))
                .collect();
            UserConflict {
                user: user.clone(),
                messages: scored.len(),
                conf_user: user_average(&scored, options.unpreceded),
            }
        })
        .collect();

    let values: Vec<(UserId, T)> = per_user.iter().map(|u| (u.user.clone(), u.conf_user)).collect();
    let split = kmeans2(&values)?;
    Ok(ConflictReport {
        per_message,
        per_user,
        partition: TrollPartition {
            trolls: split.high,
            others: split.low,
        },
        centers: ClusterCenters {
            trolls: split.center_high,
            others: split.center_low,
        },
        kmeans_iterations: split.iterations,
    })
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::belief::{MassFunction, SubsetId};
    use crate::pipeline::thread::{Message, MessageFrame};

    fn certain(frame: &MessageFrame, subset: SubsetId) -> MassFunction<f64> {
        MassFunction::certain(frame.frame(), subset).unwrap()
    }

    fn build(frame: &MessageFrame, posts: &[(&str, SubsetId)]) -> Thread<f64> {
        let mut users: Vec<UserId> = Vec::new();
        let messages = posts
            .iter()
            .enumerate()
            .map(|(i, &(author, subset))| {
                if !users.iter().any(|u| u.as_str() == author) {
                    users.push(author.into());
                }
                Message {
                    author: author.into(),
                    rank: i + 1,
                    bba: certain(frame, subset),
                }
            })
            .collect();
        Thread::new(frame.clone(), users, messages).unwrap()
    }

    #[test]
    fn per_user_conflict_cases() {
        let mf = MessageFrame::new(2, 1).unwrap();
        let (t1, t2) = (mf.topic(1).unwrap(), mf.topic(2).unwrap());

        let same = build(&mf, &[("A", t1), ("B", t1)]);
        assert_eq!(conf_msg_per_user(&same, 2, &"A".into()).unwrap(), 0.0);

        let opposed = build(&mf, &[("A", t1), ("B", t2)]);
        assert_abs_diff_eq!(conf_msg_per_user(&opposed, 2, &"A".into()).unwrap(), 1.0, epsilon = 1e-12);

        let mixed = build(&mf, &[("A", t2), ("A", t1), ("B", t2)]);
        assert_abs_diff_eq!(conf_msg_per_user(&mixed, 3, &"A".into()).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn per_user_conflict_errors() {
        let mf = MessageFrame::new(2, 1).unwrap();
        let t1 = mf.topic(1).unwrap();
        let thread = build(&mf, &[("A", t1), ("B", t1), ("A", t1)]);
        assert!(matches!(conf_msg_per_user(&thread, 1, &"B".into()), Err(Error::NoPriorMessages(_))));
        assert!(matches!(conf_msg_per_user(&thread, 3, &"A".into()), Err(Error::SameUser(_))));
        assert!(matches!(conf_msg_per_user(&thread, 3, &"Z".into()), Err(Error::UnknownUser(_))));
        assert!(matches!(conf_msg_per_user(&thread, 4, &"B".into()), Err(Error::RankOutOfBounds { .. })));
        assert!(matches!(conf_msg(&thread, 0), Err(Error::RankOutOfBounds { .. })));
        assert!(matches!(conf_user(&thread, &"Z".into()), Err(Error::UnknownUser(_))));
    }

    #[test]
    fn weighted_mean_over_users() {
        // B has 3 earlier messages, C has 1; D's message draws per-user
        // conflicts of 2/3 and 1, weighted 0.75 and 0.25
        let mf = MessageFrame::new(2, 1).unwrap();
        let (t1, t2) = (mf.topic(1).unwrap(), mf.topic(2).unwrap());
        let thread = build(&mf, &[("B", t1), ("B", t1), ("B", t2), ("C", t1), ("D", t2)]);
        let b = conf_msg_per_user(&thread, 5, &"B".into()).unwrap();
        let c = conf_msg_per_user(&thread, 5, &"C".into()).unwrap();
        assert_abs_diff_eq!(b, 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(conf_msg(&thread, 5).unwrap(), 0.75 * b + 0.25 * c, epsilon = 1e-12);
        assert_eq!(conf_msg(&thread, 1).unwrap(), 0.0);
        // a user's own earlier messages never enter
        assert_eq!(conf_msg(&thread, 3).unwrap(), 0.0);
    }

    #[test]
    fn user_average_policies() {
        let mf = MessageFrame::new(2, 1).unwrap();
        let (t1, t2) = (mf.topic(1).unwrap(), mf.topic(2).unwrap());
        let thread = build(&mf, &[("A", t1), ("B", t2), ("A", t1)]);
        // A: first message unpreceded (0), third conflicts fully with B's
        assert_abs_diff_eq!(conf_user(&thread, &"A".into()).unwrap(), 0.5, epsilon = 1e-12);
        let exclude = AnalysisOptions {
            unpreceded: UnprecededMessages::Exclude,
        };
        assert_abs_diff_eq!(conf_user_with(&thread, &"A".into(), &exclude).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(conf_user(&thread, &"B".into()).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn analyze_flags_the_disruptive_user() {
        let mf = MessageFrame::new(2, 1).unwrap();
        let (t1, t2) = (mf.topic(1).unwrap(), mf.topic(2).unwrap());
        let thread = build(
            &mf,
            &[("A", t1), ("B", t1), ("C", t1), ("T", t2), ("A", t1), ("B", t1), ("C", t1), ("T", mf.senseless())],
        );
        let report = analyze(&thread).unwrap();
        assert_eq!(report.partition.trolls, vec![UserId::from("T")]);
        assert_eq!(report.partition.others.len(), 3);
        assert!(report.centers.trolls > report.centers.others);
        assert_eq!(report.per_message.len(), 8);
        assert_eq!(report.per_message[3].prior_messages, 3);
        assert!(report.is_troll(&"T".into()));
        assert_eq!(report.conf_user(&"T".into()), Some(1.0));
    }

    #[test]
    fn identical_posts_are_degenerate() {
        let mf = MessageFrame::new(2, 1).unwrap();
        let t1 = mf.topic(1).unwrap();
        let thread = build(&mf, &[("A", t1), ("B", t1), ("C", t1), ("A", t1)]);
        assert!(matches!(analyze(&thread), Err(Error::Degenerate(_))));
    }
}
