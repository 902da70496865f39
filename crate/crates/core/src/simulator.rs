//! Synthetic discussion threads.
//!
//! Each scripted message gets a two-focal bba: a dominant mass on the
//! singleton of its category and the remainder on Ω. Dominant masses are
//! drawn uniformly from the concentration range with a seeded ChaCha8
//! generator, or pinned per rank.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::belief::{MassFunction, SubsetId};
use crate::error::{Error, Result};
use crate::pipeline::{GeneratorInfo, Message, MessageFrame, Thread, ThreadFile, UserId};
use crate::scalar::Scalar;

/// Identifier of the sampling procedure, written into generated files.
pub const GENERATOR_ALGORITHM: &str = "chacha8rng-seed_from_u64/uniform-inclusive-f64";

pub const DEFAULT_CONCENTRATION: [f64; 2] = [0.75, 0.98];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Expert,
    Troll,
    Victim,
    Learner,
}

/// What a scripted message is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Relevant,
    OffTopic,
    Senseless,
    /// A topic other than the relevant one, 1-based.
    Controversy(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioUser {
    pub id: String,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptEntry {
    pub author: String,
    pub category: Category,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PinnedMass {
    pub rank: usize,
    pub mass: f64,
}

fn default_concentration() -> [f64; 2] {
    DEFAULT_CONCENTRATION
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub topic_count: usize,
    pub relevant_topic: usize,
    pub users: Vec<ScenarioUser>,
    pub script: Vec<ScriptEntry>,
    #[serde(default)]
    pub seed: u64,
    /// Range `[lo, hi]` the dominant mass is drawn from.
    #[serde(default = "default_concentration")]
    pub concentration: [f64; 2],
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pinned: Vec<PinnedMass>,
}

impl ScenarioSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("scenario serializes");
        text.push('\n');
        text
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn role_of(&self, user: &str) -> Option<Role> {
        self.users.iter().find(|u| u.id == user).map(|u| u.role)
    }

    /// Ids of users with the given role, in roster order.
    pub fn users_with_role(&self, role: Role) -> Vec<UserId> {
        self.users
            .iter()
            .filter(|u| u.role == role)
            .map(|u| UserId::from(u.id.as_str()))
            .collect()
    }

    pub fn validate(&self) -> Result<MessageFrame> {
        let invalid = |msg: String| Err(Error::InvalidSpec(msg));
        let frame = MessageFrame::new(self.topic_count, self.relevant_topic)
            .map_err(|e| Error::InvalidSpec(e.to_string()))?;
        if self.script.is_empty() {
            return invalid("script is empty".into());
        }
        if self.users.len() < 2 {
            return invalid(format!("need at least 2 users, got {}", self.users.len()));
        }
        for (i, user) in self.users.iter().enumerate() {
            if user.id.is_empty() || self.users[..i].iter().any(|u| u.id == user.id) {
                return invalid(format!("user id {:?} is empty or duplicated", user.id));
            }
            if !self.script.iter().any(|e| e.author == user.id) {
                return invalid(format!("user {:?} has no scripted message", user.id));
            }
        }
        for (i, entry) in self.script.iter().enumerate() {
            if self.role_of(&entry.author).is_none() {
                return invalid(format!("script entry {} is authored by unknown user {:?}", i + 1, entry.author));
            }
            if let Category::Controversy(j) = entry.category {
                if j == self.relevant_topic || j == 0 || j > self.topic_count {
                    return invalid(format!(
                        "script entry {}: controversy topic {j} must differ from the relevant topic and lie in 1..={}",
                        i + 1,
                        self.topic_count
                    ));
                }
            }
        }
        let [lo, hi] = self.concentration;
        if !(0.5 < lo && lo < hi && hi < 1.0) {
            return invalid(format!("concentration [{lo}, {hi}] must satisfy 0.5 < lo < hi < 1"));
        }
        for (i, pin) in self.pinned.iter().enumerate() {
            if pin.rank == 0 || pin.rank > self.script.len() {
                return Err(Error::RankOutOfBounds {
                    rank: pin.rank,
                    len: self.script.len(),
                });
            }
            if !(pin.mass > 0.0 && pin.mass < 1.0) {
                return Err(Error::MassOutOfRange { mass: pin.mass });
            }
            if self.pinned[..i].iter().any(|p| p.rank == pin.rank) {
                return invalid(format!("rank {} is pinned twice", pin.rank));
            }
        }
        Ok(frame)
    }

    fn category_subset(frame: &MessageFrame, category: Category) -> Result<SubsetId> {
        match category {
            Category::Relevant => Ok(frame.relevant()),
            Category::OffTopic => Ok(frame.off_topic()),
            Category::Senseless => Ok(frame.senseless()),
            Category::Controversy(j) => frame.topic(j),
        }
    }
}

/// Returns `spec` with the dominant mass of the given ranks fixed. A later
/// override of the same rank replaces an earlier one.
pub fn pin_masses(spec: &ScenarioSpec, overrides: &[(usize, f64)]) -> Result<ScenarioSpec> {
    let mut pinned = spec.pinned.clone();
    for &(rank, mass) in overrides {
        if rank == 0 || rank > spec.script.len() {
            return Err(Error::RankOutOfBounds {
                rank,
                len: spec.script.len(),
            });
        }
        if !(mass > 0.0 && mass < 1.0) {
            return Err(Error::MassOutOfRange { mass });
        }
        pinned.retain(|p| p.rank != rank);
        pinned.push(PinnedMass { rank, mass });
    }
    pinned.sort_by_key(|p| p.rank);
    Ok(ScenarioSpec {
        pinned,
        ..spec.clone()
    })
}

/// Builds the thread described by `spec`. Identical specs give identical
/// threads.
pub fn generate<T: Scalar>(spec: &ScenarioSpec) -> Result<Thread<T>> {
    let frame = spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let [lo, hi] = spec.concentration;
    let dist = Uniform::new_inclusive(lo, hi);
    let omega = frame.frame().omega();

    let mut messages = Vec::with_capacity(spec.script.len());
    for (i, entry) in spec.script.iter().enumerate() {
        let rank = i + 1;
        // always draw so pinning one rank leaves the others unchanged
        let sampled = dist.sample(&mut rng);
        let dominant = spec
            .pinned
            .iter()
            .find(|p| p.rank == rank)
            .map_or(sampled, |p| p.mass);
        let dominant = T::lit(dominant);
        let subset = ScenarioSpec::category_subset(&frame, entry.category)?;
        let bba = MassFunction::new(frame.frame(), [(subset, dominant), (omega, T::one() - dominant)])?;
        messages.push(Message {
            author: UserId::from(entry.author.as_str()),
            rank,
            bba,
        });
    }
    let users = spec.users.iter().map(|u| UserId::from(u.id.as_str())).collect();
    Thread::new(frame, users, messages)
}

/// Generates and wraps the thread in its file form, recording the generator.
pub fn generate_file(spec: &ScenarioSpec) -> Result<ThreadFile> {
    let thread = generate::<f64>(spec)?;
    Ok(ThreadFile::from_thread(
        &thread,
        Some(GeneratorInfo {
            algorithm: GENERATOR_ALGORITHM.to_string(),
            seed: spec.seed,
        }),
    ))
}

/// Built-in scenarios reproducing the two published experiments.
pub mod scenarios {
    use super::*;

    fn user(id: &str, role: Role) -> ScenarioUser {
        ScenarioUser {
            id: id.to_string(),
            role,
        }
    }

    fn script(entries: &[(&str, Category)]) -> Vec<ScriptEntry> {
        entries
            .iter()
            .map(|&(author, category)| ScriptEntry {
                author: author.to_string(),
                category,
            })
            .collect()
    }

    /// Dominant masses quoted for the troll U4 and the learner U3, by rank.
    pub const EXAMPLE1_PINNED: [(usize, f64); 6] = [
        (1, 0.9732),
        (6, 0.9210),
        (10, 0.9716),
        (12, 0.7782),
        (14, 0.8387),
        (16, 0.9632),
    ];

    /// Four users, sixteen messages. U4 trolls with a controversy, a
    /// senseless and another controversy message; U1 and U2 each answer
    /// the first controversy in kind. No masses pinned.
    pub fn example1_unpinned(seed: u64) -> ScenarioSpec {
        use Category::*;
        let c = Controversy(2);
        ScenarioSpec {
            topic_count: 2,
            relevant_topic: 1,
            users: vec![
                user("U1", Role::Victim),
                user("U2", Role::Victim),
                user("U3", Role::Learner),
                user("U4", Role::Troll),
            ],
            script: script(&[
                ("U3", Relevant),
                ("U1", Relevant),
                ("U2", Relevant),
                ("U1", Relevant),
                ("U2", Relevant),
                ("U4", c),
                ("U1", c),
                ("U2", c),
                ("U1", Relevant),
                ("U4", Senseless),
                ("U2", Relevant),
                ("U3", Relevant),
                ("U1", Relevant),
                ("U4", c),
                ("U2", Relevant),
                ("U3", Relevant),
            ]),
            seed,
            concentration: DEFAULT_CONCENTRATION,
            pinned: Vec::new(),
        }
    }

    /// [`example1_unpinned`] with the six published dominant masses pinned.
    pub fn example1(seed: u64) -> ScenarioSpec {
        pin_masses(&example1_unpinned(seed), &EXAMPLE1_PINNED).expect("built-in pins are valid")
    }

    /// Eight users, thirty-one messages, trolls U4 (two controversy
    /// messages after a long run of relevant ones) and U8 (two early
    /// off-topic messages, then a controversy message once the victims
    /// have answered U4). U1 and U2 answer U4 with controversy messages,
    /// U3 answers U8 off-topic.
    pub fn example2(seed: u64) -> ScenarioSpec {
        use Category::*;
        let c = Controversy(2);
        ScenarioSpec {
            topic_count: 2,
            relevant_topic: 1,
            users: vec![
                user("U1", Role::Victim),
                user("U2", Role::Victim),
                user("U3", Role::Victim),
                user("U4", Role::Troll),
                user("U5", Role::Learner),
                user("U6", Role::Expert),
                user("U7", Role::Expert),
                user("U8", Role::Troll),
            ],
            script: script(&[
                ("U1", Relevant),
                ("U2", Relevant),
                ("U3", Relevant),
                ("U8", OffTopic),
                ("U3", OffTopic),
                ("U5", Relevant),
                ("U8", OffTopic),
                ("U6", Relevant),
                ("U2", Relevant),
                ("U7", Relevant),
                ("U1", Relevant),
                ("U2", Relevant),
                ("U6", Relevant),
                ("U3", Relevant),
                ("U2", Relevant),
                ("U7", Relevant),
                ("U6", Relevant),
                ("U3", Relevant),
                ("U2", Relevant),
                ("U4", c),
                ("U4", c),
                ("U1", c),
                ("U2", c),
                ("U1", c),
                ("U2", c),
                ("U8", c),
                ("U1", Relevant),
                ("U2", Relevant),
                ("U3", Relevant),
                ("U7", Relevant),
                ("U2", Relevant),
            ]),
            seed,
            concentration: DEFAULT_CONCENTRATION,
            pinned: Vec::new(),
        }
    }

    pub fn by_name(name: &str, seed: u64) -> Option<ScenarioSpec> {
        match name {
            "example1" => Some(example1(seed)),
            "example1-unpinned" => Some(example1_unpinned(seed)),
            "example2" => Some(example2(seed)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::scenarios::*;
    use super::*;

    #[test]
    fn scenario_shapes() {
        let s1 = example1(1);
        assert_eq!(s1.script.len(), 16);
        assert_eq!(s1.users.len(), 4);
        let s2 = example2(1);
        assert_eq!(s2.script.len(), 31);
        assert_eq!(s2.users.len(), 8);
        let count = |s: &ScenarioSpec, u: &str, c: Category| {
            s.script.iter().filter(|e| e.author == u && e.category == c).count()
        };
        let cont = Category::Controversy(2);
        assert_eq!(count(&s1, "U4", cont), 2);
        assert_eq!(count(&s1, "U4", Category::Senseless), 1);
        assert_eq!(count(&s1, "U3", Category::Relevant), 3);
        assert_eq!(count(&s2, "U4", cont), 2);
        assert_eq!(count(&s2, "U8", Category::OffTopic), 2);
        assert_eq!(count(&s2, "U8", cont), 1);
        assert_eq!((count(&s2, "U1", Category::Relevant), count(&s2, "U1", cont)), (3, 2));
        assert_eq!((count(&s2, "U2", Category::Relevant), count(&s2, "U2", cont)), (7, 2));
        assert_eq!((count(&s2, "U3", Category::Relevant), count(&s2, "U3", Category::OffTopic)), (4, 1));
        assert_eq!(count(&s2, "U5", Category::Relevant), 1);
        assert_eq!(count(&s2, "U6", Category::Relevant), 3);
        assert!(s1.validate().is_ok() && s2.validate().is_ok());
    }

    #[test]
    fn pinned_mass_lands_on_the_category() {
        let spec = example1(3);
        let thread: Thread<f64> = generate(&spec).unwrap();
        let m = &thread.message(6).unwrap().bba;
        assert_eq!(m.mass(thread.frame().topic(2).unwrap()), 0.9210);
        assert!((m.mass(thread.frame().frame().omega()) - 0.0790).abs() < 1e-15);
        let u3 = &thread.message(12).unwrap().bba;
        assert_eq!(u3.mass(thread.frame().relevant()), 0.7782);
        let senseless = &thread.message(10).unwrap().bba;
        assert_eq!(senseless.mass(thread.frame().senseless()), 0.9716);
    }

    #[test]
    fn pin_masses_errors_and_identity() {
        let spec = example1_unpinned(9);
        assert_eq!(pin_masses(&spec, &[]).unwrap(), spec);
        assert!(matches!(pin_masses(&spec, &[(6, 1.0)]), Err(Error::MassOutOfRange { .. })));
        assert!(matches!(pin_masses(&spec, &[(6, 0.0)]), Err(Error::MassOutOfRange { .. })));
        assert!(matches!(pin_masses(&spec, &[(17, 0.9)]), Err(Error::RankOutOfBounds { .. })));
        assert!(matches!(pin_masses(&spec, &[(0, 0.9)]), Err(Error::RankOutOfBounds { .. })));
        let twice = pin_masses(&pin_masses(&spec, &[(6, 0.8)]).unwrap(), &[(6, 0.9)]).unwrap();
        assert_eq!(twice.pinned, vec![PinnedMass { rank: 6, mass: 0.9 }]);
    }

    #[test]
    fn pinning_leaves_other_draws_alone() {
        let spec = example1_unpinned(11);
        let a: Thread<f64> = generate(&spec).unwrap();
        let b: Thread<f64> = generate(&pin_masses(&spec, &[(2, 0.6)]).unwrap()).unwrap();
        for (ma, mb) in a.messages().iter().zip(b.messages()) {
            if ma.rank != 2 {
                assert_eq!(ma.bba, mb.bba);
            }
        }
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let a: Thread<f64> = generate(&example2(5)).unwrap();
        let b: Thread<f64> = generate(&example2(5)).unwrap();
        let c: Thread<f64> = generate(&example2(6)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        for m in a.messages() {
            assert_eq!(m.bba.focal_count(), 2);
            let dominant = m.bba.focal_elements().iter().map(|(_, v)| *v).fold(0.0, f64::max);
            assert!((0.75..=0.98).contains(&dominant));
        }
    }

    #[test]
    fn invalid_specs() {
        let mut empty = example1(1);
        empty.script.clear();
        assert!(matches!(generate::<f64>(&empty), Err(Error::InvalidSpec(_))));

        let mut stranger = example1(1);
        stranger.script[0].author = "U9".into();
        assert!(matches!(stranger.validate(), Err(Error::InvalidSpec(_))));

        let mut relevant_controversy = example1(1);
        relevant_controversy.script[0].category = Category::Controversy(1);
        assert!(matches!(relevant_controversy.validate(), Err(Error::InvalidSpec(_))));

        let mut bad_range = example1(1);
        bad_range.concentration = [0.9, 0.8];
        assert!(matches!(bad_range.validate(), Err(Error::InvalidSpec(_))));
        bad_range.concentration = [0.4, 0.8];
        assert!(matches!(bad_range.validate(), Err(Error::InvalidSpec(_))));

        let mut silent = example1(1);
        silent.users.push(ScenarioUser {
            id: "U5".into(),
            role: Role::Expert,
        });
        assert!(matches!(silent.validate(), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn spec_json_form() {
        let spec = example1(42);
        let text = spec.to_json();
        assert!(text.contains("\"controversy\": 2"));
        assert!(text.contains("\"off_topic\"") || text.contains("\"senseless\""));
        assert_eq!(ScenarioSpec::from_json(&text).unwrap(), spec);
        assert!(matches!(ScenarioSpec::from_json("[]"), Err(Error::InvalidSpec(_))));

        let minimal = r#"{"topic_count": 2, "relevant_topic": 1,
            "users": [{"id": "A", "role": "expert"}, {"id": "B", "role": "troll"}],
            "script": [{"author": "A", "category": "relevant"}, {"author": "B", "category": {"controversy": 2}}]}"#;
        let parsed = ScenarioSpec::from_json(minimal).unwrap();
        assert_eq!(parsed.concentration, DEFAULT_CONCENTRATION);
        assert_eq!(parsed.seed, 0);
        assert_eq!(generate::<f64>(&parsed).unwrap().len(), 2);
    }

    #[test]
    fn file_records_generator() {
        let file = generate_file(&example1(42)).unwrap();
        let info = file.generator.as_ref().unwrap();
        assert_eq!(info.algorithm, GENERATOR_ALGORITHM);
        assert_eq!(info.seed, 42);
        assert_eq!(file.messages.len(), 16);
    }
}
