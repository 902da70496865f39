use std::sync::Arc;

use super::frame::{Frame, SubsetId};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A basic belief assignment over the power set of a frame.
///
/// Only focal elements (strictly positive masses) are stored, sorted by
/// subset mask. The empty set may carry mass (open world).
#[derive(Debug, Clone)]
pub struct MassFunction<T> {
    frame: Arc<Frame>,
    focal: Vec<(SubsetId, T)>,
}

impl<T: Scalar> MassFunction<T> {
    /// Validates and builds a bba. Zero masses are dropped; the remaining
    /// masses must already sum to 1, they are not renormalized.
    pub fn new<I>(frame: &Arc<Frame>, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetId, T)>,
    {
        let mut focal: Vec<(SubsetId, T)> = Vec::new();
        for (subset, mass) in assignments {
            frame.check(subset)?;
            if !mass.is_finite() || mass < T::zero() {
                return Err(Error::NegativeMass {
                    mass: mass.to_f64().unwrap_or(f64::NAN),
                });
            }
            if focal.iter().any(|(s, _)| *s == subset) {
                return Err(Error::DuplicateSubset {
                    bits: subset.bits(),
                });
            }
            focal.push((subset, mass));
        }
        focal.retain(|(_, m)| *m > T::zero());
        focal.sort_by_key(|(s, _)| *s);
        let sum: T = focal.iter().map(|(_, m)| *m).sum();
        if (sum - T::one()).abs().as_f64() > T::MASS_TOLERANCE {
            return Err(Error::SumNotOne { sum: sum.as_f64() });
        }
        Ok(MassFunction {
            frame: Arc::clone(frame),
            focal,
        })
    }

    /// Builds a bba from label-named subsets.
    pub fn from_labels<S: AsRef<str>>(frame: &Arc<Frame>, assignments: &[(&[S], T)]) -> Result<Self> {
        let resolved = assignments
            .iter()
            .map(|(labels, mass)| Ok((frame.subset(labels)?, *mass)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(frame, resolved)
    }

    /// Total ignorance: all mass on Ω.
    pub fn vacuous(frame: &Arc<Frame>) -> Self {
        MassFunction {
            frame: Arc::clone(frame),
            focal: vec![(frame.omega(), T::one())],
        }
    }

    /// All mass on a single subset.
    pub fn certain(frame: &Arc<Frame>, subset: SubsetId) -> Result<Self> {
        frame.check(subset)?;
        Ok(MassFunction {
            frame: Arc::clone(frame),
            focal: vec![(subset, T::one())],
        })
    }

    /// Assembles the output of a combination. Entries must be valid for the
    /// frame, unique and sorted; zero masses are dropped.
    pub(crate) fn from_sorted(frame: &Arc<Frame>, mut focal: Vec<(SubsetId, T)>) -> Self {
        focal.retain(|(_, m)| *m > T::zero());
        debug_assert!(focal.windows(2).all(|w| w[0].0 < w[1].0));
        MassFunction {
            frame: Arc::clone(frame),
            focal,
        }
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    /// Focal elements and their masses, sorted by subset mask.
    pub fn focal_elements(&self) -> &[(SubsetId, T)] {
        &self.focal
    }

    pub fn focal_count(&self) -> usize {
        self.focal.len()
    }

    pub fn mass(&self, subset: SubsetId) -> T {
        self.focal
            .binary_search_by_key(&subset, |(s, _)| *s)
            .map(|i| self.focal[i].1)
            .unwrap_or_else(|_| T::zero())
    }

    pub fn total(&self) -> T {
        self.focal.iter().map(|(_, m)| *m).sum()
    }

    /// Dense vector indexed by subset mask.
    pub fn to_dense(&self) -> Vec<T> {
        let mut dense = vec![T::zero(); self.frame.power_set_size()];
        for (s, m) in &self.focal {
            dense[s.bits() as usize] = *m;
        }
        dense
    }

    pub(crate) fn ensure_same_frame(&self, other: &MassFunction<T>) -> Result<()> {
        if self.frame.same_as(&other.frame) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

impl<T: PartialEq> PartialEq for MassFunction<T> {
    fn eq(&self, other: &Self) -> bool {
        self.frame.same_as(&other.frame) && self.focal == other.focal
    }
}
