//! Inclusion-based conflict between two bbas.
//!
//! `Conf(m1, m2) = (1 - σ_inc(m1, m2)) · d(m1, m2)` where `σ_inc` is the
//! larger of the two directed inclusion degrees and `d` the Jousselme
//! distance. Nested evidence has no conflict whatever its distance.

use serde::Serialize;

use crate::belief::{jousselme_distance, MassFunction, SubsetId};
use crate::error::Result;
use crate::scalar::Scalar;

/// A conflict measure, always in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct ConflictValue<T>(T);

impl<T: Scalar> ConflictValue<T> {
    pub fn value(self) -> T {
        self.0
    }
}

/// 1 when `x ⊆ y`, else 0. The empty set is included in everything.
pub fn inclusion_index(x: SubsetId, y: SubsetId) -> u32 {
    u32::from(x.is_subset_of(y))
}

/// Directed degree of inclusion of `m1` in `m2`: the fraction of focal
/// pairs `(X1, Y2)` with `X1 ⊆ Y2`.
pub fn inclusion_degree<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<T> {
    m1.ensure_same_frame(m2)?;
    let included: u32 = m1
        .focal_elements()
        .iter()
        .flat_map(|&(x, _)| m2.focal_elements().iter().map(move |&(y, _)| inclusion_index(x, y)))
        .sum();
    let pairs = m1.focal_count() * m2.focal_count();
    Ok(T::lit(f64::from(included)) / T::lit(pairs as f64))
}

/// Symmetric degree of inclusion, `max(d_inc(m1, m2), d_inc(m2, m1))`.
pub fn sigma_inc<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<T> {
    Ok(inclusion_degree(m1, m2)?.max(inclusion_degree(m2, m1)?))
}

pub fn conflict<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<ConflictValue<T>> {
    let sigma = sigma_inc(m1, m2)?;
    let d = jousselme_distance(m1, m2)?;
    Ok(ConflictValue((T::one() - sigma) * d))
}

/// Every quantity entering the conflict of one pair, for inspection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConflictBreakdown<T> {
    pub inclusion_ab: T,
    pub inclusion_ba: T,
    pub sigma_inc: T,
    pub distance: T,
    pub conflict: T,
}

pub fn conflict_breakdown<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<ConflictBreakdown<T>> {
    let inclusion_ab = inclusion_degree(m1, m2)?;
    let inclusion_ba = inclusion_degree(m2, m1)?;
    let sigma = inclusion_ab.max(inclusion_ba);
    let distance = jousselme_distance(m1, m2)?;
    Ok(ConflictBreakdown {
        inclusion_ab,
        inclusion_ba,
        sigma_inc: sigma,
        distance,
        conflict: (T::one() - sigma) * distance,
    })
}
