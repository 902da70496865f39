//! Combination rules for two bbas on the same frame.
//!
//! All rules iterate focal pairs only. Accumulation goes through a
//! `BTreeMap` keyed by subset mask so the output order, and the order in
//! which products are summed, is fixed.

use std::collections::BTreeMap;

use super::frame::SubsetId;
use super::mass::MassFunction;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn accumulate<T, F>(m1: &MassFunction<T>, m2: &MassFunction<T>, set_op: F) -> Result<Vec<(SubsetId, T)>>
where
    T: Scalar,
    F: Fn(SubsetId, SubsetId) -> SubsetId,
{
    m1.ensure_same_frame(m2)?;
    let mut acc: BTreeMap<SubsetId, T> = BTreeMap::new();
    for &(y1, a) in m1.focal_elements() {
        for &(y2, b) in m2.focal_elements() {
            let slot = acc.entry(set_op(y1, y2)).or_insert_with(T::zero);
            *slot = *slot + a * b;
        }
    }
    Ok(acc.into_iter().collect())
}

/// Unnormalized conjunctive rule. Mass on ∅ is the global conflict.
pub fn combine_conjunctive<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<MassFunction<T>> {
    let focal = accumulate(m1, m2, SubsetId::intersection)?;
    Ok(MassFunction::from_sorted(m1.frame(), focal))
}

/// Disjunctive rule: products are assigned to the union of the focal pair.
pub fn combine_disjunctive<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<MassFunction<T>> {
    let focal = accumulate(m1, m2, SubsetId::union)?;
    Ok(MassFunction::from_sorted(m1.frame(), focal))
}

/// Dempster's orthogonal sum: conjunctive rule with the ∅ mass removed and
/// the rest rescaled by `1 / (1 - k)`.
pub fn combine_dempster<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<MassFunction<T>> {
    let mut focal = accumulate(m1, m2, SubsetId::intersection)?;
    let k = match focal.first() {
        Some(&(s, m)) if s.is_empty() => {
            focal.remove(0);
            m
        }
        _ => T::zero(),
    };
    let norm = T::one() - k;
    if norm.as_f64() <= T::IDENTITY_TOLERANCE {
        return Err(Error::TotalConflict);
    }
    for (_, m) in focal.iter_mut() {
        *m = *m / norm;
    }
    Ok(MassFunction::from_sorted(m1.frame(), focal))
}

/// Global conflict `k`: total product mass over disjoint focal pairs.
pub fn global_conflict<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<T> {
    m1.ensure_same_frame(m2)?;
    let mut k = T::zero();
    for &(y1, a) in m1.focal_elements() {
        for &(y2, b) in m2.focal_elements() {
            if y1.intersection(y2).is_empty() {
                k = k + a * b;
            }
        }
    }
    Ok(k)
}
