//! Two-cluster k-means on scalar values.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAX_ITERATIONS: usize = 100;

/// Split of items into a high-center and a low-center cluster.
///
/// Item order inside each cluster follows the input order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition2<K, T> {
    pub high: Vec<K>,
    pub low: Vec<K>,
    pub center_high: T,
    pub center_low: T,
    pub iterations: usize,
}

/// Two-means on 1-D values.
///
/// The optimal 2-means partition of 1-D data is a cut of the sorted values,
/// so centers are seeded from the cut with the least within-cluster sum of
/// squares; Lloyd's iteration then runs until assignments are stable. A
/// value equidistant from both centers joins the low cluster.
pub fn kmeans2<K: Clone, T: Scalar>(values: &[(K, T)]) -> Result<Partition2<K, T>> {
    if values.len() < 2 {
        return Err(Error::Degenerate(format!(
            "need at least 2 items, got {}",
            values.len()
        )));
    }
    if values.iter().any(|(_, v)| !v.is_finite()) {
        return Err(Error::Degenerate("values must be finite".into()));
    }
    let (min, max) = values
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &(_, v)| (lo.min(v), hi.max(v)));
    if (max - min).as_f64() <= T::IDENTITY_TOLERANCE {
        return Err(Error::Degenerate("all values are equal".into()));
    }
    let (low, high) = best_cut_centers(values);
    lloyd(values, low, high)
}

/// Centers of the best cut of the sorted values. Sums are taken over
/// values shifted by their mean to limit cancellation.
fn best_cut_centers<K, T: Scalar>(values: &[(K, T)]) -> (T, T) {
    let n = values.len();
    let mut sorted: Vec<T> = values.iter().map(|(_, v)| *v).collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let mean = sorted.iter().copied().sum::<T>() / T::lit(n as f64);
    let (mut s1, mut s2) = (vec![T::zero(); n + 1], vec![T::zero(); n + 1]);
    for (i, &v) in sorted.iter().enumerate() {
        let x = v - mean;
        s1[i + 1] = s1[i] + x;
        s2[i + 1] = s2[i] + x * x;
    }
    let cost = |from: usize, to: usize| {
        let len = T::lit((to - from) as f64);
        let sum = s1[to] - s1[from];
        (s2[to] - s2[from]) - sum * sum / len
    };
    let mut best: Option<(usize, T)> = None;
    for cut in 1..n {
        // a cut between equal values is never optimal
        if sorted[cut - 1] == sorted[cut] {
            continue;
        }
        let c = cost(0, cut) + cost(cut, n);
        if best.is_none_or(|(_, b)| c < b) {
            best = Some((cut, c));
        }
    }
    let (cut, _) = best.expect("at least two distinct values");
    let center = |from: usize, to: usize| mean + (s1[to] - s1[from]) / T::lit((to - from) as f64);
    (center(0, cut), center(cut, n))
}

fn lloyd<K: Clone, T: Scalar>(values: &[(K, T)], mut low: T, mut high: T) -> Result<Partition2<K, T>> {
    let mut in_high: Vec<bool> = Vec::new();
    for iteration in 1..=MAX_ITERATIONS {
        let assignment: Vec<bool> = values
            .iter()
            .map(|&(_, v)| (v - high).abs() < (v - low).abs())
            .collect();
        if assignment == in_high {
            return finish(values, &in_high, high, low, iteration - 1);
        }
        in_high = assignment;
        let (mut sum_h, mut n_h, mut sum_l, mut n_l) = (T::zero(), 0usize, T::zero(), 0usize);
        for (&(_, v), &h) in values.iter().zip(&in_high) {
            if h {
                sum_h = sum_h + v;
                n_h += 1;
            } else {
                sum_l = sum_l + v;
                n_l += 1;
            }
        }
        if n_h == 0 || n_l == 0 {
            return Err(Error::Degenerate("a cluster became empty".into()));
        }
        high = sum_h / T::lit(n_h as f64);
        low = sum_l / T::lit(n_l as f64);
    }
    Err(Error::NoConvergence(MAX_ITERATIONS))
}

fn finish<K: Clone, T: Scalar>(
    values: &[(K, T)],
    in_high: &[bool],
    center_high: T,
    center_low: T,
    iterations: usize,
) -> Result<Partition2<K, T>> {
    let mut high = Vec::new();
    let mut low = Vec::new();
    for ((id, _), &h) in values.iter().zip(in_high) {
        if h {
            high.push(id.clone());
        } else {
            low.push(id.clone());
        }
    }
    Ok(Partition2 {
        high,
        low,
        center_high,
        center_low,
        iterations,
    })
}
