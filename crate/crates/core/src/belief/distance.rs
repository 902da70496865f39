use super::frame::{jaccard, SubsetId};
use super::mass::MassFunction;
use crate::error::Result;
use crate::scalar::Scalar;

/// Jousselme distance `sqrt(0.5 * (m1 - m2)^T D (m1 - m2))`.
///
/// The quadratic form is evaluated over the union of both focal sets only;
/// all other rows of the difference vector are zero. `D` entries come from
/// popcounts, so no dense matrix is needed for large frames.
pub fn jousselme_distance<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<T> {
    m1.ensure_same_frame(m2)?;
    let diff = difference(m1, m2);
    let mut q = T::zero();
    for &(a, va) in &diff {
        for &(b, vb) in &diff {
            q = q + va * vb * T::lit(jaccard(a, b));
        }
    }
    // D is positive definite; a negative radicand is rounding only.
    let d = (T::lit(0.5) * q).max(T::zero()).sqrt();
    Ok(d.min(T::one()))
}

/// Sparse `m1 - m2` over the union of focal sets, sorted by mask.
fn difference<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Vec<(SubsetId, T)> {
    let (f1, f2) = (m1.focal_elements(), m2.focal_elements());
    let mut out = Vec::with_capacity(f1.len() + f2.len());
    let (mut i, mut j) = (0, 0);
    while i < f1.len() || j < f2.len() {
        match (f1.get(i), f2.get(j)) {
            (Some(&(s1, a)), Some(&(s2, b))) if s1 == s2 => {
                out.push((s1, a - b));
                i += 1;
                j += 1;
            }
            (Some(&(s1, a)), Some(&(s2, _))) if s1 < s2 => {
                out.push((s1, a));
                i += 1;
            }
            (Some(&(s1, a)), None) => {
                out.push((s1, a));
                i += 1;
            }
            (_, Some(&(s2, b))) => {
                out.push((s2, -b));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}
