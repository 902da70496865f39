use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest supported frame cardinality.
pub const MAX_FRAME_SIZE: usize = 16;

/// Largest frame for which the dense 2^n x 2^n Jaccard matrix is materialized.
pub const DENSE_JACCARD_MAX: usize = 10;

/// A subset of a frame of discernment, bit `i` set when label `i` is a member.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetId(u32);

impl SubsetId {
    pub const EMPTY: SubsetId = SubsetId(0);

    pub const fn from_bits(bits: u32) -> Self {
        SubsetId(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Number of labels in the subset.
    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn intersection(self, other: SubsetId) -> SubsetId {
        SubsetId(self.0 & other.0)
    }

    pub const fn union(self, other: SubsetId) -> SubsetId {
        SubsetId(self.0 | other.0)
    }

    pub const fn is_subset_of(self, other: SubsetId) -> bool {
        self.0 & !other.0 == 0
    }
}

impl fmt::Debug for SubsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetId({:#b})", self.0)
    }
}

/// Jaccard similarity of two subsets, with `D(∅, ∅) = 1`.
pub fn jaccard(a: SubsetId, b: SubsetId) -> f64 {
    let union = a.union(b).len();
    if union == 0 {
        return 1.0;
    }
    f64::from(a.intersection(b).len()) / f64::from(union)
}

/// Dense Jaccard similarity matrix over the power set of a frame.
#[derive(Debug)]
pub struct JaccardMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl JaccardMatrix {
    fn build(n: usize) -> Self {
        let size = 1usize << n;
        let mut entries = Vec::with_capacity(size * size);
        for a in 0..size as u32 {
            for b in 0..size as u32 {
                entries.push(jaccard(SubsetId(a), SubsetId(b)));
            }
        }
        JaccardMatrix { size, entries }
    }

    /// Side length, `2^n`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: SubsetId, b: SubsetId) -> f64 {
        self.entries[a.bits() as usize * self.size + b.bits() as usize]
    }

    pub fn row(&self, a: SubsetId) -> &[f64] {
        let start = a.bits() as usize * self.size;
        &self.entries[start..start + self.size]
    }
}

/// An ordered frame of discernment Ω.
///
/// Frames are shared behind an [`Arc`]; mass functions keep a handle to the
/// frame they are defined on.
pub struct Frame {
    labels: Vec<String>,
    jaccard: OnceLock<JaccardMatrix>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Arc<Frame>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_FRAME_SIZE {
            return Err(Error::FrameSize {
                got: labels.len(),
                max: MAX_FRAME_SIZE,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || labels[..i].contains(label) {
                return Err(Error::InvalidLabel(label.clone()));
            }
        }
        Ok(Arc::new(Frame {
            labels,
            jaccard: OnceLock::new(),
        }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of subsets, `2^n`.
    pub fn power_set_size(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn omega(&self) -> SubsetId {
        SubsetId(((1u64 << self.labels.len()) - 1) as u32)
    }

    pub fn contains(&self, subset: SubsetId) -> bool {
        (subset.bits() as u64) < (1u64 << self.labels.len())
    }

    pub fn check(&self, subset: SubsetId) -> Result<SubsetId> {
        if self.contains(subset) {
            Ok(subset)
        } else {
            Err(Error::InvalidSubset {
                bits: subset.bits(),
                n: self.len(),
            })
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn singleton(&self, index: usize) -> Result<SubsetId> {
        if index >= self.len() {
            return Err(Error::InvalidSubset {
                bits: 1u32.wrapping_shl(index as u32),
                n: self.len(),
            });
        }
        Ok(SubsetId(1 << index))
    }

    /// Builds a subset from label names. Repeated names are accepted.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetId> {
        labels.iter().try_fold(SubsetId::EMPTY, |acc, label| {
            Ok(acc.union(SubsetId(1 << self.index_of(label.as_ref())?)))
        })
    }

    /// Label names of a subset, in frame order.
    pub fn labels_of(&self, subset: SubsetId) -> Vec<&str> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(i, _)| subset.bits() & (1 << i) != 0)
            .map(|(_, l)| l.as_str())
            .collect()
    }

    /// Dense Jaccard matrix for this frame, built once on first use.
    pub fn jaccard_matrix(&self) -> Result<&JaccardMatrix> {
        if self.len() > DENSE_JACCARD_MAX {
            return Err(Error::DenseTooLarge {
                n: self.len(),
                max: DENSE_JACCARD_MAX,
            });
        }
        Ok(self.jaccard.get_or_init(|| JaccardMatrix::build(self.len())))
    }

    /// Two handles denote the same frame when they are the same allocation
    /// or carry identical labels in identical order.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Frame>) -> bool {
        Arc::ptr_eq(self, other) || self.labels == other.labels
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Frame").field("labels", &self.labels).finish()
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for Frame {}
