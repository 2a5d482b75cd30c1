//! Frames of discernment and bitmask-encoded subsets.
//!
//! A [`Frame`] is an ordered, finite set of mutually exclusive labels. Every
//! subset of the frame is encoded as a [`Subset`] bitmask where bit `i`
//! corresponds to the `i`-th label, so a frame with `n` labels indexes dense
//! arrays of `2^n` entries.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default hard cap on the number of labels in a frame. Dense representations
/// hold `2^n` scalars, so the cap keeps a single value at or below 8 MiB of
/// `f64` storage.
pub const DEFAULT_MAX_LABELS: usize = 20;

#[derive(Debug)]
struct FrameData {
    labels: Vec<String>,
}

/// An ordered finite set of labels over which evidence bears.
///
/// Frames are cheap to clone and compare; equality is by label sequence
/// (names and order both matter).
#[derive(Debug, Clone)]
pub struct Frame {
    data: Arc<FrameData>,
}

impl Frame {
    /// Builds a frame from an ordered sequence of distinct labels, enforcing
    /// the default cap of [`DEFAULT_MAX_LABELS`] labels.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_max_labels(labels, DEFAULT_MAX_LABELS)
    }

    /// Builds a frame with an explicit cap on the label count.
    pub fn with_max_labels<I, S>(labels: I, cap: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > cap {
            return Err(Error::FrameTooLarge {
                n: labels.len(),
                cap,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Frame {
            data: Arc::new(FrameData { labels }),
        })
    }

    /// Number of labels in the frame.
    pub fn len(&self) -> usize {
        self.data.labels.len()
    }

    /// Always false; construction rejects frames with no labels.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Size of the power set, i.e. the length of dense per-subset arrays.
    pub fn subset_count(&self) -> usize {
        1usize << self.len()
    }

    /// The labels in frame order.
    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    /// Label at position `i`.
    pub fn label(&self, i: usize) -> &str {
        &self.data.labels[i]
    }

    /// Position of a label, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.data.labels.iter().position(|l| l == label)
    }

    /// The empty subset ∅.
    pub fn empty_set(&self) -> Subset {
        Subset(0)
    }

    /// The full subset Λ.
    pub fn full_set(&self) -> Subset {
        Subset((self.subset_count() - 1) as u32)
    }

    /// Encodes a collection of label names as a subset bitmask.
    pub fn subset_of<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u32;
        for label in labels {
            let label = label.as_ref();
            match self.index_of(label) {
                Some(i) => bits |= 1 << i,
                None => return Err(Error::UnknownLabel(label.to_string())),
            }
        }
        Ok(Subset(bits))
    }

    /// Singleton subset for the label at position `i`.
    pub fn singleton(&self, i: usize) -> Subset {
        debug_assert!(i < self.len());
        Subset(1 << i)
    }

    /// The labels named by a subset, in frame order.
    pub fn subset_labels(&self, subset: Subset) -> Vec<&str> {
        (0..self.len())
            .filter(|&i| subset.contains_index(i))
            .map(|i| self.label(i))
            .collect()
    }

    /// Complement of a subset relative to this frame.
    pub fn complement(&self, subset: Subset) -> Subset {
        Subset(!subset.0 & self.full_set().0)
    }

    /// Iterates over all `2^n` subsets in ascending bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.subset_count() as u32).map(Subset)
    }

    /// Renders a subset as `{a,b}`, or `∅` for the empty set.
    pub fn format_subset(&self, subset: Subset) -> String {
        if subset.is_empty() {
            return "∅".to_string();
        }
        format!("{{{}}}", self.subset_labels(subset).join(","))
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.labels == other.data.labels
    }
}

impl Eq for Frame {}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.labels().join(","))
    }
}

/// Checks two values for the same frame, the shared precondition of every
/// binary combination in this crate.
pub(crate) fn ensure_same_frame(left: &Frame, right: &Frame) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::FrameMismatch {
            left: left.labels().to_vec(),
            right: right.labels().to_vec(),
        })
    }
}

/// A subset of a frame, encoded as a bitmask over label positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u32);

impl Subset {
    /// The empty subset.
    pub const EMPTY: Subset = Subset(0);

    /// Raw bitmask.
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Index into a dense per-subset array.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Builds a subset from a dense array index.
    pub fn from_index(index: usize) -> Subset {
        Subset(index as u32)
    }

    /// True for ∅.
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Number of labels in the subset.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Set intersection.
    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    /// Set union.
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    /// True when `self ⊆ other`.
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when the label at position `i` is a member.
    pub fn contains_index(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
}
