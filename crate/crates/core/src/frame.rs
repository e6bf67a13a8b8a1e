//! Finite frames of discernment and the subset algebra over them.
//!
//! A [`Frame`] is an ordered list of distinct labels; its order fixes the
//! index of every label. A [`FocalSet`] is a subset of one frame, stored as
//! a 64-bit mask, so frames hold at most 64 labels. Operations that sweep
//! the whole powerset are additionally bounded by [`Limits`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest frame a [`FocalSet`] can address.
pub const MAX_FRAME_SIZE: usize = 64;

/// Size caps for operations whose cost grows with `2^|frame|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest frame for exhaustive powerset sweeps.
    pub powerset_cap: usize,
    /// Largest frame for exact joint-feasibility solving.
    pub feasibility_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            powerset_cap: 16,
            feasibility_cap: 10,
        }
    }
}

impl Limits {
    pub(crate) fn check_powerset(&self, frame: &Frame) -> Result<()> {
        check_cap(frame, self.powerset_cap)
    }

    pub(crate) fn check_feasibility(&self, frame: &Frame) -> Result<()> {
        check_cap(frame, self.feasibility_cap.min(self.powerset_cap))
    }
}

fn check_cap(frame: &Frame, limit: usize) -> Result<()> {
    if frame.size() > limit {
        Err(Error::FrameTooLarge {
            size: frame.size(),
            limit,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug)]
struct FrameInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    integers: Option<Vec<i64>>,
}

/// An ordered universe of outcome labels. Cloning is cheap.
#[derive(Clone)]
pub struct Frame(Arc<FrameInner>);

pub(crate) fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Frame>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge {
                size: labels.len(),
                limit: MAX_FRAME_SIZE,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if !is_valid_label(label) {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let integers = labels
            .iter()
            .map(|l| l.parse::<i64>().ok())
            .collect::<Option<Vec<_>>>();
        Ok(Frame(Arc::new(FrameInner {
            labels,
            index,
            integers,
        })))
    }

    /// Frame whose labels are the decimal integers `lo..=hi`.
    pub fn integer_range(lo: i64, hi: i64) -> Result<Frame> {
        if lo > hi {
            return Err(Error::EmptyFrame);
        }
        let size = (hi as i128 - lo as i128 + 1) as usize;
        if size > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge {
                size,
                limit: MAX_FRAME_SIZE,
            });
        }
        Frame::new((lo..=hi).map(|v| v.to_string()))
    }

    pub fn size(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.0.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    /// True when every label is a decimal integer, which enables `[lo..hi]`.
    pub fn is_integer_labeled(&self) -> bool {
        self.0.integers.is_some()
    }

    fn full_mask(&self) -> u64 {
        if self.size() == 64 {
            u64::MAX
        } else {
            (1u64 << self.size()) - 1
        }
    }

    pub fn full(&self) -> FocalSet {
        FocalSet {
            frame: self.clone(),
            bits: self.full_mask(),
        }
    }

    pub fn empty(&self) -> FocalSet {
        FocalSet {
            frame: self.clone(),
            bits: 0,
        }
    }

    pub fn singleton(&self, label: &str) -> Result<FocalSet> {
        let i = self
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(FocalSet {
            frame: self.clone(),
            bits: 1 << i,
        })
    }

    pub fn set_from_indices<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<FocalSet> {
        let mut bits = 0u64;
        for i in indices {
            if i >= self.size() {
                return Err(Error::UnknownLabel(format!("#{i}")));
            }
            bits |= 1 << i;
        }
        Ok(FocalSet {
            frame: self.clone(),
            bits,
        })
    }

    /// Subset denoted by `bits`; bits beyond the frame are rejected.
    pub fn set_from_bits(&self, bits: u64) -> Result<FocalSet> {
        if bits & !self.full_mask() != 0 {
            return Err(Error::UnknownLabel(format!("mask {bits:#x}")));
        }
        Ok(FocalSet {
            frame: self.clone(),
            bits,
        })
    }

    pub fn set_from_labels<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<FocalSet> {
        let mut bits = 0u64;
        for label in labels {
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            bits |= 1 << i;
        }
        Ok(FocalSet {
            frame: self.clone(),
            bits,
        })
    }

    /// Parses `{a|b}`, `[lo..hi]`, `*` or `{}`.
    pub fn parse_set(&self, expr: &str) -> Result<FocalSet> {
        let malformed = |reason: &str| Error::MalformedExpr {
            expr: expr.to_string(),
            reason: reason.to_string(),
        };
        let text = expr.trim();
        if text == "*" {
            return Ok(self.full());
        }
        if let Some(inner) = text.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            let inner = inner.trim();
            if inner.is_empty() {
                return Ok(self.empty());
            }
            let mut bits = 0u64;
            for token in inner.split('|') {
                let token = token.trim();
                if !is_valid_label(token) {
                    return Err(malformed("expected a label between separators"));
                }
                let i = self
                    .index_of(token)
                    .ok_or_else(|| Error::UnknownLabel(token.to_string()))?;
                bits |= 1 << i;
            }
            return Ok(FocalSet {
                frame: self.clone(),
                bits,
            });
        }
        if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let (lo, hi) = inner
                .split_once("..")
                .ok_or_else(|| malformed("expected `[lo..hi]`"))?;
            let (lo, hi) = (lo.trim(), hi.trim());
            let lo_v: i64 = lo
                .parse()
                .map_err(|_| malformed("range bound is not an integer"))?;
            let hi_v: i64 = hi
                .parse()
                .map_err(|_| malformed("range bound is not an integer"))?;
            let values = self
                .0
                .integers
                .as_ref()
                .ok_or_else(|| Error::RangeOverNonIntegerFrame(text.to_string()))?;
            for bound in [lo, hi] {
                if self.index_of(bound).is_none() {
                    return Err(Error::UnknownLabel(bound.to_string()));
                }
            }
            if lo_v > hi_v {
                return Err(malformed("range lower bound exceeds upper bound"));
            }
            let bits = values
                .iter()
                .enumerate()
                .filter(|(_, v)| (lo_v..=hi_v).contains(*v))
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            return Ok(FocalSet {
                frame: self.clone(),
                bits,
            });
        }
        Err(malformed("expected `{...}`, `[lo..hi]` or `*`"))
    }

    /// Every subset of the frame, in mask order. Fails above `limits.powerset_cap`.
    pub fn powerset(&self, limits: &Limits) -> Result<impl Iterator<Item = FocalSet> + '_> {
        limits.check_powerset(self)?;
        let count = 1u64 << self.size();
        Ok((0..count).map(move |bits| FocalSet {
            frame: self.clone(),
            bits,
        }))
    }

    pub(crate) fn same(&self, other: &Frame) -> bool {
        self == other
    }

    pub(crate) fn ensure_same(&self, other: &Frame) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Frame").field(&self.0.labels).finish()
    }
}

/// A subset of a [`Frame`].
///
/// Sets order lexicographically by their ascending member indices, so
/// `{20|21|22}` sorts before `{21|22|23}` and a set sorts after its prefixes.
#[derive(Clone)]
pub struct FocalSet {
    frame: Frame,
    bits: u64,
}

/// Result of the basic binary set operations on two sets of one frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetAlgebra {
    pub intersect: FocalSet,
    pub union: FocalSet,
    pub complement_of_a: FocalSet,
    pub a_subset_of_b: bool,
    pub a_empty: bool,
}

pub fn set_algebra(a: &FocalSet, b: &FocalSet) -> Result<SetAlgebra> {
    Ok(SetAlgebra {
        intersect: a.intersect(b)?,
        union: a.union(b)?,
        complement_of_a: a.complement(),
        a_subset_of_b: a.is_subset_of(b)?,
        a_empty: a.is_empty(),
    })
}

impl FocalSet {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == self.frame.full_mask()
    }

    pub fn contains(&self, index: usize) -> bool {
        index < 64 && self.bits >> index & 1 == 1
    }

    /// Member indices in ascending order.
    pub fn members(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.members().map(|i| self.frame.label(i))
    }

    pub fn intersect(&self, other: &FocalSet) -> Result<FocalSet> {
        self.frame.ensure_same(&other.frame)?;
        Ok(self.with_bits(self.bits & other.bits))
    }

    pub fn union(&self, other: &FocalSet) -> Result<FocalSet> {
        self.frame.ensure_same(&other.frame)?;
        Ok(self.with_bits(self.bits | other.bits))
    }

    pub fn complement(&self) -> FocalSet {
        self.with_bits(!self.bits & self.frame.full_mask())
    }

    pub fn is_subset_of(&self, other: &FocalSet) -> Result<bool> {
        self.frame.ensure_same(&other.frame)?;
        Ok(self.bits & !other.bits == 0)
    }

    pub fn intersects(&self, other: &FocalSet) -> Result<bool> {
        self.frame.ensure_same(&other.frame)?;
        Ok(self.bits & other.bits != 0)
    }

    fn with_bits(&self, bits: u64) -> FocalSet {
        FocalSet {
            frame: self.frame.clone(),
            bits,
        }
    }
}

impl PartialEq for FocalSet {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.frame == other.frame
    }
}

impl Eq for FocalSet {}

impl Hash for FocalSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
        self.frame.size().hash(state);
    }
}

impl Ord for FocalSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members()
            .cmp(other.members())
            .then_with(|| self.frame.labels().cmp(other.frame.labels()))
    }
}

impl PartialOrd for FocalSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical rendering: `*` for the whole frame, otherwise `{a|b|...}` in frame order.
impl fmt::Display for FocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            return f.pad("*");
        }
        let labels: Vec<&str> = self.labels().collect();
        f.pad(&format!("{{{}}}", labels.join("|")))
    }
}

impl fmt::Debug for FocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
