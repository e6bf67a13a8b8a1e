//! Dempster's rule of combination with exact conflict accounting.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::FocalSet;
use crate::mass::MassDistribution;
use crate::ratio::Ratio;

/// Mass `K` that the product of two distributions puts on empty intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictReport {
    pub conflict_weight: Ratio,
    /// `(A, B, m1(A)·m2(B))` for every disjoint focal pair, in canonical order.
    pub conflicting_pairs: Vec<(FocalSet, FocalSet, Ratio)>,
}

impl ConflictReport {
    pub fn is_total(&self) -> bool {
        self.conflict_weight.is_one()
    }
}

pub fn conflict_weight(m1: &MassDistribution, m2: &MassDistribution) -> Result<ConflictReport> {
    m1.frame().ensure_same(m2.frame())?;
    let mut conflicting_pairs = Vec::new();
    let mut conflict = Ratio::zero();
    for (a, wa) in m1.focal() {
        for (b, wb) in m2.focal() {
            if a.bits() & b.bits() == 0 {
                let w = wa * wb;
                conflict += &w;
                conflicting_pairs.push((a.clone(), b.clone(), w));
            }
        }
    }
    Ok(ConflictReport {
        conflict_weight: conflict,
        conflicting_pairs,
    })
}

/// Normalized Dempster combination `m1 ⊕ m2`.
///
/// The result is conditioned on the union of both inputs' conditions.
/// Fails with [`Error::TotalConflict`] when every focal pair is disjoint.
pub fn dempster_combine(m1: &MassDistribution, m2: &MassDistribution) -> Result<MassDistribution> {
    m1.frame().ensure_same(m2.frame())?;
    let mut joint: BTreeMap<FocalSet, Ratio> = BTreeMap::new();
    let mut conflict = Ratio::zero();
    for (a, wa) in m1.focal() {
        for (b, wb) in m2.focal() {
            let c = a.intersect(b)?;
            let w = wa * wb;
            if c.is_empty() {
                conflict += &w;
            } else {
                *joint.entry(c).or_default() += &w;
            }
        }
    }
    if joint.is_empty() {
        return Err(Error::TotalConflict);
    }
    let normalizer = conflict
        .complement()
        .expect("conflict of two normalized distributions is at most one");
    for w in joint.values_mut() {
        *w = &*w / &normalizer;
    }
    let conditions = m1.conditions().union(m2.conditions()).cloned().collect();
    Ok(MassDistribution::from_parts(
        m1.frame().clone(),
        joint,
        conditions,
    ))
}
