//! Conditional granular distributions.
//!
//! Here a mass distribution summarizes only the rows of a relation that
//! match its evidential source, so parent relations are partially filled.
//! Two such distributions always have a conflict-free combined parent as
//! soon as one pair of their focal elements intersects.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigUint, ToPrimitive};

use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::mass::MassDistribution;
use crate::ratio::Ratio;
use crate::relational::{frequencies, Relation};

/// A set-valued map `Γ` from every source label to a non-empty target subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivaluedMapping {
    source_frame: Frame,
    target_frame: Frame,
    images: Vec<FocalSet>,
}

impl MultivaluedMapping {
    pub fn new<'a, I>(source_frame: &Frame, target_frame: &Frame, images: I) -> Result<MultivaluedMapping>
    where
        I: IntoIterator<Item = (&'a str, FocalSet)>,
    {
        let mut slots: Vec<Option<FocalSet>> = vec![None; source_frame.size()];
        for (label, image) in images {
            let i = source_frame
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            target_frame.ensure_same(image.frame())?;
            if image.is_empty() {
                return Err(Error::InvalidMapping(format!("image of `{label}` is empty")));
            }
            if slots[i].replace(image).is_some() {
                return Err(Error::InvalidMapping(format!("`{label}` mapped twice")));
            }
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| Error::InvalidMapping(format!("no image for `{}`", source_frame.label(i))))
            })
            .collect::<Result<_>>()?;
        Ok(MultivaluedMapping {
            source_frame: source_frame.clone(),
            target_frame: target_frame.clone(),
            images,
        })
    }

    pub fn source_frame(&self) -> &Frame {
        &self.source_frame
    }

    pub fn target_frame(&self) -> &Frame {
        &self.target_frame
    }

    pub fn image(&self, label: &str) -> Option<&FocalSet> {
        self.source_frame.index_of(label).map(|i| &self.images[i])
    }

    /// `(source label, image)` in source frame order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &FocalSet)> {
        self.source_frame
            .labels()
            .iter()
            .map(String::as_str)
            .zip(&self.images)
    }
}

/// Induces a target distribution: each source singleton's mass moves to its image.
pub fn propagate(source: &MassDistribution, gamma: &MultivaluedMapping) -> Result<MassDistribution> {
    source.frame().ensure_same(gamma.source_frame())?;
    let mut focal: BTreeMap<FocalSet, Ratio> = BTreeMap::new();
    for (set, w) in source.focal() {
        if set.len() != 1 {
            return Err(Error::NonSingletonFocal(set.to_string()));
        }
        let i = set.members().next().expect("singleton");
        *focal.entry(gamma.images[i].clone()).or_default() += w;
    }
    Ok(MassDistribution::from_parts(
        gamma.target_frame().clone(),
        focal,
        source.conditions().clone(),
    ))
}

/// Parses `K=V[,K=V...]`.
pub fn parse_conditions(text: &str) -> Result<Vec<(String, String)>> {
    text.split(',')
        .map(|pair| {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::MalformedCondition(pair.to_string()))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() || v.is_empty() {
                return Err(Error::MalformedCondition(pair.to_string()));
            }
            Ok((k.to_string(), v.to_string()))
        })
        .collect()
}

/// Summarizes `attribute` over the rows whose condition cells are exactly the
/// named singletons, tagging the result with the condition pairs.
pub fn summarize_where(
    relation: &Relation,
    attribute: &str,
    condition: &[(String, String)],
) -> Result<MassDistribution> {
    let target = relation.attribute_index(attribute)?;
    let mut selectors = Vec::with_capacity(condition.len());
    for (key, value) in condition {
        let k = relation.attribute_index(key)?;
        let wanted = relation.frame_of(key)?.singleton(value)?;
        selectors.push((k, wanted));
    }
    let selected: Vec<_> = relation
        .rows()
        .iter()
        .filter(|row| {
            selectors
                .iter()
                .all(|(k, wanted)| row.cells[*k].as_ref() == Some(wanted))
        })
        .collect();
    let describe = || {
        condition
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    if selected.is_empty() {
        return Err(Error::EmptySelection(describe()));
    }
    let unfilled: Vec<u64> = selected
        .iter()
        .filter(|row| row.cells[target].is_none())
        .map(|row| row.id)
        .collect();
    if !unfilled.is_empty() {
        return Err(Error::UnfilledCell {
            attribute: attribute.to_string(),
            rows: unfilled,
        });
    }
    let frame = relation.frame_of(attribute)?;
    let (focal, _) = frequencies(
        frame,
        selected.iter().filter_map(|row| row.cells[target].as_ref()),
    )?;
    let tags: BTreeSet<String> = condition.iter().map(|(k, v)| format!("{k}={v}")).collect();
    Ok(MassDistribution::from_parts(frame.clone(), focal, tags))
}

/// True iff some pair of focal elements intersects, i.e. Dempster's rule applies.
pub fn conditional_combinable(m1: &MassDistribution, m2: &MassDistribution) -> Result<bool> {
    m1.frame().ensure_same(m2.frame())?;
    Ok(m1
        .focal_sets()
        .any(|a| m2.focal_sets().any(|b| a.bits() & b.bits() != 0)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalRow {
    pub id: u64,
    pub first: Option<FocalSet>,
    pub second: Option<FocalSet>,
}

impl ConditionalRow {
    /// Row carries evidence from the first source.
    pub fn tag_first(&self) -> bool {
        self.first.is_some()
    }

    pub fn tag_second(&self) -> bool {
        self.second.is_some()
    }
}

/// A partially filled combined parent relation of two conditional distributions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalParent {
    pub rows: Vec<ConditionalRow>,
    pub frame: Frame,
    /// Conditions of the first and second source.
    pub evidence: (BTreeSet<String>, BTreeSet<String>),
    /// The intersecting focal pair shared by the leading rows.
    pub shared_pair: (FocalSet, FocalSet),
    /// Number of rows carrying the shared pair.
    pub alpha: u64,
}

impl ConditionalParent {
    /// Every row has a filled cell; no doubly filled row has an empty intersection.
    pub fn validate(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        let mut nulls = Vec::new();
        for row in &self.rows {
            if row.id == 0 || !ids.insert(row.id) {
                return Err(Error::InvalidRowName(row.id.to_string()));
            }
            for cell in [&row.first, &row.second].into_iter().flatten() {
                self.frame.ensure_same(cell.frame())?;
                if cell.is_empty() {
                    return Err(Error::EmptyCell {
                        attribute: "Age".into(),
                        row: row.id,
                    });
                }
            }
            match (&row.first, &row.second) {
                (None, None) => {
                    return Err(Error::UnfilledCell {
                        attribute: "Age1,Age2".into(),
                        rows: vec![row.id],
                    })
                }
                (Some(a), Some(b)) if a.bits() & b.bits() == 0 => nulls.push(row.id),
                _ => {}
            }
        }
        if nulls.is_empty() {
            Ok(())
        } else {
            Err(Error::NullConflict { rows: nulls })
        }
    }

    /// Summary of the first column over rows tagged with the first source.
    pub fn first_marginal(&self) -> Result<MassDistribution> {
        self.marginal(|r| r.first.as_ref(), &self.evidence.0)
    }

    pub fn second_marginal(&self) -> Result<MassDistribution> {
        self.marginal(|r| r.second.as_ref(), &self.evidence.1)
    }

    fn marginal<F>(&self, cell: F, tags: &BTreeSet<String>) -> Result<MassDistribution>
    where
        F: Fn(&ConditionalRow) -> Option<&FocalSet>,
    {
        let (focal, total) = frequencies(&self.frame, self.rows.iter().filter_map(cell))?;
        if total == 0 {
            return Err(Error::EmptySelection("no tagged rows".into()));
        }
        Ok(MassDistribution::from_parts(
            self.frame.clone(),
            focal,
            tags.clone(),
        ))
    }
}

fn to_count(n: &BigUint) -> Result<u64> {
    n.to_u64().ok_or_else(|| Error::TooManyRows(n.to_string()))
}

/// Builds a conflict-free combined parent relation.
///
/// Both distributions are scaled to integer counts over `L`, the lcm of their
/// denominators. Among intersecting focal pairs the one maximizing
/// `α = min(a_i, b_j)` is chosen (first in canonical order on ties); `α` rows
/// carry that pair, then every remaining unit of count gets a row of its own
/// with only one cell filled. The relation has `2L - α` rows.
pub fn build_conflict_free_parent(m1: &MassDistribution, m2: &MassDistribution) -> Result<ConditionalParent> {
    m1.frame().ensure_same(m2.frame())?;
    let scale = num::integer::lcm(m1.common_denominator(), m2.common_denominator());
    let counts = |m: &MassDistribution| -> Result<Vec<(FocalSet, u64)>> {
        m.focal()
            .iter()
            .map(|(s, w)| {
                Ok((
                    s.clone(),
                    to_count(&w.scaled_count(&scale).expect("lcm scaling"))?,
                ))
            })
            .collect()
    };
    let mut left = counts(m1)?;
    let mut right = counts(m2)?;

    let mut best: Option<(usize, usize, u64)> = None;
    for (i, (a, ca)) in left.iter().enumerate() {
        for (j, (b, cb)) in right.iter().enumerate() {
            let alpha = (*ca).min(*cb);
            if a.bits() & b.bits() != 0 && best.is_none_or(|(_, _, top)| alpha > top) {
                best = Some((i, j, alpha));
            }
        }
    }
    let (i, j, alpha) = best.ok_or(Error::NotCombinable)?;
    let shared_pair = (left[i].0.clone(), right[j].0.clone());
    left[i].1 -= alpha;
    right[j].1 -= alpha;

    let mut rows = Vec::new();
    let mut push = |first: Option<FocalSet>, second: Option<FocalSet>| {
        let id = rows.len() as u64 + 1;
        rows.push(ConditionalRow { id, first, second });
    };
    for _ in 0..alpha {
        push(Some(shared_pair.0.clone()), Some(shared_pair.1.clone()));
    }
    for (a, n) in &left {
        for _ in 0..*n {
            push(Some(a.clone()), None);
        }
    }
    for (b, n) in &right {
        for _ in 0..*n {
            push(None, Some(b.clone()));
        }
    }
    Ok(ConditionalParent {
        rows,
        frame: m1.frame().clone(),
        evidence: (m1.conditions().clone(), m2.conditions().clone()),
        shared_pair,
        alpha,
    })
}
