//! Set-valued relations and the unconditioned (granular) reading of masses.
//!
//! A [`Relation`] is a table of named rows whose attribute cells are subsets
//! of a per-attribute frame. Summarizing one attribute column gives a
//! granular distribution; any relation that summarizes to a distribution is
//! one of its parent relations.

mod combinable;
mod envelope;

use std::collections::{BTreeMap, HashMap, HashSet};

use num::{BigUint, ToPrimitive};

use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::mass::MassDistribution;
use crate::ratio::Ratio;

pub use combinable::{zadeh_combinable, CombinabilityWitness};
pub use envelope::{check_envelope, check_envelope_with_limits, envelope_violation};

/// Attribute name used by [`canonical_parent`] for bare distributions.
pub const DEFAULT_ATTRIBUTE: &str = "Value";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub id: u64,
    /// One entry per attribute; `None` is an unfilled cell.
    pub cells: Vec<Option<FocalSet>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    name: String,
    attributes: Vec<String>,
    frames: Vec<Frame>,
    rows: Vec<Row>,
    ids: HashSet<u64>,
}

impl Relation {
    pub fn new<I, S>(name: impl Into<String>, attributes: I) -> Result<Relation>
    where
        I: IntoIterator<Item = (S, Frame)>,
        S: Into<String>,
    {
        let (attributes, frames): (Vec<String>, Vec<Frame>) =
            attributes.into_iter().map(|(a, f)| (a.into(), f)).unzip();
        let mut seen = HashSet::new();
        for a in &attributes {
            if a.is_empty() || a == "Name" || !seen.insert(a.as_str()) {
                return Err(Error::Parse(format!("invalid or repeated attribute name `{a}`")));
            }
        }
        Ok(Relation {
            name: name.into(),
            attributes,
            frames,
            rows: Vec::new(),
            ids: HashSet::new(),
        })
    }

    /// Appends a row. Cells must lie in their attribute's frame and never be empty.
    pub fn push_row(&mut self, id: u64, cells: Vec<Option<FocalSet>>) -> Result<()> {
        if id == 0 || self.ids.contains(&id) {
            return Err(Error::InvalidRowName(id.to_string()));
        }
        if cells.len() != self.attributes.len() {
            return Err(Error::RowMismatch(format!(
                "row {id} has {} cells, expected {}",
                cells.len(),
                self.attributes.len()
            )));
        }
        for (k, cell) in cells.iter().enumerate() {
            if let Some(set) = cell {
                self.frames[k].ensure_same(set.frame())?;
                if set.is_empty() {
                    return Err(Error::EmptyCell {
                        attribute: self.attributes[k].clone(),
                        row: id,
                    });
                }
            }
        }
        self.ids.insert(id);
        self.rows.push(Row { id, cells });
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn attribute_index(&self, attribute: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|a| a == attribute)
            .ok_or_else(|| Error::UnknownAttribute(attribute.to_string()))
    }

    pub fn frame_of(&self, attribute: &str) -> Result<&Frame> {
        Ok(&self.frames[self.attribute_index(attribute)?])
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    /// The filled cells of one attribute, in row order; fails if any is unfilled.
    pub(crate) fn filled_column(&self, attribute: &str) -> Result<Vec<(u64, &FocalSet)>> {
        let k = self.attribute_index(attribute)?;
        let mut unfilled = Vec::new();
        let mut out = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            match &row.cells[k] {
                Some(set) => out.push((row.id, set)),
                None => unfilled.push(row.id),
            }
        }
        if unfilled.is_empty() {
            Ok(out)
        } else {
            Err(Error::UnfilledCell {
                attribute: attribute.to_string(),
                rows: unfilled,
            })
        }
    }
}

/// A granular distribution together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GranularSummary {
    pub distribution: MassDistribution,
    pub source_relation: String,
    pub attribute: String,
    pub row_count: u64,
}

impl GranularSummary {
    /// [`canonical_parent`] keeping this summary's relation and attribute names.
    pub fn canonical_parent(&self, size: u64) -> Result<Relation> {
        parent_rows(&self.distribution, &self.source_relation, &self.attribute, size)
    }
}

/// Counts of each distinct set, normalized by the number of sets.
pub(crate) fn frequencies<'a, I>(frame: &Frame, cells: I) -> Result<(BTreeMap<FocalSet, Ratio>, u64)>
where
    I: IntoIterator<Item = &'a FocalSet>,
{
    let mut counts: BTreeMap<FocalSet, u64> = BTreeMap::new();
    let mut total = 0u64;
    for set in cells {
        frame.ensure_same(set.frame())?;
        *counts.entry(set.clone()).or_default() += 1;
        total += 1;
    }
    let focal = counts
        .into_iter()
        .map(|(s, c)| Ok((s, Ratio::new(c, total)?)))
        .collect::<Result<_>>()?;
    Ok((focal, total))
}

/// Granular distribution of one attribute: each distinct cell value weighted
/// by the fraction of rows holding it.
pub fn summarize(relation: &Relation, attribute: &str) -> Result<GranularSummary> {
    let column = relation.filled_column(attribute)?;
    if column.is_empty() {
        return Err(Error::EmptySelection(format!(
            "relation `{}` has no rows",
            relation.name()
        )));
    }
    let frame = relation.frame_of(attribute)?;
    let (focal, row_count) = frequencies(frame, column.iter().map(|(_, s)| *s))?;
    Ok(GranularSummary {
        distribution: MassDistribution::from_parts(frame.clone(), focal, Default::default()),
        source_relation: relation.name().to_string(),
        attribute: attribute.to_string(),
        row_count,
    })
}

/// The canonical `size`-row parent relation of `m`: each focal set fills
/// `weight·size` consecutive rows, focal sets in canonical order.
pub fn canonical_parent(m: &MassDistribution, size: u64) -> Result<Relation> {
    parent_rows(m, "parent", DEFAULT_ATTRIBUTE, size)
}

fn parent_rows(m: &MassDistribution, name: &str, attribute: &str, size: u64) -> Result<Relation> {
    let not_multiple = || Error::SizeNotCommonMultiple {
        size,
        lcm: m.common_denominator().to_string(),
    };
    let scale = BigUint::from(size);
    let mut relation = Relation::new(name, [(attribute, m.frame().clone())])?;
    let mut id = 0u64;
    for (set, weight) in m.focal() {
        let count = weight
            .scaled_count(&scale)
            .and_then(|c| c.to_u64())
            .filter(|&c| c > 0)
            .ok_or_else(not_multiple)?;
        for _ in 0..count {
            id += 1;
            relation.push_row(id, vec![Some(set.clone())])?;
        }
    }
    Ok(relation)
}

/// Entrywise intersection of one attribute of two relations aligned by row name.
///
/// Any empty intersection is a null value, reported with every offending row.
pub fn combine_relations(r1: &Relation, r2: &Relation, attribute: &str) -> Result<Relation> {
    if r1.len() != r2.len() {
        return Err(Error::RowMismatch(format!(
            "{} rows versus {} rows",
            r1.len(),
            r2.len()
        )));
    }
    let frame = r1.frame_of(attribute)?;
    frame.ensure_same(r2.frame_of(attribute)?)?;
    let left = r1.filled_column(attribute)?;
    let right: HashMap<u64, &FocalSet> = r2.filled_column(attribute)?.into_iter().collect();

    let mut out = Relation::new(
        format!("{}*{}", r1.name(), r2.name()),
        [(attribute, frame.clone())],
    )?;
    let mut nulls = Vec::new();
    for (id, a) in left {
        let b = right
            .get(&id)
            .ok_or_else(|| Error::RowMismatch(format!("row {id} missing from `{}`", r2.name())))?;
        let c = a.intersect(b)?;
        if c.is_empty() {
            nulls.push(id);
        } else if nulls.is_empty() {
            out.push_row(id, vec![Some(c)])?;
        }
    }
    if nulls.is_empty() {
        Ok(out)
    } else {
        Err(Error::NullConflict { rows: nulls })
    }
}
