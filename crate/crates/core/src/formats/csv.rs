//! Relation tables as CSV.
//!
//! The header is `Name,<attr1>,<attr2>,...`; `Name` holds positive integers
//! and every other cell is a set expression (`{a|b}`, `[lo..hi]`, `*`) or
//! empty for an unfilled value. CSV carries no frame metadata, so frames are
//! either declared by the caller or inferred from the cells (see
//! [`infer_frames`]).

use std::collections::{BTreeMap, BTreeSet};

use crate::conditional::ConditionalParent;
use crate::error::{Error, Result};
use crate::frame::{is_valid_label, FocalSet, Frame};
use crate::relational::Relation;

struct RawTable {
    attributes: Vec<String>,
    rows: Vec<(u64, Vec<String>)>,
}

fn read_raw(text: &str) -> Result<RawTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    let mut cols = header.iter();
    if cols.next() != Some("Name") {
        return Err(Error::Parse("first CSV column must be `Name`".into()));
    }
    let attributes: Vec<String> = cols.map(str::to_string).collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let name = &record[0];
        let id: u64 = name
            .parse()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| Error::InvalidRowName(name.to_string()))?;
        rows.push((id, record.iter().skip(1).map(str::to_string).collect()));
    }
    Ok(RawTable { attributes, rows })
}

/// Labels or range endpoints mentioned by one cell.
fn cell_tokens(cell: &str) -> Result<(Vec<String>, bool)> {
    let t = cell.trim();
    if t.is_empty() || t == "*" {
        return Ok((Vec::new(), false));
    }
    let malformed = |reason: &str| Error::MalformedExpr {
        expr: cell.to_string(),
        reason: reason.to_string(),
    };
    if let Some(inner) = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
        if inner.trim().is_empty() {
            return Ok((Vec::new(), false));
        }
        let labels = inner.split('|').map(|l| l.trim().to_string()).collect::<Vec<_>>();
        if labels.iter().any(|l| !is_valid_label(l)) {
            return Err(malformed("expected a label between separators"));
        }
        return Ok((labels, false));
    }
    if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let (lo, hi) = inner
            .split_once("..")
            .ok_or_else(|| malformed("expected `[lo..hi]`"))?;
        return Ok((vec![lo.trim().to_string(), hi.trim().to_string()], true));
    }
    Err(malformed("expected `{...}`, `[lo..hi]` or `*`"))
}

/// Parses a frame declaration: `lo..hi` for integer labels, otherwise `a|b|c`.
pub fn parse_frame_spec(spec: &str) -> Result<Frame> {
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once("..") {
        if let (Ok(lo), Ok(hi)) = (lo.trim().parse::<i64>(), hi.trim().parse::<i64>()) {
            return Frame::integer_range(lo, hi);
        }
        return Err(Error::Parse(format!("invalid frame range `{spec}`")));
    }
    Frame::new(spec.split('|').map(|l| l.trim().to_string()))
}

/// Frames for every attribute of the given tables that is not in `declared`.
///
/// When every label and range endpoint in a column is an integer, the frame
/// is the contiguous integer range from the smallest to the largest; otherwise
/// it is the sorted set of labels, and ranges are rejected. Columns that
/// mention no label at all cannot be inferred.
pub fn infer_frames(texts: &[&str], declared: &BTreeMap<String, Frame>) -> Result<BTreeMap<String, Frame>> {
    let mut tokens: BTreeMap<String, (BTreeSet<String>, Option<String>)> = BTreeMap::new();
    for text in texts {
        let raw = read_raw(text)?;
        for (k, attr) in raw.attributes.iter().enumerate() {
            if declared.contains_key(attr) {
                continue;
            }
            let entry = tokens.entry(attr.clone()).or_default();
            for (_, cells) in &raw.rows {
                let Some(cell) = cells.get(k) else { continue };
                let (labels, range) = cell_tokens(cell)?;
                entry.0.extend(labels);
                if range && entry.1.is_none() {
                    entry.1 = Some(cell.trim().to_string());
                }
            }
        }
    }
    let mut frames = declared.clone();
    for (attr, (labels, range)) in tokens {
        if labels.is_empty() {
            return Err(Error::Parse(format!(
                "cannot infer a frame for attribute `{attr}`; declare it explicitly"
            )));
        }
        let ints: Option<Vec<i64>> = labels.iter().map(|l| l.parse().ok()).collect();
        let frame = match ints {
            Some(values) => {
                let lo = *values.iter().min().expect("non-empty");
                let hi = *values.iter().max().expect("non-empty");
                Frame::integer_range(lo, hi)?
            }
            None => {
                if let Some(expr) = range {
                    return Err(Error::RangeOverNonIntegerFrame(expr));
                }
                Frame::new(labels)?
            }
        };
        frames.insert(attr, frame);
    }
    Ok(frames)
}

/// Reads a relation; attributes missing from `frames` get inferred frames.
pub fn relation_from_csv(name: &str, text: &str, frames: &BTreeMap<String, Frame>) -> Result<Relation> {
    let frames = infer_frames(&[text], frames)?;
    let raw = read_raw(text)?;
    let attrs: Vec<(String, Frame)> = raw
        .attributes
        .iter()
        .map(|a| (a.clone(), frames[a].clone()))
        .collect();
    let mut relation = Relation::new(name, attrs.clone())?;
    for (id, cells) in raw.rows {
        let parsed = cells
            .iter()
            .zip(&attrs)
            .map(|(cell, (_, frame))| {
                if cell.trim().is_empty() {
                    Ok(None)
                } else {
                    frame.parse_set(cell).map(Some)
                }
            })
            .collect::<Result<Vec<Option<FocalSet>>>>()?;
        relation.push_row(id, parsed)?;
    }
    Ok(relation)
}

fn cell(set: Option<&FocalSet>) -> String {
    set.map(ToString::to_string).unwrap_or_default()
}

fn write_rows(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(&header).expect("in-memory CSV write");
    for row in rows {
        writer.write_record(&row).expect("in-memory CSV write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory CSV flush")).expect("UTF-8 CSV")
}

pub fn relation_to_csv(relation: &Relation) -> String {
    let header = std::iter::once("Name".to_string())
        .chain(relation.attributes().iter().cloned())
        .collect();
    let rows = relation
        .rows()
        .iter()
        .map(|row| {
            std::iter::once(row.id.to_string())
                .chain(row.cells.iter().map(|c| cell(c.as_ref())))
                .collect()
        })
        .collect();
    write_rows(header, rows)
}

/// `Name,Age1,Age2,E1,E2` with `1` marking the evidence tags.
pub fn conditional_parent_to_csv(parent: &ConditionalParent) -> String {
    let header = ["Name", "Age1", "Age2", "E1", "E2"].map(String::from).to_vec();
    let flag = |b: bool| if b { "1".to_string() } else { String::new() };
    let rows = parent
        .rows
        .iter()
        .map(|row| {
            vec![
                row.id.to_string(),
                cell(row.first.as_ref()),
                cell(row.second.as_ref()),
                flag(row.tag_first()),
                flag(row.tag_second()),
            ]
        })
        .collect();
    write_rows(header, rows)
}
