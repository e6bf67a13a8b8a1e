//! JSON documents for mass distributions, probability witnesses and
//! multivalued mappings.
//!
//! Mass: `{"frame": [...], "conditions": [...], "focal": [{"set": "[20..22]", "num": 1, "den": 4}]}`
//! Witness: `{"p": [{"label": "a", "num": 1, "den": 2}]}`
//! Mapping: `{"source_frame": [...], "target_frame": [...], "map": {"M": "[20..22]"}}`

use std::collections::BTreeMap;
use std::str::FromStr;

use num::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::conditional::MultivaluedMapping;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::mass::MassDistribution;
use crate::probability::ProbabilityDistribution;
use crate::ratio::Ratio;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MassDoc {
    frame: Vec<String>,
    #[serde(default)]
    conditions: Vec<String>,
    focal: Vec<FocalDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FocalDoc {
    set: String,
    num: Number,
    den: Number,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessDoc {
    p: Vec<LabelWeight>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelWeight {
    label: String,
    num: Number,
    den: Number,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MappingDoc {
    source_frame: Vec<String>,
    target_frame: Vec<String>,
    map: BTreeMap<String, String>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn big(n: &Number) -> Result<BigUint> {
    let text = n.to_string();
    BigUint::from_str(&text).map_err(|_| Error::Parse(format!("`{text}` is not a non-negative integer")))
}

fn ratio(num: &Number, den: &Number) -> Result<Ratio> {
    Ratio::from_big(big(num)?, big(den)?)
}

pub(crate) fn number(n: &BigUint) -> Number {
    Number::from_str(&n.to_string()).expect("decimal digits form a JSON number")
}

pub fn mass_from_json(text: &str) -> Result<MassDistribution> {
    let doc: MassDoc = serde_json::from_str(text).map_err(parse_err)?;
    let frame = Frame::new(doc.frame)?;
    let pairs = doc
        .focal
        .iter()
        .map(|f| Ok((frame.parse_set(&f.set)?, ratio(&f.num, &f.den)?)))
        .collect::<Result<Vec<_>>>()?;
    MassDistribution::from_focal_list(&frame, pairs, doc.conditions)
}

pub fn mass_to_value(m: &MassDistribution) -> Value {
    let doc = MassDoc {
        frame: m.frame().labels().to_vec(),
        conditions: m.conditions().iter().cloned().collect(),
        focal: m
            .focal()
            .iter()
            .map(|(s, w)| FocalDoc {
                set: s.to_string(),
                num: number(&w.numer()),
                den: number(&w.denom()),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("mass document serializes")
}

pub fn mass_to_json(m: &MassDistribution) -> String {
    pretty(&mass_to_value(m))
}

pub fn ratio_to_value(r: &Ratio) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("num".into(), Value::Number(number(&r.numer())));
    map.insert("den".into(), Value::Number(number(&r.denom())));
    Value::Object(map)
}

/// Reads a witness over `frame`; labels not listed get probability zero.
pub fn probability_from_json(text: &str, frame: &Frame) -> Result<ProbabilityDistribution> {
    let doc: WitnessDoc = serde_json::from_str(text).map_err(parse_err)?;
    let pairs = doc
        .p
        .iter()
        .map(|e| Ok((e.label.as_str(), ratio(&e.num, &e.den)?)))
        .collect::<Result<Vec<_>>>()?;
    ProbabilityDistribution::from_labels(frame, pairs)
}

pub fn probability_to_value(p: &ProbabilityDistribution) -> Value {
    let doc = WitnessDoc {
        p: p.frame()
            .labels()
            .iter()
            .zip(p.values())
            .map(|(label, v)| LabelWeight {
                label: label.clone(),
                num: number(&v.numer()),
                den: number(&v.denom()),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("witness document serializes")
}

pub fn probability_to_json(p: &ProbabilityDistribution) -> String {
    pretty(&probability_to_value(p))
}

pub fn mapping_from_json(text: &str) -> Result<MultivaluedMapping> {
    let doc: MappingDoc = serde_json::from_str(text).map_err(parse_err)?;
    let source = Frame::new(doc.source_frame)?;
    let target = Frame::new(doc.target_frame)?;
    let images = doc
        .map
        .iter()
        .map(|(label, expr)| Ok((label.as_str(), target.parse_set(expr)?)))
        .collect::<Result<Vec<_>>>()?;
    MultivaluedMapping::new(&source, &target, images)
}

pub fn mapping_to_json(gamma: &MultivaluedMapping) -> String {
    let mut map = serde_json::Map::new();
    map.insert(
        "source_frame".into(),
        Value::from(gamma.source_frame().labels().to_vec()),
    );
    map.insert(
        "target_frame".into(),
        Value::from(gamma.target_frame().labels().to_vec()),
    );
    let images: serde_json::Map<String, Value> = gamma
        .iter()
        .map(|(l, s)| (l.to_string(), Value::from(s.to_string())))
        .collect();
    map.insert("map".into(), Value::Object(images));
    pretty(&Value::Object(map))
}

/// Two-space indented JSON with a trailing newline.
pub fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}
