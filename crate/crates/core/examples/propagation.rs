//! Induce an age distribution from a sex distribution through a multivalued
//! mapping, starting from a partially filled relation.

use evicomb::formats::csv::{parse_frame_spec, relation_from_csv};
use evicomb::{parse_conditions, propagate, summarize_where, MultivaluedMapping};
use std::collections::BTreeMap;

const EMP: &str =
    "Name,Age,Sex,Dept\n1,,{F},{Acct}\n2,,{M},{Acct}\n3,,{F},{Acct}\n4,,{F},{Acct}\n5,,{M},{Eng}\n";

fn main() -> evicomb::Result<()> {
    let frames = BTreeMap::from([("Age".to_string(), parse_frame_spec("20..35")?)]);
    let emp = relation_from_csv("EMP", EMP, &frames)?;
    let sex = summarize_where(&emp, "Sex", &parse_conditions("Dept=Acct")?)?;
    println!("sex in accounting: {:?}", sex);

    let ages = emp.frame_of("Age")?;
    let gamma = MultivaluedMapping::new(
        sex.frame(),
        ages,
        [
            ("M", ages.parse_set("[20..22]")?),
            ("F", ages.parse_set("[21..23]")?),
        ],
    )?;
    let age = propagate(&sex, &gamma)?;
    println!("ages in accounting, under {:?}:", age.conditions());
    for (set, weight) in age.focal() {
        println!("  {set:<12} {weight}");
    }
    Ok(())
}
