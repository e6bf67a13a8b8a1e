//! Summarize a set-valued column into a granular distribution and read off
//! belief and plausibility.

use evicomb::formats::csv::relation_from_csv;
use evicomb::{canonical_parent, summarize};
use std::collections::BTreeMap;

const EMP: &str = "Name,Age\n1,[22..26]\n2,[20..22]\n3,[30..35]\n4,[20..22]\n5,[28..30]\n";

fn main() -> evicomb::Result<()> {
    let emp = relation_from_csv("EMP", EMP, &BTreeMap::new())?;
    let summary = summarize(&emp, "Age")?;
    let delta = &summary.distribution;
    println!("granular distribution of Age over {} rows:", summary.row_count);
    for (set, weight) in delta.focal() {
        println!("  {set:<24} {weight}");
    }

    let frame = delta.frame();
    for expr in ["[20..24]", "[28..35]", "{22}"] {
        let d = frame.parse_set(expr)?;
        println!(
            "Bel({expr}) = {}, Pls({expr}) = {}",
            delta.belief(&d)?,
            delta.plausibility(&d)?
        );
    }

    // any multiple of the common denominator gives a parent relation
    let parent = canonical_parent(delta, 10)?;
    println!("a 10-row parent relation has {} rows", parent.len());
    Ok(())
}
