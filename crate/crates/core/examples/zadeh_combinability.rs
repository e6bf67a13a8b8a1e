//! Whether two unconditioned granular distributions have a conflict-free
//! combined parent relation, with the joint weighting that proves it.

use evicomb::{canonical_parent, combine_relations, zadeh_combinable, Frame, MassDistribution, Ratio};

fn mass(frame: &Frame, pairs: &[(&str, u64, u64)]) -> evicomb::Result<MassDistribution> {
    let pairs = pairs
        .iter()
        .map(|(e, n, d)| Ok((frame.parse_set(e)?, Ratio::new(*n, *d)?)))
        .collect::<evicomb::Result<Vec<_>>>()?;
    MassDistribution::from_focal_list(frame, pairs, Vec::<String>::new())
}

fn main() -> evicomb::Result<()> {
    let frame = Frame::integer_range(20, 35)?;
    let m1 = mass(&frame, &[("[20..24]", 1, 2), ("[28..35]", 1, 2)])?;
    let m2 = mass(&frame, &[("[22..30]", 3, 4), ("[33..35]", 1, 4)])?;
    let w = zadeh_combinable(&m1, &m2)?;
    println!("combinable: {}", w.feasible);
    for ((a, b), weight) in w.joint_weights.iter().flatten() {
        println!("  {a} with {b}: {weight}");
    }
    for ((a, b), rows) in w.row_counts().unwrap_or_default() {
        println!("  {rows} parent rows pair {a} with {b}");
    }

    // canonical parents are one alignment among many
    let r1 = canonical_parent(&m1, 4)?;
    let r2 = canonical_parent(&m2, 4)?;
    match combine_relations(&r1, &r2, "Value") {
        Ok(r) => println!("canonical parents combine into {} rows", r.len()),
        Err(e) => println!("canonical parents clash: {e}"),
    }

    let m3 = mass(&frame, &[("[20..21]", 1, 2), ("[30..31]", 1, 2)])?;
    let m4 = mass(&frame, &[("[20..21]", 1, 4), ("[25..27]", 3, 4)])?;
    let w = zadeh_combinable(&m3, &m4)?;
    println!(
        "second pair combinable: {}, blocked by {}",
        w.feasible,
        w.blocking_focal
            .map(|s| s.to_string())
            .unwrap_or("nothing".into())
    );
    Ok(())
}
