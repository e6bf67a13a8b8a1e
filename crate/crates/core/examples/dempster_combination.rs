//! Dempster's rule with its conflict weight, including the totally
//! conflicting case.

use evicomb::{conflict_weight, dempster_combine, Error, Frame, MassDistribution, Ratio};

fn main() -> evicomb::Result<()> {
    let frame = Frame::new(["a", "b", "c"])?;
    let half = Ratio::new(1, 2)?;
    let m1 = MassDistribution::from_focal_list(
        &frame,
        [
            (frame.parse_set("{a}")?, half.clone()),
            (frame.full(), half.clone()),
        ],
        ["E1"],
    )?;
    let m2 = MassDistribution::from_focal_list(
        &frame,
        [(frame.parse_set("{b|c}")?, half.clone()), (frame.full(), half)],
        ["E2"],
    )?;

    let report = conflict_weight(&m1, &m2)?;
    println!("conflict weight K = {}", report.conflict_weight);
    for (a, b, w) in &report.conflicting_pairs {
        println!("  {a} and {b} are disjoint, weight {w}");
    }
    let m = dempster_combine(&m1, &m2)?;
    println!("combined under {:?}:", m.conditions());
    for (set, weight) in m.focal() {
        println!("  {set:<8} {weight}");
    }

    let only_a =
        MassDistribution::from_focal_list(&frame, [(frame.parse_set("{a}")?, Ratio::one())], ["E3"])?;
    let only_b =
        MassDistribution::from_focal_list(&frame, [(frame.parse_set("{b}")?, Ratio::one())], ["E4"])?;
    match dempster_combine(&only_a, &only_b) {
        Err(Error::TotalConflict) => println!("{{a}} against {{b}}: {}", Error::TotalConflict),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
