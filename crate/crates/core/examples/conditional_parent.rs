//! Build the conflict-free parent relation of two conditional granular
//! distributions and recover both inputs from it.

use evicomb::formats::csv::conditional_parent_to_csv;
use evicomb::{build_conflict_free_parent, dempster_combine, Frame, MassDistribution, Ratio};

fn main() -> evicomb::Result<()> {
    let ages = Frame::integer_range(20, 35)?;
    let acct = MassDistribution::from_focal_list(
        &ages,
        [
            (ages.parse_set("[20..22]")?, Ratio::new(1, 4)?),
            (ages.parse_set("[21..23]")?, Ratio::new(3, 4)?),
        ],
        ["Dept=Acct"],
    )?;
    let ca = MassDistribution::from_focal_list(
        &ages,
        [
            (ages.parse_set("[22..24]")?, Ratio::new(2, 3)?),
            (ages.parse_set("[30..35]")?, Ratio::new(1, 3)?),
        ],
        ["State=CA"],
    )?;

    let parent = build_conflict_free_parent(&acct, &ca)?;
    parent.validate()?;
    println!(
        "{} rows, the first {} sharing {} and {}",
        parent.rows.len(),
        parent.alpha,
        parent.shared_pair.0,
        parent.shared_pair.1
    );
    print!("{}", conditional_parent_to_csv(&parent));
    assert_eq!(parent.first_marginal()?, acct);
    assert_eq!(parent.second_marginal()?, ca);
    println!("both marginals recovered exactly");

    let combined = dempster_combine(&acct, &ca)?;
    println!("combined under {:?}:", combined.conditions());
    for (set, weight) in combined.focal() {
        println!("  {set:<14} {weight}");
    }
    Ok(())
}
