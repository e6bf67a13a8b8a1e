//! Read mass distributions as bounds on a point probability: check a
//! candidate, build one by allocation, and search for one satisfying two
//! distributions at once.

use evicomb::{
    allocation_distribution, joint_satisfiable, satisfies, Frame, MassDistribution, ProbabilityDistribution,
    Ratio,
};

fn main() -> evicomb::Result<()> {
    let frame = Frame::new(["a", "b", "c"])?;
    let m1 = MassDistribution::from_focal_list(
        &frame,
        [
            (frame.parse_set("{a}")?, Ratio::new(1, 2)?),
            (frame.full(), Ratio::new(1, 2)?),
        ],
        Vec::<String>::new(),
    )?;
    let m2 = MassDistribution::from_focal_list(
        &frame,
        [
            (frame.parse_set("{b|c}")?, Ratio::new(1, 3)?),
            (frame.parse_set("{a|b}")?, Ratio::new(2, 3)?),
        ],
        Vec::<String>::new(),
    )?;

    let uniform = ProbabilityDistribution::new(&frame, vec![Ratio::new(1, 3)?; 3])?;
    println!("uniform satisfies m1: {}", satisfies(&uniform, &m1)?);

    let p = allocation_distribution(&m1)?;
    println!(
        "allocation of m1: {:?}",
        p.values().iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    println!("  satisfies m1: {}", satisfies(&p, &m1)?);

    match joint_satisfiable(&m1, &m2)? {
        Some(w) => {
            let values: Vec<String> = w.values().iter().map(ToString::to_string).collect();
            println!("satisfies both: {values:?}");
        }
        None => println!("no probability satisfies both"),
    }
    Ok(())
}
