//! The same two distributions, read both ways: Dempster's rule applies to
//! them as conditional distributions, yet they have no conflict-free
//! unconditioned parent relation.

use evicomb::{
    build_conflict_free_parent, conditional_combinable, conflict_weight, dempster_combine, joint_satisfiable,
    zadeh_combinable, Frame, MassDistribution, Ratio,
};

fn main() -> evicomb::Result<()> {
    let frame = Frame::new(["a", "b"])?;
    let a = frame.parse_set("{a}")?;
    let b = frame.parse_set("{b}")?;
    let half = MassDistribution::from_focal_list(
        &frame,
        [(a.clone(), Ratio::new(1, 2)?), (b.clone(), Ratio::new(1, 2)?)],
        Vec::<String>::new(),
    )?;
    let skew = MassDistribution::from_focal_list(
        &frame,
        [(a, Ratio::new(3, 4)?), (b, Ratio::new(1, 4)?)],
        Vec::<String>::new(),
    )?;

    let z = zadeh_combinable(&half, &skew)?;
    println!("unconditioned: conflict-free parent exists = {}", z.feasible);
    println!(
        "unconditioned: some probability satisfies both = {}",
        joint_satisfiable(&half, &skew)?.is_some()
    );

    let e1 = half.with_conditions(["E1"]);
    let e2 = skew.with_conditions(["E2"]);
    println!("conditional: combinable = {}", conditional_combinable(&e1, &e2)?);
    println!(
        "conflict weight K = {}",
        conflict_weight(&e1, &e2)?.conflict_weight
    );
    let parent = build_conflict_free_parent(&e1, &e2)?;
    println!("conditional parent: {} rows, no nulls", parent.rows.len());
    let m = dempster_combine(&e1, &e2)?;
    for (set, weight) in m.focal() {
        println!("  {set} {weight}");
    }
    Ok(())
}
