//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use common::*;
use evicomb::formats::json::mass_from_json;
use evicomb::{
    build_conflict_free_parent, check_envelope, conditional_combinable, conflict_weight, dempster_combine,
    joint_satisfiable, propagate, satisfies, summarize, zadeh_combinable, Error, Frame, MassDistribution,
    MultivaluedMapping, Relation,
};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    check: fn() -> Outcome,
}

fn ages() -> Frame {
    Frame::integer_range(20, 35).unwrap()
}

fn emp_delta() -> Outcome {
    let f = ages();
    let mut emp = Relation::new("EMP", [("Age", f.clone())]).unwrap();
    for (id, cell) in [
        (1, "[22..26]"),
        (2, "[20..22]"),
        (3, "[30..35]"),
        (4, "[20..22]"),
        (5, "[28..30]"),
    ] {
        emp.push_row(id, vec![Some(f.parse_set(cell).unwrap())]).unwrap();
    }
    let got = summarize(&emp, "Age").map_err(|e| e.to_string())?.distribution;
    let expected = mass(
        &f,
        &[
            ("[22..26]", ratio(1, 5)),
            ("[20..22]", ratio(2, 5)),
            ("[30..35]", ratio(1, 5)),
            ("[28..30]", ratio(1, 5)),
        ],
        &[],
    );
    ensure!(got == expected, "got {:?}", describe(&got));
    Ok("4 focal elements, exact".into())
}

fn accounting_propagation() -> Outcome {
    let sex = Frame::new(["M", "F"]).unwrap();
    let f = ages();
    let gamma = MultivaluedMapping::new(
        &sex,
        &f,
        [
            ("M", f.parse_set("[20..22]").unwrap()),
            ("F", f.parse_set("[21..23]").unwrap()),
        ],
    )
    .unwrap();
    let source = mass(
        &sex,
        &[("{M}", ratio(1, 4)), ("{F}", ratio(3, 4))],
        &["Dept=Acct"],
    );
    let got = propagate(&source, &gamma).map_err(|e| e.to_string())?;
    let expected = mass(
        &f,
        &[("[20..22]", ratio(1, 4)), ("[21..23]", ratio(3, 4))],
        &["Dept=Acct"],
    );
    ensure!(got == expected, "got {:?}", describe(&got));
    ensure!(got.conditions().contains("Dept=Acct"), "condition tag lost");
    Ok("exact, tag {Dept=Acct} kept".into())
}

/// Largest `min(a_i, b_j)` over intersecting pairs, from integer counts.
fn best_alpha(m1: &MassDistribution, m2: &MassDistribution) -> Option<u64> {
    let (left, right, _) = counts(m1, m2);
    left.iter()
        .flat_map(|a| right.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a.0 & b.0 != 0)
        .map(|(a, b)| a.1.min(b.1))
        .max()
}

fn parent_construction() -> Outcome {
    let mut rng = rng(3);
    let mut built = 0;
    while built < 500 {
        let frame = letter_frame(rng.gen_range(1..=10));
        let m1 = random_mass(&mut rng, &frame, 5, 12, &["E1"]);
        let m2 = random_mass(&mut rng, &frame, 5, 12, &["E2"]);
        if !some_pair_intersects(&m1, &m2) {
            continue;
        }
        built += 1;
        let parent = build_conflict_free_parent(&m1, &m2)
            .map_err(|e| format!("build failed on {:?} / {:?}: {e}", describe(&m1), describe(&m2)))?;
        parent.validate().map_err(|e| format!("invalid parent: {e}"))?;
        let (_, _, scale) = counts(&m1, &m2);
        let alpha = best_alpha(&m1, &m2).unwrap();
        ensure!(
            parent.alpha == alpha,
            "alpha {} but best pair gives {alpha}",
            parent.alpha
        );
        ensure!(
            parent.rows.len() as u64 == 2 * scale - alpha,
            "{} rows, expected {}",
            parent.rows.len(),
            2 * scale - alpha
        );
        let (a, b) = &parent.shared_pair;
        for (k, row) in parent.rows.iter().enumerate() {
            ensure!(row.id == k as u64 + 1, "row ids are not 1..n");
            if (k as u64) < alpha {
                ensure!(
                    row.first.as_ref() == Some(a) && row.second.as_ref() == Some(b),
                    "row {} lost the shared pair",
                    row.id
                );
            } else {
                ensure!(
                    row.first.is_some() != row.second.is_some(),
                    "row {} is not singly filled",
                    row.id
                );
            }
        }
        ensure!(parent.first_marginal().unwrap() == m1, "first marginal differs");
        ensure!(parent.second_marginal().unwrap() == m2, "second marginal differs");
        ensure!(
            conditional_combinable(&m1, &m2).unwrap(),
            "decision disagrees with construction"
        );
        ensure!(
            dempster_combine(&m1, &m2).is_ok(),
            "Dempster's rule failed on a combinable pair"
        );
    }
    for _ in 0..100 {
        let frame = letter_frame(rng.gen_range(2..=10));
        let (m1, m2) = disjoint_pair(&mut rng, &frame, 5, 12);
        ensure!(
            build_conflict_free_parent(&m1, &m2) == Err(Error::NotCombinable),
            "disjoint pair built a parent"
        );
        ensure!(
            dempster_combine(&m1, &m2) == Err(Error::TotalConflict),
            "disjoint pair combined"
        );
        ensure!(
            !conditional_combinable(&m1, &m2).unwrap(),
            "disjoint pair reported combinable"
        );
    }
    Ok("500 parents valid with exact marginals; 100 disjoint pairs rejected".into())
}

fn envelope_chain() -> Outcome {
    let mut rng = rng(4);
    let mut cross_checked = 0;
    for _ in 0..500 {
        let frame = letter_frame(rng.gen_range(1..=12));
        let rows = rng.gen_range(1..=8);
        let (ra, rb) = refined_pair(&mut rng, &frame, rows);
        ensure!(check_envelope(&ra, &rb, "Value").unwrap(), "counterexample found");
        if frame.size() <= 8 {
            // the same chain through summaries and Bel/Pls
            let ma = summarize(&ra, "Value").unwrap().distribution;
            let mb = summarize(&rb, "Value").unwrap().distribution;
            for d in frame.powerset(&Default::default()).unwrap() {
                let chain = [
                    ma.belief(&d).unwrap(),
                    mb.belief(&d).unwrap(),
                    mb.plausibility(&d).unwrap(),
                    ma.plausibility(&d).unwrap(),
                ];
                ensure!(chain.windows(2).all(|w| w[0] <= w[1]), "chain fails at {d}");
            }
            cross_checked += 1;
        }
    }
    Ok(format!(
        "500 pairs, 0 counterexamples ({cross_checked} re-derived through Bel/Pls)"
    ))
}

fn implication() -> Outcome {
    let mut rng = rng(5);
    let (mut feasible, mut infeasible) = (0, 0);
    for k in 0..300 {
        let frame = letter_frame(rng.gen_range(1..=8));
        let (m1, m2) = if k % 2 == 0 {
            let den = rng.gen_range(1..=12);
            combinable_pair(&mut rng, &frame, 5, den)
        } else {
            (
                random_mass(&mut rng, &frame, 5, 12, &[]),
                random_mass(&mut rng, &frame, 5, 12, &[]),
            )
        };
        let z = zadeh_combinable(&m1, &m2).unwrap();
        let witness = joint_satisfiable(&m1, &m2).unwrap();
        if z.feasible {
            feasible += 1;
            let p = witness.ok_or_else(|| {
                format!(
                    "no witness for combinable {:?} / {:?}",
                    describe(&m1),
                    describe(&m2)
                )
            })?;
            ensure!(
                satisfies(&p, &m1).unwrap() && satisfies(&p, &m2).unwrap(),
                "witness fails its inputs"
            );
        } else {
            infeasible += 1;
        }
    }
    Ok(format!(
        "{feasible} combinable pairs all satisfiable; {infeasible} others"
    ))
}

fn blocking_focal() -> Outcome {
    let mut rng = rng(6);
    for _ in 0..50 {
        let frame = letter_frame(rng.gen_range(2..=8));
        let full = frame.full().bits();
        let blocked = loop {
            let bits = rng.gen::<u64>() & full;
            if bits != 0 && bits != full {
                break frame.set_from_bits(bits).unwrap();
            }
        };
        let den = rng.gen_range(2..=12);
        let m2 = random_mass_in(&mut rng, &frame, Some(full & !blocked.bits()), 4, den, &[]);
        // the other focal elements of m1 all meet some focal element of m2
        let mut sets = vec![blocked.clone()];
        while sets.len() < rng.gen_range(1..=4) {
            let s = random_subset(&mut rng, &frame);
            if !sets.contains(&s) && m2.focal_sets().any(|b| b.bits() & s.bits() != 0) {
                sets.push(s);
            }
        }
        let n = sets.len() as u64;
        let den1 = n + rng.gen_range(0..=4);
        let mut counts = vec![1u64; sets.len()];
        counts[0] += den1 - n;
        let m1 = mass_from_counts(&frame, sets, &counts, den1, &[]);
        let z = zadeh_combinable(&m1, &m2).unwrap();
        ensure!(!z.feasible, "blocked instance reported feasible");
        ensure!(z.joint_weights.is_none(), "infeasible instance carries a witness");
        ensure!(
            z.blocking_focal.as_ref() == Some(&blocked),
            "blocking focal {:?}, expected {blocked}",
            z.blocking_focal
        );
    }
    Ok("50 cases, blocking element named every time".into())
}

fn combination_algebra() -> Outcome {
    let mut rng = rng(7);
    let mut triples = 0;
    while triples < 500 {
        let frame = letter_frame(rng.gen_range(1..=6));
        let m1 = random_mass(&mut rng, &frame, 4, 12, &["E1"]);
        let m2 = random_mass(&mut rng, &frame, 4, 12, &["E2"]);
        let m3 = random_mass(&mut rng, &frame, 4, 12, &["E3"]);
        let (Ok(m12), Ok(m23)) = (dempster_combine(&m1, &m2), dempster_combine(&m2, &m3)) else {
            continue;
        };
        let (Ok(left), Ok(right)) = (dempster_combine(&m12, &m3), dempster_combine(&m1, &m23)) else {
            // both groupings share the unnormalized product, so K = 1 on one side means K = 1 on both
            ensure!(
                dempster_combine(&m12, &m3).is_err() && dempster_combine(&m1, &m23).is_err(),
                "total conflict in only one grouping"
            );
            continue;
        };
        triples += 1;
        ensure!(dempster_combine(&m2, &m1).unwrap() == m12, "not commutative");
        ensure!(
            left == right,
            "not associative: {:?} vs {:?}",
            describe(&left),
            describe(&right)
        );
    }
    for _ in 0..100 {
        let frame = letter_frame(rng.gen_range(1..=8));
        let m = random_mass(&mut rng, &frame, 5, 12, &["E"]);
        let v = MassDistribution::vacuous(&frame);
        ensure!(
            dempster_combine(&m, &v).unwrap() == m,
            "vacuous is not a right identity"
        );
        ensure!(
            dempster_combine(&v, &m).unwrap() == m,
            "vacuous is not a left identity"
        );
    }
    Ok("500 triples commute and associate; 100 identities".into())
}

fn lcm_denominators(rng: &mut rand_chacha::ChaCha8Rng, max: u64) -> (u64, u64) {
    loop {
        let (a, b) = (rng.gen_range(1..=max), rng.gen_range(1..=max));
        let g = (1..=a.min(b)).rev().find(|g| a % g == 0 && b % g == 0).unwrap();
        if a / g * b <= max {
            return (a, b);
        }
    }
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rng(8);
    let (mut yes, mut no) = (0, 0);
    for k in 0..1200 {
        let frame = letter_frame(rng.gen_range(1..=5));
        let (d1, d2) = lcm_denominators(&mut rng, 12);
        let (m1, m2) = if k % 3 == 0 {
            combinable_pair(&mut rng, &frame, 4, d1)
        } else {
            (
                random_mass_in(&mut rng, &frame, None, 4, d1, &[]),
                random_mass_in(&mut rng, &frame, None, 4, d2, &[]),
            )
        };
        let z = zadeh_combinable(&m1, &m2).unwrap();
        let oracle = joint_table_exists(&m1, &m2);
        ensure!(
            z.feasible == oracle,
            "max-flow says {}, table search says {oracle} on {:?} / {:?}",
            z.feasible,
            describe(&m1),
            describe(&m2)
        );
        if let Some(weights) = &z.joint_weights {
            for ((a, b), w) in weights {
                ensure!(a.intersects(b).unwrap(), "witness weights a disjoint pair");
                ensure!(!w.is_zero(), "witness lists a zero cell");
            }
            for (a, wa) in m1.focal() {
                let row: evicomb::Ratio = weights
                    .iter()
                    .filter(|((x, _), _)| x == a)
                    .map(|(_, w)| w.clone())
                    .sum();
                ensure!(&row == wa, "witness row {a} sums to {row}");
            }
            for (b, wb) in m2.focal() {
                let col: evicomb::Ratio = weights
                    .iter()
                    .filter(|((_, y), _)| y == b)
                    .map(|(_, w)| w.clone())
                    .sum();
                ensure!(&col == wb, "witness column {b} sums to {col}");
            }
        }
        if oracle {
            yes += 1;
        } else {
            no += 1;
        }
    }
    let (mut sat, mut unsat) = (0, 0);
    for _ in 0..300 {
        let frame = letter_frame(rng.gen_range(1..=3));
        let m1 = random_mass(&mut rng, &frame, 4, 6, &[]);
        let m2 = random_mass(&mut rng, &frame, 4, 6, &[]);
        let exact = joint_satisfiable(&m1, &m2).unwrap().is_some();
        let oracle = grid_satisfiable(&m1, &m2);
        ensure!(
            exact == oracle,
            "LP says {exact}, grid says {oracle} on {:?} / {:?}",
            describe(&m1),
            describe(&m2)
        );
        if oracle {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    Ok(format!(
        "1200 table-oracle instances ({yes} feasible, {no} not); 300 grid-oracle instances ({sat} satisfiable, {unsat} not)"
    ))
}

fn divergence() -> Outcome {
    let load = |name: &str| {
        mass_from_json(&std::fs::read_to_string(Path::new(FIXTURES).join(name)).unwrap()).unwrap()
    };
    let (half, skew) = (load("half.json"), load("skew.json"));
    let k = conflict_weight(&half, &skew).unwrap().conflict_weight;
    ensure!(k == ratio(1, 2), "K = {k}");
    ensure!(
        conditional_combinable(&half, &skew).unwrap(),
        "not conditional-combinable"
    );
    let f = half.frame().clone();
    let combined = dempster_combine(&half, &skew).unwrap();
    ensure!(
        combined == mass(&f, &[("{a}", ratio(3, 4)), ("{b}", ratio(1, 4))], &[]),
        "combined to {:?}",
        describe(&combined)
    );
    let e1 = half.clone().with_conditions(["E1"]);
    let e2 = skew.clone().with_conditions(["E2"]);
    build_conflict_free_parent(&e1, &e2).map_err(|e| e.to_string())?;
    let z = zadeh_combinable(&half, &skew).unwrap();
    ensure!(!z.feasible, "Zadeh-feasible");
    ensure!(
        joint_satisfiable(&half, &skew).unwrap().is_none(),
        "jointly satisfiable"
    );
    Ok("{a:1/2,b:1/2} vs {a:3/4,b:1/4}: K = 1/2, combined {a:3/4,b:1/4}, no conflict-free unconditioned parent".into())
}

fn cli_determinism() -> Outcome {
    let invocations = golden_invocations();
    for (golden, args) in &invocations {
        let first = evicomb(args);
        let second = evicomb(args);
        ensure!(
            first.code == 0,
            "{args:?} exited {}: {}",
            first.code,
            first.stderr
        );
        ensure!(first.stdout == second.stdout, "{args:?} differs between runs");
        let expected = std::fs::read(Path::new(GOLDEN).join(golden)).unwrap();
        ensure!(first.stdout == expected, "{args:?} differs from {golden}");
    }
    let malformed = malformed_invocations();
    for args in &malformed {
        let run = evicomb(args);
        ensure!(run.code == 1, "{args:?} exited {}", run.code);
        ensure!(run.stdout.is_empty(), "{args:?} wrote to stdout");
    }
    Ok(format!(
        "{} invocations byte-identical; {} malformed inputs exit 1 silently",
        invocations.len(),
        malformed.len()
    ))
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            title: "granular summary of EMP",
            limit: Some(Duration::from_secs(1)),
            check: emp_delta,
        },
        Criterion {
            id: 2,
            title: "propagation through a multivalued mapping",
            limit: Some(Duration::from_secs(1)),
            check: accounting_propagation,
        },
        Criterion {
            id: 3,
            title: "conflict-free parent construction",
            limit: Some(Duration::from_secs(30)),
            check: parent_construction,
        },
        Criterion {
            id: 4,
            title: "belief/plausibility envelope",
            limit: Some(Duration::from_secs(60)),
            check: envelope_chain,
        },
        Criterion {
            id: 5,
            title: "combinable implies jointly satisfiable",
            limit: Some(Duration::from_secs(60)),
            check: implication,
        },
        Criterion {
            id: 6,
            title: "disjoint focal element blocks combination",
            limit: None,
            check: blocking_focal,
        },
        Criterion {
            id: 7,
            title: "Dempster's rule algebra",
            limit: Some(Duration::from_secs(30)),
            check: combination_algebra,
        },
        Criterion {
            id: 8,
            title: "brute-force oracle agreement",
            limit: None,
            check: oracle_equivalence,
        },
        Criterion {
            id: 9,
            title: "conditional vs unconditioned divergence",
            limit: None,
            check: divergence,
        },
        Criterion {
            id: 10,
            title: "CLI determinism and input rejection",
            limit: None,
            check: cli_determinism,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.check).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {}: {detail} ({elapsed:.2?})", c.id, c.title),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {}: {why} ({elapsed:.2?})", c.id, c.title);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
