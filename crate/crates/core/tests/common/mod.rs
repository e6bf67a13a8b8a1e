//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use evicomb::{FocalSet, Frame, MassDistribution, ProbabilityDistribution, Ratio, Relation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ratio(n: u64, d: u64) -> Ratio {
    Ratio::new(n, d).unwrap()
}

/// Frame `{t0, ..., t(n-1)}`.
pub fn letter_frame(n: usize) -> Frame {
    Frame::new((0..n).map(|i| format!("t{i}"))).unwrap()
}

pub fn mass(frame: &Frame, pairs: &[(&str, Ratio)], conditions: &[&str]) -> MassDistribution {
    MassDistribution::from_focal_list(
        frame,
        pairs
            .iter()
            .map(|(e, w)| (frame.parse_set(e).unwrap(), w.clone())),
        conditions.iter().copied(),
    )
    .unwrap()
}

pub fn random_subset(rng: &mut ChaCha8Rng, frame: &Frame) -> FocalSet {
    let full = frame.full().bits();
    loop {
        let bits = rng.gen::<u64>() & full;
        if bits != 0 {
            return frame.set_from_bits(bits).unwrap();
        }
    }
}

/// Distinct non-empty subsets drawn from `pool` (all subsets when `None`).
fn distinct_sets(rng: &mut ChaCha8Rng, frame: &Frame, n: usize, pool: Option<u64>) -> Vec<FocalSet> {
    let full = pool.unwrap_or(frame.full().bits());
    let mut out: Vec<FocalSet> = Vec::new();
    let available = (1u128 << full.count_ones()) - 1;
    let n = n.min(available.min(usize::MAX as u128) as usize);
    while out.len() < n {
        let bits = rng.gen::<u64>() & full;
        if bits != 0 && out.iter().all(|s| s.bits() != bits) {
            out.push(frame.set_from_bits(bits).unwrap());
        }
    }
    out
}

/// `n` positive integers summing to `total`.
fn composition(rng: &mut ChaCha8Rng, total: u64, n: usize) -> Vec<u64> {
    assert!(n as u64 <= total && n > 0);
    let mut cuts: Vec<u64> = (1..total).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<u64> = cuts.into_iter().take(n - 1).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(n);
    let mut prev = 0;
    for c in cuts.into_iter().chain([total]) {
        parts.push(c - prev);
        prev = c;
    }
    parts
}

pub fn mass_from_counts(
    frame: &Frame,
    sets: Vec<FocalSet>,
    counts: &[u64],
    den: u64,
    tags: &[&str],
) -> MassDistribution {
    MassDistribution::from_focal_list(
        frame,
        sets.into_iter().zip(counts).map(|(s, &c)| (s, ratio(c, den))),
        tags.iter().copied(),
    )
    .unwrap()
}

/// A mass with common denominator `den` and at most `max_focal` focal elements
/// drawn from the subsets of `pool`.
pub fn random_mass_in(
    rng: &mut ChaCha8Rng,
    frame: &Frame,
    pool: Option<u64>,
    max_focal: usize,
    den: u64,
    tags: &[&str],
) -> MassDistribution {
    let n = rng.gen_range(1..=max_focal.min(den as usize));
    let sets = distinct_sets(rng, frame, n, pool);
    let counts = composition(rng, den, sets.len());
    mass_from_counts(frame, sets, &counts, den, tags)
}

pub fn random_mass(
    rng: &mut ChaCha8Rng,
    frame: &Frame,
    max_focal: usize,
    max_den: u64,
    tags: &[&str],
) -> MassDistribution {
    let den = rng.gen_range(1..=max_den);
    random_mass_in(rng, frame, None, max_focal, den, tags)
}

/// Two masses whose focal elements are pairwise disjoint across sides.
pub fn disjoint_pair(
    rng: &mut ChaCha8Rng,
    frame: &Frame,
    max_focal: usize,
    max_den: u64,
) -> (MassDistribution, MassDistribution) {
    let full = frame.full().bits();
    let left = loop {
        let bits = rng.gen::<u64>() & full;
        if bits != 0 && bits != full {
            break bits;
        }
    };
    let (d1, d2) = (rng.gen_range(1..=max_den), rng.gen_range(1..=max_den));
    let m1 = random_mass_in(rng, frame, Some(left), max_focal, d1, &["E1"]);
    let m2 = random_mass_in(rng, frame, Some(full & !left), max_focal, d2, &["E2"]);
    (m1, m2)
}

/// Two single-attribute relations of equal length where each row of the
/// second is a non-empty subset of the matching row of the first.
pub fn refined_pair(rng: &mut ChaCha8Rng, frame: &Frame, rows: usize) -> (Relation, Relation) {
    let mut ra = Relation::new("RA", [("Value", frame.clone())]).unwrap();
    let mut rb = Relation::new("RB", [("Value", frame.clone())]).unwrap();
    for id in 1..=rows as u64 {
        let a = random_subset(rng, frame);
        let b = loop {
            let bits = rng.gen::<u64>() & a.bits();
            if bits != 0 {
                break frame.set_from_bits(bits).unwrap();
            }
        };
        ra.push_row(id, vec![Some(a)]).unwrap();
        rb.push_row(id, vec![Some(b)]).unwrap();
    }
    (ra, rb)
}

/// `(focal bits, count)` for each focal element of one side.
pub type Counts = Vec<(u64, u64)>;

/// Integer counts of each focal element over the lcm of the two denominators.
pub fn counts(m1: &MassDistribution, m2: &MassDistribution) -> (Counts, Counts, u64) {
    let lcm = |a: u64, b: u64| a / gcd(a, b) * b;
    let scale = lcm(to_u64(&m1.common_denominator()), to_u64(&m2.common_denominator()));
    let side = |m: &MassDistribution| {
        m.focal()
            .iter()
            .map(|(s, w)| {
                let (n, d) = w.to_u64_parts().unwrap();
                (s.bits(), n * (scale / d))
            })
            .collect::<Vec<_>>()
    };
    (side(m1), side(m2), scale)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn to_u64(n: &num::BigUint) -> u64 {
    u64::try_from(n.clone()).unwrap()
}

/// Whether a non-negative integer table exists with the given row and column
/// sums and zeros on disjoint pairs, by exhaustive search over tables.
pub fn joint_table_exists(m1: &MassDistribution, m2: &MassDistribution) -> bool {
    let (rows, cols, _) = counts(m1, m2);
    let mut memo = HashMap::new();
    let remaining: Vec<u64> = cols.iter().map(|c| c.1).collect();
    fill_row(&rows, &cols, 0, remaining, &mut memo)
}

fn fill_row(
    rows: &[(u64, u64)],
    cols: &[(u64, u64)],
    i: usize,
    remaining: Vec<u64>,
    memo: &mut HashMap<(usize, Vec<u64>), bool>,
) -> bool {
    if i == rows.len() {
        return remaining.iter().all(|&r| r == 0);
    }
    if let Some(&hit) = memo.get(&(i, remaining.clone())) {
        return hit;
    }
    let (set, amount) = rows[i];
    let mut found = false;
    // every split of this row's count over the columns it may touch
    let mut split = vec![0u64; cols.len()];
    spread(set, amount, 0, cols, &remaining, &mut split, &mut |split| {
        if !found {
            let rest: Vec<u64> = remaining.iter().zip(split).map(|(r, s)| r - s).collect();
            found = fill_row(rows, cols, i + 1, rest, memo);
        }
    });
    memo.insert((i, remaining), found);
    found
}

fn spread(
    set: u64,
    amount: u64,
    j: usize,
    cols: &[(u64, u64)],
    remaining: &[u64],
    split: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]),
) {
    if j == cols.len() {
        if amount == 0 {
            visit(split);
        }
        return;
    }
    let cap = if cols[j].0 & set == 0 {
        0
    } else {
        remaining[j].min(amount)
    };
    for take in 0..=cap {
        split[j] = take;
        spread(set, amount - take, j + 1, cols, remaining, split, visit);
    }
    split[j] = 0;
}

/// All probability vectors on an `n`-point frame with coordinates in `1/g`.
pub fn grid(n: usize, g: u64) -> Vec<Vec<u64>> {
    fn go(n: usize, left: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 1 {
            acc.push(left);
            out.push(acc.clone());
            acc.pop();
            return;
        }
        for v in 0..=left {
            acc.push(v);
            go(n - 1, left - v, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, g, &mut Vec::new(), &mut out);
    out
}

/// Searches grids of increasing resolution for a point satisfying both masses.
///
/// For `|Θ| <= 3` every vertex of the feasible polytope solves a 3x3 system
/// with 0/1 coefficients, whose determinant is at most 2 in absolute value, and
/// right-hand sides over `L` = lcm of the denominators. Vertices therefore lie
/// on the `1/(2L)` grid, and the refinement stops there.
pub fn grid_satisfiable(m1: &MassDistribution, m2: &MassDistribution) -> bool {
    let frame = m1.frame();
    let n = frame.size();
    assert!(n <= 3, "grid oracle is exact only up to three labels");
    let (_, _, scale) = counts(m1, m2);
    let finest = 2 * scale;
    let levels: Vec<u64> = (1..=finest).filter(|g| finest % g == 0).collect();
    for g in levels {
        for point in grid(n, g) {
            let p =
                ProbabilityDistribution::new(frame, point.iter().map(|&v| ratio(v, g)).collect()).unwrap();
            if evicomb::satisfies(&p, m1).unwrap() && evicomb::satisfies(&p, m2).unwrap() {
                return true;
            }
        }
    }
    false
}

/// Frame-label weights of a mass as a map, for readable failure messages.
pub fn describe(m: &MassDistribution) -> BTreeMap<String, String> {
    m.focal()
        .iter()
        .map(|(s, w)| (s.to_string(), w.to_string()))
        .collect()
}

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
pub const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

/// Runs the `evicomb` binary inside the fixture directory.
pub fn evicomb(args: &[&str]) -> Run {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_evicomb"))
        .args(args)
        .current_dir(FIXTURES)
        .output()
        .expect("evicomb binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// One successful invocation per verb, each paired with its golden file under `tests/golden`.
pub fn golden_invocations() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("summarize.json", vec!["summarize", "emp.csv", "--attr", "Age"]),
        (
            "summarize-where.json",
            vec![
                "--frames",
                "frames.json",
                "summarize-where",
                "emp_dept.csv",
                "--attr",
                "Sex",
                "--where",
                "Dept=Acct",
            ],
        ),
        ("bel.json", vec!["bel", "delta.json", "--set", "[20..24]"]),
        ("pls.json", vec!["pls", "delta.json", "--set", "[20..24]"]),
        ("combine.json", vec!["combine", "lean_a.json", "lean_b.json"]),
        (
            "combinable-zadeh.json",
            vec![
                "combinable",
                "half.json",
                "skew.json",
                "--model",
                "zadeh",
                "--witness",
            ],
        ),
        (
            "combinable-conditional.json",
            vec!["combinable", "acct.json", "state.json", "--witness"],
        ),
        ("parent.json", vec!["parent", "acct.json", "state.json"]),
        (
            "propagate.json",
            vec!["propagate", "sex.json", "--map", "gamma.json"],
        ),
        (
            "relcombine.json",
            vec!["relcombine", "ra.csv", "rc.csv", "--attr", "Age"],
        ),
        ("satisfies.json", vec!["satisfies", "p_skew.json", "half.json"]),
        (
            "satisfiable.json",
            vec!["satisfiable", "lean_a.json", "lean_b.json"],
        ),
        (
            "check-envelope.json",
            vec!["check-envelope", "ra.csv", "rb.csv", "--attr", "Age"],
        ),
        (
            "propagate-table.txt",
            vec![
                "--format",
                "table",
                "propagate",
                "sex.json",
                "--map",
                "gamma.json",
            ],
        ),
    ]
}

/// Inputs that must be rejected with exit 1 and nothing on standard output.
pub fn malformed_invocations() -> Vec<Vec<&'static str>> {
    vec![
        vec!["summarize", "bad.csv", "--attr", "Age"],
        vec!["combine", "truncated.json", "half.json"],
        vec!["combine", "bad_sum.json", "half.json"],
        vec!["combine", "missing.json", "half.json"],
        vec!["bel", "delta.json", "--set", "[20..99]"],
        vec!["bel", "delta.json", "--set", "{20|"],
        vec!["summarize-where", "emp.csv", "--attr", "Age", "--where", "Dept"],
        vec!["satisfies", "truncated.json", "half.json"],
        vec!["propagate", "sex.json", "--map", "half.json"],
        vec!["--frame", "Age", "summarize", "emp.csv", "--attr", "Age"],
        vec!["frobnicate"],
        vec!["combinable", "half.json", "skew.json", "--model", "yager"],
        vec!["summarize", "emp.csv"],
    ]
}

/// Two unconditioned masses built as the marginals of a random integer joint
/// table supported on intersecting pairs, so they are Zadeh-combinable.
pub fn combinable_pair(
    rng: &mut ChaCha8Rng,
    frame: &Frame,
    max_focal: usize,
    den: u64,
) -> (MassDistribution, MassDistribution) {
    loop {
        let (na, nb) = (rng.gen_range(1..=max_focal), rng.gen_range(1..=max_focal));
        let a = distinct_sets(rng, frame, na, None);
        let b = distinct_sets(rng, frame, nb, None);
        let pairs: Vec<(usize, usize)> = (0..a.len())
            .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i].bits() & b[j].bits() != 0)
            .collect();
        if pairs.is_empty() {
            continue;
        }
        let mut left = vec![0u64; a.len()];
        let mut right = vec![0u64; b.len()];
        for _ in 0..den {
            let (i, j) = *pairs.choose(rng).unwrap();
            left[i] += 1;
            right[j] += 1;
        }
        let side = |sets: &[FocalSet], counts: &[u64]| {
            let (s, c): (Vec<FocalSet>, Vec<u64>) = sets
                .iter()
                .cloned()
                .zip(counts.iter().copied())
                .filter(|(_, c)| *c > 0)
                .unzip();
            mass_from_counts(frame, s, &c, den, &[])
        };
        return (side(&a, &left), side(&b, &right));
    }
}

/// Whether any focal pair across the two masses intersects.
pub fn some_pair_intersects(m1: &MassDistribution, m2: &MassDistribution) -> bool {
    m1.focal_sets()
        .any(|a| m2.focal_sets().any(|b| a.bits() & b.bits() != 0))
}
