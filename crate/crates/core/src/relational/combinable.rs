use std::collections::BTreeMap;

use num::{BigUint, Zero};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::frame::FocalSet;
use crate::mass::MassDistribution;
use crate::ratio::{common_denominator, Ratio};

/// Outcome of the unconditioned combinability decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinabilityWitness {
    pub feasible: bool,
    /// A joint weighting of focal pairs with the inputs as marginals, zero on
    /// disjoint pairs. Present iff `feasible`; zero cells are omitted.
    pub joint_weights: Option<BTreeMap<(FocalSet, FocalSet), Ratio>>,
    /// A focal element disjoint from every focal element of the other side.
    pub blocking_focal: Option<FocalSet>,
}

impl CombinabilityWitness {
    /// Row counts of a conflict-free combined parent relation: each witness
    /// weight scaled by the common denominator.
    pub fn row_counts(&self) -> Option<Vec<((FocalSet, FocalSet), BigUint)>> {
        let weights = self.joint_weights.as_ref()?;
        let scale = common_denominator(weights.values());
        Some(
            weights
                .iter()
                .map(|(k, w)| (k.clone(), w.scaled_count(&scale).expect("lcm scaling")))
                .collect(),
        )
    }
}

/// Decides whether two unconditioned distributions have a conflict-free
/// combined parent relation.
///
/// Equivalent to a transportation problem with forbidden cells: find
/// `w(A, B) >= 0`, zero whenever `A ∩ B = ∅`, with row sums `m1(A)` and
/// column sums `m2(B)`. After scaling by the common denominator `L` this is
/// a bipartite max-flow that saturates exactly when the flow value is `L`.
pub fn zadeh_combinable(m1: &MassDistribution, m2: &MassDistribution) -> Result<CombinabilityWitness> {
    m1.frame().ensure_same(m2.frame())?;
    for m in [m1, m2] {
        if m.is_conditioned() {
            return Err(Error::ConditionedInput(m.conditions().iter().cloned().collect()));
        }
    }

    let left: Vec<(&FocalSet, &Ratio)> = m1.focal().iter().collect();
    let right: Vec<(&FocalSet, &Ratio)> = m2.focal().iter().collect();
    let scale = common_denominator(left.iter().chain(&right).map(|(_, w)| *w));
    let count = |w: &Ratio| w.scaled_count(&scale).expect("lcm scaling");

    // node layout: source, left focal elements, right focal elements, sink
    let source = 0;
    let sink = left.len() + right.len() + 1;
    let mut net = FlowNetwork::new(sink + 1);
    for (i, (_, w)) in left.iter().enumerate() {
        net.add_edge(source, 1 + i, count(w));
    }
    for (j, (_, w)) in right.iter().enumerate() {
        net.add_edge(1 + left.len() + j, sink, count(w));
    }
    for (i, (a, _)) in left.iter().enumerate() {
        for (j, (b, _)) in right.iter().enumerate() {
            if a.bits() & b.bits() != 0 {
                net.add_unbounded_edge(1 + i, 1 + left.len() + j);
            }
        }
    }

    if net.max_flow(source, sink) == scale {
        let scale = Ratio::from_big(scale, BigUint::from(1u32))?;
        let mut weights = BTreeMap::new();
        for (i, (a, _)) in left.iter().enumerate() {
            for (j, (b, _)) in right.iter().enumerate() {
                let f = net.flow(1 + i, 1 + left.len() + j);
                if !f.is_zero() {
                    let w = &Ratio::from_big(f, BigUint::from(1u32))? / &scale;
                    weights.insert(((*a).clone(), (*b).clone()), w);
                }
            }
        }
        return Ok(CombinabilityWitness {
            feasible: true,
            joint_weights: Some(weights),
            blocking_focal: None,
        });
    }

    let isolated = |xs: &[(&FocalSet, &Ratio)], ys: &[(&FocalSet, &Ratio)]| {
        xs.iter()
            .find(|(x, _)| ys.iter().all(|(y, _)| x.bits() & y.bits() == 0))
            .map(|(x, _)| (*x).clone())
    };
    Ok(CombinabilityWitness {
        feasible: false,
        joint_weights: None,
        blocking_focal: isolated(&left, &right).or_else(|| isolated(&right, &left)),
    })
}
