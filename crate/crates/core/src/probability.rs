//! Point probabilities constrained by mass distributions.
//!
//! A probability distribution `P` satisfies a mass distribution `m` when
//! `Bel(A) <= P(A) <= Pls(A)` for every subset `A` of the frame. Two
//! unconditioned masses can only describe the same population if some `P`
//! satisfies both.

use num::BigRational;

use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame, Limits};
use crate::lp::{feasible_point, Cover};
use crate::mass::MassDistribution;
use crate::ratio::Ratio;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityDistribution {
    frame: Frame,
    p: Vec<Ratio>,
}

impl ProbabilityDistribution {
    /// One probability per frame label, in frame order.
    pub fn new(frame: &Frame, p: Vec<Ratio>) -> Result<ProbabilityDistribution> {
        if p.len() != frame.size() {
            return Err(Error::InvalidProbability(format!(
                "{} values for a frame of size {}",
                p.len(),
                frame.size()
            )));
        }
        let total: Ratio = p.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidProbability(format!("values sum to {total}")));
        }
        Ok(ProbabilityDistribution {
            frame: frame.clone(),
            p,
        })
    }

    /// Builds from `(label, probability)` pairs; labels not listed get zero.
    pub fn from_labels<'a, I>(frame: &Frame, pairs: I) -> Result<ProbabilityDistribution>
    where
        I: IntoIterator<Item = (&'a str, Ratio)>,
    {
        let mut p = vec![Ratio::zero(); frame.size()];
        let mut seen = vec![false; frame.size()];
        for (label, value) in pairs {
            let i = frame
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidProbability(format!("`{label}` listed twice")));
            }
            p[i] = value;
        }
        ProbabilityDistribution::new(frame, p)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[Ratio] {
        &self.p
    }

    pub fn get(&self, label: &str) -> Option<&Ratio> {
        self.frame.index_of(label).map(|i| &self.p[i])
    }

    /// `P(A)`.
    pub fn measure(&self, a: &FocalSet) -> Result<Ratio> {
        self.frame.ensure_same(a.frame())?;
        Ok(a.members().map(|i| &self.p[i]).sum())
    }
}

pub fn satisfies(p: &ProbabilityDistribution, m: &MassDistribution) -> Result<bool> {
    satisfies_with_limits(p, m, &Limits::default())
}

/// Checks `Bel(A) <= P(A) <= Pls(A)` literally for every `A`.
pub fn satisfies_with_limits(
    p: &ProbabilityDistribution,
    m: &MassDistribution,
    limits: &Limits,
) -> Result<bool> {
    p.frame().ensure_same(m.frame())?;
    let frame = m.frame();
    limits.check_powerset(frame)?;
    // P over all masks, built from the mask without its lowest member
    let size = 1usize << frame.size();
    let mut prob = Vec::with_capacity(size);
    prob.push(Ratio::zero());
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let v = &prob[mask & (mask - 1)] + &p.p[low];
        prob.push(v);
    }
    for a in frame.powerset(limits)? {
        let pa = &prob[a.bits() as usize];
        if m.belief(&a)? > *pa || *pa > m.plausibility(&a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn allocation_distribution(m: &MassDistribution) -> Result<ProbabilityDistribution> {
    allocation_distribution_with_limits(m, &Limits::default())
}

/// Spreads each focal weight uniformly over the members of its focal set.
pub fn allocation_distribution_with_limits(
    m: &MassDistribution,
    limits: &Limits,
) -> Result<ProbabilityDistribution> {
    limits.check_powerset(m.frame())?;
    let mut p = vec![Ratio::zero(); m.frame().size()];
    for (set, w) in m.focal() {
        let share = w
            .checked_div(&Ratio::from_integer(set.len() as u64))
            .expect("focal sets are non-empty");
        for i in set.members() {
            p[i] += &share;
        }
    }
    ProbabilityDistribution::new(m.frame(), p)
}

pub fn joint_satisfiable(
    m1: &MassDistribution,
    m2: &MassDistribution,
) -> Result<Option<ProbabilityDistribution>> {
    joint_satisfiable_with_limits(m1, m2, &Limits::default())
}

/// Finds a `P` satisfying both constraint sets, or `None` if there is none.
///
/// Only lower bounds are posed, since `P(A) <= Pls(A)` is `Bel(A^c) <= P(A^c)`.
/// A lower bound on `A` is kept only when `A` is a union of focal elements of
/// the distribution imposing it; any other `A` contains such a union `U` with
/// `Bel(U) = Bel(A)`, so its constraint is implied.
pub fn joint_satisfiable_with_limits(
    m1: &MassDistribution,
    m2: &MassDistribution,
    limits: &Limits,
) -> Result<Option<ProbabilityDistribution>> {
    m1.frame().ensure_same(m2.frame())?;
    let frame = m1.frame();
    limits.check_feasibility(frame)?;

    let full = frame.full().bits();
    let mut covers: Vec<Cover> = Vec::new();
    for a in frame.powerset(limits)? {
        let mask = a.bits();
        if mask == 0 || mask == full {
            continue;
        }
        let mut bound: Option<Ratio> = None;
        for m in [m1, m2] {
            let inner = m
                .focal_sets()
                .filter(|f| f.bits() & !mask == 0)
                .fold(0u64, |acc, f| acc | f.bits());
            if inner == mask {
                let b = m.belief(&a)?;
                if bound.as_ref().is_none_or(|cur| b > *cur) {
                    bound = Some(b);
                }
            }
        }
        if let Some(b) = bound {
            covers.push(Cover {
                mask,
                bound: b.into_rational(),
            });
        }
    }

    let Some(point) = feasible_point(frame.size(), &covers) else {
        return Ok(None);
    };
    let p = point
        .into_iter()
        .map(|v: BigRational| Ratio::from_rational(v).expect("reduced costs are non-negative at optimum"))
        .collect();
    let witness = ProbabilityDistribution::new(frame, p)?;
    assert!(
        satisfies_with_limits(&witness, m1, limits)? && satisfies_with_limits(&witness, m2, limits)?,
        "joint feasibility witness failed its own check"
    );
    Ok(Some(witness))
}
