//! Mass distributions (granular distributions) and the belief and
//! plausibility measures they induce.

use std::collections::{BTreeMap, BTreeSet};

use num::BigUint;

use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::ratio::{common_denominator, Ratio};

/// Focal elements with exact weights summing to one.
///
/// An empty `conditions` set marks an unconditioned distribution. A
/// non-empty one names the evidential sources the distribution is
/// conditioned on, as opaque `Attr=Value` tags.
#[derive(Clone, PartialEq, Eq)]
pub struct MassDistribution {
    frame: Frame,
    focal: BTreeMap<FocalSet, Ratio>,
    conditions: BTreeSet<String>,
}

impl MassDistribution {
    /// Builds a distribution, merging repeated focal sets by addition.
    pub fn from_focal_list<I, C>(frame: &Frame, pairs: I, conditions: C) -> Result<MassDistribution>
    where
        I: IntoIterator<Item = (FocalSet, Ratio)>,
        C: IntoIterator,
        C::Item: Into<String>,
    {
        let mut focal: BTreeMap<FocalSet, Ratio> = BTreeMap::new();
        for (set, weight) in pairs {
            frame.ensure_same(set.frame())?;
            if set.is_empty() {
                return Err(Error::MassOnEmptySet);
            }
            if weight.is_zero() {
                return Err(Error::InvalidRatio {
                    num: "0".into(),
                    den: weight.denom().to_string(),
                });
            }
            *focal.entry(set).or_default() += &weight;
        }
        let total: Ratio = focal.values().sum();
        if !total.is_one() {
            return Err(Error::WeightsDoNotSumToOne(total.to_string()));
        }
        Ok(MassDistribution {
            frame: frame.clone(),
            focal,
            conditions: conditions.into_iter().map(Into::into).collect(),
        })
    }

    /// Total ignorance: all mass on the whole frame.
    pub fn vacuous(frame: &Frame) -> MassDistribution {
        MassDistribution {
            frame: frame.clone(),
            focal: BTreeMap::from([(frame.full(), Ratio::one())]),
            conditions: BTreeSet::new(),
        }
    }

    /// Caller guarantees the map is non-empty, mass-free on the empty set and sums to one.
    pub(crate) fn from_parts(
        frame: Frame,
        focal: BTreeMap<FocalSet, Ratio>,
        conditions: BTreeSet<String>,
    ) -> MassDistribution {
        debug_assert!(focal.values().sum::<Ratio>().is_one());
        debug_assert!(focal.keys().all(|s| !s.is_empty()));
        MassDistribution {
            frame,
            focal,
            conditions,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Focal elements in canonical order with their weights.
    pub fn focal(&self) -> &BTreeMap<FocalSet, Ratio> {
        &self.focal
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = &FocalSet> {
        self.focal.keys()
    }

    pub fn weight(&self, set: &FocalSet) -> Ratio {
        self.focal.get(set).cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn conditions(&self) -> &BTreeSet<String> {
        &self.conditions
    }

    pub fn is_conditioned(&self) -> bool {
        !self.conditions.is_empty()
    }

    pub fn with_conditions<C>(mut self, conditions: C) -> MassDistribution
    where
        C: IntoIterator,
        C::Item: Into<String>,
    {
        self.conditions = conditions.into_iter().map(Into::into).collect();
        self
    }

    /// Least common multiple of the focal weight denominators.
    pub fn common_denominator(&self) -> BigUint {
        common_denominator(self.focal.values())
    }

    /// `Bel(D)`: total mass of focal elements contained in `d`.
    pub fn belief(&self, d: &FocalSet) -> Result<Ratio> {
        self.frame.ensure_same(d.frame())?;
        let mask = d.bits();
        Ok(self
            .focal
            .iter()
            .filter(|(a, _)| a.bits() & !mask == 0)
            .map(|(_, w)| w)
            .sum())
    }

    /// `Pls(D)`: total mass of focal elements meeting `d`.
    pub fn plausibility(&self, d: &FocalSet) -> Result<Ratio> {
        self.frame.ensure_same(d.frame())?;
        let mask = d.bits();
        Ok(self
            .focal
            .iter()
            .filter(|(a, _)| a.bits() & mask != 0)
            .map(|(_, w)| w)
            .sum())
    }
}

impl std::fmt::Debug for MassDistribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut map = f.debug_map();
        for (set, w) in &self.focal {
            map.entry(set, w);
        }
        map.finish()?;
        if !self.conditions.is_empty() {
            write!(f, " | {:?}", self.conditions)?;
        }
        Ok(())
    }
}
