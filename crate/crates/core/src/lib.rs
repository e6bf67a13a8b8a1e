//! Exact Dempster-Shafer evidence combination over two relational readings
//! of mass distributions.
//!
//! * Unconditioned granular distributions summarize a whole relation column.
//!   Two of them combine only when a conflict-free combined parent relation
//!   exists, decided here as a transportation-feasibility problem
//!   ([`zadeh_combinable`]).
//! * Conditional granular distributions summarize only the rows selected by
//!   an evidential source. Two of them have a conflict-free parent as soon as
//!   Dempster's rule is applicable ([`build_conflict_free_parent`]).
//!
//! All weights are exact rationals ([`Ratio`]); nothing is rounded.
//!
//! ```
//! use evicomb::{Frame, MassDistribution, Ratio, dempster_combine};
//!
//! let frame = Frame::new(["a", "b"]).unwrap();
//! let half = Ratio::new(1, 2).unwrap();
//! let m1 = MassDistribution::from_focal_list(
//!     &frame,
//!     [(frame.parse_set("{a}").unwrap(), half.clone()), (frame.full(), half.clone())],
//!     ["E1"],
//! ).unwrap();
//! let m2 = MassDistribution::from_focal_list(
//!     &frame,
//!     [(frame.parse_set("{b}").unwrap(), half.clone()), (frame.full(), half)],
//!     ["E2"],
//! ).unwrap();
//! let m = dempster_combine(&m1, &m2).unwrap();
//! assert_eq!(m.weight(&frame.full()), Ratio::new(1, 3).unwrap());
//! ```

pub mod cli;
pub mod combination;
pub mod conditional;
pub mod error;
mod flow;
pub mod formats;
pub mod frame;
mod lp;
pub mod mass;
pub mod probability;
pub mod ratio;
pub mod relational;

pub use combination::{conflict_weight, dempster_combine, ConflictReport};
pub use conditional::{
    build_conflict_free_parent, conditional_combinable, parse_conditions, propagate, summarize_where,
    ConditionalParent, ConditionalRow, MultivaluedMapping,
};
pub use error::{Error, Result};
pub use frame::{set_algebra, FocalSet, Frame, Limits, SetAlgebra};
pub use mass::MassDistribution;
pub use probability::{
    allocation_distribution, joint_satisfiable, joint_satisfiable_with_limits, satisfies,
    satisfies_with_limits, ProbabilityDistribution,
};
pub use ratio::Ratio;
pub use relational::{
    canonical_parent, check_envelope, check_envelope_with_limits, combine_relations, summarize,
    zadeh_combinable, CombinabilityWitness, GranularSummary, Relation, Row,
};
