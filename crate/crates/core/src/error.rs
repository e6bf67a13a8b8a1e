use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("frame has no labels")]
    EmptyFrame,
    #[error("duplicate label `{0}` in frame")]
    DuplicateLabel(String),
    #[error("invalid label `{0}`: labels must match [A-Za-z0-9_.-]+")]
    InvalidLabel(String),
    #[error("frame of size {size} exceeds the limit of {limit}")]
    FrameTooLarge { size: usize, limit: usize },
    #[error("operands are defined over different frames")]
    FrameMismatch,

    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("malformed set expression `{expr}`: {reason}")]
    MalformedExpr { expr: String, reason: String },
    #[error("range `{0}` used over a frame whose labels are not all integers")]
    RangeOverNonIntegerFrame(String),

    #[error("invalid ratio {num}/{den}")]
    InvalidRatio { num: String, den: String },
    #[error("mass assigned to the empty set")]
    MassOnEmptySet,
    #[error("focal weights sum to {0}, expected 1")]
    WeightsDoNotSumToOne(String),

    #[error("total conflict: normalization factor is zero")]
    TotalConflict,

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("attribute `{attribute}` is unfilled in rows {rows:?}")]
    UnfilledCell { attribute: String, rows: Vec<u64> },
    #[error("empty set in attribute `{attribute}` at row {row}")]
    EmptyCell { attribute: String, row: u64 },
    #[error("null values after combination in rows {rows:?}")]
    NullConflict { rows: Vec<u64> },
    #[error("relations are not row-aligned: {0}")]
    RowMismatch(String),
    #[error("duplicate or non-positive row name {0}")]
    InvalidRowName(String),
    #[error("relation size {size} is not a common multiple of the focal denominators (lcm {lcm})")]
    SizeNotCommonMultiple { size: u64, lcm: String },
    #[error("a relation of {0} rows is too large to materialize")]
    TooManyRows(String),
    #[error("entrywise containment violated in rows {rows:?}")]
    ContainmentViolated { rows: Vec<u64> },
    #[error("no row satisfies the selection {0}")]
    EmptySelection(String),
    #[error("condition `{0}` is not of the form Attr=Value")]
    MalformedCondition(String),

    #[error("conditioned distribution where an unconditioned one is required (conditions {0:?})")]
    ConditionedInput(Vec<String>),
    #[error("focal element {0} is not a singleton")]
    NonSingletonFocal(String),
    #[error("multivalued mapping: {0}")]
    InvalidMapping(String),
    #[error("no pair of focal elements intersects; no conflict-free parent relation exists")]
    NotCombinable,

    #[error("invalid probability distribution: {0}")]
    InvalidProbability(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyFrame => "EmptyFrame",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::InvalidLabel(_) => "InvalidLabel",
            Error::FrameTooLarge { .. } => "FrameTooLarge",
            Error::FrameMismatch => "FrameMismatch",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::MalformedExpr { .. } => "MalformedExpr",
            Error::RangeOverNonIntegerFrame(_) => "RangeOverNonIntegerFrame",
            Error::InvalidRatio { .. } => "InvalidRatio",
            Error::MassOnEmptySet => "MassOnEmptySet",
            Error::WeightsDoNotSumToOne(_) => "WeightsDoNotSumToOne",
            Error::TotalConflict => "TotalConflict",
            Error::UnknownAttribute(_) => "UnknownAttribute",
            Error::UnfilledCell { .. } => "UnfilledCell",
            Error::EmptyCell { .. } => "EmptyCell",
            Error::NullConflict { .. } => "NullConflict",
            Error::RowMismatch(_) => "RowMismatch",
            Error::InvalidRowName(_) => "InvalidRowName",
            Error::SizeNotCommonMultiple { .. } => "SizeNotCommonMultiple",
            Error::TooManyRows(_) => "TooManyRows",
            Error::ContainmentViolated { .. } => "ContainmentViolated",
            Error::EmptySelection(_) => "EmptySelection",
            Error::MalformedCondition(_) => "MalformedCondition",
            Error::ConditionedInput(_) => "ConditionedInput",
            Error::NonSingletonFocal(_) => "NonSingletonFocal",
            Error::InvalidMapping(_) => "InvalidMapping",
            Error::NotCombinable => "NotCombinable",
            Error::InvalidProbability(_) => "InvalidProbability",
            Error::Parse(_) => "Parse",
        }
    }
}
