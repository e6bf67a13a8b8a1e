use crate::error::{Error, Result};
use crate::frame::{FocalSet, Limits};

use super::Relation;

/// Checks `Bel_A(D) <= Bel_B(D) <= Pls_B(D) <= Pls_A(D)` for every `D`,
/// where row `i` of `rb` refines row `i` of `ra`.
///
/// Rows are aligned by position. A row of `rb` that is not contained in the
/// matching row of `ra` is a precondition violation, not a `false` result.
pub fn check_envelope(ra: &Relation, rb: &Relation, attribute: &str) -> Result<bool> {
    check_envelope_with_limits(ra, rb, attribute, &Limits::default())
}

pub fn check_envelope_with_limits(
    ra: &Relation,
    rb: &Relation,
    attribute: &str,
    limits: &Limits,
) -> Result<bool> {
    Ok(envelope_violation(ra, rb, attribute, limits)?.is_none())
}

/// The first `D` (in mask order) where the four-term chain fails, if any.
pub fn envelope_violation(
    ra: &Relation,
    rb: &Relation,
    attribute: &str,
    limits: &Limits,
) -> Result<Option<FocalSet>> {
    if ra.len() != rb.len() {
        return Err(Error::RowMismatch(format!(
            "{} rows versus {} rows",
            ra.len(),
            rb.len()
        )));
    }
    let frame = ra.frame_of(attribute)?;
    frame.ensure_same(rb.frame_of(attribute)?)?;
    let a = ra.filled_column(attribute)?;
    let b = rb.filled_column(attribute)?;

    let violated: Vec<u64> = a
        .iter()
        .zip(&b)
        .filter(|((_, x), (_, y))| y.bits() & !x.bits() != 0)
        .map(|((id, _), _)| *id)
        .collect();
    if !violated.is_empty() {
        return Err(Error::ContainmentViolated { rows: violated });
    }

    let a: Vec<u64> = a.iter().map(|(_, s)| s.bits()).collect();
    let b: Vec<u64> = b.iter().map(|(_, s)| s.bits()).collect();
    // both relations have the same row count, so relative counts compare as counts
    let bel = |rows: &[u64], d: u64| rows.iter().filter(|&&x| x & !d == 0).count();
    let pls = |rows: &[u64], d: u64| rows.iter().filter(|&&x| x & d != 0).count();
    for d in frame.powerset(limits)? {
        let m = d.bits();
        let chain = [bel(&a, m), bel(&b, m), pls(&b, m), pls(&a, m)];
        if chain.windows(2).any(|w| w[0] > w[1]) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
