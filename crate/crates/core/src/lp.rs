//! Exact feasibility for systems of the form
//!
//! ```text
//! p >= 0,  sum(p) = 1,  sum_{i in S_k} p_i >= b_k  for every constraint k
//! ```
//!
//! solved through the dual program
//!
//! ```text
//! maximize  b·y + z   subject to  G^T y + z·1 <= 0,  y >= 0,  z free
//! ```
//!
//! whose origin is feasible, so no phase one is needed. The primal system is
//! feasible iff the dual is bounded; in that case the primal point is read off
//! the reduced costs of the dual's slack columns. All pivots are degenerate
//! (the right-hand side stays zero), so Bland's rule is used to rule out
//! cycling.

use num::{BigRational, Signed, Zero};

/// One covering constraint: the members of `mask` must carry at least `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Cover {
    pub mask: u64,
    pub bound: BigRational,
}

/// A point satisfying every cover, or `None` when the system is infeasible.
pub(crate) fn feasible_point(n: usize, covers: &[Cover]) -> Option<Vec<BigRational>> {
    let m = covers.len();
    // columns: y_0..y_{m-1}, z+, z-, s_0..s_{n-1}
    let z_plus = m;
    let z_minus = m + 1;
    let slack = m + 2;
    let width = m + 2 + n;

    let mut tableau: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            let mut r = vec![BigRational::zero(); width];
            for (k, c) in covers.iter().enumerate() {
                if c.mask >> row & 1 == 1 {
                    r[k] = BigRational::from_integer(1.into());
                }
            }
            r[z_plus] = BigRational::from_integer(1.into());
            r[z_minus] = BigRational::from_integer((-1).into());
            r[slack + row] = BigRational::from_integer(1.into());
            r
        })
        .collect();
    // reduced costs of a maximization start at -c
    let mut reduced = vec![BigRational::zero(); width];
    for (k, c) in covers.iter().enumerate() {
        reduced[k] = -c.bound.clone();
    }
    reduced[z_plus] = BigRational::from_integer((-1).into());
    reduced[z_minus] = BigRational::from_integer(1.into());
    let mut basis: Vec<usize> = (0..n).map(|row| slack + row).collect();

    loop {
        let Some(entering) = reduced.iter().position(|d| d.is_negative()) else {
            return Some((0..n).map(|row| reduced[slack + row].clone()).collect());
        };
        // every ratio is zero; Bland picks the smallest basic index
        let leaving = (0..n)
            .filter(|&row| tableau[row][entering].is_positive())
            .min_by_key(|&row| basis[row])?;

        let pivot = tableau[leaving][entering].clone();
        for v in tableau[leaving].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = tableau[leaving].clone();
        for (row, r) in tableau.iter_mut().enumerate() {
            if row != leaving && !r[entering].is_zero() {
                let factor = r[entering].clone();
                for (v, p) in r.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= &factor * p;
                    }
                }
            }
        }
        let factor = reduced[entering].clone();
        for (v, p) in reduced.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
        basis[leaving] = entering;
    }
}
