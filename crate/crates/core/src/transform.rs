//! In-place zeta and Möbius transforms over the subset lattice.
//!
//! Both run in `O(n · 2^n)` on a dense array indexed by subset bitmask and
//! are exact inverses of each other, which is what makes the pointwise
//! commonality product a fast route to conjunctive combination.

use std::ops::{AddAssign, SubAssign};

/// Replaces `values[a]` with the sum of `values[b]` over all supersets
/// `b ⊇ a` (the superset zeta transform).
pub fn superset_sums<T: AddAssign + Copy>(values: &mut [T]) {
    assert!(
        values.len().is_power_of_two(),
        "dense lattice arrays have 2^n entries"
    );
    let mut bit = 1;
    while bit < values.len() {
        for mask in 0..values.len() {
            if mask & bit == 0 {
                let upper = values[mask | bit];
                values[mask] += upper;
            }
        }
        bit <<= 1;
    }
}

/// Inverts [`superset_sums`] (the superset Möbius transform).
pub fn superset_differences<T: SubAssign + Copy>(values: &mut [T]) {
    assert!(
        values.len().is_power_of_two(),
        "dense lattice arrays have 2^n entries"
    );
    let mut bit = 1;
    while bit < values.len() {
        for mask in 0..values.len() {
            if mask & bit == 0 {
                let upper = values[mask | bit];
                values[mask] -= upper;
            }
        }
        bit <<= 1;
    }
}
