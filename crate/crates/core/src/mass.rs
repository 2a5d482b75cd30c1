//! Belief states over the power set of a frame.
//!
//! A [`MassFunction`] distributes unit mass over the `2^n` subsets of its
//! frame. The unnormalized conjunctive rule, Dempster's normalized rule, the
//! normalization map between them, and the belief / plausibility /
//! commonality evaluations all live here, together with the transform-based
//! fast combination route.

use crate::error::{Error, Result};
use crate::frame::{ensure_same_frame, Frame, Subset};
use crate::scalar::{tolerance, Real};
use crate::transform::{superset_differences, superset_sums};

/// A dense mass vector is accepted when its total is within this distance of
/// one; it is then rescaled to total exactly one.
pub const MASS_SUM_TOLERANCE: f64 = 1e-9;

/// Empty-set mass at or above `1 - TOTAL_CONFLICT_THRESHOLD` normalizes to
/// the total-conflict state instead of dividing by a vanishing remainder.
pub const TOTAL_CONFLICT_THRESHOLD: f64 = 1e-12;

/// Tolerance used by [`MassFunction::is_normalized`] and by the Möbius
/// inversion validity check.
pub const NORMALIZED_TOLERANCE: f64 = 1e-9;

/// A belief state: a probability distribution over the subsets of a frame,
/// stored densely and indexed by subset bitmask.
///
/// Values with zero empty-set mass are the normalized states; the
/// total-conflict state carries all mass on ∅. Everything else belongs only
/// to the unnormalized space.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction<T: Real> {
    frame: Frame,
    masses: Vec<T>,
}

impl<T: Real> MassFunction<T> {
    /// Builds a mass function from a dense vector of `2^n` subset masses.
    ///
    /// Entries must be nonnegative and total one within
    /// [`MASS_SUM_TOLERANCE`]; the vector is rescaled so the total is exact.
    pub fn new(frame: Frame, masses: Vec<T>) -> Result<Self> {
        if masses.len() != frame.subset_count() {
            return Err(Error::MassLength {
                got: masses.len(),
                expected: frame.subset_count(),
            });
        }
        for (i, &entry) in masses.iter().enumerate() {
            if !entry.is_finite() || entry < T::zero() {
                return Err(Error::NotAMass(format!(
                    "entry for subset {} is {:?}",
                    frame.format_subset(Subset::from_index(i)),
                    entry
                )));
            }
        }
        let total: T = masses.iter().copied().sum();
        if (total - T::one()).abs() > tolerance(MASS_SUM_TOLERANCE) {
            return Err(Error::NotAMass(format!("total mass is {total:?}")));
        }
        let mut masses = masses;
        for entry in &mut masses {
            *entry /= total;
        }
        Ok(MassFunction { frame, masses })
    }

    /// Builds a mass function from sparse `(subset, mass)` assignments;
    /// repeated subsets accumulate. Validation is as in [`MassFunction::new`].
    pub fn from_assignments<I>(frame: Frame, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, T)>,
    {
        let mut masses = vec![T::zero(); frame.subset_count()];
        for (subset, mass) in assignments {
            if subset.index() >= masses.len() {
                return Err(Error::SubsetOutOfRange {
                    bits: subset.bits(),
                    n: frame.len(),
                });
            }
            masses[subset.index()] += mass;
        }
        Self::new(frame, masses)
    }

    /// All mass on a single subset.
    pub fn categorical(frame: Frame, subset: Subset) -> Self {
        let mut masses = vec![T::zero(); frame.subset_count()];
        masses[subset.index()] = T::one();
        MassFunction { frame, masses }
    }

    /// The vacuous state: all mass on the full frame. This is the identity
    /// of both combination rules.
    pub fn vacuous(frame: Frame) -> Self {
        let full = frame.full_set();
        Self::categorical(frame, full)
    }

    /// The total-conflict state: all mass on ∅, absorbing under the
    /// normalized rule.
    pub fn total_conflict(frame: Frame) -> Self {
        Self::categorical(frame, Subset::EMPTY)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Mass assigned to one subset.
    pub fn mass(&self, subset: Subset) -> T {
        self.masses[subset.index()]
    }

    /// Dense mass vector, indexed by subset bitmask.
    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    /// Subsets carrying strictly positive mass, in ascending bitmask order.
    pub fn focal_elements(&self) -> impl Iterator<Item = (Subset, T)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > T::zero())
            .map(|(i, &m)| (Subset::from_index(i), m))
    }

    /// True for elements of the normalized space: either the empty set
    /// carries (numerically) no mass, or the value is the total-conflict
    /// state.
    pub fn is_normalized(&self) -> bool {
        let conflict = self.masses[0];
        conflict <= tolerance(NORMALIZED_TOLERANCE) || self.is_total_conflict()
    }

    /// True when essentially all mass sits on ∅.
    pub fn is_total_conflict(&self) -> bool {
        self.masses[0] >= T::one() - tolerance(TOTAL_CONFLICT_THRESHOLD)
    }

    /// Conjunctive combination without renormalization: the product of the
    /// two mass distributions pushed through set intersection. Conflicting
    /// products accumulate on ∅.
    ///
    /// This is the direct enumeration over focal pairs, `O(4^n)` worst case;
    /// [`MassFunction::fast_combine_unnormalized`] computes the same value in
    /// `O(n · 2^n)`.
    pub fn combine_unnormalized(&self, other: &Self) -> Result<Self> {
        ensure_same_frame(&self.frame, &other.frame)?;
        let mut out = vec![T::zero(); self.masses.len()];
        for (b, &mb) in self.masses.iter().enumerate() {
            if mb == T::zero() {
                continue;
            }
            for (c, &mc) in other.masses.iter().enumerate() {
                if mc == T::zero() {
                    continue;
                }
                out[b & c] += mb * mc;
            }
        }
        Ok(MassFunction {
            frame: self.frame.clone(),
            masses: out,
        })
    }

    /// Dempster's rule: conjunctive combination followed by renormalization
    /// of the conflict mass. Totally conflicting inputs yield the absorbing
    /// total-conflict state.
    ///
    /// Inputs must satisfy [`MassFunction::is_normalized`].
    pub fn combine_normalized(&self, other: &Self) -> Result<Self> {
        ensure_same_frame(&self.frame, &other.frame)?;
        for m in [self, other] {
            if !m.is_normalized() {
                return Err(Error::NotNormalized(
                    m.masses[0].to_f64().unwrap_or(f64::NAN),
                ));
            }
        }
        Ok(self.combine_unnormalized(other)?.normalize())
    }

    /// Projects into the normalized space: rescales non-empty masses by the
    /// non-conflicting total and zeroes ∅. Values whose conflict mass is
    /// within [`TOTAL_CONFLICT_THRESHOLD`] of one map to the total-conflict
    /// state. Total and idempotent.
    pub fn normalize(&self) -> Self {
        let conflict = self.masses[0];
        if conflict >= T::one() - tolerance(TOTAL_CONFLICT_THRESHOLD) {
            return Self::total_conflict(self.frame.clone());
        }
        let remainder = T::one() - conflict;
        let mut masses: Vec<T> = self.masses.iter().map(|&m| m / remainder).collect();
        masses[0] = T::zero();
        MassFunction {
            frame: self.frame.clone(),
            masses,
        }
    }

    /// Total mass committed to subsets of `set`.
    pub fn belief(&self, set: Subset) -> T {
        let bits = set.index();
        let mut total = T::zero();
        let mut sub = bits;
        loop {
            total += self.masses[sub];
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
        total
    }

    /// Total mass on subsets meeting `set`; the dual of belief on the
    /// complement for normalized states.
    pub fn plausibility(&self, set: Subset) -> T {
        let bits = set.bits();
        self.masses
            .iter()
            .enumerate()
            .filter(|(b, _)| *b as u32 & bits != 0)
            .map(|(_, &m)| m)
            .sum()
    }

    /// Total mass on supersets of `set`. Multiplicative under unnormalized
    /// combination.
    pub fn commonality(&self, set: Subset) -> T {
        let full = self.frame.full_set().index();
        let bits = set.index();
        let mut total = T::zero();
        let mut sup = bits;
        loop {
            total += self.masses[sup];
            if sup == full {
                break;
            }
            sup = (sup + 1) | bits;
        }
        total
    }

    /// Commonality of every subset at once via the superset zeta transform,
    /// `O(n · 2^n)`.
    pub fn commonality_transform(&self) -> Vec<T> {
        let mut q = self.masses.clone();
        superset_sums(&mut q);
        q
    }

    /// Recovers the mass function whose commonality transform is `q` by
    /// Möbius inversion.
    ///
    /// Fails with [`Error::NotAMass`] when the inversion produces an entry
    /// below `-1e-9` or a total off one by more than `1e-9`; negative
    /// round-off within tolerance is clamped to zero.
    pub fn from_commonality(q: &[T], frame: &Frame) -> Result<Self> {
        if q.len() != frame.subset_count() {
            return Err(Error::MassLength {
                got: q.len(),
                expected: frame.subset_count(),
            });
        }
        let mut masses = q.to_vec();
        superset_differences(&mut masses);
        let floor = -tolerance::<T>(NORMALIZED_TOLERANCE);
        let mut total = T::zero();
        for (i, entry) in masses.iter_mut().enumerate() {
            if !entry.is_finite() || *entry < floor {
                return Err(Error::NotAMass(format!(
                    "inversion yields {:?} for subset {}",
                    entry,
                    frame.format_subset(Subset::from_index(i))
                )));
            }
            if *entry < T::zero() {
                *entry = T::zero();
            }
            total += *entry;
        }
        if (total - T::one()).abs() > tolerance(NORMALIZED_TOLERANCE) {
            return Err(Error::NotAMass(format!("inversion total is {total:?}")));
        }
        for entry in &mut masses {
            *entry /= total;
        }
        Ok(MassFunction {
            frame: frame.clone(),
            masses,
        })
    }

    /// Conjunctive combination computed as a pointwise commonality product:
    /// transform both operands, multiply entrywise, invert. `O(n · 2^n)`
    /// total, which is what makes dense combination at 20 labels practical.
    pub fn fast_combine_unnormalized(&self, other: &Self) -> Result<Self> {
        ensure_same_frame(&self.frame, &other.frame)?;
        let mut q = self.commonality_transform();
        for (entry, &rhs) in q.iter_mut().zip(other.commonality_transform().iter()) {
            *entry *= rhs;
        }
        Self::from_commonality(&q, &self.frame)
    }
}
