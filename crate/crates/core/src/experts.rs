//! Weighted populations of experts and their product-space combination.
//!
//! Experts carry either boolean opinions (the subset of labels they deem
//! possible) or probabilistic opinions (a distribution over labels, with the
//! zero vector meaning "no opinion"). Two populations combine by forming
//! every committee of one expert from each, the committee weight being the
//! product of member weights. The projections here — probabilistic to
//! boolean by test for zero, boolean to mass statistics by weighted counting,
//! then normalization — carry ensemble combination onto belief-state
//! combination.

use crate::error::{Error, Result};
use crate::frame::{ensure_same_frame, Frame, Subset};
use crate::mass::MassFunction;
use crate::scalar::{tolerance, Real};

/// Default cap on the expert count of a product ensemble. Product sizes grow
/// multiplicatively with each combination, so oversized results fail loudly
/// instead of exhausting memory.
pub const DEFAULT_MAX_PRODUCT_EXPERTS: usize = 1_000_000;

/// Tolerance on the total of a probabilistic opinion.
pub const OPINION_SUM_TOLERANCE: f64 = 1e-9;

fn check_weight<T: Real>(weight: T) -> Result<()> {
    if weight > T::zero() && weight.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveWeight(
            weight.to_f64().unwrap_or(f64::NAN),
        ))
    }
}

fn checked_product_size(left: usize, right: usize, cap: usize) -> Result<usize> {
    let size = left.saturating_mul(right);
    if size > cap {
        Err(Error::EnsembleTooLarge { size, cap })
    } else {
        Ok(size)
    }
}

/// One expert of a boolean ensemble: a positive weight and the subset of
/// labels the expert considers possible (∅ means "no opinion").
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BooleanExpert<T: Real> {
    pub weight: T,
    pub opinion: Subset,
}

/// A weighted, finite population of experts with boolean opinions.
#[derive(Debug, Clone, PartialEq)]
pub struct BooleanEnsemble<T: Real> {
    frame: Frame,
    experts: Vec<BooleanExpert<T>>,
}

impl<T: Real> BooleanEnsemble<T> {
    /// Builds an ensemble from `(weight, opinion)` pairs. At least one
    /// expert is required and every weight must be strictly positive.
    pub fn new<I>(frame: Frame, experts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, Subset)>,
    {
        let full = frame.full_set();
        let experts: Vec<BooleanExpert<T>> = experts
            .into_iter()
            .map(|(weight, opinion)| BooleanExpert { weight, opinion })
            .collect();
        if experts.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        for expert in &experts {
            check_weight(expert.weight)?;
            if !expert.opinion.is_subset_of(full) {
                return Err(Error::SubsetOutOfRange {
                    bits: expert.opinion.bits(),
                    n: frame.len(),
                });
            }
        }
        Ok(BooleanEnsemble { frame, experts })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn experts(&self) -> &[BooleanExpert<T>] {
        &self.experts
    }

    /// Sum of all expert weights.
    pub fn total_weight(&self) -> T {
        self.experts.iter().map(|e| e.weight).sum()
    }

    /// Number of experts holding the empty "no opinion" subset.
    pub fn no_opinion_count(&self) -> usize {
        self.experts.iter().filter(|e| e.opinion.is_empty()).count()
    }

    /// Product-space combination: every pair of experts forms a committee
    /// whose weight is the product of the members' weights and whose opinion
    /// is the intersection of the members' opinions. Pairs are emitted with
    /// `self` as the outer factor.
    pub fn combine(&self, other: &Self) -> Result<Self> {
        self.combine_capped(other, DEFAULT_MAX_PRODUCT_EXPERTS)
    }

    /// [`BooleanEnsemble::combine`] with an explicit product-size cap.
    pub fn combine_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        ensure_same_frame(&self.frame, &other.frame)?;
        checked_product_size(self.experts.len(), other.experts.len(), cap)?;
        let mut experts = Vec::with_capacity(self.experts.len() * other.experts.len());
        for left in &self.experts {
            for right in &other.experts {
                experts.push(BooleanExpert {
                    weight: left.weight * right.weight,
                    opinion: left.opinion.intersect(right.opinion),
                });
            }
        }
        Ok(BooleanEnsemble {
            frame: self.frame.clone(),
            experts,
        })
    }

    /// Mass statistics of the population: for each subset, the fraction of
    /// total weight held by experts whose opinion is exactly that subset.
    /// The result may commit mass to ∅ and so lives in the unnormalized
    /// space.
    pub fn to_mass_statistics(&self) -> MassFunction<T> {
        let mut by_subset = vec![T::zero(); self.frame.subset_count()];
        for expert in &self.experts {
            by_subset[expert.opinion.index()] += expert.weight;
        }
        let total = self.total_weight();
        for entry in &mut by_subset {
            *entry /= total;
        }
        MassFunction::new(self.frame.clone(), by_subset)
            .expect("weighted counting yields a valid mass distribution")
    }
}

/// One expert of a probabilistic ensemble: a positive weight and either a
/// probability distribution over labels or the all-zero "no opinion" vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilisticExpert<T: Real> {
    pub weight: T,
    pub opinion: Vec<T>,
}

impl<T: Real> ProbabilisticExpert<T> {
    /// True for the "no opinion" state.
    pub fn has_no_opinion(&self) -> bool {
        self.opinion.iter().all(|&p| p == T::zero())
    }
}

/// A weighted, finite population of experts with probabilistic opinions.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilisticEnsemble<T: Real> {
    frame: Frame,
    experts: Vec<ProbabilisticExpert<T>>,
}

impl<T: Real> ProbabilisticEnsemble<T> {
    /// Builds an ensemble from `(weight, opinion)` pairs. Each opinion must
    /// be a nonnegative vector of frame length that either totals one within
    /// [`OPINION_SUM_TOLERANCE`] (it is then rescaled exactly) or is
    /// identically zero.
    pub fn new<I>(frame: Frame, experts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, Vec<T>)>,
    {
        let mut out = Vec::new();
        for (weight, mut opinion) in experts {
            check_weight(weight)?;
            if opinion.len() != frame.len() {
                return Err(Error::VectorLength {
                    got: opinion.len(),
                    expected: frame.len(),
                });
            }
            for &p in &opinion {
                if !p.is_finite() || p < T::zero() {
                    return Err(Error::InvalidOpinion(p.to_f64().unwrap_or(f64::NAN)));
                }
            }
            let total: T = opinion.iter().copied().sum();
            if total != T::zero() {
                if (total - T::one()).abs() > tolerance(OPINION_SUM_TOLERANCE) {
                    return Err(Error::InvalidOpinion(total.to_f64().unwrap_or(f64::NAN)));
                }
                for p in &mut opinion {
                    *p /= total;
                }
            }
            out.push(ProbabilisticExpert { weight, opinion });
        }
        if out.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        Ok(ProbabilisticEnsemble {
            frame,
            experts: out,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn experts(&self) -> &[ProbabilisticExpert<T>] {
        &self.experts
    }

    pub fn total_weight(&self) -> T {
        self.experts.iter().map(|e| e.weight).sum()
    }

    pub fn no_opinion_count(&self) -> usize {
        self.experts.iter().filter(|e| e.has_no_opinion()).count()
    }

    /// Product-space Bayesian combination: each committee multiplies the two
    /// members' label probabilities, discounts by the prior constants, and
    /// renormalizes. A vanishing normalizer (disjoint supports, or a member
    /// with no opinion) yields the "no opinion" vector. Weights multiply;
    /// pairs are emitted with `self` as the outer factor.
    pub fn combine(&self, other: &Self, priors: &PriorVector<T>) -> Result<Self> {
        self.combine_capped(other, priors, DEFAULT_MAX_PRODUCT_EXPERTS)
    }

    /// [`ProbabilisticEnsemble::combine`] with an explicit product-size cap.
    pub fn combine_capped(
        &self,
        other: &Self,
        priors: &PriorVector<T>,
        cap: usize,
    ) -> Result<Self> {
        ensure_same_frame(&self.frame, &other.frame)?;
        ensure_same_frame(&self.frame, priors.frame())?;
        checked_product_size(self.experts.len(), other.experts.len(), cap)?;
        let n = self.frame.len();
        let mut experts = Vec::with_capacity(self.experts.len() * other.experts.len());
        for left in &self.experts {
            for right in &other.experts {
                let mut opinion: Vec<T> = (0..n)
                    .map(|i| left.opinion[i] * right.opinion[i] / priors.value(i))
                    .collect();
                let normalizer: T = opinion.iter().copied().sum();
                if normalizer > T::zero() {
                    for p in &mut opinion {
                        *p /= normalizer;
                    }
                } else {
                    opinion = vec![T::zero(); n];
                }
                experts.push(ProbabilisticExpert {
                    weight: left.weight * right.weight,
                    opinion,
                });
            }
        }
        Ok(ProbabilisticEnsemble {
            frame: self.frame.clone(),
            experts,
        })
    }

    /// Test-for-zero projection: each opinion becomes the subset of labels
    /// with strictly positive probability. "No opinion" becomes ∅.
    pub fn to_boolean(&self) -> BooleanEnsemble<T> {
        let experts = self.experts.iter().map(|expert| {
            let mut bits = 0u32;
            for (i, &p) in expert.opinion.iter().enumerate() {
                if p > T::zero() {
                    bits |= 1 << i;
                }
            }
            (expert.weight, Subset(bits))
        });
        BooleanEnsemble::new(self.frame.clone(), experts)
            .expect("projection preserves ensemble validity")
    }

    /// The full projection onto normalized belief states: test for zero,
    /// take mass statistics, normalize.
    pub fn ds_state(&self) -> MassFunction<T> {
        self.to_boolean().to_mass_statistics().normalize()
    }
}

/// Strictly positive per-label constants: the prior probabilities used by
/// probabilistic combination and by posterior scoring.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorVector<T: Real> {
    frame: Frame,
    values: Vec<T>,
}

impl<T: Real> PriorVector<T> {
    /// Builds a prior vector; every entry must be strictly positive and
    /// finite. The entries need not total one.
    pub fn new(frame: Frame, values: Vec<T>) -> Result<Self> {
        if values.len() != frame.len() {
            return Err(Error::VectorLength {
                got: values.len(),
                expected: frame.len(),
            });
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v <= T::zero() {
                return Err(Error::NonPositivePrior {
                    label: frame.label(i).to_string(),
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(PriorVector { frame, values })
    }

    /// The all-ones prior, the default when no priors are supplied.
    pub fn ones(frame: Frame) -> Self {
        let values = vec![T::one(); frame.len()];
        PriorVector { frame, values }
    }

    /// The uniform probability prior `1/n` per label.
    pub fn uniform(frame: Frame) -> Self {
        let n = frame.len();
        let value = T::one() / T::from_usize(n).expect("frame size fits the scalar type");
        PriorVector {
            frame,
            values: vec![value; n],
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, i: usize) -> T {
        self.values[i]
    }
}
