//! Logarithmic opinions and their Gaussian summary statistics.
//!
//! Instead of reducing opinions to possibility subsets, each expert reports
//! a real vector of log posterior-to-prior ratios per label. Committees add
//! their members' vectors, so a population is summarized losslessly for
//! combination purposes by its weighted mean and covariance: combining two
//! populations adds both. A state is `n + n(n+1)/2 + 1` scalars rather than
//! the `2^n` of a subset mass distribution.

use crate::error::{Error, Result};
use crate::experts::{PriorVector, ProbabilisticEnsemble, DEFAULT_MAX_PRODUCT_EXPERTS};
use crate::frame::{ensure_same_frame, Frame};
use crate::jacobi::eigen_symmetric;
use crate::scalar::{real, tolerance, Real};

/// Covariance entries may disagree across the diagonal by at most this much
/// on input; storage is exactly symmetric after averaging.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Eigenvalue floor for accepting a covariance as positive semidefinite;
/// values in `[-PSD_TOLERANCE, 0)` are treated as round-off.
pub const PSD_TOLERANCE: f64 = 1e-9;

/// A covariance counts as numerically singular when its smallest eigenvalue
/// is at most this fraction of its largest.
pub const SINGULARITY_RATIO: f64 = 1e-12;

/// Residual bound `‖C·v − λv‖∞` for every reported eigenpair.
pub const EIGEN_RESIDUAL_TOLERANCE: f64 = 1e-9;

/// Per-label log posterior-to-prior ratios for one probabilistic opinion.
///
/// Requires every probability strictly positive; entries may have either
/// sign (they are not log-likelihood ratios).
pub fn log_opinion_from_probabilistic<T: Real>(
    opinion: &[T],
    priors: &PriorVector<T>,
) -> Result<Vec<T>> {
    if opinion.len() != priors.frame().len() {
        return Err(Error::VectorLength {
            got: opinion.len(),
            expected: priors.frame().len(),
        });
    }
    opinion
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            if p > T::zero() {
                Ok(p.ln() - priors.value(i).ln())
            } else {
                Err(Error::ZeroOpinion(priors.frame().label(i).to_string()))
            }
        })
        .collect()
}

/// One expert of a logarithmic ensemble: a positive weight and an
/// unbounded real vector over the labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LogExpert<T: Real> {
    pub weight: T,
    pub opinion: Vec<T>,
}

/// A weighted, finite population of experts with logarithmic opinions.
#[derive(Debug, Clone, PartialEq)]
pub struct LogOpinionEnsemble<T: Real> {
    frame: Frame,
    experts: Vec<LogExpert<T>>,
}

impl<T: Real> LogOpinionEnsemble<T> {
    /// Builds an ensemble from `(weight, opinion)` pairs; opinions are real
    /// vectors of frame length, weights strictly positive.
    pub fn new<I>(frame: Frame, experts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, Vec<T>)>,
    {
        let experts: Vec<LogExpert<T>> = experts
            .into_iter()
            .map(|(weight, opinion)| LogExpert { weight, opinion })
            .collect();
        if experts.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        for expert in &experts {
            if !expert.weight.is_finite() || expert.weight <= T::zero() {
                return Err(Error::NonPositiveWeight(
                    expert.weight.to_f64().unwrap_or(f64::NAN),
                ));
            }
            if expert.opinion.len() != frame.len() {
                return Err(Error::VectorLength {
                    got: expert.opinion.len(),
                    expected: frame.len(),
                });
            }
            for &y in &expert.opinion {
                if !y.is_finite() {
                    return Err(Error::NonFinite(y.to_f64().unwrap_or(f64::NAN)));
                }
            }
        }
        Ok(LogOpinionEnsemble { frame, experts })
    }

    /// Converts every opinion of a probabilistic ensemble into log ratios
    /// against the priors. Fails if any expert assigns zero to any label.
    pub fn from_probabilistic(
        ensemble: &ProbabilisticEnsemble<T>,
        priors: &PriorVector<T>,
    ) -> Result<Self> {
        ensure_same_frame(ensemble.frame(), priors.frame())?;
        let experts: Result<Vec<(T, Vec<T>)>> = ensemble
            .experts()
            .iter()
            .map(|e| {
                Ok((
                    e.weight,
                    log_opinion_from_probabilistic(&e.opinion, priors)?,
                ))
            })
            .collect();
        Self::new(ensemble.frame().clone(), experts?)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn experts(&self) -> &[LogExpert<T>] {
        &self.experts
    }

    pub fn total_weight(&self) -> T {
        self.experts.iter().map(|e| e.weight).sum()
    }

    /// Product-space combination: committees add their members' opinions
    /// componentwise and multiply their weights. Pairs are emitted with
    /// `self` as the outer factor.
    pub fn combine(&self, other: &Self) -> Result<Self> {
        self.combine_capped(other, DEFAULT_MAX_PRODUCT_EXPERTS)
    }

    /// [`LogOpinionEnsemble::combine`] with an explicit product-size cap.
    pub fn combine_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        ensure_same_frame(&self.frame, &other.frame)?;
        let size = self.experts.len().saturating_mul(other.experts.len());
        if size > cap {
            return Err(Error::EnsembleTooLarge { size, cap });
        }
        let n = self.frame.len();
        let mut experts = Vec::with_capacity(size);
        for left in &self.experts {
            for right in &other.experts {
                experts.push(LogExpert {
                    weight: left.weight * right.weight,
                    opinion: (0..n).map(|i| left.opinion[i] + right.opinion[i]).collect(),
                });
            }
        }
        Ok(LogOpinionEnsemble {
            frame: self.frame.clone(),
            experts,
        })
    }

    /// Weighted mean and weighted population covariance of the opinions,
    /// plus the total weight.
    ///
    /// The covariance divides by total weight rather than a bias-corrected
    /// denominator; only that form makes statistics of a product ensemble
    /// equal the sum of the factor statistics exactly.
    pub fn stats(&self) -> GaussianLogState<T> {
        let n = self.frame.len();
        let total = self.total_weight();
        let mut mean = vec![T::zero(); n];
        for expert in &self.experts {
            for (m, &y) in mean.iter_mut().zip(&expert.opinion) {
                *m += expert.weight * y;
            }
        }
        for m in &mut mean {
            *m /= total;
        }
        let mut cov = vec![T::zero(); n * n];
        for expert in &self.experts {
            for i in 0..n {
                let di = expert.opinion[i] - mean[i];
                for j in i..n {
                    let dj = expert.opinion[j] - mean[j];
                    cov[i * n + j] += expert.weight * di * dj;
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                cov[i * n + j] /= total;
                cov[j * n + i] = cov[i * n + j];
            }
        }
        GaussianLogState {
            frame: self.frame.clone(),
            mean,
            cov,
            weight: total,
        }
    }
}

/// Gaussian summary of a logarithmic-opinion population: mean vector,
/// symmetric positive-semidefinite covariance, and total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianLogState<T: Real> {
    frame: Frame,
    mean: Vec<T>,
    /// Row-major `n × n`, kept exactly symmetric.
    cov: Vec<T>,
    weight: T,
}

impl<T: Real> GaussianLogState<T> {
    /// Builds a state from a mean vector and covariance rows.
    ///
    /// The covariance must be symmetric within [`SYMMETRY_TOLERANCE`] (it is
    /// then symmetrized exactly) and positive semidefinite within
    /// [`PSD_TOLERANCE`]; the weight must be strictly positive.
    pub fn new(frame: Frame, mean: Vec<T>, cov_rows: Vec<Vec<T>>, weight: T) -> Result<Self> {
        let n = frame.len();
        if mean.len() != n {
            return Err(Error::VectorLength {
                got: mean.len(),
                expected: n,
            });
        }
        if cov_rows.len() != n {
            return Err(Error::VectorLength {
                got: cov_rows.len(),
                expected: n,
            });
        }
        for value in mean.iter().chain(cov_rows.iter().flatten()) {
            if !value.is_finite() {
                return Err(Error::NonFinite(value.to_f64().unwrap_or(f64::NAN)));
            }
        }
        if !weight.is_finite() || weight <= T::zero() {
            return Err(Error::NonPositiveWeight(
                weight.to_f64().unwrap_or(f64::NAN),
            ));
        }
        let mut cov = vec![T::zero(); n * n];
        for (i, row) in cov_rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::VectorLength {
                    got: row.len(),
                    expected: n,
                });
            }
            for (j, &value) in row.iter().enumerate() {
                cov[i * n + j] = value;
            }
        }
        let half = real::<T>(0.5);
        for i in 0..n {
            for j in i + 1..n {
                let delta = (cov[i * n + j] - cov[j * n + i]).abs();
                if delta > tolerance(SYMMETRY_TOLERANCE) {
                    return Err(Error::AsymmetricCovariance {
                        i,
                        j,
                        delta: delta.to_f64().unwrap_or(f64::NAN),
                    });
                }
                let averaged = (cov[i * n + j] + cov[j * n + i]) * half;
                cov[i * n + j] = averaged;
                cov[j * n + i] = averaged;
            }
        }
        let state = GaussianLogState {
            frame,
            mean,
            cov,
            weight,
        };
        let (eigenvalues, _) = state.eigen()?;
        if let Some(&lowest) = eigenvalues
            .iter()
            .min_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"))
        {
            if lowest < -tolerance::<T>(PSD_TOLERANCE) {
                return Err(Error::NotPositiveSemidefinite(
                    lowest.to_f64().unwrap_or(f64::NAN),
                ));
            }
        }
        Ok(state)
    }

    /// The combination identity: zero mean, zero covariance, unit weight.
    pub fn identity(frame: Frame) -> Self {
        let n = frame.len();
        GaussianLogState {
            frame,
            mean: vec![T::zero(); n],
            cov: vec![T::zero(); n * n],
            weight: T::one(),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn mean(&self) -> &[T] {
        &self.mean
    }

    /// Covariance entry `C[i][j]`.
    pub fn cov(&self, i: usize, j: usize) -> T {
        self.cov[i * self.frame.len() + j]
    }

    /// Covariance as row vectors.
    pub fn cov_rows(&self) -> Vec<Vec<T>> {
        let n = self.frame.len();
        (0..n)
            .map(|i| self.cov[i * n..(i + 1) * n].to_vec())
            .collect()
    }

    pub fn weight(&self) -> T {
        self.weight
    }

    /// Independent scalars held by the state: the mean, one triangle of the
    /// covariance, and the weight. Quadratic in the label count, against the
    /// exponential cost of a subset mass distribution.
    pub fn parameter_count(&self) -> usize {
        let n = self.frame.len();
        n + n * (n + 1) / 2 + 1
    }

    /// Combination of summaries: means add, covariances add, weights
    /// multiply. Mirrors product-ensemble combination exactly.
    pub fn combine(&self, other: &Self) -> Result<Self> {
        ensure_same_frame(&self.frame, &other.frame)?;
        let mean = self
            .mean
            .iter()
            .zip(&other.mean)
            .map(|(&a, &b)| a + b)
            .collect();
        let cov = self
            .cov
            .iter()
            .zip(&other.cov)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(GaussianLogState {
            frame: self.frame.clone(),
            mean,
            cov,
            weight: self.weight * other.weight,
        })
    }

    /// Per-label decision scores: mean log ratio plus log prior, sorted
    /// descending with ties broken by frame order. The leading label is the
    /// one the accumulated evidence favors.
    pub fn posterior_scores(&self, priors: &PriorVector<T>) -> Result<Vec<(String, T)>> {
        ensure_same_frame(&self.frame, priors.frame())?;
        let mut scored: Vec<(usize, T)> = self
            .mean
            .iter()
            .enumerate()
            .map(|(i, &u)| (i, u + priors.value(i).ln()))
            .collect();
        scored.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .expect("finite scores")
                .then(a.0.cmp(&b.0))
        });
        Ok(scored
            .into_iter()
            .map(|(i, score)| (self.frame.label(i).to_string(), score))
            .collect())
    }

    fn eigen(&self) -> Result<(Vec<T>, Vec<Vec<T>>)> {
        eigen_symmetric(&self.cov, self.frame.len())
    }

    /// Quadratic form `(y − ū)ᵀ C⁻¹ (y − ū)`; equals one on the one-sigma
    /// ellipsoid. Fails with [`Error::SingularCovariance`] when the smallest
    /// eigenvalue is at most [`SINGULARITY_RATIO`] times the largest.
    pub fn mahalanobis(&self, point: &[T]) -> Result<T> {
        let n = self.frame.len();
        if point.len() != n {
            return Err(Error::VectorLength {
                got: point.len(),
                expected: n,
            });
        }
        let (values, vectors) = self.eigen()?;
        let largest = values.iter().fold(T::zero(), |acc, &v| acc.max(v));
        let smallest = values.iter().copied().fold(T::infinity(), T::min);
        if smallest <= tolerance::<T>(SINGULARITY_RATIO) * largest {
            return Err(Error::SingularCovariance);
        }
        let delta: Vec<T> = point.iter().zip(&self.mean).map(|(&y, &u)| y - u).collect();
        let mut total = T::zero();
        for (lambda, vector) in values.iter().zip(&vectors) {
            let projection: T = vector.iter().zip(&delta).map(|(&v, &d)| v * d).sum();
            total += projection * projection / *lambda;
        }
        Ok(total)
    }

    /// Eigenpairs of the covariance in descending eigenvalue order. The
    /// eigenvalues are the squared semi-axis lengths of the one-sigma
    /// ellipsoid; eigenvalues within [`PSD_TOLERANCE`] below zero clamp to
    /// zero. Every returned pair satisfies the
    /// [`EIGEN_RESIDUAL_TOLERANCE`] residual bound.
    pub fn ellipsoid_axes(&self) -> Result<Vec<(T, Vec<T>)>> {
        let n = self.frame.len();
        let (values, vectors) = self.eigen()?;
        let mut pairs: Vec<(T, Vec<T>)> = values
            .into_iter()
            .zip(vectors)
            .map(|(lambda, mut vector)| {
                let lambda = if lambda < T::zero() {
                    T::zero()
                } else {
                    lambda
                };
                // Deterministic sign: first non-negligible component positive.
                if let Some(&lead) = vector.iter().find(|v| v.abs() > real(1e-12)) {
                    if lead < T::zero() {
                        for v in &mut vector {
                            *v = -*v;
                        }
                    }
                }
                (lambda, vector)
            })
            .collect();
        pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite eigenvalues"));
        for (lambda, vector) in &pairs {
            let mut worst = T::zero();
            for i in 0..n {
                let row: T = (0..n).map(|j| self.cov[i * n + j] * vector[j]).sum();
                worst = worst.max((row - *lambda * vector[i]).abs());
            }
            if worst > tolerance(EIGEN_RESIDUAL_TOLERANCE) {
                return Err(Error::ConvergenceFailure);
            }
        }
        Ok(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn frame_ab() -> Frame {
        Frame::new(["a", "b"]).unwrap()
    }

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (i, (&a, &e)) in actual.iter().zip(expected).enumerate() {
            assert!((a - e).abs() <= tol, "entry {i}: {a} vs {e}");
        }
    }

    fn random_ensemble(frame: &Frame, rng: &mut ChaCha8Rng) -> LogOpinionEnsemble<f64> {
        let n = frame.len();
        let count = rng.random_range(1..=8);
        let experts: Vec<(f64, Vec<f64>)> = (0..count)
            .map(|_| {
                let weight = rng.random_range(0.1..3.0);
                let opinion = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
                (weight, opinion)
            })
            .collect();
        LogOpinionEnsemble::new(frame.clone(), experts).unwrap()
    }

    #[test]
    fn log_ratio_examples() {
        let frame = frame_ab();
        let priors = PriorVector::new(frame.clone(), vec![0.5, 0.5]).unwrap();
        let zeroed = log_opinion_from_probabilistic(&[0.5, 0.5], &priors).unwrap();
        assert_close(&zeroed, &[0.0, 0.0], 1e-15);

        let skewed = log_opinion_from_probabilistic(&[0.8, 0.2], &priors).unwrap();
        assert_close(&skewed, &[0.470004, -0.916291], 1e-6);

        let wide = Frame::new(["a", "b", "c"]).unwrap();
        let uniform = PriorVector::uniform(wide);
        assert!(matches!(
            log_opinion_from_probabilistic(&[0.5, 0.5, 0.0], &uniform).unwrap_err(),
            Error::ZeroOpinion(label) if label == "c"
        ));
    }

    #[test]
    fn additive_identity_preserves_stats() {
        let frame = frame_ab();
        let e1 = LogOpinionEnsemble::new(
            frame.clone(),
            [(1.0, vec![1.0, 0.0]), (1.0, vec![3.0, 2.0])],
        )
        .unwrap();
        let identity = LogOpinionEnsemble::new(frame, [(1.0, vec![0.0, 0.0])]).unwrap();
        let combined = e1.combine(&identity).unwrap();
        let lhs = combined.stats();
        let rhs = e1.stats();
        assert_close(lhs.mean(), rhs.mean(), 1e-15);
        assert_close(&lhs.cov_rows().concat(), &rhs.cov_rows().concat(), 1e-15);
        assert_eq!(lhs.weight(), rhs.weight());
    }

    #[test]
    fn singleton_committees_add_componentwise() {
        let frame = frame_ab();
        let e1 = LogOpinionEnsemble::new(frame.clone(), [(1.0, vec![1.0, 2.0])]).unwrap();
        let e2 = LogOpinionEnsemble::new(frame, [(1.0, vec![3.0, -1.0])]).unwrap();
        let combined = e1.combine(&e2).unwrap();
        assert_eq!(combined.experts().len(), 1);
        assert_close(&combined.experts()[0].opinion, &[4.0, 1.0], 0.0);
    }

    #[test]
    fn stats_of_known_ensembles() {
        let frame = frame_ab();
        let single = LogOpinionEnsemble::new(frame.clone(), [(1.0, vec![1.0, 2.0])]).unwrap();
        let s = single.stats();
        assert_close(s.mean(), &[1.0, 2.0], 0.0);
        assert_close(&s.cov_rows().concat(), &[0.0; 4], 0.0);

        let pair =
            LogOpinionEnsemble::new(frame, [(1.0, vec![1.0, 0.0]), (1.0, vec![3.0, 2.0])]).unwrap();
        let s = pair.stats();
        assert_close(s.mean(), &[2.0, 1.0], 1e-15);
        assert_close(&s.cov_rows().concat(), &[1.0, 1.0, 1.0, 1.0], 1e-15);
    }

    #[test]
    fn sample_mean_of_large_draw_is_near_truth() {
        let frame = frame_ab();
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let truth = [0.8, -0.4];
        let experts: Vec<(f64, Vec<f64>)> = (0..1000)
            .map(|_| {
                (
                    1.0,
                    truth
                        .iter()
                        .map(|&t| t + rng.random_range(-1.0..1.0))
                        .collect(),
                )
            })
            .collect();
        let stats = LogOpinionEnsemble::new(frame, experts).unwrap().stats();
        // Uniform noise on [-1, 1] has σ = 1/√3; allow five standard errors.
        let bound = 5.0 / (3.0f64.sqrt() * 1000.0f64.sqrt());
        for (m, t) in stats.mean().iter().zip(&truth) {
            assert!((m - t).abs() <= bound, "mean {m} strayed from {t}");
        }
    }

    #[test]
    fn state_combination_examples() {
        let frame = frame_ab();
        let s1 = GaussianLogState::new(
            frame.clone(),
            vec![1.0, 0.0],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            2.0,
        )
        .unwrap();
        let identity = GaussianLogState::identity(frame.clone());
        let kept = s1.combine(&identity).unwrap();
        assert_eq!(kept, s1);

        let s2 = GaussianLogState::new(
            frame,
            vec![0.0, 2.0],
            vec![vec![0.5, 0.0], vec![0.0, 0.5]],
            1.0,
        )
        .unwrap();
        let sum = s1.combine(&s2).unwrap();
        assert_close(sum.mean(), &[1.0, 2.0], 0.0);
        assert_close(&sum.cov_rows().concat(), &[1.5, 0.0, 0.0, 1.5], 0.0);
        assert_eq!(sum.weight(), 2.0);
    }

    #[test]
    fn stats_commute_with_combination() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        for _ in 0..100 {
            let e1 = random_ensemble(&frame, &mut rng);
            let e2 = random_ensemble(&frame, &mut rng);
            let lhs = e1.combine(&e2).unwrap().stats();
            let rhs = e1.stats().combine(&e2.stats()).unwrap();
            assert_close(lhs.mean(), rhs.mean(), 1e-9);
            assert_close(&lhs.cov_rows().concat(), &rhs.cov_rows().concat(), 1e-9);
            assert!((lhs.weight() - rhs.weight()).abs() <= 1e-9 * rhs.weight());
        }
    }

    #[test]
    fn posterior_score_examples() {
        let frame = frame_ab();
        let resting = GaussianLogState::<f64>::identity(frame.clone());
        let uniform = PriorVector::uniform(frame.clone());
        let scores = resting.posterior_scores(&uniform).unwrap();
        // All equal: frame order decides.
        assert_eq!(scores[0].0, "a");
        assert_eq!(scores[1].0, "b");
        assert_eq!(scores[0].1, scores[1].1);

        let state = GaussianLogState::<f64>::new(
            frame.clone(),
            vec![2.0, 0.0],
            vec![vec![0.0, 0.0], vec![0.0, 0.0]],
            1.0,
        )
        .unwrap();
        let half = PriorVector::new(frame, vec![0.5, 0.5]).unwrap();
        let scores = state.posterior_scores(&half).unwrap();
        assert_eq!(scores[0].0, "a");
        assert!((scores[0].1 - scores[1].1 - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn mahalanobis_examples() {
        let frame = frame_ab();
        let state = GaussianLogState::<f64>::new(
            frame.clone(),
            vec![1.0, -1.0],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            1.0,
        )
        .unwrap();
        assert!(state.mahalanobis(&[1.0, -1.0]).unwrap().abs() <= 1e-12);
        assert!((state.mahalanobis(&[2.0, -1.0]).unwrap() - 1.0).abs() <= 1e-12);

        // The two-expert covariance is rank one, hence singular.
        let degenerate = GaussianLogState::new(
            frame,
            vec![2.0, 1.0],
            vec![vec![1.0, 1.0], vec![1.0, 1.0]],
            2.0,
        )
        .unwrap();
        assert_eq!(
            degenerate.mahalanobis(&[2.0, 1.0]).unwrap_err(),
            Error::SingularCovariance
        );
    }

    #[test]
    fn ellipsoid_axes_examples() {
        let frame = frame_ab();
        let diag = GaussianLogState::new(
            frame.clone(),
            vec![0.0, 0.0],
            vec![vec![4.0, 0.0], vec![0.0, 1.0]],
            1.0,
        )
        .unwrap();
        let axes = diag.ellipsoid_axes().unwrap();
        assert_eq!(axes[0].0, 4.0);
        assert_eq!(axes[1].0, 1.0);
        assert_close(&axes[0].1, &[1.0, 0.0], 1e-12);
        assert_close(&axes[1].1, &[0.0, 1.0], 1e-12);
        assert!((axes[0].0.sqrt() - 2.0).abs() <= 1e-12);

        let degenerate = GaussianLogState::<f64>::new(
            frame,
            vec![0.0, 0.0],
            vec![vec![1.0, 1.0], vec![1.0, 1.0]],
            1.0,
        )
        .unwrap();
        let axes = degenerate.ellipsoid_axes().unwrap();
        let d = 1.0 / 2.0f64.sqrt();
        assert!((axes[0].0 - 2.0).abs() <= 1e-12);
        assert!(axes[1].0 <= 1e-12);
        assert_close(&axes[0].1, &[d, d], 1e-12);
        assert_close(&axes[1].1, &[d, -d], 1e-12);
    }

    #[test]
    fn axes_at_semi_axis_points_sit_on_unit_ellipsoid() {
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        let state = GaussianLogState::<f64>::new(
            frame,
            vec![1.0, 2.0, 3.0],
            vec![
                vec![2.0, 0.3, 0.1],
                vec![0.3, 1.5, 0.2],
                vec![0.1, 0.2, 1.0],
            ],
            1.0,
        )
        .unwrap();
        for (lambda, vector) in state.ellipsoid_axes().unwrap() {
            let point: Vec<f64> = state
                .mean()
                .iter()
                .zip(&vector)
                .map(|(&u, &v)| u + lambda.sqrt() * v)
                .collect();
            assert!((state.mahalanobis(&point).unwrap() - 1.0).abs() <= 1e-6);
        }
    }

    #[test]
    fn construction_rejects_malformed_states() {
        let frame = frame_ab();
        assert!(matches!(
            GaussianLogState::new(
                frame.clone(),
                vec![0.0, 0.0],
                vec![vec![1.0, 0.5], vec![0.2, 1.0]],
                1.0,
            )
            .unwrap_err(),
            Error::AsymmetricCovariance { .. }
        ));
        assert!(matches!(
            GaussianLogState::new(
                frame.clone(),
                vec![0.0, 0.0],
                vec![vec![1.0, 0.0], vec![0.0, -1.0]],
                1.0,
            )
            .unwrap_err(),
            Error::NotPositiveSemidefinite(_)
        ));
        // Sub-tolerance asymmetry is accepted and symmetrized exactly.
        let state = GaussianLogState::new(
            frame,
            vec![0.0, 0.0],
            vec![vec![1.0, 0.5 + 1e-10], vec![0.5, 1.0]],
            1.0,
        )
        .unwrap();
        assert_eq!(state.cov(0, 1), state.cov(1, 0));
    }

    #[test]
    fn state_is_quadratically_sized() {
        for n in 1..=6usize {
            let labels: Vec<String> = (0..n).map(|i| format!("l{i}")).collect();
            let frame = Frame::new(labels).unwrap();
            let state = GaussianLogState::<f64>::identity(frame.clone());
            assert_eq!(state.parameter_count(), n + n * (n + 1) / 2 + 1);
            assert_eq!(
                state.mean().len() + state.cov_rows().concat().len() + 1,
                n + n * n + 1
            );
            if n >= 5 {
                assert!(state.parameter_count() < frame.subset_count());
            }
        }
    }

    proptest! {
        #[test]
        fn ranking_ignores_constant_shifts(shift in -10.0f64..10.0, seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let frame = Frame::new(["a", "b", "c", "d"]).unwrap();
            let mean: Vec<f64> = (0..4).map(|_| rng.random_range(-3.0..3.0)).collect();
            let shifted: Vec<f64> = mean.iter().map(|&u| u + shift).collect();
            let cov = vec![vec![0.0; 4]; 4];
            let priors = PriorVector::new(
                frame.clone(),
                (0..4).map(|_| rng.random_range(0.1..2.0)).collect(),
            ).unwrap();
            let base = GaussianLogState::new(frame.clone(), mean, cov.clone(), 1.0).unwrap();
            let moved = GaussianLogState::new(frame, shifted, cov, 1.0).unwrap();
            let order_base: Vec<String> =
                base.posterior_scores(&priors).unwrap().into_iter().map(|(l, _)| l).collect();
            let order_moved: Vec<String> =
                moved.posterior_scores(&priors).unwrap().into_iter().map(|(l, _)| l).collect();
            prop_assert_eq!(order_base, order_moved);
        }
    }
}
