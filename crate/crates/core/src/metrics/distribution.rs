use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Eigenvalues above this (negative) bound are clamped to zero; anything lower
/// means the covariance estimate is not PSD.
const EIGEN_CLAMP: f64 = -1e-10;

/// Embedding vectors for one population, one sample per row.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet(Matrix);

impl FeatureSet {
    pub fn new(vectors: Matrix) -> Result<Self> {
        if vectors.rows() < 2 {
            return Err(Error::InvalidArgument(format!(
                "feature set needs at least 2 samples, got {}",
                vectors.rows()
            )));
        }
        Ok(Self(vectors))
    }

    pub fn from_column(values: &[f64]) -> Result<Self> {
        Self::new(Matrix::new(values.len(), 1, values.to_vec())?)
    }

    pub fn len(&self) -> usize {
        self.0.rows()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.0.cols()
    }

    pub fn vectors(&self) -> &Matrix {
        &self.0
    }

    /// Sample mean and unbiased (n - 1) covariance.
    pub fn gaussian_fit(&self) -> (DVector<f64>, DMatrix<f64>) {
        let n = self.len();
        let d = self.dim();
        let mean = DVector::from_vec(self.0.column_means());
        let mut cov = DMatrix::<f64>::zeros(d, d);
        for row in self.0.iter_rows() {
            let centered =
                DVector::from_iterator(d, row.iter().zip(mean.iter()).map(|(v, m)| v - m));
            cov.ger(1.0, &centered, &centered, 1.0);
        }
        cov /= (n - 1) as f64;
        (mean, cov)
    }
}

/// Fréchet distance between Gaussian fits of two feature sets.
///
/// The trace term uses `Tr((A B)^½) = Tr((A^½ B A^½)^½)`, which keeps every
/// decomposition symmetric.
pub fn frechet_distance(a: &FeatureSet, b: &FeatureSet) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let (mu_a, cov_a) = a.gaussian_fit();
    let (mu_b, cov_b) = b.gaussian_fit();
    let mean_term = (&mu_a - &mu_b).norm_squared();

    let sqrt_a = psd_sqrt(&cov_a)?;
    let inner = &sqrt_a * &cov_b * &sqrt_a;
    let inner = (&inner + inner.transpose()) * 0.5;
    let eig = symmetric_eigenvalues(inner)?;
    let trace_sqrt: f64 = eig.iter().map(|l| l.sqrt()).sum();

    let fd = mean_term + cov_a.trace() + cov_b.trace() - 2.0 * trace_sqrt;
    if !fd.is_finite() {
        return Err(Error::NumericalFailure(
            "Fréchet distance is not finite".into(),
        ));
    }
    Ok(fd.max(0.0))
}

fn symmetric_eigenvalues(m: DMatrix<f64>) -> Result<Vec<f64>> {
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::NumericalFailure("eigendecomposition did not converge".into()))?;
    clamp_eigenvalues(eig.eigenvalues.iter().copied())
}

fn clamp_eigenvalues(values: impl Iterator<Item = f64>) -> Result<Vec<f64>> {
    values
        .map(|l| {
            if l >= 0.0 {
                Ok(l)
            } else if l > EIGEN_CLAMP {
                Ok(0.0)
            } else {
                Err(Error::NumericalFailure(format!(
                    "matrix is not positive semi-definite (eigenvalue {l:e})"
                )))
            }
        })
        .collect()
}

fn psd_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::NumericalFailure("eigendecomposition did not converge".into()))?;
    let roots = clamp_eigenvalues(eig.eigenvalues.iter().copied())?;
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        roots.len(),
        roots.iter().map(|l| l.sqrt()),
    ));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.transpose())
}

/// Probability vector over classes.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelDist(Vec<f64>);

impl LabelDist {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::InvalidArgument("empty label distribution".into()));
        }
        if let Some(p) = probabilities
            .iter()
            .find(|p| !(p.is_finite() && **p >= 0.0))
        {
            return Err(Error::OutOfRange(format!(
                "probability {p} is not a finite non-negative value"
            )));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::OutOfRange(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(Self(probabilities))
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `KL(p || q)` in nats.
pub fn kl_divergence(p: &LabelDist, q: &LabelDist) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(p.len(), q.len()));
    }
    let mut kl = 0.0;
    for (i, (&pi, &qi)) in p.0.iter().zip(&q.0).enumerate() {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Err(Error::SupportViolation(i));
        }
        kl += pi * (pi / qi).ln();
    }
    Ok(kl.max(0.0))
}
