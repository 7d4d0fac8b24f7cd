//! Spectral transforms `K = f(W)`, the commutator operator `Δ(K)`, the contrast
//! `‖AK − KA‖/‖A‖` and the commutant dimension formula.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;

/// Eigen-decomposition of a symmetric matrix with eigenvalues sorted ascending.
pub fn sorted_symmetric_eigen(m: &SymMatrix) -> (DVector<f64>, DMatrix<f64>) {
    let eig = m.as_matrix().clone().symmetric_eigen();
    let n = m.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_fn(n, |i, _| eig.eigenvalues[order[i]]);
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

/// A scalar function applied to the spectrum of a symmetric matrix.
///
/// Each variant must be injective on the spectrum it is applied to; this is
/// checked at application time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SpectralFunction {
    /// `t ↦ exp(t)`
    Exp,
    /// `t ↦ 1/t` (precision-matrix setting)
    Inverse,
    /// `t ↦ (1 − t)^{-2}`
    InverseSquareShift,
    /// `t ↦ Σ c_j t^j`
    Polynomial(Vec<f64>),
    /// Generating function of a discrete law on matrix powers:
    /// `t ↦ Σ w_k t^k` with nonnegative weights summing to one.
    MatrixPowerMixture(Vec<f64>),
}

impl SpectralFunction {
    /// Evaluates the scalar function, reporting domain violations.
    pub fn eval(&self, t: f64) -> Result<f64> {
        match self {
            SpectralFunction::Exp => Ok(t.exp()),
            SpectralFunction::Inverse => {
                if t == 0.0 {
                    Err(Error::DomainError {
                        eigenvalue: t,
                        reason: "1/t undefined at zero".into(),
                    })
                } else {
                    Ok(1.0 / t)
                }
            }
            SpectralFunction::InverseSquareShift => {
                if t == 1.0 {
                    Err(Error::DomainError {
                        eigenvalue: t,
                        reason: "(1 - t)^-2 undefined at one".into(),
                    })
                } else {
                    Ok((1.0 - t).powi(-2))
                }
            }
            SpectralFunction::Polynomial(coeffs) => {
                Ok(coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c))
            }
            SpectralFunction::MatrixPowerMixture(weights) => {
                Ok(weights.iter().rev().fold(0.0, |acc, &w| acc * t + w))
            }
        }
    }
}

/// Applies `f` to the spectrum: `K = U f(D) U^T`. Fails if `f` is undefined on
/// an eigenvalue or maps two distinct eigenvalues to the same image.
pub fn apply_spectral_function(w: &SymMatrix, f: &SpectralFunction) -> Result<SymMatrix> {
    apply_matrix_function(w, |t| f.eval(t))
}

/// Closure form of [`apply_spectral_function`], for transforms that are not
/// representable by the serializable enum (Laplace transforms, generating
/// functions of parametric laws).
pub fn apply_matrix_function(
    w: &SymMatrix,
    f: impl Fn(f64) -> Result<f64>,
) -> Result<SymMatrix> {
    let (values, vectors) = sorted_symmetric_eigen(w);
    let n = w.n();
    let images: Vec<f64> = values.iter().map(|&t| f(t)).collect::<Result<_>>()?;

    // Injectivity on the spectrum: distinct eigenvalues must stay distinct.
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let img_scale = images.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    for i in 0..n {
        for j in (i + 1)..n {
            let distinct = (values[i] - values[j]).abs() > 1e-9 * scale;
            let collide = (images[i] - images[j]).abs() <= 1e-12 * img_scale;
            if distinct && collide {
                return Err(Error::NonInjectiveSpectrum {
                    a: values[i],
                    b: values[j],
                });
            }
        }
    }

    let fd = DMatrix::from_diagonal(&DVector::from_vec(images));
    let k = &vectors * fd * vectors.transpose();
    SymMatrix::from_matrix(&k)
}

/// The commutator operator `Δ(K) = I ⊗ K − K ⊗ I`, acting on column-major
/// vectorizations: `Δ(K) vec(A) = vec(KA − AK)`.
#[derive(Debug, Clone)]
pub struct CommutatorOperator {
    n: usize,
    matrix: DMatrix<f64>,
}

impl CommutatorOperator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply(&self, a: &DVector<f64>) -> DVector<f64> {
        &self.matrix * a
    }
}

/// Materializes the dense `N² × N²` operator.
pub fn build_commutator_operator(k: &SymMatrix) -> CommutatorOperator {
    let n = k.n();
    let id = DMatrix::<f64>::identity(n, n);
    let matrix = id.kronecker(k.as_matrix()) - k.as_matrix().kronecker(&id);
    CommutatorOperator { n, matrix }
}

/// `‖A K̂ − K̂ A‖_F / ‖A‖_F`, computed matrix-free. Scale-invariant in `A`.
pub fn contrast(a: &SymMatrix, k_hat: &SymMatrix) -> Result<f64> {
    let norm = a.norm();
    if norm == 0.0 {
        return Err(Error::InvalidArgument(
            "contrast undefined for the zero matrix".into(),
        ));
    }
    let comm = a.as_matrix() * k_hat.as_matrix() - k_hat.as_matrix() * a.as_matrix();
    Ok(comm.norm() / norm)
}

/// Dimension of the symmetric commutant `{A = A^T : AW = WA}`: eigenvalues are
/// clustered within `multiplicity_tol` (single linkage on the sorted spectrum)
/// and the dimension is `Σ ℓ_j (ℓ_j + 1) / 2`.
pub fn commutant_dimension(w: &SymMatrix, multiplicity_tol: f64) -> usize {
    let (values, _) = sorted_symmetric_eigen(w);
    let n = w.n();
    if n == 0 {
        return 0;
    }
    let mut dim = 0usize;
    let mut run = 1usize;
    for i in 1..n {
        if values[i] - values[i - 1] <= multiplicity_tol {
            run += 1;
        } else {
            dim += run * (run + 1) / 2;
            run = 1;
        }
    }
    dim += run * (run + 1) / 2;
    dim
}

/// Default clustering tolerance: `1e-8 · ‖W‖`.
pub fn default_multiplicity_tol(w: &SymMatrix) -> f64 {
    1e-8 * w.norm().max(1e-300)
}
