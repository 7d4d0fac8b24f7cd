//! Characteristic polynomials via the Faddeev–LeVerrier recurrence and the
//! matrix family `M_k(A) = Σ_{j≤k} ψ_j(A) A^j` used by the identifiability
//! arguments.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;

/// Monic characteristic polynomial `det(zI − A) = Σ ψ_j z^j`, coefficients
/// stored ascending: `coeffs[j] = ψ_j`, with `ψ_N = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    pub coeffs: Vec<f64>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
    }
}

/// Coefficients by the Faddeev–LeVerrier recurrence:
/// `M_1 = I`, `c_{N-k} = -tr(A M_k)/k`, `M_{k+1} = A M_k + c_{N-k} I`.
pub fn char_poly(a: &SymMatrix) -> CharPoly {
    let n = a.n();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = DMatrix::<f64>::identity(n, n);
    for k in 1..=n {
        let am = a.as_matrix() * &m;
        let c = -am.trace() / k as f64;
        coeffs[n - k] = c;
        m = am + DMatrix::<f64>::identity(n, n) * c;
    }
    CharPoly { coeffs }
}

/// `M_k(A) = Σ_{j=0}^{k} ψ_j(A) A^j`. Commutes with `A` by construction;
/// `M_N(A) = 0` by Cayley–Hamilton.
pub fn m_k_matrix(a: &SymMatrix, k: usize) -> Result<SymMatrix> {
    let n = a.n();
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "power index {k} out of range 0..={n}"
        )));
    }
    let psi = char_poly(a);
    // Horner over matrices: M = psi_k I; M = A*M + psi_{j} I for j = k-1..0.
    let mut m = DMatrix::<f64>::identity(n, n) * psi.coeffs[k];
    for j in (0..k).rev() {
        m = a.as_matrix() * m + DMatrix::<f64>::identity(n, n) * psi.coeffs[j];
    }
    SymMatrix::from_matrix(&m)
}
