//! Validated density matrices and the von Neumann entropy.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::bloch::{operator_to_bloch, BlochVector};
use crate::eig::herm_eig;
use crate::error::Error;
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::Result;

/// Eigenvalues above this (negative) floor count as non-negative. Loose
/// enough to absorb Jacobi round-off, tight enough to reject genuinely
/// indefinite operators such as the sqrt(3) qutrit counterexample
/// (eigenvalue about -0.244).
pub const PSD_TOL: f64 = -1e-9;

/// A d x d density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and wrap a matrix. Hermiticity within 1e-12, trace within
    /// 1e-12 of one, eigenvalues above -1e-9.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dev = matrix.hermiticity_deviation();
        if dev > 1e-12 {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::BadTrace {
                trace: tr.re,
                expected: 1.0,
            });
        }
        let (w, _) = herm_eig(&matrix)?;
        if w[0] < PSD_TOL {
            return Err(Error::NotPositive { eigenvalue: w[0] });
        }
        Ok(Self { matrix })
    }

    /// The maximally mixed state I/d.
    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(d).scale_re(1.0 / d as f64),
        }
    }

    /// Computational basis state |k><k|.
    pub fn basis_state(d: usize, k: usize) -> Self {
        let mut ket = vec![Complex64::new(0.0, 0.0); d];
        ket[k] = Complex64::new(1.0, 0.0);
        Self {
            matrix: ComplexMatrix::projector(&ket),
        }
    }

    /// Pure state |psi><psi| from a ket, which is normalized first.
    pub fn pure(ket: &[Complex64]) -> Result<Self> {
        let norm = math::sqrt(ket.iter().map(|x| x.norm_sqr()).sum());
        if norm < 1e-12 {
            return Err(Error::Precondition("zero ket cannot be normalized"));
        }
        let normalized: Vec<Complex64> = ket.iter().map(|x| x / norm).collect();
        Ok(Self {
            matrix: ComplexMatrix::projector(&normalized),
        })
    }

    /// Build from a Bloch vector; fails when the operator is not PSD, which
    /// for d >= 3 can happen even at admissible norms.
    pub fn from_bloch(r: &BlochVector) -> Result<Self> {
        Self::new(r.to_operator())
    }

    pub fn to_bloch(&self) -> BlochVector {
        operator_to_bloch(&self.matrix).expect("valid by construction")
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        herm_eig(&self.matrix).expect("valid by construction").0
    }

    /// Convex mixture p * self + (1-p) * other.
    pub fn mix(&self, other: &Self, p: f64) -> Result<Self> {
        let m = &self.matrix.scale_re(p) + &other.matrix.scale_re(1.0 - p);
        Self::new(m)
    }
}

/// Von Neumann entropy in bits, with the 0 log 0 = 0 convention. Lies in
/// [0, log2 d].
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues())
}

/// Entropy of a probability-like spectrum; tiny negative round-off is
/// treated as zero.
pub(crate) fn entropy_of_spectrum(w: &[f64]) -> f64 {
    let s: f64 = w.iter().map(|&x| -math::xlog2x(x)).sum();
    s.max(0.0)
}
