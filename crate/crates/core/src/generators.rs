//! Standard SU(d) generator matrices.
//!
//! The construction follows the elementary-matrix scheme: for each index pair
//! j < i there is a real symmetric generator and an imaginary antisymmetric
//! generator, and for each k < d a traceless diagonal generator. For d = 2
//! this yields the Pauli matrices (x, y, z order), for d = 3 the Gell-Mann
//! matrices. All generators are Hermitian, traceless and Hilbert-Schmidt
//! orthogonal with Tr[g_i g_j] = 2 delta_ij.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::Result;

/// 1-based position of the symmetric off-diagonal generator for pair (i, j),
/// 1 <= j < i <= d.
pub fn sym_index(i: usize, j: usize) -> usize {
    (i - 1) * (i - 1) + 2 * (j - 1)
}

/// 1-based position of the antisymmetric off-diagonal generator for (i, j).
pub fn asym_index(i: usize, j: usize) -> usize {
    (i - 1) * (i - 1) + 2 * j - 1
}

/// 1-based position of the k-th diagonal generator, 1 <= k <= d-1.
pub fn diag_index(k: usize) -> usize {
    (k + 1) * (k + 1) - 1
}

/// The ordered list of the d^2 - 1 SU(d) generators.
pub fn su_generators(d: usize) -> Result<Vec<ComplexMatrix>> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    let n = d * d - 1;
    let mut out = vec![ComplexMatrix::zeros(d); n];

    // Off-diagonal pairs; indices here are 1-based to match the index maps.
    for i in 2..=d {
        for j in 1..i {
            let mut sym = ComplexMatrix::zeros(d);
            sym[(j - 1, i - 1)] = Complex64::new(1.0, 0.0);
            sym[(i - 1, j - 1)] = Complex64::new(1.0, 0.0);
            out[sym_index(i, j) - 1] = sym;

            let mut asym = ComplexMatrix::zeros(d);
            asym[(j - 1, i - 1)] = Complex64::new(0.0, -1.0);
            asym[(i - 1, j - 1)] = Complex64::new(0.0, 1.0);
            out[asym_index(i, j) - 1] = asym;
        }
    }

    // Diagonal generators.
    for k in 1..d {
        let norm = math::sqrt(2.0 / (k as f64 * (k + 1) as f64));
        let mut diag = ComplexMatrix::zeros(d);
        for i in 0..k {
            diag[(i, i)] = Complex64::new(norm, 0.0);
        }
        diag[(k, k)] = Complex64::new(-(k as f64) * norm, 0.0);
        out[diag_index(k) - 1] = diag;
    }

    Ok(out)
}
