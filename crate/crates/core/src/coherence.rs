//! Exact coherence quantifiers in the fixed computational basis.
//!
//! Basis rotation is the caller's job: both measures are evaluated in the
//! basis the matrix is written in.

use alloc::vec::Vec;

use crate::error::Error;
use crate::generators::{asym_index, sym_index};
use crate::math;
use crate::state::{entropy_of_spectrum, von_neumann_entropy, DensityMatrix};
use crate::Result;

/// The two distance-based measures implemented here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceMeasure {
    RelativeEntropy,
    L1Norm,
}

/// A measure/value pair, mostly for report plumbing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceValue {
    pub measure: CoherenceMeasure,
    pub value: f64,
}

impl CoherenceValue {
    pub fn compute(measure: CoherenceMeasure, rho: &DensityMatrix) -> Self {
        let value = match measure {
            CoherenceMeasure::RelativeEntropy => c_re(rho),
            CoherenceMeasure::L1Norm => c_l1(rho),
        };
        Self { measure, value }
    }
}

/// Relative entropy of coherence S(dephased(rho)) - S(rho), in bits.
/// Ranges over [0, log2 d]; zero exactly on diagonal states.
pub fn c_re(rho: &DensityMatrix) -> f64 {
    let diag: Vec<f64> = rho.matrix().diagonal().iter().map(|x| x.re).collect();
    let s_deph = entropy_of_spectrum(&diag);
    let s = von_neumann_entropy(rho);
    (s_deph - s).max(0.0)
}

/// l1 norm of coherence: sum of the magnitudes of all off-diagonal entries.
/// Ranges over [0, d-1].
pub fn c_l1(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let d = m.dim();
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += m[(i, j)].norm();
            }
        }
    }
    s
}

/// l1 norm of coherence straight from Bloch coordinates:
/// (2/d) * sum over pairs j < i of the in-pair coordinate magnitude.
///
/// Agrees with `c_l1` on the corresponding operator whenever that operator
/// is a valid state; as a function of raw coordinates it is defined for any
/// vector of the right length.
pub fn c_l1_bloch(d: usize, coords: &[f64]) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    if coords.len() != d * d - 1 {
        return Err(Error::ShapeMismatch {
            expected: d * d - 1,
            got: coords.len(),
        });
    }
    let mut s = 0.0;
    for i in 2..=d {
        for j in 1..i {
            let re = coords[sym_index(i, j) - 1];
            let im = coords[asym_index(i, j) - 1];
            s += math::hypot(re, im);
        }
    }
    Ok(2.0 * s / d as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::BlochVector;
    use crate::math::binary_entropy;
    use alloc::vec;
    use num_complex::Complex64;

    fn plus_state() -> DensityMatrix {
        DensityMatrix::pure(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn maximally_coherent_qubit() {
        let rho = plus_state();
        assert!((c_re(&rho) - 1.0).abs() < 1e-12);
        assert!((c_l1(&rho) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_states_have_zero_coherence() {
        let rho = DensityMatrix::basis_state(3, 1);
        assert!(c_re(&rho).abs() < 1e-14);
        assert!(c_l1(&rho).abs() < 1e-14);
    }

    #[test]
    fn x_axis_family_matches_closed_form() {
        // rho = (I + q sx)/2: S(dephased) = 1 bit, S(rho) = h((1+q)/2).
        for k in 1..=10 {
            let q = 0.1 * k as f64;
            let r = BlochVector::new(2, vec![q, 0.0, 0.0]).unwrap();
            let rho = DensityMatrix::from_bloch(&r).unwrap();
            let expect = 1.0 - binary_entropy((1.0 + q) / 2.0);
            assert!((c_re(&rho) - expect).abs() < 1e-10, "q={q}");
            assert!((c_l1(&rho) - q).abs() < 1e-12, "q={q}");
        }
    }

    #[test]
    fn qubit_l1_is_in_plane_norm() {
        let r = BlochVector::new(2, vec![0.6, 0.8, 0.0]).unwrap();
        let rho = DensityMatrix::from_bloch(&r).unwrap();
        assert!((c_l1(&rho) - 1.0).abs() < 1e-12);
        assert!((c_l1_bloch(2, r.coords()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_qutrit_coordinates_give_zero() {
        let mut coords = vec![0.0; 8];
        coords[2] = 0.7;
        coords[7] = -0.3;
        assert!(c_l1_bloch(3, &coords).unwrap().abs() < 1e-15);
    }

    #[test]
    fn bloch_and_matrix_l1_agree_for_qutrit() {
        let mut x = 0.4321f64;
        for _ in 0..20 {
            let mut coords = vec![0.0; 8];
            for c in coords.iter_mut() {
                x = (x * 997.0 + 0.123).fract();
                *c = 0.35 * (x - 0.5);
            }
            let r = BlochVector::new(3, coords.clone()).unwrap();
            if let Ok(rho) = DensityMatrix::from_bloch(&r) {
                let a = c_l1(&rho);
                let b = c_l1_bloch(3, &coords).unwrap();
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn shape_error_on_wrong_length() {
        assert!(c_l1_bloch(3, &[0.0; 7]).is_err());
    }
}
