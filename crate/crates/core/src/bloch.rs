//! Generalized Bloch-vector representation of Hermitian unit-trace operators.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::generators::su_generators;
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::Result;

/// Real coefficient vector of length d^2 - 1 over the SU(d) generators.
///
/// The norm is capped at sqrt(d(d-1)/2); that cap is necessary for a valid
/// state in any dimension and also sufficient only for d = 2.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    dim: usize,
    coords: Vec<f64>,
}

impl BlochVector {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim });
        }
        if coords.len() != dim * dim - 1 {
            return Err(Error::ShapeMismatch {
                expected: dim * dim - 1,
                got: coords.len(),
            });
        }
        let v = Self { dim, coords };
        let max = max_norm(dim);
        if v.norm() > max + 1e-9 {
            return Err(Error::InconsistentStatistics {
                detail: "Bloch vector norm exceeds sqrt(d(d-1)/2)",
                value: v.norm(),
            });
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        math::norm2(&self.coords)
    }

    /// The operator (I + sum_i r_i g_i) / d. Hermitian with unit trace;
    /// positivity is not guaranteed for d >= 3.
    pub fn to_operator(&self) -> ComplexMatrix {
        bloch_to_operator(self.dim, &self.coords).expect("length enforced by constructor")
    }
}

/// Largest admissible Bloch norm, sqrt(d(d-1)/2); attained exactly by pure
/// states.
pub fn max_norm(d: usize) -> f64 {
    math::sqrt(d as f64 * (d as f64 - 1.0) / 2.0)
}

/// Expand raw coordinates into (I + sum_i r_i g_i) / d without any norm
/// validation. Useful for probing operators that are deliberately outside
/// the state set.
pub fn bloch_to_operator(d: usize, coords: &[f64]) -> Result<ComplexMatrix> {
    if coords.len() != d * d - 1 {
        return Err(Error::ShapeMismatch {
            expected: d * d - 1,
            got: coords.len(),
        });
    }
    let gens = su_generators(d)?;
    let mut m = ComplexMatrix::identity(d);
    for (r, g) in coords.iter().zip(gens.iter()) {
        if *r == 0.0 {
            continue;
        }
        let scaled = g.scale_re(*r);
        m = &m + &scaled;
    }
    Ok(m.scale_re(1.0 / d as f64))
}

/// Coordinates r_i = (d/2) Tr[rho g_i] of a Hermitian unit-trace operator.
pub fn operator_to_bloch(rho: &ComplexMatrix) -> Result<BlochVector> {
    let d = rho.dim();
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    let dev = rho.hermiticity_deviation();
    if dev > 1e-10 {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
        return Err(Error::BadTrace {
            trace: tr.re,
            expected: 1.0,
        });
    }
    let gens = su_generators(d)?;
    let coords: Vec<f64> = gens
        .iter()
        .map(|g| 0.5 * d as f64 * rho.trace_product(g).re)
        .collect();
    BlochVector::new(d, coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn zero_vector_is_maximally_mixed() {
        let m = bloch_to_operator(2, &[0.0, 0.0, 0.0]).unwrap();
        assert!((m[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!(m[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn x_axis_unit_vector_is_plus_state() {
        let m = bloch_to_operator(2, &[1.0, 0.0, 0.0]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((m[(i, j)].re - 0.5).abs() < 1e-15);
                assert!(m[(i, j)].im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn computational_basis_state_maps_to_z_axis() {
        let rho = ComplexMatrix::projector(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let r = operator_to_bloch(&rho).unwrap();
        assert!((r.coords()[0]).abs() < 1e-14);
        assert!((r.coords()[1]).abs() < 1e-14);
        assert!((r.coords()[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn round_trip_on_fixed_hermitian_unit_trace() {
        let mut x = 0.7331f64;
        for d in [2usize, 3, 4] {
            let mut coords = vec![0.0; d * d - 1];
            for c in coords.iter_mut() {
                x = (x * 997.0 + 0.123).fract();
                *c = 0.4 * (x - 0.5);
            }
            let m = bloch_to_operator(d, &coords).unwrap();
            let r = operator_to_bloch(&m).unwrap();
            for (a, b) in coords.iter().zip(r.coords()) {
                assert!((a - b).abs() < 1e-12, "d={d}");
            }
        }
    }

    #[test]
    fn length_mismatch_is_rejected() {
        assert!(matches!(
            bloch_to_operator(2, &[1.0, 0.0]),
            Err(Error::ShapeMismatch { expected: 3, got: 2 })
        ));
        assert!(BlochVector::new(3, vec![0.0; 7]).is_err());
    }

    #[test]
    fn wrong_trace_is_rejected() {
        let m = ComplexMatrix::identity(2);
        assert!(matches!(operator_to_bloch(&m), Err(Error::BadTrace { .. })));
    }

    #[test]
    fn overlong_vector_is_rejected() {
        assert!(BlochVector::new(2, vec![1.2, 0.0, 0.0]).is_err());
        // The qutrit cap is sqrt(3), strictly above the qubit cap.
        assert!(BlochVector::new(3, vec![1.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).is_ok());
    }
}
