//! Two-outcome POVMs in scale/direction form M = a (I + sum_i nu_i g_i).

use alloc::vec::Vec;



use crate::eig::min_eigenvalue;
use crate::error::Error;
use crate::generators::su_generators;
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::state::PSD_TOL;
use crate::Result;

/// One element of a two-outcome POVM, parameterized by a scale a in (0, 1)
/// and a real direction vector of length d^2 - 1.
///
/// For qubits positivity of both M and I - M is equivalent to
/// |nu| <= min(1, (1-a)/a); for d >= 3 it is checked spectrally.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmElement {
    dim: usize,
    scale: f64,
    direction: Vec<f64>,
}

impl PovmElement {
    pub fn new(dim: usize, scale: f64, direction: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim });
        }
        if direction.len() != dim * dim - 1 {
            return Err(Error::ShapeMismatch {
                expected: dim * dim - 1,
                got: direction.len(),
            });
        }
        if !(scale > 0.0 && scale < 1.0) {
            return Err(Error::DegenerateStatistics { a: scale });
        }
        let el = Self {
            dim,
            scale,
            direction,
        };
        if dim == 2 {
            // Spectrum of M is a (1 +- |nu|), of I - M is 1 - a (1 +- |nu|).
            let n = el.direction_norm();
            let low = scale * (1.0 - n);
            if low < PSD_TOL {
                return Err(Error::NotPositive { eigenvalue: low });
            }
            let comp_low = 1.0 - scale * (1.0 + n);
            if comp_low < PSD_TOL {
                return Err(Error::NotPositive {
                    eigenvalue: comp_low,
                });
            }
        } else {
            let m = el.to_matrix();
            let low = min_eigenvalue(&m)?;
            if low < PSD_TOL {
                return Err(Error::NotPositive { eigenvalue: low });
            }
            let comp = &ComplexMatrix::identity(dim) - &m;
            let comp_low = min_eigenvalue(&comp)?;
            if comp_low < PSD_TOL {
                return Err(Error::NotPositive {
                    eigenvalue: comp_low,
                });
            }
        }
        Ok(el)
    }

    /// Recover (a, nu) from an explicit matrix: a = Tr[M]/d and
    /// nu_i = Tr[M g_i] / (2a).
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        let d = m.dim();
        let dev = m.hermiticity_deviation();
        if dev > 1e-10 {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let a = m.trace().re / d as f64;
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::DegenerateStatistics { a });
        }
        let gens = su_generators(d)?;
        let direction: Vec<f64> = gens
            .iter()
            .map(|g| m.trace_product(g).re / (2.0 * a))
            .collect();
        Self::new(d, a, direction)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn direction(&self) -> &[f64] {
        &self.direction
    }

    pub fn direction_norm(&self) -> f64 {
        math::norm2(&self.direction)
    }

    /// Explicit matrix a (I + sum_i nu_i g_i).
    pub fn to_matrix(&self) -> ComplexMatrix {
        let gens = su_generators(self.dim).expect("dim validated");
        let mut m = ComplexMatrix::identity(self.dim);
        for (nu, g) in self.direction.iter().zip(gens.iter()) {
            if *nu == 0.0 {
                continue;
            }
            m = &m + &g.scale_re(*nu);
        }
        m.scale_re(self.scale)
    }

    /// The complementary element I - M in scale/direction form:
    /// a' = 1 - a, nu' = -a nu / (1 - a).
    pub fn complement(&self) -> Self {
        let a = self.scale;
        let factor = -a / (1.0 - a);
        Self {
            dim: self.dim,
            scale: 1.0 - a,
            direction: self.direction.iter().map(|x| factor * x).collect(),
        }
    }
}

/// The pair {M, I - M}.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoOutcomePovm {
    first: PovmElement,
}

impl TwoOutcomePovm {
    pub fn new(first: PovmElement) -> Self {
        Self { first }
    }

    pub fn first(&self) -> &PovmElement {
        &self.first
    }

    pub fn second(&self) -> PovmElement {
        self.first.complement()
    }

    pub fn dim(&self) -> usize {
        self.first.dim()
    }
}

/// Check that a list of matrices forms a valid POVM: each element PSD within
/// `psd_tol` and the sum within `complete_tol` of identity.
pub fn validate_povm(elements: &[ComplexMatrix], psd_tol: f64, complete_tol: f64) -> Result<()> {
    if elements.is_empty() {
        return Err(Error::Precondition("POVM needs at least one element"));
    }
    let d = elements[0].dim();
    let mut sum = ComplexMatrix::zeros(d);
    for e in elements {
        if e.dim() != d {
            return Err(Error::ShapeMismatch {
                expected: d,
                got: e.dim(),
            });
        }
        let low = min_eigenvalue(e)?;
        if low < -psd_tol {
            return Err(Error::NotPositive { eigenvalue: low });
        }
        sum = &sum + e;
    }
    let dev = sum.max_abs_diff(&ComplexMatrix::identity(d));
    if dev > complete_tol {
        return Err(Error::NotComplete { deviation: dev });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn reference_element_is_valid() {
        let m = PovmElement::new(2, 0.6, vec![0.5, 0.25, 0.25]).unwrap();
        assert!((m.direction_norm() - 0.375f64.sqrt()).abs() < 1e-15);
        let mat = m.to_matrix();
        assert!((mat.trace().re - 1.2).abs() < 1e-14);
    }

    #[test]
    fn oversized_direction_rejected() {
        // a = 0.6 allows |nu| <= (1-a)/a = 2/3.
        assert!(PovmElement::new(2, 0.6, vec![0.7, 0.0, 0.0]).is_err());
        assert!(PovmElement::new(2, 0.6, vec![0.6, 0.0, 0.0]).is_ok());
    }

    #[test]
    fn scale_outside_unit_interval_rejected() {
        assert!(matches!(
            PovmElement::new(2, 1.0, vec![0.0, 0.0, 0.0]),
            Err(Error::DegenerateStatistics { .. })
        ));
    }

    #[test]
    fn complement_round_trips() {
        let m = PovmElement::new(2, 0.6, vec![0.5, 0.25, 0.25]).unwrap();
        let c = m.complement();
        assert!((c.scale() - 0.4).abs() < 1e-15);
        let sum = &m.to_matrix() + &c.to_matrix();
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
        let back = c.complement();
        assert!((back.scale() - m.scale()).abs() < 1e-15);
        for (x, y) in back.direction().iter().zip(m.direction()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn from_matrix_recovers_parameters() {
        let m = PovmElement::new(2, 0.6, vec![0.5, 0.25, 0.25]).unwrap();
        let back = PovmElement::from_matrix(&m.to_matrix()).unwrap();
        assert!((back.scale() - 0.6).abs() < 1e-12);
        for (x, y) in back.direction().iter().zip(m.direction()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn qutrit_element_spectral_validation() {
        // Diagonal-only direction with a small coefficient is safe.
        let mut nu = vec![0.0; 8];
        nu[2] = 0.3;
        nu[7] = 0.2;
        assert!(PovmElement::new(3, 0.5, nu.clone()).is_ok());
        // Cranking the coefficients up breaks positivity of I - M.
        nu[2] = 1.2;
        nu[7] = 1.2;
        assert!(PovmElement::new(3, 0.5, nu).is_err());
    }

    #[test]
    fn povm_validation_detects_incompleteness() {
        let m = PovmElement::new(2, 0.6, vec![0.5, 0.25, 0.25]).unwrap();
        let ok = validate_povm(&[m.to_matrix(), m.complement().to_matrix()], 1e-10, 1e-10);
        assert!(ok.is_ok());
        let bad = validate_povm(&[m.to_matrix(), m.to_matrix()], 1e-10, 1e-10);
        assert!(matches!(bad, Err(Error::NotComplete { .. })));
    }
}
