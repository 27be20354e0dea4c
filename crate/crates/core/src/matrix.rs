//! Dense complex matrices for small Hilbert-space dimensions.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::Error;
use crate::math;
use crate::Result;

/// Hermiticity tolerance used by validating constructors.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Dense d x d complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of dimension `dim`.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix of dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major entry list; errors if the length is not d*d.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::ShapeMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self { dim, data: entries })
    }

    /// Build by evaluating `f(i, j)` on every index pair.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Rank-one projector |psi><psi| from a ket.
    pub fn projector(ket: &[Complex64]) -> Self {
        let d = ket.len();
        Self::from_fn(d, |i, j| ket[i] * ket[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Tr[A B] without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        debug_assert_eq!(self.dim, other.dim);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += self[(i, j)] * other[(j, i)];
            }
        }
        acc
    }

    /// Multiply every entry by a complex scalar.
    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Multiply every entry by a real scalar.
    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut out = Self::zeros(d);
        for i in 0..da {
            for j in 0..da {
                let aij = self[(i, j)];
                for k in 0..db {
                    for l in 0..db {
                        out[(i * db + k, j * db + l)] = aij * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Largest entry deviation from Hermiticity, max |A - A^dag|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                let e = (self[(i, j)] - self[(j, i)].conj()).norm();
                if e > dev {
                    dev = e;
                }
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Diagonal part as a matrix; idempotent and trace-preserving.
    pub fn dephased(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            m[(i, i)] = self[(i, i)];
        }
        m
    }

    /// Diagonal entries.
    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.data.iter().map(|x| x.norm_sqr()).sum())
    }

    /// Largest entry magnitude of the difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Matrix-vector product A|v>.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self[(i, k)];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dephase_is_idempotent_and_trace_preserving() {
        let m = ComplexMatrix::from_entries(
            2,
            vec![c(0.5, 0.0), c(0.3, -0.1), c(0.3, 0.1), c(0.5, 0.0)],
        )
        .unwrap();
        let d = m.dephased();
        assert_eq!(d, d.dephased());
        assert!((d.trace() - m.trace()).norm() < 1e-15);
        assert_eq!(d[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn kron_dimensions_and_entries() {
        let a = ComplexMatrix::from_entries(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)])
            .unwrap();
        let b = ComplexMatrix::identity(3);
        let k = a.kron(&b);
        assert_eq!(k.dim(), 6);
        assert_eq!(k[(0, 0)], c(1.0, 0.0));
        assert_eq!(k[(5, 5)], c(2.0, 0.0));
        assert_eq!(k[(0, 3)], c(0.0, 0.0));
    }

    #[test]
    fn trace_product_matches_full_product() {
        let a = ComplexMatrix::from_entries(2, vec![c(1.0, 0.2), c(0.5, 0.0), c(0.5, 0.0), c(0.0, -0.2)])
            .unwrap();
        let b = ComplexMatrix::from_entries(2, vec![c(0.3, 0.0), c(0.1, 0.4), c(0.1, -0.4), c(0.7, 0.0)])
            .unwrap();
        let direct = a.trace_product(&b);
        let full = (&a * &b).trace();
        assert!((direct - full).norm() < 1e-14);
    }

    #[test]
    fn hermiticity_check() {
        let h = ComplexMatrix::from_entries(2, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)])
            .unwrap();
        assert!(h.is_hermitian(1e-12));
        let n = ComplexMatrix::from_entries(2, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(2.0, 0.0)])
            .unwrap();
        assert!(!n.is_hermitian(1e-12));
    }

    #[test]
    fn shape_error_on_bad_entry_count() {
        let e = ComplexMatrix::from_entries(2, vec![c(1.0, 0.0)]);
        assert!(matches!(e, Err(Error::ShapeMismatch { expected: 4, got: 1 })));
    }
}
