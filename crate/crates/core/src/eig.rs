//! Hermitian eigendecomposition by cyclic Jacobi rotations, and the matrix
//! functions built on it.
//!
//! Cyclic Jacobi is deterministic and dependency-free, and for the matrix
//! sizes in this problem domain (d <= ~16) it is more than fast enough. A
//! sweep rotates every off-diagonal pair; sweeps repeat until the
//! off-diagonal Frobenius norm falls below 1e-13 relative to the matrix
//! scale.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::Result;

/// Hermiticity tolerance accepted by the eigensolver entry points.
pub const EIG_HERM_TOL: f64 = 1e-10;

const OFF_TARGET: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius norm.
fn off_norm(a: &ComplexMatrix) -> f64 {
    let d = a.dim();
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    math::sqrt(s)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and a unitary matrix whose columns
/// are the matching eigenvectors, each with its first significant component
/// made real and positive so repeated runs give identical output.
pub fn herm_eig(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let dev = a.hermiticity_deviation();
    if dev > EIG_HERM_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let d = a.dim();
    let mut m = a.clone();
    let mut v = ComplexMatrix::identity(d);

    let scale = a.frobenius_norm().max(1.0);
    let target = OFF_TARGET * scale;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&m) <= target {
            converged = true;
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_norm(&m) > target {
        return Err(Error::EigenFailed {
            off_norm: off_norm(&m),
        });
    }

    // Sort ascending, permuting eigenvector columns along.
    let mut order: Vec<usize> = (0..d).collect();
    let eigs: Vec<f64> = (0..d).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| eigs[i].partial_cmp(&eigs[j]).unwrap());

    let sorted: Vec<f64> = order.iter().map(|&i| eigs[i]).collect();
    let mut vectors = ComplexMatrix::zeros(d);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..d {
            vectors[(row, new_col)] = v[(row, old_col)];
        }
    }
    canonicalize_phases(&mut vectors);
    Ok((sorted, vectors))
}

/// One complex Jacobi rotation zeroing the (p, q) element.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = m[(p, q)];
    let babs = b.norm();
    if babs == 0.0 {
        return;
    }
    let phase = b / Complex64::new(babs, 0.0);
    let alpha = m[(p, p)].re;
    let gamma = m[(q, q)].re;

    // tan of the rotation angle: smaller-magnitude root of
    // t^2 - 2 tau t - 1 = 0 with tau = (gamma - alpha) / (2 |b|).
    let tau = (gamma - alpha) / (2.0 * babs);
    let t = if tau >= 0.0 {
        -1.0 / (tau + math::sqrt(1.0 + tau * tau))
    } else {
        1.0 / (-tau + math::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / math::sqrt(1.0 + t * t);
    let s = t * c;

    // Unitary: U[p][p] = c, U[p][q] = -s e^{i phi}, U[q][p] = s e^{-i phi},
    // U[q][q] = c, identity elsewhere. Apply m <- U^dag m U, v <- v U.
    let upq = -phase * s;
    let uqp = phase.conj() * s;

    let d = m.dim();
    for k in 0..d {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * c + mkq * uqp;
        m[(k, q)] = mkp * upq + mkq * c;
    }
    for k in 0..d {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = mpk * c + mqk * uqp.conj();
        m[(q, k)] = mpk * upq.conj() + mqk * c;
    }
    // Clean up the rotated pair against round-off drift.
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    m[(p, p)] = Complex64::new(app, 0.0);
    m[(q, q)] = Complex64::new(aqq, 0.0);

    for k in 0..d {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * c;
    }
}

/// Multiply each column by a phase making its first component with
/// magnitude > 1e-12 real and positive.
fn canonicalize_phases(v: &mut ComplexMatrix) {
    let d = v.dim();
    for col in 0..d {
        let mut pivot = None;
        for row in 0..d {
            if v[(row, col)].norm() > 1e-12 {
                pivot = Some(v[(row, col)]);
                break;
            }
        }
        if let Some(piv) = pivot {
            let phase = piv.conj() / Complex64::new(piv.norm(), 0.0);
            for row in 0..d {
                let x = v[(row, col)] * phase;
                v[(row, col)] = x;
            }
        }
    }
}

/// V diag(f(w)) V^dag for a Hermitian input with eigenvalues w.
pub fn herm_fn(a: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let (w, v) = herm_eig(a)?;
    let d = a.dim();
    let fw: Vec<f64> = w.iter().map(|&x| f(x)).collect();
    let mut out = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += v[(i, k)] * Complex64::new(fw[k], 0.0) * v[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Matrix exponential of a Hermitian matrix.
pub fn herm_exp(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    herm_fn(a, math::exp)
}

/// Matrix logarithm (natural) of a positive-definite Hermitian matrix.
///
/// Eigenvalues at or below 1e-14 make the logarithm singular.
pub fn herm_log(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (w, _) = herm_eig(a)?;
    if let Some(&bad) = w.iter().find(|&&x| x <= 1e-14) {
        return Err(Error::SingularMatrix { eigenvalue: bad });
    }
    herm_fn(a, math::ln)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    let (w, _) = herm_eig(a)?;
    Ok(w[0])
}

/// Diagonal part of a matrix (the completely dephasing map).
pub fn dephase(a: &ComplexMatrix) -> ComplexMatrix {
    a.dephased()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_z_eigenvalues_ascending() {
        let z = ComplexMatrix::from_entries(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
            .unwrap();
        let (w, v) = herm_eig(&z).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-14);
        assert!((w[1] - 1.0).abs() < 1e-14);
        // Column 0 is the -1 eigenvector |1>.
        assert!((v[(1, 0)].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_three_dimensional() {
        let (w, _) = herm_eig(&ComplexMatrix::identity(3)).unwrap();
        for x in w {
            assert!((x - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn random_hermitian_reconstruction() {
        // Fixed pseudo-random Hermitian 4x4 built from a quadratic residue
        // sequence; checks V diag(w) V^dag == A and unitarity of V.
        let d = 4;
        let mut a = ComplexMatrix::zeros(d);
        let mut x = 0.37f64;
        for i in 0..d {
            for j in i..d {
                x = (x * 997.0 + 0.123).fract();
                let re = x - 0.5;
                x = (x * 997.0 + 0.123).fract();
                let im = if i == j { 0.0 } else { x - 0.5 };
                a[(i, j)] = c(re, im);
                a[(j, i)] = c(re, -im);
            }
        }
        let (w, v) = herm_eig(&a).unwrap();
        // Reconstruction.
        let mut rec = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = c(0.0, 0.0);
                for k in 0..d {
                    acc += v[(i, k)] * c(w[k], 0.0) * v[(j, k)].conj();
                }
                rec[(i, j)] = acc;
            }
        }
        assert!(a.max_abs_diff(&rec) < 1e-10);
        // Unitarity.
        let vd = v.adjoint();
        let prod = &vd * &v;
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(d)) < 1e-10);
        // Ascending order.
        for k in 1..d {
            assert!(w[k] >= w[k - 1]);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_entries(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn exp_log_round_trip_on_positive_definite() {
        let p = ComplexMatrix::from_entries(
            2,
            vec![c(1.4, 0.0), c(0.3, 0.2), c(0.3, -0.2), c(0.9, 0.0)],
        )
        .unwrap();
        let log = herm_log(&p).unwrap();
        let back = herm_exp(&log).unwrap();
        assert!(p.max_abs_diff(&back) < 1e-9);
    }

    #[test]
    fn log_of_singular_matrix_errors() {
        let m = ComplexMatrix::from_entries(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(matches!(herm_log(&m), Err(Error::SingularMatrix { .. })));
    }
}
