//! Recovering the untrusted POVM element from trusted-ancilla statistics.
//!
//! Qubits use direct algebraic inversion of the four canonical ancilla
//! probabilities; qudits solve a least-squares system over an
//! informationally complete ancilla set. Maximum-likelihood estimation is
//! deliberately out of scope: noisy inputs that violate positivity raise
//! errors instead of being projected back.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::povm::PovmElement;
use crate::scenario::AncillaSet;
use crate::Result;

/// Least-squares residual above this flags mutually inconsistent statistics.
pub const RESIDUAL_TOL: f64 = 1e-6;

/// What two computational-basis ancillas reveal about a qubit element: the
/// scale, the z component, and the positivity region for the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialPovmKnowledge {
    scale: f64,
    nu_z: f64,
}

impl PartialPovmKnowledge {
    pub fn new(scale: f64, nu_z: f64) -> Result<Self> {
        if !(scale > 0.0 && scale < 1.0) {
            return Err(Error::DegenerateStatistics { a: scale });
        }
        let pk = Self { scale, nu_z };
        if nu_z * nu_z > pk.g() + 1e-9 {
            return Err(Error::InconsistentStatistics {
                detail: "nu_z^2 exceeds the positivity region g(a)",
                value: nu_z * nu_z - pk.g(),
            });
        }
        Ok(pk)
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn nu_z(&self) -> f64 {
        self.nu_z
    }

    /// g(a) = min(1, (1-a)^2 / a^2): the cap on |nu|^2 from positivity of
    /// both POVM elements.
    pub fn g(&self) -> f64 {
        let ratio = (1.0 - self.scale) / self.scale;
        (ratio * ratio).min(1.0)
    }

    /// Cap on nu_x^2 + nu_y^2 given the known z component.
    pub fn in_plane_cap(&self) -> f64 {
        (self.g() - self.nu_z * self.nu_z).max(0.0)
    }

    /// The partial knowledge describing the complementary element I - M.
    pub fn complement(&self) -> Self {
        let a = self.scale;
        Self {
            scale: 1.0 - a,
            nu_z: -a * self.nu_z / (1.0 - a),
        }
    }
}

/// Invert the four canonical qubit ancilla probabilities
/// (|0>, |1>, |+>, |+i> order) into a POVM element.
pub fn full_tomography_qubit(n: &[f64; 4]) -> Result<PovmElement> {
    for &p in n {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadProbability { value: p });
        }
    }
    let a = (n[0] + n[1]) / 2.0;
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::DegenerateStatistics { a });
    }
    let nu_z = (n[0] - n[1]) / (2.0 * a);
    let nu_x = n[2] / a - 1.0;
    let nu_y = n[3] / a - 1.0;
    PovmElement::new(2, a, vec![nu_x, nu_y, nu_z]).map_err(noisy)
}

/// Least-squares recovery of (a, nu) from probabilities over an arbitrary
/// ancilla set. The model is n_x = a + (2/d) r_x . (a nu), linear in the
/// combined unknowns (a, a nu); the set must be informationally complete
/// (d^2 independent states).
pub fn full_tomography_qudit(
    n: &[(String, f64)],
    ancillas: &AncillaSet,
) -> Result<PovmElement> {
    let d = ancillas.dim();
    let unknowns = d * d;
    if n.len() < unknowns {
        return Err(Error::InformationallyIncomplete {
            rank: n.len(),
            needed: unknowns,
            deficiency: unknowns - n.len(),
        });
    }
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n.len());
    let mut rhs: Vec<f64> = Vec::with_capacity(n.len());
    for (label, p) in n {
        if !(0.0..=1.0).contains(p) {
            return Err(Error::BadProbability { value: *p });
        }
        let tau = ancillas
            .state_by_label(label)
            .ok_or(Error::Precondition("statistics label not in ancilla set"))?;
        let r = tau.to_bloch();
        let mut row = Vec::with_capacity(unknowns);
        row.push(1.0);
        for c in r.coords() {
            row.push(2.0 * c / d as f64);
        }
        rows.push(row);
        rhs.push(*p);
    }

    let (solution, residual, rank) = least_squares(&rows, &rhs);
    if rank < unknowns {
        return Err(Error::InformationallyIncomplete {
            rank,
            needed: unknowns,
            deficiency: unknowns - rank,
        });
    }
    if residual > RESIDUAL_TOL {
        return Err(Error::InconsistentStatistics {
            detail: "least-squares residual",
            value: residual,
        });
    }
    let a = solution[0];
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::DegenerateStatistics { a });
    }
    let nu: Vec<f64> = solution[1..].iter().map(|c| c / a).collect();
    PovmElement::new(d, a, nu).map_err(noisy)
}

/// Partial tomography from the two computational-basis ancillas alone.
pub fn partial_tomography_z(n0: f64, n1: f64) -> Result<PartialPovmKnowledge> {
    for p in [n0, n1] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadProbability { value: p });
        }
    }
    let a = (n0 + n1) / 2.0;
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::DegenerateStatistics { a });
    }
    let nu_z = (n0 - n1) / (2.0 * a);
    PartialPovmKnowledge::new(a, nu_z)
}

fn noisy(e: Error) -> Error {
    match e {
        Error::NotPositive { eigenvalue } => Error::NoisyStatistics { eigenvalue },
        other => other,
    }
}

/// Normal-equation least squares with rank detection, adequate for the tiny
/// systems (up to d^2 = 16 unknowns) this module sees. Returns the solution,
/// the residual norm ||A x - b||, and the numerical rank of A.
fn least_squares(a: &[Vec<f64>], b: &[f64]) -> (Vec<f64>, f64, usize) {
    let n = a[0].len();
    // G = A^T A, h = A^T b.
    let mut g = vec![vec![0.0f64; n + 1]; n];
    for (row, &bi) in a.iter().zip(b) {
        for i in 0..n {
            for j in 0..n {
                g[i][j] += row[i] * row[j];
            }
            g[i][n] += row[i] * bi;
        }
    }
    let scale = (0..n).map(|i| g[i][i]).fold(1.0f64, f64::max);
    let pivot_tol = 1e-10 * scale;

    // Gaussian elimination with partial pivoting, counting usable pivots.
    let mut rank = 0usize;
    let mut pivot_cols = Vec::new();
    let mut row_idx = 0usize;
    for col in 0..n {
        let mut best = row_idx;
        for r in row_idx..n {
            if math::abs(g[r][col]) > math::abs(g[best][col]) {
                best = r;
            }
        }
        if math::abs(g[best][col]) <= pivot_tol {
            continue;
        }
        g.swap(row_idx, best);
        let piv = g[row_idx][col];
        for r in 0..n {
            if r == row_idx {
                continue;
            }
            let factor = g[r][col] / piv;
            if factor != 0.0 {
                for c in col..=n {
                    g[r][c] -= factor * g[row_idx][c];
                }
            }
        }
        pivot_cols.push((row_idx, col));
        rank += 1;
        row_idx += 1;
    }

    let mut x = vec![0.0f64; n];
    for &(r, c) in &pivot_cols {
        x[c] = g[r][n] / g[r][c];
    }

    let mut res_sq = 0.0;
    for (row, &bi) in a.iter().zip(b) {
        let pred: f64 = row.iter().zip(&x).map(|(ai, xi)| ai * xi).sum();
        res_sq += (pred - bi) * (pred - bi);
    }
    (x, math::sqrt(res_sq), rank)
}
