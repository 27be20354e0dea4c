//! Why the two simpler scenarios cannot witness coherence: given any
//! statistics they produce, an incoherent state and valid measurements
//! reproduce them exactly. These constructions are counterexample
//! generators, not things to fix.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::eig::herm_eig;
use crate::error::Error;
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::povm::validate_povm;
use crate::scenario::AncillaSet;
use crate::state::DensityMatrix;
use crate::Result;

/// Tolerance on reproducing the input statistics.
pub const REPRODUCTION_TOL: f64 = 1e-12;

/// An incoherent state plus measurements that reproduce given statistics.
#[derive(Debug, Clone)]
pub struct ReconstructionCertificate {
    /// Diagonal density matrix standing in for the "unknown" state.
    pub incoherent_state: DensityMatrix,
    /// One POVM per measurement setting.
    pub measurements: Vec<Vec<ComplexMatrix>>,
    /// Reproduced probability per input label.
    pub reproduced: Vec<(String, f64)>,
    /// Largest deviation from the input statistics.
    pub max_deviation: f64,
}

/// Fully device-independent scenario: any table p(a|x) is reproduced by
/// sigma = |0><0| and the trivial POVMs N^x_a = p(a|x) I.
pub fn nogo_fully_di(p_table: &[Vec<f64>]) -> Result<ReconstructionCertificate> {
    if p_table.is_empty() || p_table.iter().any(|row| row.is_empty()) {
        return Err(Error::Precondition("probability table cannot be empty"));
    }
    for row in p_table {
        let mut sum = 0.0;
        for &p in row {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::BadProbability { value: p });
            }
            sum += p;
        }
        if math::abs(sum - 1.0) > 1e-12 {
            return Err(Error::InconsistentStatistics {
                detail: "outcome probabilities for a setting must sum to 1",
                value: sum,
            });
        }
    }

    let d = 2;
    let sigma = DensityMatrix::basis_state(d, 0);
    let mut measurements = Vec::with_capacity(p_table.len());
    let mut reproduced = Vec::new();
    let mut max_dev: f64 = 0.0;
    for (x, row) in p_table.iter().enumerate() {
        let povm: Vec<ComplexMatrix> = row
            .iter()
            .map(|&p| ComplexMatrix::identity(d).scale_re(p))
            .collect();
        validate_povm(&povm, 1e-10, 1e-10)?;
        for (a, &p) in row.iter().enumerate() {
            let rep = sigma.matrix().trace_product(&povm[a]).re;
            max_dev = max_dev.max(math::abs(rep - p));
            reproduced.push((format!("p({a}|{x})"), rep));
        }
        measurements.push(povm);
    }
    if max_dev > REPRODUCTION_TOL {
        return Err(Error::Precondition("reconstruction deviation above tolerance"));
    }
    Ok(ReconstructionCertificate {
        incoherent_state: sigma,
        measurements,
        reproduced,
        max_deviation: max_dev,
    })
}

/// Joint-measurement scenario: for a state rho with spectral decomposition
/// sum_i w_i |psi_i><psi_i| and a joint POVM {M_a} on rho x tau, the diagonal
/// state sigma = sum_i w_i |i><i| together with
/// N_a = sum_j (|j><psi_j| x I) M_a (|psi_j><j| x I) reproduces every
/// p(a|x) = Tr[(rho x tau_x) M_a].
pub fn nogo_joint(
    rho: &DensityMatrix,
    joint_elements: &[ComplexMatrix],
    ancillas: &AncillaSet,
) -> Result<ReconstructionCertificate> {
    let ds = rho.dim();
    let da = ancillas.dim();
    let joint_dim = ds * da;
    for e in joint_elements {
        if e.dim() != joint_dim {
            return Err(Error::ShapeMismatch {
                expected: joint_dim,
                got: e.dim(),
            });
        }
    }
    validate_povm(joint_elements, 1e-9, 1e-9)?;

    // Spectral decomposition, eigenvalues descending with deterministic
    // eigenvector phases (largest weight lands on |0>).
    let (w_asc, v) = herm_eig(rho.matrix())?;
    let order: Vec<usize> = (0..ds).rev().collect();
    let weights: Vec<f64> = order.iter().map(|&k| w_asc[k].max(0.0)).collect();

    let mut sigma_m = ComplexMatrix::zeros(ds);
    for (i, &wi) in weights.iter().enumerate() {
        sigma_m[(i, i)] = Complex64::new(wi, 0.0);
    }
    // Renormalize away the eigenvalue round-off before validation.
    let tr = sigma_m.trace().re;
    let sigma = DensityMatrix::new(sigma_m.scale_re(1.0 / tr))?;

    // Conjugation operators K_j = |j><psi_j| x I.
    let ident_a = ComplexMatrix::identity(da);
    let mut k_ops = Vec::with_capacity(ds);
    for (j, &col) in order.iter().enumerate() {
        let mut ket_bra = ComplexMatrix::zeros(ds);
        for rowi in 0..ds {
            // |j><psi_j| has row j equal to the conjugated eigenvector.
            ket_bra[(j, rowi)] = v[(rowi, col)].conj();
        }
        k_ops.push(ket_bra.kron(&ident_a));
    }

    let mut conjugated = Vec::with_capacity(joint_elements.len());
    for m_a in joint_elements {
        let mut n_a = ComplexMatrix::zeros(joint_dim);
        for k in &k_ops {
            let term = &(k * m_a) * &k.adjoint();
            n_a = &n_a + &term;
        }
        conjugated.push(n_a);
    }
    validate_povm(&conjugated, 1e-9, 1e-9)?;

    let mut reproduced = Vec::new();
    let mut max_dev: f64 = 0.0;
    for (label, tau) in ancillas.states() {
        let joint_orig = rho.matrix().kron(tau.matrix());
        let joint_new = sigma.matrix().kron(tau.matrix());
        for (a, (m_a, n_a)) in joint_elements.iter().zip(&conjugated).enumerate() {
            let p_orig = joint_orig.trace_product(m_a).re;
            let p_new = joint_new.trace_product(n_a).re;
            max_dev = max_dev.max(math::abs(p_new - p_orig));
            reproduced.push((format!("p({a}|{label})"), p_new));
        }
    }
    if max_dev > REPRODUCTION_TOL {
        return Err(Error::Precondition("reconstruction deviation above tolerance"));
    }
    Ok(ReconstructionCertificate {
        incoherent_state: sigma,
        measurements: vec![conjugated],
        reproduced,
        max_deviation: max_dev,
    })
}
