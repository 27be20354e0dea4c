//! Analytical lower bounds on the l1 norm of coherence from a single click
//! probability of a known two-outcome POVM element.
//!
//! The qubit bound is tight: whenever the statistics cannot come from any
//! incoherent state (nu_z^2 < (m/a - 1)^2), a closed form gives the exact
//! constrained minimum and an explicit pure state achieves it. The qudit
//! generalization is sound but not known to be tight.

use alloc::vec::Vec;

use crate::bloch::BlochVector;
use crate::error::Error;
use crate::generators::{asym_index, diag_index, sym_index};
use crate::math;
use crate::Result;

/// Margin for the strict witnessability inequality; exact boundary cases
/// report "not witnessable".
pub const STRICT_MARGIN: f64 = 1e-12;

/// Feasibility slack on |m/a - 1| against the admissible Bloch range.
pub const FEAS_TOL: f64 = 1e-9;

/// Element statistics in the canonical orientation m/a - 1 >= 0, flipping to
/// the complementary element when needed.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedElement {
    pub dim: usize,
    pub scale: f64,
    pub direction: Vec<f64>,
    pub m: f64,
    pub flipped: bool,
}

impl NormalizedElement {
    /// m/a - 1, guaranteed non-negative.
    pub fn excess(&self) -> f64 {
        self.m / self.scale - 1.0
    }

    /// z component (qubit orientation convention).
    pub fn nu_z(&self) -> f64 {
        self.direction[diag_index(1) - 1]
    }

    /// In-plane magnitude sqrt(nu_x^2 + nu_y^2) for qubits.
    pub fn in_plane(&self) -> f64 {
        math::hypot(self.direction[0], self.direction[1])
    }
}

fn infer_dim(len: usize) -> Result<usize> {
    let mut d = 2;
    while d * d - 1 < len {
        d += 1;
    }
    if d * d - 1 != len {
        return Err(Error::ShapeMismatch {
            expected: d * d - 1,
            got: len,
        });
    }
    Ok(d)
}

/// Largest |m/a - 1| any Bloch-admissible state can produce:
/// |nu| * sqrt(2(d-1)/d) via |r| <= sqrt(d(d-1)/2) and the (2/d) prefactor.
fn excess_cap(dim: usize, direction: &[f64]) -> f64 {
    math::norm2(direction) * math::sqrt(2.0 * (dim as f64 - 1.0) / dim as f64)
}

/// Orient the statistics so m/a - 1 >= 0, substituting I - M when needed
/// (a <- 1-a, nu <- -a nu/(1-a), m <- 1-m). Errors when no quantum state is
/// consistent with the statistics on either element.
pub fn normalize_element(scale: f64, direction: &[f64], m: f64) -> Result<NormalizedElement> {
    if !(scale > 0.0 && scale < 1.0) {
        return Err(Error::DegenerateStatistics { a: scale });
    }
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::BadProbability { value: m });
    }
    let dim = infer_dim(direction.len())?;
    let (scale, direction, m, flipped) = if m / scale - 1.0 < 0.0 {
        let factor = -scale / (1.0 - scale);
        (
            1.0 - scale,
            direction.iter().map(|x| factor * x).collect::<Vec<f64>>(),
            1.0 - m,
            true,
        )
    } else {
        (scale, direction.to_vec(), m, false)
    };
    let excess = m / scale - 1.0;
    if excess > excess_cap(dim, &direction) + FEAS_TOL {
        return Err(Error::InfeasibleStatistics {
            detail: "|m/a - 1| exceeds the range any state can produce",
        });
    }
    Ok(NormalizedElement {
        dim,
        scale,
        direction,
        m,
        flipped,
    })
}

/// Theorem-1 predicate: no incoherent qubit reproduces the statistics iff
/// nu_z^2 < (m/a - 1)^2. The condition is invariant under the element flip,
/// so raw statistics are accepted. Boundary cases (within 1e-12) report
/// false.
pub fn witnessable(scale: f64, direction: &[f64], m: f64) -> bool {
    debug_assert_eq!(direction.len(), 3, "witnessability is a qubit predicate");
    let t = m / scale - 1.0;
    let z = direction[2];
    t * t - z * z > STRICT_MARGIN
}

/// Which closed-form branch produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L1Branch {
    /// In-plane element (nu_z = 0): linear bound (m/a - 1)/sqrt(nx^2+ny^2).
    Case1,
    /// General element: quadratic bound.
    Case2,
    /// Statistics reproducible by an incoherent state; bound is zero.
    NotWitnessable,
}

/// Outcome of the qubit l1 bound.
#[derive(Debug, Clone, PartialEq)]
pub struct L1BoundResult {
    /// True exactly when the bound is positive.
    pub witness: bool,
    /// Certified lower bound on the l1 coherence of the unknown state.
    pub bound: f64,
    /// Pure state achieving the bound, present whenever witnessable.
    pub certificate: Option<BlochVector>,
    pub branch: L1Branch,
    /// Whether I - M was substituted to reach the canonical orientation.
    pub element_flipped: bool,
}

/// Closed-form tight lower bound on C_l1 for a qubit. Statistics are
/// normalized (flipping to I - M when m < a) before evaluation.
pub fn l1_lower_bound_qubit(scale: f64, direction: &[f64], m: f64) -> Result<L1BoundResult> {
    let norm = normalize_element(scale, direction, m)?;
    if norm.dim != 2 {
        return Err(Error::ShapeMismatch {
            expected: 3,
            got: direction.len(),
        });
    }
    let t = norm.excess();
    let p = norm.in_plane();
    let z = math::abs(norm.nu_z());
    let nn2 = p * p + z * z;

    if nn2 < 1e-24 {
        // Zero direction: feasibility already forced m = a; nothing to see.
        return Ok(L1BoundResult {
            witness: false,
            bound: 0.0,
            certificate: None,
            branch: L1Branch::NotWitnessable,
            element_flipped: norm.flipped,
        });
    }
    if !witnessable(norm.scale, &norm.direction, norm.m) {
        return Ok(L1BoundResult {
            witness: false,
            bound: 0.0,
            certificate: None,
            branch: L1Branch::NotWitnessable,
            element_flipped: norm.flipped,
        });
    }

    let (branch, c_star) = if z <= STRICT_MARGIN {
        (L1Branch::Case1, t / p)
    } else {
        let radicand = (nn2 - t * t).max(0.0);
        (
            L1Branch::Case2,
            (t * p - z * math::sqrt(radicand)) / nn2,
        )
    };
    let bound = c_star.max(0.0);
    let certificate = tight_state(norm.scale, &norm.direction, norm.m)?;
    Ok(L1BoundResult {
        witness: true,
        bound,
        certificate: Some(certificate),
        branch,
        element_flipped: norm.flipped,
    })
}

/// Pure-state certificate achieving the qubit bound: solves the equality
/// system (constraint, aligned in-plane projections, unit norm, matching
/// hemisphere signs). Requires a witnessable instance.
pub fn tight_state(scale: f64, direction: &[f64], m: f64) -> Result<BlochVector> {
    let norm = normalize_element(scale, direction, m)?;
    if !witnessable(norm.scale, &norm.direction, norm.m) {
        return Err(Error::Precondition(
            "tight_state requires a witnessable instance",
        ));
    }
    let t = norm.excess();
    let nx = norm.direction[0];
    let ny = norm.direction[1];
    let nz = norm.nu_z();
    let p2 = nx * nx + ny * ny;
    if p2 < 1e-24 {
        return Err(Error::Precondition(
            "tight_state requires in-plane POVM components",
        ));
    }

    let coords = if math::abs(nz) <= STRICT_MARGIN {
        // Direct solution; r_z sign is free and fixed non-negative.
        let rx = t * nx / p2;
        let ry = t * ny / p2;
        let rz = math::sqrt((1.0 - (rx * rx + ry * ry)).max(0.0));
        [rx, ry, rz]
    } else {
        // General solution r = lambda (-nx nz/p2, -ny nz/p2, 1) + (0,0,t/nz);
        // lambda from |r| = 1, filtered by t >= -lambda nz >= 0.
        let nn2 = p2 + nz * nz;
        let qa = nn2 / p2;
        let qb = 2.0 * t / nz;
        let qc = t * t / (nz * nz) - 1.0;
        let disc = (qb * qb - 4.0 * qa * qc).max(0.0);
        let sq = math::sqrt(disc);
        let mut best: Option<[f64; 3]> = None;
        for lambda in [(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)] {
            let opposed = -lambda * nz;
            if opposed >= -1e-12 && opposed <= t + 1e-12 {
                let rx = -lambda * nx * nz / p2;
                let ry = -lambda * ny * nz / p2;
                let rz = lambda + t / nz;
                let cand = [rx, ry, rz];
                best = match best {
                    Some(prev) if prev[2] >= rz => Some(prev),
                    _ => Some(cand),
                };
            }
        }
        best.ok_or(Error::Precondition(
            "no tight-state root satisfies the sign conditions",
        ))?
    };
    BlochVector::new(2, coords.to_vec())
}

/// Sound lower bound on C_l1 in dimension d from the generalized
/// off-diagonal/diagonal split: smallest C in [0, d-1] with
/// a (1 + mu C + (2/d) K sqrt(d(d-1)/2 - d C^2 / (2(d-1)))) >= m,
/// where mu is the largest in-pair off-diagonal magnitude of nu and K the
/// norm of its diagonal components. Reduces to the qubit closed form at
/// d = 2.
pub fn l1_lower_bound_qudit(scale: f64, direction: &[f64], m: f64, d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    if direction.len() != d * d - 1 {
        return Err(Error::ShapeMismatch {
            expected: d * d - 1,
            got: direction.len(),
        });
    }
    let norm = normalize_element(scale, direction, m)?;
    let t = norm.excess();
    let nu = &norm.direction;

    let mut mu: f64 = 0.0;
    for i in 2..=d {
        for j in 1..i {
            let pair = math::hypot(nu[sym_index(i, j) - 1], nu[asym_index(i, j) - 1]);
            mu = mu.max(pair);
        }
    }
    let mut k2 = 0.0;
    for k in 1..d {
        let c = nu[diag_index(k) - 1];
        k2 += c * c;
    }
    let kappa = 2.0 * math::sqrt(k2) / d as f64;

    let df = d as f64;
    let b2 = df * (df - 1.0) / 2.0; // squared Bloch-norm cap
    let beta2 = df / (2.0 * (df - 1.0)); // C^2 coefficient inside the root

    // C = 0 already satisfies the inequality: nothing witnessed.
    if kappa * math::sqrt(b2) >= t {
        return Ok(0.0);
    }
    if mu <= 1e-15 {
        // Diagonal-only element with t above its reach: no state fits.
        return Err(Error::InfeasibleStatistics {
            detail: "diagonal-only element cannot produce the observed excess",
        });
    }
    if kappa <= 1e-15 {
        // No diagonal components: linear bound.
        let c = t / mu;
        if c > df - 1.0 + FEAS_TOL {
            return Err(Error::InfeasibleStatistics {
                detail: "required coherence exceeds the d-1 maximum",
            });
        }
        return Ok(c.min(df - 1.0));
    }

    let denom = mu * mu + kappa * kappa * beta2;
    let inner = b2 * denom - beta2 * t * t;
    if inner < 0.0 {
        return Err(Error::InfeasibleStatistics {
            detail: "no coherence level satisfies the observed excess",
        });
    }
    let c = (mu * t - kappa * math::sqrt(inner)) / denom;
    if c > df - 1.0 + FEAS_TOL {
        return Err(Error::InfeasibleStatistics {
            detail: "required coherence exceeds the d-1 maximum",
        });
    }
    Ok(c.max(0.0).min(df - 1.0))
}

/// Qubit l1 bound when only (a, nu_z) are known: the in-plane magnitude is
/// replaced by its positivity cap sqrt(g(a) - nu_z^2), which can only weaken
/// the bound, so the result never exceeds the full-tomography bound.
pub fn l1_lower_bound_partial(
    pk: &crate::tomography::PartialPovmKnowledge,
    m: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::BadProbability { value: m });
    }
    let (pk, m) = if m / pk.scale() - 1.0 < 0.0 {
        (pk.complement(), 1.0 - m)
    } else {
        (*pk, m)
    };
    let a = pk.scale();
    let t = m / a - 1.0;
    let g = pk.g();
    let z = math::abs(pk.nu_z());

    if t * t > g + FEAS_TOL {
        return Err(Error::InfeasibleStatistics {
            detail: "excess exceeds the positivity region of any consistent element",
        });
    }
    if t * t - z * z <= STRICT_MARGIN {
        return Ok(0.0);
    }
    let pe2 = pk.in_plane_cap();
    if pe2 < 1e-18 {
        // Witnessable but no in-plane freedom exists: contradiction.
        return Err(Error::InfeasibleStatistics {
            detail: "no element in the region reaches the observed excess",
        });
    }
    let c = (t * math::sqrt(pe2) - z * math::sqrt((g - t * t).max(0.0))) / g;
    Ok(c.max(0.0))
}
