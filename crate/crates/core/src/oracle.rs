//! Independent brute-force verifiers.
//!
//! These run exhaustive or sampled searches with no shared machinery with
//! the analytic and solver paths they check: the qubit route grids the
//! feasible disk and zooms, the qutrit route rejection-samples
//! Hilbert-Schmidt-uniform states. Results upper-bound the true constrained
//! minimum, so every certified bound must stay at or below them.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::bloch::BlochVector;
use crate::coherence::CoherenceMeasure;
use crate::error::Error;
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::povm::PovmElement;
use crate::re_bound::qubit_c_re;
use crate::sample::gaussian;
use crate::Result;

/// Search controls; `Default` matches the documented defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleParams {
    /// Grid step over the qubit feasible disk.
    pub grid_step: f64,
    /// Accepted-sample target for the d >= 3 rejection sampler.
    pub min_accepted: u64,
    /// Constraint slack |Tr[rho M] - m| accepted by the sampler.
    pub slack: f64,
    /// Sampler seed.
    pub seed: u64,
    /// Hard cap on rejection-sampler draws.
    pub max_draws: u64,
}

impl Default for OracleParams {
    fn default() -> Self {
        Self {
            grid_step: 1e-3,
            min_accepted: 100_000,
            slack: 1e-3,
            seed: 0xbeef,
            max_draws: 400_000_000,
        }
    }
}

/// Outcome of a brute-force minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Smallest coherence found over the feasible search set.
    pub minimum: f64,
    /// Where it was found.
    pub argmin: BlochVector,
    /// Points evaluated (grid) or samples accepted (rejection).
    pub samples: u64,
    /// Constraint slack in force (zero for the exact-grid route).
    pub slack: f64,
}

/// Brute-force minimum of a coherence measure over states compatible with
/// the observed probability.
///
/// d = 2: dense grid over the feasible disk at `grid_step`, then a zooming
/// local refinement (the problem is convex, so the zoom converges to the
/// global minimum). d >= 3: Hilbert-Schmidt rejection sampling with the
/// given slack; the result is an upper bound on the true minimum.
pub fn oracle_min_coherence(
    measure: CoherenceMeasure,
    element: &PovmElement,
    m: f64,
    params: &OracleParams,
) -> Result<OracleResult> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::BadProbability { value: m });
    }
    if element.dim() == 2 {
        oracle_qubit_grid(measure, element, m, params)
    } else {
        oracle_sampled(measure, element, m, params)
    }
}

fn qubit_objective(measure: CoherenceMeasure, r: &[f64; 3]) -> f64 {
    match measure {
        CoherenceMeasure::L1Norm => math::hypot(r[0], r[1]),
        CoherenceMeasure::RelativeEntropy => qubit_c_re(r),
    }
}

fn oracle_qubit_grid(
    measure: CoherenceMeasure,
    element: &PovmElement,
    m: f64,
    params: &OracleParams,
) -> Result<OracleResult> {
    let a = element.scale();
    let nu = element.direction();
    let nn = element.direction_norm();
    let t = m / a - 1.0;

    if nn < 1e-15 {
        // Every state is feasible; the maximally mixed state has zero
        // coherence in both measures.
        if math::abs(t) > 1e-9 {
            return Err(Error::FeasibilityFailure { attempts: 0 });
        }
        return Ok(OracleResult {
            minimum: 0.0,
            argmin: BlochVector::new(2, alloc::vec![0.0, 0.0, 0.0])?,
            samples: 1,
            slack: 0.0,
        });
    }
    let offset = t / nn;
    if math::abs(offset) > 1.0 + 1e-9 {
        return Err(Error::FeasibilityFailure { attempts: 0 });
    }
    let offset = offset.clamp(-1.0, 1.0);
    let nhat = [nu[0] / nn, nu[1] / nn, nu[2] / nn];
    let center = [offset * nhat[0], offset * nhat[1], offset * nhat[2]];
    let radius = math::sqrt((1.0 - offset * offset).max(0.0));
    let seed_axis = if math::abs(nhat[0]) < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let dot = seed_axis[0] * nhat[0] + seed_axis[1] * nhat[1] + seed_axis[2] * nhat[2];
    let mut u = [
        seed_axis[0] - dot * nhat[0],
        seed_axis[1] - dot * nhat[1],
        seed_axis[2] - dot * nhat[2],
    ];
    let un = math::norm2(&u);
    u = [u[0] / un, u[1] / un, u[2] / un];
    let v = [
        nhat[1] * u[2] - nhat[2] * u[1],
        nhat[2] * u[0] - nhat[0] * u[2],
        nhat[0] * u[1] - nhat[1] * u[0],
    ];
    let point = |alpha: f64, beta: f64| -> [f64; 3] {
        [
            center[0] + alpha * u[0] + beta * v[0],
            center[1] + alpha * u[1] + beta * v[1],
            center[2] + alpha * u[2] + beta * v[2],
        ]
    };

    let mut best = (0.0f64, 0.0f64);
    let mut best_val = qubit_objective(measure, &point(0.0, 0.0));
    let mut samples = 1u64;
    if radius > 0.0 {
        let steps = (2.0 * radius / params.grid_step) as i64 + 1;
        for i in 0..=steps {
            let alpha = -radius + params.grid_step * i as f64;
            if math::abs(alpha) > radius {
                continue;
            }
            let beta_max = math::sqrt((radius * radius - alpha * alpha).max(0.0));
            let jmax = (2.0 * beta_max / params.grid_step) as i64 + 1;
            for j in 0..=jmax {
                let beta = -beta_max + params.grid_step * j as f64;
                let val = qubit_objective(measure, &point(alpha, beta));
                samples += 1;
                if val < best_val {
                    best_val = val;
                    best = (alpha, beta);
                }
            }
        }
        // Zooming refinement around the best grid point.
        let mut step = params.grid_step;
        while step > 1e-9 {
            step /= 3.0;
            let (calpha, cbeta) = best;
            for i in -4i64..=4 {
                for j in -4i64..=4 {
                    let mut alpha = calpha + step * i as f64;
                    let mut beta = cbeta + step * j as f64;
                    let rad = math::hypot(alpha, beta);
                    if rad > radius && rad > 0.0 {
                        alpha *= radius / rad;
                        beta *= radius / rad;
                    }
                    let val = qubit_objective(measure, &point(alpha, beta));
                    samples += 1;
                    if val < best_val {
                        best_val = val;
                        best = (alpha, beta);
                    }
                }
            }
        }
    }

    let r = point(best.0, best.1);
    // Clamp round-off so the argmin is a representable state.
    let norm = math::norm2(&r);
    let r = if norm > 1.0 {
        [r[0] / norm, r[1] / norm, r[2] / norm]
    } else {
        r
    };
    Ok(OracleResult {
        minimum: best_val,
        argmin: BlochVector::new(2, r.to_vec())?,
        samples,
        slack: 0.0,
    })
}

fn oracle_sampled(
    measure: CoherenceMeasure,
    element: &PovmElement,
    m: f64,
    params: &OracleParams,
) -> Result<OracleResult> {
    let d = element.dim();
    let mat = element.to_matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut accepted = 0u64;
    let mut draws = 0u64;
    let mut best_val = f64::INFINITY;
    let mut best_rho: Option<ComplexMatrix> = None;

    while accepted < params.min_accepted && draws < params.max_draws {
        draws += 1;
        // G columns as flat vectors; rho = G G^dag / Tr[G G^dag] evaluated
        // lazily through column contractions.
        let cols: Vec<Vec<num_complex::Complex64>> = (0..d)
            .map(|_| {
                (0..d)
                    .map(|_| num_complex::Complex64::new(gaussian(&mut rng), gaussian(&mut rng)))
                    .collect()
            })
            .collect();
        let mut tr_gg = 0.0f64;
        let mut tr_ggm = 0.0f64;
        for col in &cols {
            tr_gg += col.iter().map(|x| x.norm_sqr()).sum::<f64>();
            let mg = mat.apply(col);
            let overlap: num_complex::Complex64 = col
                .iter()
                .zip(&mg)
                .map(|(ci, mi)| ci.conj() * mi)
                .sum();
            tr_ggm += overlap.re;
        }
        let prob = tr_ggm / tr_gg;
        if math::abs(prob - m) > params.slack {
            continue;
        }
        accepted += 1;
        let mut rho = ComplexMatrix::zeros(d);
        for col in &cols {
            for i in 0..d {
                for j in 0..d {
                    rho[(i, j)] += col[i] * col[j].conj();
                }
            }
        }
        let rho = rho.scale_re(1.0 / tr_gg);
        let val = match measure {
            CoherenceMeasure::L1Norm => {
                let mut s = 0.0;
                for i in 0..d {
                    for j in 0..d {
                        if i != j {
                            s += rho[(i, j)].norm();
                        }
                    }
                }
                s
            }
            CoherenceMeasure::RelativeEntropy => {
                let state = crate::state::DensityMatrix::new(rho.clone())?;
                crate::coherence::c_re(&state)
            }
        };
        if val < best_val {
            best_val = val;
            best_rho = Some(rho);
        }
    }

    let rho = best_rho.ok_or(Error::FeasibilityFailure { attempts: draws })?;
    let argmin = crate::bloch::operator_to_bloch(&rho)?;
    Ok(OracleResult {
        minimum: best_val,
        argmin,
        samples: accepted,
        slack: params.slack,
    })
}

/// Exhaustive qubit witness check: scans incoherent states s_z over [-1, 1]
/// at step 1e-6 (plus the exact closed-form candidate (m-a)/(a nu_z) when
/// nu_z is nonzero) for one reproducing the observed probability within
/// 1e-9. Returns true exactly when none exists.
pub fn oracle_witness(scale: f64, direction: &[f64], m: f64) -> bool {
    debug_assert_eq!(direction.len(), 3);
    let nu_z = direction[2];
    let base = scale - m;
    let slope = scale * nu_z;
    const TOL: f64 = 1e-9;
    const STEP: f64 = 1e-6;

    if math::abs(nu_z) > 1e-300 {
        let candidate = (m - scale) / (scale * nu_z);
        if math::abs(candidate) <= 1.0 && math::abs(base + slope * candidate) <= TOL {
            return false;
        }
    }
    // Block scan keeps the inner loop branch-free for vectorization.
    const BLOCK: usize = 4096;
    let total: usize = 2_000_001;
    let mut k = 0usize;
    while k < total {
        let hi = (k + BLOCK).min(total);
        let mut blk_min = f64::INFINITY;
        for i in k..hi {
            let sz = -1.0 + STEP * i as f64;
            let dev = math::abs(base + slope * sz);
            if dev < blk_min {
                blk_min = dev;
            }
        }
        if blk_min <= TOL {
            return false;
        }
        k = hi;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const REF_NU: [f64; 3] = [0.5, 0.25, 0.25];

    fn reference_element() -> PovmElement {
        PovmElement::new(2, 0.6, REF_NU.to_vec()).unwrap()
    }

    #[test]
    fn witness_examples() {
        assert!(oracle_witness(0.6, &REF_NU, 0.9));
        // q = 0.5 boundary: s_z = 1 reproduces exactly.
        assert!(!oracle_witness(0.6, &REF_NU, 0.75));
        // m = a with nu_z = 0: the maximally mixed state reproduces.
        assert!(!oracle_witness(0.5, &[1.0, 0.0, 0.0], 0.5));
    }

    #[test]
    fn qubit_l1_grid_matches_closed_form_reference() {
        let params = OracleParams {
            grid_step: 2e-3,
            ..OracleParams::default()
        };
        let r = oracle_min_coherence(
            CoherenceMeasure::L1Norm,
            &reference_element(),
            0.9,
            &params,
        )
        .unwrap();
        let closed = 0.509_653_732_104_414_1;
        assert!(
            (r.minimum - closed).abs() < 2e-3,
            "oracle={}, closed={closed}",
            r.minimum
        );
        // Constraint satisfied by the argmin.
        let c = r.argmin.coords();
        let prob = 0.6 * (1.0 + REF_NU[0] * c[0] + REF_NU[1] * c[1] + REF_NU[2] * c[2]);
        assert!((prob - 0.9).abs() < 1e-9);
    }

    #[test]
    fn qubit_re_grid_finds_zero_below_threshold() {
        // q = 0.4 along x: m = 0.72, reproducible by an incoherent state.
        let r = oracle_min_coherence(
            CoherenceMeasure::RelativeEntropy,
            &reference_element(),
            0.72,
            &OracleParams {
                grid_step: 5e-3,
                ..OracleParams::default()
            },
        )
        .unwrap();
        assert!(r.minimum < 1e-6, "minimum={}", r.minimum);
    }

    #[test]
    fn infeasible_m_is_a_feasibility_failure() {
        let r = oracle_min_coherence(
            CoherenceMeasure::L1Norm,
            &reference_element(),
            0.999,
            &OracleParams::default(),
        );
        assert!(matches!(r, Err(Error::FeasibilityFailure { .. })));
    }

    #[test]
    fn qutrit_sampler_accepts_and_bounds() {
        let mut nu = vec![0.0; 8];
        nu[0] = 0.3;
        nu[2] = 0.15;
        let el = PovmElement::new(3, 0.5, nu).unwrap();
        // m near a keeps the acceptance rate healthy.
        let params = OracleParams {
            min_accepted: 2_000,
            max_draws: 2_000_000,
            ..OracleParams::default()
        };
        let r = oracle_min_coherence(CoherenceMeasure::L1Norm, &el, 0.52, &params).unwrap();
        assert!(r.samples >= 2_000);
        assert!(r.minimum >= 0.0);
        // The argmin satisfies the constraint within the slack.
        let rho = crate::bloch::bloch_to_operator(3, r.argmin.coords()).unwrap();
        let p = rho.trace_product(&el.to_matrix()).re;
        assert!((p - 0.52).abs() <= params.slack + 1e-12);
    }
}
