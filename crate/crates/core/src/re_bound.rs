//! Numerical lower bounds on the relative entropy of coherence.
//!
//! Three routes:
//!  * exact convex minimization of C_RE over the feasible state set
//!    (projected gradient on the constraint disk for qubits, log-barrier on
//!    the PSD set for d >= 3);
//!  * a Lagrange-dual bound relaxed through the Golden-Thompson inequality,
//!    sound at any multiplier value;
//!  * a brute-force sweep over the POVM region compatible with partial
//!    tomography, taking the worst convex bound over sampled elements.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::eig::herm_eig;
use crate::error::Error;
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::povm::PovmElement;
use crate::sample::uniform;
use crate::state::DensityMatrix;
use crate::tomography::PartialPovmKnowledge;
use crate::Result;

/// Objective tolerance the convex solver targets.
pub const OBJECTIVE_TOL: f64 = 1e-6;

/// Bounds below this are reported as exactly zero; nothing smaller is
/// certifiable at the solver tolerance.
pub const ZERO_CLAMP: f64 = 1e-9;

const STEP_TOL: f64 = 1e-10;
const MAX_ITERS: u64 = 100_000;
const RESTARTS: usize = 10;
const RESTART_SEED: u64 = 0x5eed_c0de;

/// Which numerical route produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReMethod {
    ConvexPrimal,
    DualGT,
    RegionSweep,
}

/// A relative-entropy bound with solver diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ReBoundResult {
    /// Lower bound on C_RE in bits, clamped at zero.
    pub bound: f64,
    pub method: ReMethod,
    /// Iterations spent (descent steps, or grid + refinement evaluations).
    pub iterations: u64,
    /// Final step norm (convex) or final bracket width (dual).
    pub final_step: f64,
    /// Optimal multiplier, for the dual route.
    pub lambda_star: Option<f64>,
    /// Region samples evaluated, for the sweep route.
    pub samples: Option<u64>,
    /// Grid resolution used, for the sweep route.
    pub resolution: Option<(u32, u32)>,
    /// Objective tolerance the reported bound honors.
    pub tolerance: f64,
}

/// Exact convex minimization of C_RE over states with Tr[rho M] = m.
pub fn re_bound_convex(element: &PovmElement, m: f64, d: usize) -> Result<ReBoundResult> {
    if element.dim() != d {
        return Err(Error::ShapeMismatch {
            expected: d,
            got: element.dim(),
        });
    }
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::BadProbability { value: m });
    }
    let (w, _) = herm_eig(&element.to_matrix())?;
    let (lo, hi) = (w[0], w[d - 1]);
    if m < lo - 1e-9 || m > hi + 1e-9 {
        return Err(Error::InfeasibleStatistics {
            detail: "m outside the spectrum range of the element",
        });
    }
    if d == 2 {
        convex_qubit(element, m)
    } else {
        convex_barrier(element, m, lo, hi)
    }
}

/// Golden-Thompson dual bound: (1/ln2) max over lambda of
/// (-||dephase(exp(-I - lambda M))||_inf - lambda m). Any lambda yields a
/// sound bound, so the search only affects tightness. The coarse grid has
/// 1001 points over `lambda_range` (default [-100, 100], doubled up to four
/// times if the argmax lands on an endpoint) before golden-section
/// refinement to `tol` (default 1e-9).
pub fn re_bound_dual(
    element: &PovmElement,
    m: f64,
    lambda_range: Option<(f64, f64)>,
    tol: Option<f64>,
) -> Result<ReBoundResult> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::BadProbability { value: m });
    }
    let tol = tol.unwrap_or(1e-9);
    let (mut lo, mut hi) = lambda_range.unwrap_or((-100.0, 100.0));
    if lo > hi {
        core::mem::swap(&mut lo, &mut hi);
    }
    let mat = element.to_matrix();
    let objective = |lambda: f64| dual_objective_matrix(&mat, m, lambda);

    const GRID: usize = 1001;
    let mut evals: u64 = 0;
    let mut best_idx = 0usize;
    let mut grid_vals = vec![f64::NEG_INFINITY; GRID];
    for _expansion in 0..=4 {
        let step = (hi - lo) / (GRID - 1) as f64;
        let mut best = f64::NEG_INFINITY;
        for (i, v) in grid_vals.iter_mut().enumerate() {
            let lambda = lo + step * i as f64;
            *v = objective(lambda);
            evals += 1;
            if *v > best {
                best = *v;
                best_idx = i;
            }
        }
        let at_edge = best_idx == 0 || best_idx == GRID - 1;
        if !at_edge || (hi - lo) <= 0.0 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let half = (hi - lo).max(1.0);
        lo = mid - half;
        hi = mid + half;
    }
    let step = (hi - lo) / (GRID - 1) as f64;
    let br_lo = lo + step * best_idx.saturating_sub(1) as f64;
    let br_hi = (lo + step * (best_idx + 1).min(GRID - 1) as f64).max(br_lo);
    let (lambda_star, value, gs_iters) = golden_section_max(objective, br_lo, br_hi, tol);

    Ok(ReBoundResult {
        bound: value.max(0.0),
        method: ReMethod::DualGT,
        iterations: evals + gs_iters,
        final_step: br_hi - br_lo,
        lambda_star: Some(lambda_star),
        samples: None,
        resolution: None,
        tolerance: tol,
    })
}

/// The dual objective at a single multiplier value; useful for weak-duality
/// spot checks. Not clamped at zero.
pub fn re_dual_objective(element: &PovmElement, m: f64, lambda: f64) -> f64 {
    dual_objective_matrix(&element.to_matrix(), m, lambda)
}

fn dual_objective_matrix(mat: &ComplexMatrix, m: f64, lambda: f64) -> f64 {
    let d = mat.dim();
    // A = -I - lambda M, evaluated spectrally so large |lambda| cannot
    // overflow inside the matrix exponential.
    let mut a = mat.scale_re(-lambda);
    for i in 0..d {
        a[(i, i)] -= num_complex::Complex64::new(1.0, 0.0);
    }
    let (w, v) = match herm_eig(&a) {
        Ok(x) => x,
        Err(_) => return f64::NEG_INFINITY,
    };
    let w_max = w.iter().fold(f64::NEG_INFINITY, |acc, &x| acc.max(x));
    if w_max > 700.0 {
        // exp overflows; the objective is effectively -infinity there.
        return f64::NEG_INFINITY;
    }
    // Diagonal entries of exp(A): sum_k |V_ik|^2 e^{w_k}.
    let mut max_diag = 0.0f64;
    for i in 0..d {
        let mut s = 0.0;
        for k in 0..d {
            s += v[(i, k)].norm_sqr() * math::exp(w[k]);
        }
        max_diag = max_diag.max(s);
    }
    (-max_diag - lambda * m) / core::f64::consts::LN_2
}

/// Golden-section maximization on [lo, hi]; returns (argmax, max, iters).
fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64, u64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    if hi - lo <= tol {
        let x = 0.5 * (lo + hi);
        return (x, f(x), 1);
    }
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iters = 2u64;
    while hi - lo > tol && iters < 400 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        iters += 1;
    }
    if f1 >= f2 {
        (x1, f1, iters)
    } else {
        (x2, f2, iters)
    }
}

// ---------------------------------------------------------------------------
// Qubit route: the feasible set is the intersection of the constraint plane
// nu . r = m/a - 1 with the Bloch ball, a disk parameterized by two
// coordinates. C_RE has the closed qubit form
// h((1 + r_z)/2) - h((1 + |r|)/2).
// ---------------------------------------------------------------------------

struct DiskGeometry {
    center: [f64; 3],
    radius: f64,
    u: [f64; 3],
    v: [f64; 3],
}

fn disk_geometry(element: &PovmElement, m: f64) -> Option<DiskGeometry> {
    let a = element.scale();
    let nu = element.direction();
    let nn = element.direction_norm();
    let t = m / a - 1.0;
    if nn < 1e-15 {
        return None;
    }
    let mut offset = t / nn;
    offset = offset.clamp(-1.0, 1.0);
    let nhat = [nu[0] / nn, nu[1] / nn, nu[2] / nn];
    let center = [offset * nhat[0], offset * nhat[1], offset * nhat[2]];
    let radius = math::sqrt((1.0 - offset * offset).max(0.0));
    // Orthonormal frame perpendicular to nhat.
    let seed = if math::abs(nhat[0]) < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let dot = seed[0] * nhat[0] + seed[1] * nhat[1] + seed[2] * nhat[2];
    let mut u = [
        seed[0] - dot * nhat[0],
        seed[1] - dot * nhat[1],
        seed[2] - dot * nhat[2],
    ];
    let un = math::norm2(&u);
    u = [u[0] / un, u[1] / un, u[2] / un];
    let v = [
        nhat[1] * u[2] - nhat[2] * u[1],
        nhat[2] * u[0] - nhat[0] * u[2],
        nhat[0] * u[1] - nhat[1] * u[0],
    ];
    Some(DiskGeometry {
        center,
        radius,
        u,
        v,
    })
}

fn disk_point(g: &DiskGeometry, alpha: f64, beta: f64) -> [f64; 3] {
    [
        g.center[0] + alpha * g.u[0] + beta * g.v[0],
        g.center[1] + alpha * g.u[1] + beta * g.v[1],
        g.center[2] + alpha * g.u[2] + beta * g.v[2],
    ]
}

/// Closed-form qubit C_RE at a Bloch point.
pub(crate) fn qubit_c_re(r: &[f64; 3]) -> f64 {
    let s = math::norm2(r).min(1.0);
    (math::binary_entropy((1.0 + r[2]) / 2.0) - math::binary_entropy((1.0 + s) / 2.0)).max(0.0)
}

/// d/dx h((1+x)/2) with the eigenvalue floor applied inside the logarithm.
fn phi(x: f64) -> f64 {
    let x = x.clamp(-(1.0 - 2e-12), 1.0 - 2e-12);
    0.5 * math::log2((1.0 - x) / (1.0 + x))
}

fn convex_qubit(element: &PovmElement, m: f64) -> Result<ReBoundResult> {
    let geometry = match disk_geometry(element, m) {
        Some(g) => g,
        None => {
            // Direction-free element: every state is feasible, the mixed
            // state attains zero.
            return Ok(ReBoundResult {
                bound: 0.0,
                method: ReMethod::ConvexPrimal,
                iterations: 0,
                final_step: 0.0,
                lambda_star: None,
                samples: None,
                resolution: None,
                tolerance: OBJECTIVE_TOL,
            });
        }
    };
    let objective = |x: [f64; 2]| -> f64 {
        let r = disk_point(&geometry, x[0], x[1]);
        qubit_c_re(&r)
    };
    let gradient = |x: [f64; 2]| -> [f64; 2] {
        let r = disk_point(&geometry, x[0], x[1]);
        let s = math::norm2(&r);
        let dz = phi(r[2]);
        // d/dalpha S(rho): phi(s) * (r . u)/s, with the s -> 0 limit
        // phi(s)/s -> -1/ln2.
        let ratio = if s < 1e-12 {
            -1.0 / core::f64::consts::LN_2
        } else {
            phi(s.min(1.0)) / s
        };
        let ru = r[0] * geometry.u[0] + r[1] * geometry.u[1] + r[2] * geometry.u[2];
        let rv = r[0] * geometry.v[0] + r[1] * geometry.v[1] + r[2] * geometry.v[2];
        [
            dz * geometry.u[2] - ratio * ru,
            dz * geometry.v[2] - ratio * rv,
        ]
    };
    let project = |x: [f64; 2]| -> [f64; 2] {
        let r = math::hypot(x[0], x[1]);
        if r <= geometry.radius || r == 0.0 {
            x
        } else {
            let f = geometry.radius / r;
            [x[0] * f, x[1] * f]
        }
    };

    if geometry.radius < 1e-12 {
        // Constraint touches the ball in a single point.
        return Ok(ReBoundResult {
            bound: clamp_zero(objective([0.0, 0.0])),
            method: ReMethod::ConvexPrimal,
            iterations: 0,
            final_step: 0.0,
            lambda_star: None,
            samples: None,
            resolution: None,
            tolerance: OBJECTIVE_TOL,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(RESTART_SEED);
    let mut best_val = f64::INFINITY;
    let mut total_iters: u64 = 0;
    let mut final_step = 0.0;
    for restart in 0..RESTARTS {
        let start = if restart == 0 {
            [0.0, 0.0]
        } else {
            let ang = 2.0 * core::f64::consts::PI * uniform(&mut rng);
            let rad = geometry.radius * math::sqrt(uniform(&mut rng));
            [rad * math::cos(ang), rad * math::sin(ang)]
        };
        let (val, iters, step) =
            projected_descent(start, &objective, &gradient, &project, MAX_ITERS / 10);
        total_iters += iters;
        if val < best_val {
            best_val = val;
            final_step = step;
        }
        if best_val <= 1e-12 {
            break;
        }
    }
    Ok(ReBoundResult {
        bound: clamp_zero(best_val),
        method: ReMethod::ConvexPrimal,
        iterations: total_iters,
        final_step,
        lambda_star: None,
        samples: None,
        resolution: None,
        tolerance: OBJECTIVE_TOL,
    })
}

fn projected_descent(
    start: [f64; 2],
    objective: &impl Fn([f64; 2]) -> f64,
    gradient: &impl Fn([f64; 2]) -> [f64; 2],
    project: &impl Fn([f64; 2]) -> [f64; 2],
    max_iters: u64,
) -> (f64, u64, f64) {
    let mut x = project(start);
    let mut fx = objective(x);
    let mut eta = 0.25;
    let mut iters = 0u64;
    let mut last_step = f64::INFINITY;
    while iters < max_iters {
        iters += 1;
        let g = gradient(x);
        let gnorm = math::hypot(g[0], g[1]);
        if gnorm < 1e-14 {
            last_step = 0.0;
            break;
        }
        let mut accepted = false;
        let mut trial_eta = eta;
        for _ in 0..60 {
            let cand = project([x[0] - trial_eta * g[0], x[1] - trial_eta * g[1]]);
            let fc = objective(cand);
            if fc < fx {
                let step = math::hypot(cand[0] - x[0], cand[1] - x[1]);
                x = cand;
                fx = fc;
                last_step = step;
                accepted = true;
                break;
            }
            trial_eta *= 0.5;
        }
        if !accepted {
            last_step = 0.0;
            break;
        }
        eta = (trial_eta * 1.8).min(1.0);
        if last_step < STEP_TOL {
            break;
        }
    }
    (fx, iters, last_step)
}

fn clamp_zero(x: f64) -> f64 {
    if x < ZERO_CLAMP {
        0.0
    } else {
        x
    }
}

// ---------------------------------------------------------------------------
// d >= 3 route: the Bloch ball is no longer the state set, so positivity is
// enforced with a log-barrier of decreasing weight while the linear
// constraint is kept exactly by moving inside the constraint hyperplane.
// ---------------------------------------------------------------------------

fn convex_barrier(element: &PovmElement, m: f64, lo: f64, hi: f64) -> Result<ReBoundResult> {
    let d = element.dim();
    let n = d * d - 1;
    let mat = element.to_matrix();
    let (_, v) = herm_eig(&mat)?;

    // Extreme m: the feasible set degenerates to an eigenstate.
    if m >= hi - 1e-12 || m <= lo + 1e-12 {
        let col = if m >= hi - 1e-12 { d - 1 } else { 0 };
        let ket: Vec<num_complex::Complex64> = (0..d).map(|row| v[(row, col)]).collect();
        let rho = DensityMatrix::pure(&ket)?;
        return Ok(ReBoundResult {
            bound: clamp_zero(crate::coherence::c_re(&rho)),
            method: ReMethod::ConvexPrimal,
            iterations: 0,
            final_step: 0.0,
            lambda_star: None,
            samples: None,
            resolution: None,
            tolerance: OBJECTIVE_TOL,
        });
    }

    // Interior start: blend the maximally mixed state with a two-eigenstate
    // mixture P chosen so the constraint holds exactly.
    let a = element.scale();
    let mut start = None;
    for gamma in [0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999] {
        let m_p = (m - (1.0 - gamma) * a) / gamma;
        if m_p >= lo && m_p <= hi {
            let x = (m_p - lo) / (hi - lo);
            let kmin: Vec<num_complex::Complex64> = (0..d).map(|row| v[(row, 0)]).collect();
            let kmax: Vec<num_complex::Complex64> = (0..d).map(|row| v[(row, d - 1)]).collect();
            let pmin = ComplexMatrix::projector(&kmin);
            let pmax = ComplexMatrix::projector(&kmax);
            let p = &pmax.scale_re(x) + &pmin.scale_re(1.0 - x);
            let mixed = ComplexMatrix::identity(d).scale_re((1.0 - gamma) / d as f64);
            let rho0 = &mixed + &p.scale_re(gamma);
            start = Some(rho0);
            break;
        }
    }
    let rho0 = start.ok_or(Error::InfeasibleStatistics {
        detail: "no interior state satisfies the constraint",
    })?;

    let gens = crate::generators::su_generators(d)?;
    let nu = element.direction();
    let nn2: f64 = nu.iter().map(|x| x * x).sum();
    let nhat: Vec<f64> = nu.iter().map(|x| x / math::sqrt(nn2)).collect();

    // Orthonormal basis of the hyperplane orthogonal to nu via Householder:
    // columns 1..n of H = I - 2 w w^T where H e_1 = nhat.
    let mut wvec = nhat.clone();
    wvec[0] -= 1.0;
    let wn = math::norm2(&wvec);
    let basis: Vec<Vec<f64>> = if wn < 1e-12 {
        (1..n)
            .map(|k| {
                let mut e = vec![0.0; n];
                e[k] = 1.0;
                e
            })
            .collect()
    } else {
        let wunit: Vec<f64> = wvec.iter().map(|x| x / wn).collect();
        (1..n)
            .map(|k| {
                let mut col = vec![0.0; n];
                col[k] = 1.0;
                for (i, c) in col.iter_mut().enumerate() {
                    *c -= 2.0 * wunit[i] * wunit[k];
                }
                col
            })
            .collect()
    };

    let x0 = crate::bloch::operator_to_bloch(&rho0)?.coords().to_vec();

    let rho_at = |y: &[f64]| -> ComplexMatrix {
        let mut coords = x0.clone();
        for (k, b) in basis.iter().enumerate() {
            for (c, bi) in coords.iter_mut().zip(b.iter()) {
                *c += y[k] * bi;
            }
        }
        crate::bloch::bloch_to_operator(d, &coords).expect("length fixed")
    };

    let eval = |y: &[f64], weight: f64| -> (f64, f64) {
        let rho = rho_at(y);
        match herm_eig(&rho) {
            Ok((ws, _)) => {
                if ws[0] <= 0.0 {
                    return (f64::INFINITY, f64::INFINITY);
                }
                let s: f64 = ws.iter().map(|&p| -math::xlog2x(p)).sum();
                let s_diag: f64 = rho
                    .diagonal()
                    .iter()
                    .map(|p| -math::xlog2x(p.re))
                    .sum::<f64>();
                let c = (s_diag - s).max(0.0);
                let barrier: f64 = ws.iter().map(|&p| -math::ln(p.max(1e-300))).sum();
                (c + weight * barrier, c)
            }
            Err(_) => (f64::INFINITY, f64::INFINITY),
        }
    };

    let grad = |y: &[f64], weight: f64| -> Vec<f64> {
        let rho = rho_at(y);
        let (ws, vs) = herm_eig(&rho).expect("valid state along the path");
        let dd = rho.dim();
        // Gradient matrix: log2(rho) - dephase(log2(dephase(rho)))
        //                  - weight * rho^{-1},
        // with eigenvalues floored at 1e-12 inside logarithms.
        let mut gmat = ComplexMatrix::zeros(dd);
        for i in 0..dd {
            for j in 0..dd {
                let mut acc = num_complex::Complex64::new(0.0, 0.0);
                for k in 0..dd {
                    let lam = ws[k].max(1e-12);
                    let coeff = math::log2(lam) - weight / lam;
                    acc += vs[(i, k)] * num_complex::Complex64::new(coeff, 0.0) * vs[(j, k)].conj();
                }
                gmat[(i, j)] = acc;
            }
        }
        for i in 0..dd {
            let p = rho[(i, i)].re.max(1e-12);
            gmat[(i, i)] -= num_complex::Complex64::new(math::log2(p), 0.0);
        }
        let gx: Vec<f64> = gens
            .iter()
            .map(|g| gmat.trace_product(g).re / d as f64)
            .collect();
        basis
            .iter()
            .map(|b| b.iter().zip(&gx).map(|(bi, gi)| bi * gi).sum())
            .collect()
    };

    let mut y = vec![0.0f64; n - 1];
    let mut total_iters = 0u64;
    let mut final_step = 0.0f64;
    let mut weight = 1e-2;
    while weight >= 1e-8 {
        let mut eta = 0.1;
        for _ in 0..300 {
            total_iters += 1;
            let (fy, _) = eval(&y, weight);
            let g = grad(&y, weight);
            let gn = math::norm2(&g);
            if gn < 1e-12 {
                break;
            }
            let mut accepted = false;
            let mut trial = eta;
            for _ in 0..60 {
                let cand: Vec<f64> = y
                    .iter()
                    .zip(&g)
                    .map(|(yi, gi)| yi - trial * gi)
                    .collect();
                let (fc, _) = eval(&cand, weight);
                if fc < fy {
                    let step = math::norm2(
                        &cand
                            .iter()
                            .zip(&y)
                            .map(|(a, b)| a - b)
                            .collect::<Vec<f64>>(),
                    );
                    y = cand;
                    final_step = step;
                    accepted = true;
                    break;
                }
                trial *= 0.5;
            }
            if !accepted || final_step < STEP_TOL {
                break;
            }
            eta = (trial * 1.8).min(0.5);
        }
        weight *= 0.1;
    }

    let (_, c_final) = eval(&y, 0.0);
    Ok(ReBoundResult {
        bound: clamp_zero(c_final),
        method: ReMethod::ConvexPrimal,
        iterations: total_iters,
        final_step,
        lambda_star: None,
        samples: None,
        resolution: None,
        tolerance: OBJECTIVE_TOL,
    })
}

// ---------------------------------------------------------------------------
// Partial-tomography sweep.
// ---------------------------------------------------------------------------

/// Polar grid over the admissible in-plane disk nu_x^2 + nu_y^2 <=
/// g(a) - nu_z^2. Radius fractions are i/n_r and angles 2 pi j / n_theta, so
/// doubling a resolution yields a superset grid and the sweep minimum is
/// monotone under doubling refinements.
pub fn region_samples(pk: &PartialPovmKnowledge, n_r: u32, n_theta: u32) -> Vec<(f64, f64)> {
    let cap = pk.in_plane_cap();
    let radius = math::sqrt(cap.max(0.0));
    let mut out = Vec::with_capacity(1 + (n_r as usize) * (n_theta as usize));
    out.push((0.0, 0.0));
    if radius <= 0.0 {
        return out;
    }
    for i in 1..=n_r {
        let r = radius * i as f64 / n_r as f64;
        for j in 0..n_theta {
            let ang = 2.0 * core::f64::consts::PI * j as f64 / n_theta as f64;
            out.push((r * math::cos(ang), r * math::sin(ang)));
        }
    }
    out
}

/// Worst-case convex bound over the POVM region consistent with partial
/// tomography: the minimum of `re_bound_convex` over the sampled region, an
/// upper estimate of the true worst case that converges from above with
/// resolution. Samples incompatible with the observed m are excluded.
pub fn re_bound_partial(
    pk: &PartialPovmKnowledge,
    m: f64,
    resolution: (u32, u32),
) -> Result<ReBoundResult> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::BadProbability { value: m });
    }
    let (n_r, n_theta) = resolution;
    if n_r == 0 || n_theta == 0 {
        return Err(Error::Precondition("sweep resolution must be positive"));
    }
    if pk.g() < pk.nu_z() * pk.nu_z() - 1e-12 {
        return Err(Error::InconsistentStatistics {
            detail: "positivity region is empty",
            value: pk.nu_z() * pk.nu_z() - pk.g(),
        });
    }
    let samples = region_samples(pk, n_r, n_theta);
    let mut best: Option<f64> = None;
    let mut evaluated = 0u64;
    let mut iterations = 0u64;
    for (nx, ny) in &samples {
        match re_bound_partial_sample(pk, m, *nx, *ny)? {
            Some(result) => {
                evaluated += 1;
                iterations += result.iterations;
                best = Some(match best {
                    Some(b) => b.min(result.bound),
                    None => result.bound,
                });
                if best == Some(0.0) {
                    break;
                }
            }
            None => continue,
        }
    }
    let bound = best.ok_or(Error::InfeasibleStatistics {
        detail: "no element in the region is consistent with m",
    })?;
    Ok(ReBoundResult {
        bound,
        method: ReMethod::RegionSweep,
        iterations,
        final_step: 0.0,
        lambda_star: None,
        samples: Some(evaluated),
        resolution: Some(resolution),
        tolerance: OBJECTIVE_TOL,
    })
}

/// One sweep sample: the convex bound at in-plane components (nx, ny), or
/// None when that element cannot produce the observed m (ruling it out).
pub fn re_bound_partial_sample(
    pk: &PartialPovmKnowledge,
    m: f64,
    nx: f64,
    ny: f64,
) -> Result<Option<ReBoundResult>> {
    let nu = vec![nx, ny, pk.nu_z()];
    let element = match PovmElement::new(2, pk.scale(), nu) {
        Ok(e) => e,
        // Round-off at the region boundary can nudge past positivity.
        Err(Error::NotPositive { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    match re_bound_convex(&element, m, 2) {
        Ok(r) => Ok(Some(r)),
        Err(Error::InfeasibleStatistics { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::BlochVector;
    use crate::coherence::c_re;
    use crate::tomography::partial_tomography_z;

    fn reference_element() -> PovmElement {
        PovmElement::new(2, 0.6, vec![0.5, 0.25, 0.25]).unwrap()
    }

    fn x_family_m(q: f64) -> f64 {
        0.6 * (1.0 + 0.5 * q)
    }

    #[test]
    fn unique_feasible_point_gives_one_bit() {
        // nu = (1,0,0), a = 0.5, m = 1: only |+><+| satisfies the
        // constraint, and its C_RE is 1 bit.
        let el = PovmElement::new(2, 0.5, vec![1.0, 0.0, 0.0]).unwrap();
        let r = re_bound_convex(&el, 1.0, 2).unwrap();
        assert!((r.bound - 1.0).abs() < 1e-6, "bound={}", r.bound);
    }

    #[test]
    fn below_threshold_is_exactly_zero() {
        let el = reference_element();
        for q in [0.0, 0.2, 0.4, 0.5] {
            let r = re_bound_convex(&el, x_family_m(q), 2).unwrap();
            assert_eq!(r.bound, 0.0, "q={q}");
        }
    }

    #[test]
    fn above_threshold_is_positive_and_dominated_by_actual() {
        let el = reference_element();
        for q in [0.6, 0.8, 1.0] {
            let r = re_bound_convex(&el, x_family_m(q), 2).unwrap();
            assert!(r.bound > 0.0, "q={q}");
            let rho = DensityMatrix::from_bloch(
                &BlochVector::new(2, vec![q, 0.0, 0.0]).unwrap(),
            )
            .unwrap();
            assert!(r.bound <= c_re(&rho) + OBJECTIVE_TOL, "q={q}");
        }
    }

    #[test]
    fn y_family_is_zero_for_all_q() {
        let el = reference_element();
        for k in 0..=10 {
            let q = k as f64 / 10.0;
            let m = 0.6 * (1.0 + 0.25 * q);
            let r = re_bound_convex(&el, m, 2).unwrap();
            assert_eq!(r.bound, 0.0, "q={q}");
        }
    }

    #[test]
    fn dual_never_exceeds_convex() {
        let el = reference_element();
        for q in [0.0, 0.3, 0.55, 0.75, 0.9, 1.0] {
            let m = x_family_m(q);
            let convex = re_bound_convex(&el, m, 2).unwrap().bound;
            let dual = re_bound_dual(&el, m, None, None).unwrap().bound;
            assert!(dual <= convex + 1e-6, "q={q}: dual={dual}, convex={convex}");
        }
    }

    #[test]
    fn dual_objective_at_zero_lambda_is_negative() {
        let el = reference_element();
        let obj = re_dual_objective(&el, 0.9, 0.0);
        let expect = -(-1.0f64).exp() / core::f64::consts::LN_2;
        assert!((obj - expect).abs() < 1e-12);
        // A single-point range clamps to zero.
        let r = re_bound_dual(&el, 0.9, Some((0.0, 0.0)), None).unwrap();
        assert_eq!(r.bound, 0.0);
    }

    #[test]
    fn infeasible_m_rejected() {
        let el = reference_element();
        // Spectrum of M is 0.6 (1 +- 0.6124); m = 0.99 is outside.
        assert!(matches!(
            re_bound_convex(&el, 0.99, 2),
            Err(Error::InfeasibleStatistics { .. })
        ));
    }

    #[test]
    fn collapsed_region_sweep_equals_single_convex_solve() {
        // nu_z = 1 at a = 0.4 collapses the region to the z axis element.
        let pk = PartialPovmKnowledge::new(0.4, 1.0).unwrap();
        let m = 0.55;
        let sweep = re_bound_partial(&pk, m, (4, 8)).unwrap();
        let el = PovmElement::new(2, 0.4, vec![0.0, 0.0, 1.0]).unwrap();
        let single = re_bound_convex(&el, m, 2).unwrap();
        assert!((sweep.bound - single.bound).abs() < 1e-12);
    }

    #[test]
    fn sweep_monotone_under_doubling() {
        let pk = partial_tomography_z(0.75, 0.45).unwrap();
        let m = 0.9;
        let coarse = re_bound_partial(&pk, m, (4, 8)).unwrap().bound;
        let mid = re_bound_partial(&pk, m, (8, 16)).unwrap().bound;
        let fine = re_bound_partial(&pk, m, (16, 32)).unwrap().bound;
        assert!(mid <= coarse + 1e-12);
        assert!(fine <= mid + 1e-12);
    }

    #[test]
    fn sweep_below_full_tomography_bound() {
        let pk = partial_tomography_z(0.75, 0.45).unwrap();
        let m = 0.9;
        let sweep = re_bound_partial(&pk, m, (16, 32)).unwrap().bound;
        let full = re_bound_convex(&reference_element(), m, 2).unwrap().bound;
        assert!(sweep <= full + 1e-9, "sweep={sweep}, full={full}");
    }

    #[test]
    fn qutrit_convex_bound_is_sound() {
        // Generating state: a qutrit with coherence; the bound must stay at
        // or below the generating state's C_RE.
        let mut nu = vec![0.0; 8];
        nu[0] = 0.35; // couples |0>,|1>
        nu[2] = 0.2;
        let el = PovmElement::new(3, 0.5, nu).unwrap();
        let mut coords = vec![0.0; 8];
        coords[0] = 0.9;
        coords[2] = 0.3;
        let rho = DensityMatrix::from_bloch(&BlochVector::new(3, coords).unwrap()).unwrap();
        let m = crate::scenario::exact_probability(&rho, &el).unwrap();
        let bound = re_bound_convex(&el, m, 3).unwrap().bound;
        let actual = c_re(&rho);
        assert!(bound <= actual + OBJECTIVE_TOL, "bound={bound}, actual={actual}");
        let dual = re_bound_dual(&el, m, None, None).unwrap().bound;
        assert!(dual <= bound + 1e-6, "dual={dual}, bound={bound}");
    }
}
