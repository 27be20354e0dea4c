//! Deterministic random sampling of states and measurements.
//!
//! Everything takes an explicit RNG so callers control reproducibility; the
//! crate-default generator is ChaCha8 seeded per use site.


use alloc::vec::Vec;

use num_complex::Complex64;
use rand_core::RngCore;

use crate::bloch::BlochVector;
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::povm::PovmElement;
use crate::state::DensityMatrix;

/// Uniform f64 in [0, 1) from the top 53 bits of a u64.
pub fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform f64 in (0, 1], safe as a logarithm argument.
pub fn uniform_open(rng: &mut impl RngCore) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal via Box-Muller.
pub fn gaussian(rng: &mut impl RngCore) -> f64 {
    let u1 = uniform_open(rng);
    let u2 = uniform(rng);
    math::sqrt(-2.0 * math::ln(u1)) * math::cos(2.0 * core::f64::consts::PI * u2)
}

/// Both Box-Muller outputs at once; saves a log/sqrt pair in hot sampling
/// loops.
pub fn gaussian_pair(rng: &mut impl RngCore) -> (f64, f64) {
    let u1 = uniform_open(rng);
    let u2 = uniform(rng);
    let radius = math::sqrt(-2.0 * math::ln(u1));
    let angle = 2.0 * core::f64::consts::PI * u2;
    (radius * math::cos(angle), radius * math::sin(angle))
}

/// Uniform direction on the unit sphere in R^n.
pub fn random_unit_vector(rng: &mut impl RngCore, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let norm = math::norm2(&v);
        if norm > 1e-12 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

/// Qubit state uniform over the Bloch ball (radius u^(1/3) for volume
/// uniformity).
pub fn random_qubit_state(rng: &mut impl RngCore) -> BlochVector {
    let dir = random_unit_vector(rng, 3);
    let radius = math::cbrt(uniform(rng));
    BlochVector::new(2, dir.iter().map(|x| radius * x).collect()).expect("inside the ball")
}

/// Hilbert-Schmidt-uniform density matrix: rho = G G^dag / Tr[G G^dag] with
/// G complex Gaussian.
pub fn random_density_matrix(rng: &mut impl RngCore, d: usize) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(d, |_, _| Complex64::new(gaussian(rng), gaussian(rng)));
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::new(gg.scale_re(1.0 / tr)).expect("GG^dag is PSD with unit trace")
}

/// Haar-like random pure state from a normalized complex Gaussian ket.
pub fn random_pure_state(rng: &mut impl RngCore, d: usize) -> DensityMatrix {
    let ket: Vec<Complex64> = (0..d)
        .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
        .collect();
    DensityMatrix::pure(&ket).expect("Gaussian ket is nonzero almost surely")
}

/// Random valid qubit POVM element: a in [a_lo, a_hi], direction uniform on
/// the sphere, magnitude a fraction `margin` of the admissible maximum.
pub fn random_qubit_element(
    rng: &mut impl RngCore,
    a_lo: f64,
    a_hi: f64,
    margin: f64,
) -> PovmElement {
    let a = a_lo + (a_hi - a_lo) * uniform(rng);
    let cap = 1.0f64.min((1.0 - a) / a);
    let dir = random_unit_vector(rng, 3);
    let len = margin * cap * uniform(rng);
    PovmElement::new(2, a, dir.iter().map(|x| len * x).collect()).expect("inside admissible region")
}

/// Random valid POVM element in dimension d: a random direction is scaled so
/// that both M and I - M stay PSD with a safety factor `margin` in (0, 1).
pub fn random_element(rng: &mut impl RngCore, d: usize, margin: f64) -> PovmElement {
    loop {
        let a = 0.1 + 0.8 * uniform(rng);
        let dir = random_unit_vector(rng, d * d - 1);
        // Spectrum of sum nu_i g_i for the unit direction.
        let h = crate::bloch::bloch_to_operator(d, &dir)
            .expect("length matches")
            .scale_re(d as f64);
        let ident = ComplexMatrix::identity(d);
        let base = &h - &ident; // sum nu_i g_i
        let (w, _) = crate::eig::herm_eig(&base).expect("Hermitian by construction");
        let lo = w[0];
        let hi = w[w.len() - 1];
        // Need 1 + s*lo >= 0 and a(1 + s*hi) <= 1.
        let mut cap = f64::INFINITY;
        if lo < 0.0 {
            cap = cap.min(-1.0 / lo);
        }
        if hi > 0.0 {
            cap = cap.min((1.0 - a) / (a * hi));
        }
        if !cap.is_finite() {
            continue;
        }
        let s = margin * cap * uniform(rng);
        if let Ok(el) = PovmElement::new(d, a, dir.iter().map(|x| s * x).collect()) {
            return el;
        }
    }
}
