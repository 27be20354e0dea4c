//! The prepare-and-measure session: exact click probabilities for the
//! unknown state and each trusted ancilla, plus optional finite-shot records.
//!
//! One fixed POVM per session models the i.i.d. assumption; there is no
//! adaptive behavior.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::error::Error;
use crate::povm::{PovmElement, TwoOutcomePovm};
use crate::sample::uniform;
use crate::state::DensityMatrix;
use crate::Result;

/// Reserved label for the unknown state in statistics records.
pub const UNKNOWN_LABEL: &str = "rho";

/// Ordered set of trusted ancilla states.
#[derive(Debug, Clone, PartialEq)]
pub struct AncillaSet {
    dim: usize,
    states: Vec<(String, DensityMatrix)>,
}

impl AncillaSet {
    pub fn new(states: Vec<(String, DensityMatrix)>) -> Result<Self> {
        let dim = match states.first() {
            Some((_, s)) => s.dim(),
            None => return Err(Error::Precondition("ancilla set cannot be empty")),
        };
        for (label, s) in &states {
            if s.dim() != dim {
                return Err(Error::ShapeMismatch {
                    expected: dim,
                    got: s.dim(),
                });
            }
            if label == UNKNOWN_LABEL {
                return Err(Error::Precondition("label \"rho\" is reserved"));
            }
        }
        Ok(Self { dim, states })
    }

    /// The canonical qubit set {|0>, |1>, |+>, |+i>}.
    pub fn qubit_default() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let zero = Complex64::new(0.0, 0.0);
        let states = alloc::vec![
            ("0".to_string(), DensityMatrix::basis_state(2, 0)),
            ("1".to_string(), DensityMatrix::basis_state(2, 1)),
            ("+".to_string(), DensityMatrix::pure(&[one, one]).unwrap()),
            ("+i".to_string(), DensityMatrix::pure(&[one, i]).unwrap()),
        ];
        let _ = zero;
        Self::new(states).expect("well-formed canonical set")
    }

    /// An informationally complete set of d^2 pure states: the basis states
    /// |k>, plus (|j> + |i>)/sqrt(2) and (|j> + i|i>)/sqrt(2) for each pair
    /// j < i. For d = 2 this is exactly the canonical qubit set.
    pub fn complete_basis(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension { dim: d });
        }
        if d == 2 {
            return Ok(Self::qubit_default());
        }
        let one = Complex64::new(1.0, 0.0);
        let imag = Complex64::new(0.0, 1.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut states = Vec::new();
        for k in 0..d {
            states.push((format!("{k}"), DensityMatrix::basis_state(d, k)));
        }
        for j in 0..d {
            for i in (j + 1)..d {
                let mut ket = alloc::vec![zero; d];
                ket[j] = one;
                ket[i] = one;
                states.push((format!("+{j}{i}"), DensityMatrix::pure(&ket).unwrap()));
                let mut ket = alloc::vec![zero; d];
                ket[j] = one;
                ket[i] = imag;
                states.push((format!("+i{j}{i}"), DensityMatrix::pure(&ket).unwrap()));
            }
        }
        Self::new(states)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[(String, DensityMatrix)] {
        &self.states
    }

    pub fn state_by_label(&self, label: &str) -> Option<&DensityMatrix> {
        self.states
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, s)| s)
    }
}

/// Observed click probabilities for one session, with optional raw counts.
///
/// When counts are present every probability equals count / shots exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementStatistics {
    /// Click probability for the unknown state.
    pub m: f64,
    /// Click probability per ancilla label, in ancilla order.
    pub n: Vec<(String, f64)>,
    pub shots: Option<u64>,
    pub m_count: Option<u64>,
    pub n_counts: Option<Vec<(String, u64)>>,
    pub seed: Option<u64>,
}

impl MeasurementStatistics {
    pub fn probability_for(&self, label: &str) -> Option<f64> {
        if label == UNKNOWN_LABEL {
            return Some(self.m);
        }
        self.n.iter().find(|(l, _)| l == label).map(|(_, p)| *p)
    }
}

/// Click probability Tr[rho M] of a POVM element on a state.
pub fn exact_probability(state: &DensityMatrix, element: &PovmElement) -> Result<f64> {
    if state.dim() != element.dim() {
        return Err(Error::ShapeMismatch {
            expected: state.dim(),
            got: element.dim(),
        });
    }
    let p = state.matrix().trace_product(&element.to_matrix()).re;
    // Round-off guard only; genuine physics keeps p in [0, 1].
    Ok(p.clamp(0.0, 1.0))
}

/// Run one session: exact probabilities when `shots` is absent, independent
/// Bernoulli sampling per preparation otherwise.
///
/// Sampling uses one ChaCha stream per preparation (stream 0 is the unknown
/// state), so results are reproducible bit-for-bit for a fixed seed and
/// per-preparation draws stay independent.
pub fn run_session(
    state: &DensityMatrix,
    povm: &TwoOutcomePovm,
    ancillas: &AncillaSet,
    shots: Option<u64>,
    seed: Option<u64>,
) -> Result<MeasurementStatistics> {
    if state.dim() != povm.dim() || ancillas.dim() != povm.dim() {
        return Err(Error::ShapeMismatch {
            expected: povm.dim(),
            got: state.dim().max(ancillas.dim()),
        });
    }
    if let Some(s) = shots {
        if s == 0 {
            return Err(Error::Precondition("shots must be >= 1 when present"));
        }
    }
    let element = povm.first();
    let p_unknown = exact_probability(state, element)?;
    let p_ancillas: Vec<(String, f64)> = ancillas
        .states()
        .iter()
        .map(|(label, tau)| Ok((label.clone(), exact_probability(tau, element)?)))
        .collect::<Result<_>>()?;

    match shots {
        None => Ok(MeasurementStatistics {
            m: p_unknown,
            n: p_ancillas,
            shots: None,
            m_count: None,
            n_counts: None,
            seed,
        }),
        Some(shots) => {
            let seed_value = seed.unwrap_or(0);
            let m_count = bernoulli_count(seed_value, 0, p_unknown, shots);
            let mut n = Vec::with_capacity(p_ancillas.len());
            let mut n_counts = Vec::with_capacity(p_ancillas.len());
            for (idx, (label, p)) in p_ancillas.iter().enumerate() {
                let count = bernoulli_count(seed_value, (idx + 1) as u64, *p, shots);
                n.push((label.clone(), count as f64 / shots as f64));
                n_counts.push((label.clone(), count));
            }
            Ok(MeasurementStatistics {
                m: m_count as f64 / shots as f64,
                n,
                shots: Some(shots),
                m_count: Some(m_count),
                n_counts: Some(n_counts),
                seed: Some(seed_value),
            })
        }
    }
}

fn bernoulli_count(seed: u64, stream: u64, p: f64, shots: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut count = 0u64;
    for _ in 0..shots {
        if uniform(&mut rng) < p {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::BlochVector;
    use alloc::vec;

    fn reference_povm() -> TwoOutcomePovm {
        TwoOutcomePovm::new(PovmElement::new(2, 0.6, vec![0.5, 0.25, 0.25]).unwrap())
    }

    #[test]
    fn exact_probabilities_for_reference_element() {
        let el = PovmElement::new(2, 0.6, vec![0.5, 0.25, 0.25]).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((exact_probability(&mixed, &el).unwrap() - 0.6).abs() < 1e-12);
        let plus =
            DensityMatrix::pure(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        assert!((exact_probability(&plus, &el).unwrap() - 0.9).abs() < 1e-12);
        let zero = DensityMatrix::basis_state(2, 0);
        assert!((exact_probability(&zero, &el).unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn complementary_probabilities_sum_to_one() {
        let povm = reference_povm();
        let r = BlochVector::new(2, vec![0.2, -0.5, 0.3]).unwrap();
        let rho = DensityMatrix::from_bloch(&r).unwrap();
        let p1 = exact_probability(&rho, povm.first()).unwrap();
        let p2 = exact_probability(&rho, &povm.second()).unwrap();
        assert!((p1 + p2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_session_matches_forward_formulas() {
        let povm = reference_povm();
        let plus =
            DensityMatrix::pure(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        let stats = run_session(&plus, &povm, &AncillaSet::qubit_default(), None, None).unwrap();
        let expected = [0.75, 0.45, 0.90, 0.75];
        for ((_, p), e) in stats.n.iter().zip(expected) {
            assert!((p - e).abs() < 1e-12);
        }
        assert!((stats.m - 0.9).abs() < 1e-12);
        assert!(stats.n_counts.is_none());
    }

    #[test]
    fn sampled_sessions_are_reproducible_and_exact_ratios() {
        let povm = reference_povm();
        let rho = DensityMatrix::maximally_mixed(2);
        let ancillas = AncillaSet::qubit_default();
        let a = run_session(&rho, &povm, &ancillas, Some(10_000), Some(42)).unwrap();
        let b = run_session(&rho, &povm, &ancillas, Some(10_000), Some(42)).unwrap();
        assert_eq!(a, b);
        let counts = a.n_counts.as_ref().unwrap();
        for ((_, p), (_, c)) in a.n.iter().zip(counts) {
            assert_eq!(*p, *c as f64 / 10_000.0);
        }
        let c = run_session(&rho, &povm, &ancillas, Some(10_000), Some(43)).unwrap();
        assert_ne!(a.m_count, c.m_count);
    }

    #[test]
    fn single_shot_counts_are_binary() {
        let povm = reference_povm();
        let rho = DensityMatrix::maximally_mixed(2);
        let stats =
            run_session(&rho, &povm, &AncillaSet::qubit_default(), Some(1), Some(5)).unwrap();
        assert!(stats.m_count.unwrap() <= 1);
        for (_, c) in stats.n_counts.unwrap() {
            assert!(c <= 1);
        }
    }

    #[test]
    fn sampled_statistics_concentrate() {
        let povm = reference_povm();
        let plus =
            DensityMatrix::pure(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        let shots = 1_000_000u64;
        let stats = run_session(&plus, &povm, &AncillaSet::qubit_default(), Some(shots), Some(3))
            .unwrap();
        let exact = [0.75, 0.45, 0.90, 0.75];
        for ((_, p), e) in stats.n.iter().zip(exact) {
            let sigma = (e * (1.0 - e) / shots as f64).sqrt();
            assert!((p - e).abs() <= 3.0 * sigma, "p={p}, e={e}");
        }
    }

    #[test]
    fn reserved_label_rejected() {
        let states = vec![("rho".to_string(), DensityMatrix::basis_state(2, 0))];
        assert!(AncillaSet::new(states).is_err());
    }

    #[test]
    fn complete_basis_has_d_squared_states() {
        for d in [2usize, 3, 4] {
            let set = AncillaSet::complete_basis(d).unwrap();
            assert_eq!(set.len(), d * d);
        }
    }
}
