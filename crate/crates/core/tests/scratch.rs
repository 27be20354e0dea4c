// Temporary dev probe; deleted before delivery.
use cohcert_core::*;

#[test]
#[ignore]
fn thresholds() {
    let el = PovmElement::new(2, 0.6, vec![0.5, 0.25, 0.25]).unwrap();
    let mut first_convex = None;
    let mut first_dual = None;
    for k in 0..=100 {
        let q = k as f64 / 100.0;
        let m = 0.6 * (1.0 + 0.5 * q);
        let c = re_bound_convex(&el, m, 2).unwrap().bound;
        let d = re_bound_dual(&el, m, None, None).unwrap().bound;
        if c > 0.0 && first_convex.is_none() {
            first_convex = Some(q);
        }
        if d > 0.0 && first_dual.is_none() {
            first_dual = Some(q);
        }
        if k % 10 == 0 {
            let rho = DensityMatrix::from_bloch(&BlochVector::new(2, vec![q, 0.0, 0.0]).unwrap())
                .unwrap();
            println!(
                "q={q:.2} m={m:.4} convex={c:.6} dual={d:.6} actual={:.6}",
                c_re(&rho)
            );
        }
    }
    println!("first positive: convex at q={first_convex:?}, dual at q={first_dual:?}");
}

#[test]
#[ignore]
fn dual_lambda_profile() {
    let el = PovmElement::new(2, 0.6, vec![0.5, 0.25, 0.25]).unwrap();
    for q in [0.6, 0.7, 0.8, 1.0] {
        let m = 0.6 * (1.0 + 0.5 * q);
        let r = re_bound_dual(&el, m, None, None).unwrap();
        println!(
            "q={q} m={m:.3} bound={:.6} lambda*={:?} iters={}",
            r.bound, r.lambda_star, r.iterations
        );
    }
}

#[test]
#[ignore]
fn oracle_precision() {
    let el = PovmElement::new(2, 0.6, vec![0.5, 0.25, 0.25]).unwrap();
    let closed = l1_lower_bound_qubit(0.6, &[0.5, 0.25, 0.25], 0.9)
        .unwrap()
        .bound;
    for step in [2e-3, 1e-3] {
        let params = OracleParams {
            grid_step: step,
            ..OracleParams::default()
        };
        let r = oracle_min_coherence(CoherenceMeasure::L1Norm, &el, 0.9, &params).unwrap();
        println!(
            "step={step:.0e}: oracle={:.9} closed={closed:.9} diff={:.2e} samples={}",
            r.minimum,
            (r.minimum - closed).abs(),
            r.samples
        );
    }
}

#[test]
#[ignore]
fn qutrit_instances() {
    use rand::prelude::*;
    let mut rng = rand::rngs::StdRng::seed_from_u64(1);
    let mut positive = 0;
    let mut feasible = 0;
    for i in 0..30 {
        let mut chacha = rand_chacha_shim(i);
        let el = sample::random_element(&mut chacha, 3, 0.9);
        let w: f64 = rng.gen_range(0.0..0.6);
        let hs = sample::random_density_matrix(&mut chacha, 3);
        // Max-eigenvector state of the element.
        let (_, v) = herm_eig(&el.to_matrix()).unwrap();
        let ket: Vec<num_complex::Complex64> = (0..3).map(|r| v[(r, 2)]).collect();
        let top = DensityMatrix::pure(&ket).unwrap();
        let rho = hs.mix(&top, 1.0 - w).unwrap();
        let m = exact_probability(&rho, &el).unwrap();
        match l1_lower_bound_qudit(el.scale(), el.direction(), m, 3) {
            Ok(b) => {
                feasible += 1;
                if b > 0.0 {
                    positive += 1;
                }
                if i < 8 {
                    let actual = c_l1(&rho);
                    println!("i={i} m={m:.4} bound={b:.5} actual={actual:.5}");
                }
            }
            Err(e) => println!("i={i} error {e}"),
        }
    }
    println!("feasible={feasible}/30 positive={positive}/30");
}

fn rand_chacha_shim(seed: u64) -> impl rand_core::RngCore {
    use rand_core::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

#[test]
#[ignore]
fn qutrit_oracle_rate() {
    use rand_core::SeedableRng;
    for (i, mshift) in [(0u64, 0.0f64), (1, 0.15), (2, 0.3)] {
        let mut chacha = rand_chacha::ChaCha8Rng::seed_from_u64(i);
        let el = sample::random_element(&mut chacha, 3, 0.9);
        let rho = sample::random_density_matrix(&mut chacha, 3);
        let (w, v) = herm_eig(&el.to_matrix()).unwrap();
        let ket: Vec<num_complex::Complex64> = (0..3).map(|r| v[(r, 2)]).collect();
        let top = DensityMatrix::pure(&ket).unwrap();
        let rho = rho.mix(&top, 1.0 - mshift).unwrap();
        let m = exact_probability(&rho, &el).unwrap();
        let start = std::time::Instant::now();
        let params = OracleParams { min_accepted: 100_000, ..OracleParams::default() };
        match oracle_min_coherence(CoherenceMeasure::L1Norm, &el, m, &params) {
            Ok(r) => println!(
                "i={i} shift={mshift} m={m:.4} spread=({:.3},{:.3}) min={:.5} accepted={} in {:?}",
                w[0], w[2], r.minimum, r.samples, start.elapsed()
            ),
            Err(e) => println!("i={i} ERR {e} after {:?}", start.elapsed()),
        }
    }
}
