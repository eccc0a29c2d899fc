//! Closed-form spin-bath results checked against brute-force simulation:
//! build the dense `ρ0`, evolve it with the dense Hamiltonian and trace out
//! the environment.

use decohere_core::gtfd::{DenseDynamics, PureDiagonalDynamics, ReducedDynamics};
use decohere_core::qcore::{evolve, tensor_product, DensityMatrix, Operator};
use decohere_core::spinbath::{
    coherence_factor, initial_pure, initial_state, AnalyticSpinBath, ProductState, SpinBathModel,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_setup(n: usize, seed: u64) -> (SpinBathModel<f64>, ProductState<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model = SpinBathModel::random(n, -1.0, 1.0, rng.random()).unwrap();
    let p = ProductState::haar_pair(&mut rng);
    let ps = ProductState::random_bath(p, n, rng.random()).unwrap();
    (model, ps)
}

/// Dense Hamiltonian assembled from Kronecker products, independent of
/// `SpinBathModel::energies`.
fn kron_hamiltonian(g: &[f64]) -> Operator<f64> {
    let n = g.len() + 1;
    let i2 = Operator::<f64>::identity(decohere_core::qcore::DimSignature::qubits(1).unwrap());
    let mut h: Option<Operator<f64>> = None;
    for (k, &gk) in g.iter().enumerate() {
        let mut factors = vec![i2.clone(); n];
        factors[0] = Operator::pauli_z();
        factors[k + 1] = Operator::pauli_z();
        let term = tensor_product(&factors).unwrap().scale_re(gk / 2.0);
        h = Some(match h {
            None => term,
            Some(acc) => acc.add(&term).unwrap(),
        });
    }
    h.unwrap()
}

#[test]
fn hamiltonian_matches_kronecker_construction() {
    for n in 1..=5 {
        let (model, _) = random_setup(n, 40 + n as u64);
        let h = model.hamiltonian_operator().unwrap();
        assert!(h.max_abs_diff(&kron_hamiltonian(model.couplings())) < 1e-15);
    }
}

#[test]
fn coherence_factor_matches_dense_evolution() {
    for n in 1..=7 {
        for draw in 0..3 {
            let (model, ps) = random_setup(n, 100 * n as u64 + draw);
            let rho0 = initial_state(&model, &ps).unwrap();
            let h = kron_hamiltonian(model.couplings());
            let [a, b] = ps.p();
            let mut rng = ChaCha8Rng::seed_from_u64(draw);
            for _ in 0..10 {
                let t: f64 = rng.random_range(0.0..50.0);
                let rho_p = evolve(&rho0, &h, t).unwrap().partial_trace(&[0]).unwrap();
                let analytic = a * b.conj() * coherence_factor(&model, &ps, t).unwrap();
                assert!(
                    (rho_p.get(0, 1) - analytic).norm() < 1e-10,
                    "n={n} t={t}: dense {} vs analytic {}",
                    rho_p.get(0, 1),
                    analytic
                );
                // diagonal populations are conserved
                assert!((rho_p.get(0, 0).re - a.norm_sqr()).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn analytic_reduced_states_match_dense_for_every_partition() {
    let n = 4;
    let (model, ps) = random_setup(n, 7);
    let dense = DenseDynamics::new(initial_state(&model, &ps).unwrap(), &kron_hamiltonian(model.couplings())).unwrap();
    let analytic = AnalyticSpinBath::new(model.clone(), ps.clone()).unwrap();
    let pure = PureDiagonalDynamics::new(initial_pure(&model, &ps).unwrap(), model.diagonal_hamiltonian()).unwrap();
    let systems: Vec<Vec<usize>> = vec![
        vec![0],
        vec![2],
        vec![1, 2],
        vec![0, 3],
        vec![1, 3, 4],
        vec![0, 1, 2, 3, 4],
    ];
    for t in [0.0, 0.7, 3.3, 17.9] {
        for s in &systems {
            let d = dense.reduced_state(t, s).unwrap();
            let a = analytic.reduced_state(t, s).unwrap();
            let p = pure.reduced_state(t, s).unwrap();
            assert!(d.op().max_abs_diff(a.op()) < 1e-12, "analytic, system {s:?} t={t}");
            assert!(d.op().max_abs_diff(p.op()) < 1e-12, "state vector, system {s:?} t={t}");
        }
    }
}

#[test]
fn bath_spin_coherence_is_periodic() {
    for n in [4usize, 10, 20] {
        let model = SpinBathModel::<f64>::random(n, 0.1, 1.0, 5).unwrap();
        let ps = ProductState::random_bath(ProductState::plus(), n, 6).unwrap();
        let analytic = AnalyticSpinBath::new(model.clone(), ps).unwrap();
        for j in [1, n / 2, n] {
            let period = 2.0 * std::f64::consts::PI / model.couplings()[j - 1];
            let start = analytic.reduced_state(0.0, &[j]).unwrap().get(0, 1).norm();
            let back = analytic.reduced_state(period, &[j]).unwrap().get(0, 1).norm();
            assert!((start - back).abs() < 1e-6, "n={n} j={j}");
        }
    }
}

#[test]
fn coherence_factor_is_invariant_under_bath_relabelling() {
    let (model, ps) = random_setup(9, 77);
    let perm = [4, 0, 8, 2, 6, 1, 7, 3, 5];
    let (pm, pps) = (model.permuted(&perm), ps.permuted(&perm));
    for k in 0..50 {
        let t = 0.91 * k as f64;
        assert_eq!(
            coherence_factor(&model, &ps, t).unwrap(),
            coherence_factor(&pm, &pps, t).unwrap()
        );
    }
}

#[test]
fn large_bath_coherence_decays_on_average() {
    // N = 20, g ~ U(0.1, 1) seeded; mean |r(t)| over t in [10, 100].
    let model = SpinBathModel::<f64>::random(20, 0.1, 1.0, 2024).unwrap();
    let ps = ProductState::uniform(ProductState::plus(), ProductState::plus(), 20).unwrap();
    let samples = 2000;
    let mean: f64 = (0..samples)
        .map(|k| 10.0 + 90.0 * k as f64 / (samples - 1) as f64)
        .map(|t| coherence_factor(&model, &ps, t).unwrap().norm())
        .sum::<f64>()
        / samples as f64;
    assert!(mean < 0.05, "mean |r| = {mean}");
}

#[test]
fn pure_product_state_is_pure() {
    let (model, ps) = random_setup(5, 3);
    let rho = initial_state(&model, &ps).unwrap();
    assert!((rho.purity() - 1.0).abs() < 1e-12);
    assert!((rho.trace() - 1.0).abs() < 1e-12);
    let v = DensityMatrix::new(rho.into_op());
    assert!(v.is_ok());
    let _: Complex64 = ps.p()[0];
}
