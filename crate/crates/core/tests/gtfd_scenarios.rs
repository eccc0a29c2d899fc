use decohere_core::gtfd::{
    analyze, coarse_grained_state, detect_equilibrium, expectation_series, relevant_space, time_grid,
    DenseDynamics, EquilibriumParams, PureDiagonalDynamics, RelevantSpace, VerdictStatus,
};
use decohere_core::qcore::random::random_density;
use decohere_core::qcore::{expectation, DimSignature, Operator};
use decohere_core::spinbath::{
    coherence_factor, initial_pure, initial_state, make_partition, AnalyticSpinBath, Partition, PartitionSpec,
    ProductState, SpinBathModel,
};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn plus_bath(n: usize) -> ProductState<f64> {
    ProductState::uniform(ProductState::plus(), ProductState::plus(), n).unwrap()
}

fn dec1_status(n: usize, seed: u64) -> VerdictStatus {
    let model = SpinBathModel::<f64>::random(n, 0.1, 1.0, seed).unwrap();
    let part = make_partition(&model, &PartitionSpec::Dec1).unwrap();
    let space = relevant_space(&part, &model.sig()).unwrap();
    let dynamics = AnalyticSpinBath::new(model, plus_bath(n)).unwrap();
    let times = time_grid(0.0, 100.0, 401).unwrap();
    analyze(&dynamics, &space, &times, &EquilibriumParams::default())
        .unwrap()
        .verdict
        .status
}

#[test]
fn large_bath_decoheres_small_bath_does_not() {
    assert_eq!(dec1_status(20, 7), VerdictStatus::Decoheres);
    assert_ne!(dec1_status(2, 7), VerdictStatus::Decoheres);
}

#[test]
fn verdict_monotone_in_bath_size() {
    for seed in 0..10 {
        for n in [10, 20] {
            if dec1_status(n, seed) == VerdictStatus::Decoheres {
                assert_eq!(dec1_status(2 * n, seed), VerdictStatus::Decoheres, "seed {seed} n {n}");
            }
        }
    }
}

#[test]
fn bath_spin_never_decoheres() {
    for n in [4, 10, 20] {
        let model = SpinBathModel::<f64>::random(n, 0.1, 1.0, 11).unwrap();
        let part = make_partition(&model, &PartitionSpec::Dec2(1)).unwrap();
        let space = relevant_space(&part, &model.sig()).unwrap();
        let dynamics = AnalyticSpinBath::new(model, plus_bath(n)).unwrap();
        let times = time_grid(0.0, 100.0, 401).unwrap();
        let a = analyze(&dynamics, &space, &times, &EquilibriumParams::default()).unwrap();
        assert_eq!(a.verdict.status, VerdictStatus::NoDecoherence, "n = {n}");
        assert!(a.pointer.is_none());
    }
}

#[test]
fn verdict_ignores_column_order() {
    let model = SpinBathModel::<f64>::random(6, 0.1, 1.0, 3).unwrap();
    let part = Partition::new(&[0, 1], 7).unwrap();
    let space = relevant_space(&part, &model.sig()).unwrap();
    let dynamics = AnalyticSpinBath::new(model, plus_bath(6)).unwrap();
    let times = time_grid(0.0, 40.0, 101).unwrap();
    let series = expectation_series(&dynamics, &space, &times).unwrap();
    let params = EquilibriumParams::default();
    let v = detect_equilibrium(&series, &params).unwrap();
    let perm: Vec<usize> = (0..series.labels().len()).rev().collect();
    let w = detect_equilibrium(&series.permuted(&perm), &params).unwrap();
    assert_eq!(v.status, w.status);
    assert_eq!(v.residual, w.residual);
    let mut a = v.trailing_spreads.clone();
    let mut b = w.trailing_spreads.clone();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    assert_eq!(a, b);
}

#[test]
fn sigma_x_tracks_coherence_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let p = ProductState::haar_pair(&mut rng);
    let bath: Vec<_> = (0..8).map(|_| ProductState::haar_pair(&mut rng)).collect();
    let state = ProductState::new(p, bath).unwrap();
    let model = SpinBathModel::<f64>::random(8, 0.1, 1.0, 8).unwrap();
    let part = make_partition(&model, &PartitionSpec::Dec1).unwrap();
    let space = RelevantSpace::from_pauli_labels(&part, &model.sig(), &["X".into()]).unwrap();
    let rho0 = initial_state(&model, &state).unwrap();
    let dense = DenseDynamics::new(rho0, &model.hamiltonian_operator().unwrap()).unwrap();
    let times = time_grid(0.0, 30.0, 61).unwrap();
    let series = expectation_series(&dense, &space, &times).unwrap();
    let [a, b] = state.p();
    for (k, &t) in times.iter().enumerate() {
        let r = coherence_factor(&model, &state, t).unwrap();
        let expect = 2.0 * (a * b.conj() * r).re;
        assert!((series.values()[0][k] - expect).abs() < 1e-10);
    }
}

#[test]
fn identity_and_stationary_series_are_constant() {
    let model = SpinBathModel::<f64>::new(vec![0.3, 0.7, 1.0]).unwrap();
    let part = Partition::new(&[0, 2], 4).unwrap();
    let space = relevant_space(&part, &model.sig()).unwrap();
    // Diagonal initial state commutes with a diagonal Hamiltonian.
    let sig = model.sig();
    let diag: Vec<f64> = (0..16).map(|i| (i as f64 + 1.0) / 136.0).collect();
    let rho0 = decohere_core::qcore::DensityMatrix::new(Operator::from_real_diagonal(&diag, sig).unwrap()).unwrap();
    let dense = DenseDynamics::new(rho0, &model.hamiltonian_operator().unwrap()).unwrap();
    let times = time_grid(0.0, 20.0, 32).unwrap();
    let series = expectation_series(&dense, &space, &times).unwrap();
    assert!(series.column("II").unwrap().iter().all(|&v| (v - 1.0).abs() < 1e-12));
    for col in series.values() {
        assert!(col.iter().all(|&v| (v - col[0]).abs() < 1e-12));
    }
}

#[test]
fn closed_and_reduced_expectations_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let model = SpinBathModel::<f64>::random(4, 0.1, 1.0, 21).unwrap();
    let sig = model.sig();
    let rho0 = random_density::<f64, _>(&mut rng, sig.clone());
    let h = model.hamiltonian_operator().unwrap();
    let dense = DenseDynamics::new(rho0, &h).unwrap();
    for system in [vec![0], vec![1, 3], vec![0, 2, 4]] {
        let part = Partition::new(&system, 5).unwrap();
        let space = relevant_space(&part, &sig).unwrap();
        let times = [0.0, 1.3, 7.9];
        let series = expectation_series(&dense, &space, &times).unwrap();
        for (k, &t) in times.iter().enumerate() {
            let rho = dense.state_at(t).unwrap();
            let rho_g = coarse_grained_state(&rho, &part).unwrap();
            for j in 0..space.len() {
                let g = space.embedded(j).unwrap();
                let full = expectation(&rho, &g).unwrap();
                assert!((full.re - series.values()[j][k]).abs() < 1e-12);
                assert!((expectation(&rho_g, &g).unwrap() - full).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn coarse_graining_fixed_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let sig = DimSignature::qubits(3).unwrap();
    let rho = random_density::<f64, _>(&mut rng, sig.clone());
    let part = Partition::new(&[1], 3).unwrap();
    let g = coarse_grained_state(&rho, &part).unwrap();
    assert!((g.trace() - 1.0).abs() < 1e-12);
    let gg = coarse_grained_state(&g, &part).unwrap();
    assert!(gg.op().max_abs_diff(g.op()) < 1e-15);
}

#[test]
fn pointer_basis_is_the_coupling_basis() {
    let (a, b) = ((std::f64::consts::PI / 8.0).cos(), (std::f64::consts::PI / 8.0).sin());
    let n = 20;
    let model = SpinBathModel::<f64>::random(n, 0.1, 1.0, 5).unwrap();
    let state = ProductState::uniform([c(a, 0.0), c(b, 0.0)], ProductState::plus(), n).unwrap();
    let part = make_partition(&model, &PartitionSpec::Dec1).unwrap();
    let space = relevant_space(&part, &model.sig()).unwrap();
    let dynamics = AnalyticSpinBath::new(model, state).unwrap();
    let times = time_grid(0.0, 100.0, 401).unwrap();
    let out = analyze(&dynamics, &space, &times, &EquilibriumParams::default()).unwrap();
    assert!(out.verdict.decoheres());
    let pb = out.pointer.unwrap();
    assert!(!pb.degenerate);
    assert_eq!(pb.decomposition.len(), 2);
    let groups = pb.decomposition.groups();
    let sum = groups[0].projector.add(&groups[1].projector).unwrap();
    assert!(sum.max_abs_diff(&Operator::identity(part_sig())) < 1e-12);
    // Larger weight sits on |0>: the top projector should be |0><0|.
    let top = &groups[1].projector;
    let rotation = (1.0 - top.get(0, 0).re).abs().max(top.get(0, 1).norm());
    assert!(rotation < 1e-2, "rotation {rotation}");
    assert!((groups[1].eigenvalue - a * a).abs() < 1e-2);
}

fn part_sig() -> DimSignature {
    DimSignature::qubits(1).unwrap()
}

#[test]
fn balanced_central_spin_gives_degenerate_pointer_basis() {
    let n = 20;
    let model = SpinBathModel::<f64>::random(n, 0.1, 1.0, 5).unwrap();
    let part = make_partition(&model, &PartitionSpec::Dec1).unwrap();
    let space = relevant_space(&part, &model.sig()).unwrap();
    let dynamics = AnalyticSpinBath::new(model, plus_bath(n)).unwrap();
    let times = time_grid(0.0, 100.0, 401).unwrap();
    let out = analyze(&dynamics, &space, &times, &EquilibriumParams::default()).unwrap();
    assert!(out.pointer.unwrap().degenerate);
}

#[test]
fn collective_observables_decohere_only_for_many_system_spins() {
    let n = 12;
    let model = SpinBathModel::<f64>::random(n, 0.1, 1.0, 2024).unwrap();
    let state = ProductState::random_bath(ProductState::plus(), n, 2024).unwrap();
    let psi = initial_pure(&model, &state).unwrap();
    let dynamics = PureDiagonalDynamics::new(psi, model.diagonal_hamiltonian()).unwrap();
    let times = time_grid(0.0, 100.0, 401).unwrap();
    let mut statuses = Vec::new();
    for p in [10, 1] {
        let part = make_partition(&model, &PartitionSpec::Dec3(p)).unwrap();
        let space = RelevantSpace::collective(&part, &model.sig()).unwrap();
        statuses.push(analyze(&dynamics, &space, &times, &EquilibriumParams::default()).unwrap().verdict.status);
    }
    assert_eq!(statuses[0], VerdictStatus::Decoheres);
    assert_ne!(statuses[1], VerdictStatus::Decoheres);
}

#[test]
fn state_vector_route_matches_dense_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let p = ProductState::haar_pair(&mut rng);
    let bath: Vec<_> = (0..4).map(|_| ProductState::haar_pair(&mut rng)).collect();
    let state = ProductState::new(p, bath).unwrap();
    let model = SpinBathModel::<f64>::random(4, 0.1, 1.0, 13).unwrap();
    let dense = DenseDynamics::new(initial_state(&model, &state).unwrap(), &model.hamiltonian_operator().unwrap()).unwrap();
    let pure = PureDiagonalDynamics::new(initial_pure(&model, &state).unwrap(), model.diagonal_hamiltonian()).unwrap();
    let times = time_grid(0.0, 15.0, 20).unwrap();
    for system in [vec![0, 3], vec![4, 1]] {
        let part = Partition::new(&system, 5).unwrap();
        for space in [relevant_space(&part, &model.sig()).unwrap(), RelevantSpace::collective(&part, &model.sig()).unwrap()] {
            let a = expectation_series(&dense, &space, &times).unwrap();
            let b = expectation_series(&pure, &space, &times).unwrap();
            for (x, y) in a.values().iter().flatten().zip(b.values().iter().flatten()) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }
}
