mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

use common::*;
use nalgebra::DVector;
use num_complex::Complex64 as C64;
use qwalk::entanglement::{entropy_sweep, final_entropy, reduced_coin_density, SweepGrid};
use qwalk::spectral::{effective_hamiltonian, eigensystem, momentum_unitary};
use qwalk::walk::{evolve, operator_matrix};
use qwalk::zitter::{expectation_series, CoinObservable, EnergySuperposition};
use qwalk::{
    make_initial_state, CoinParams, DcaParams, InitialCondition, LatticeSpec, Spinor, SpinorState, SplitStepParams,
    UnitsConfig, Walk,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(lattice: LatticeSpec, rng: &mut ChaCha8Rng) -> SpinorState {
    let amps: Vec<Spinor> = (0..lattice.sites())
        .map(|_| {
            Spinor::new(
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
        })
        .collect();
    let n = amps.iter().map(|s| s.norm_squared()).sum::<f64>().sqrt();
    SpinorState::from_amplitudes(lattice, amps.into_iter().map(|s| s / C64::from(n)).collect()).unwrap()
}

fn random_coin(rng: &mut ChaCha8Rng) -> CoinParams {
    CoinParams::new(
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
    )
}

fn probe_states() -> [InitialCondition; 3] {
    [
        InitialCondition::new(FRAC_PI_2, FRAC_PI_2, 0).unwrap(),
        InitialCondition::new(FRAC_PI_2, 0.0, 0).unwrap(),
        InitialCondition::new(0.0, 0.0, 0).unwrap(),
    ]
}

#[test]
fn operator_matrices_match_kronecker_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for lattice in [LatticeSpec::truncated(6).unwrap(), LatticeSpec::periodic(6).unwrap()] {
        for _ in 0..5 {
            let (c1, c2) = (random_coin(&mut rng), random_coin(&mut rng));
            let t = rng.gen_range(0.0..2.0 * PI);
            let cases = [
                (Walk::Conventional(c1), dense_conventional(lattice, &c1)),
                (Walk::SplitStep(SplitStepParams::new(c1, c2)), dense_split(lattice, &c1, &c2)),
                (Walk::Dca(DcaParams::from_angle(t)), dense_dca(lattice, t.cos(), t.sin())),
            ];
            for (walk, dense) in cases {
                assert!(max_abs_diff(&operator_matrix(&walk, lattice), &dense) < 1e-12, "{walk:?}");
            }
        }
    }
}

#[test]
fn stepping_matches_dense_product_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lattice = LatticeSpec::periodic(8).unwrap();
    for _ in 0..5 {
        let (c1, c2) = (random_coin(&mut rng), random_coin(&mut rng));
        let state = random_state(lattice, &mut rng);
        let t = rng.gen_range(0.0..2.0 * PI);
        let cases = [
            (Walk::Conventional(c1), dense_conventional(lattice, &c1)),
            (Walk::SplitStep(SplitStepParams::new(c1, c2)), dense_split(lattice, &c1, &c2)),
            (Walk::Dca(DcaParams::from_angle(t)), dense_dca(lattice, t.cos(), t.sin())),
        ];
        for (walk, dense) in cases {
            let fast = to_vector(&walk.step(&state).unwrap());
            let reference = &dense * to_vector(&state);
            let diff = (fast - reference).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(diff < 1e-12, "{walk:?}: {diff}");
        }
    }
}

#[test]
fn hundred_conventional_steps_match_dense_powers() {
    let lattice = LatticeSpec::truncated(100).unwrap();
    let coin = CoinParams::rotation(FRAC_PI_4);
    let init = make_initial_state(&InitialCondition::new(FRAC_PI_2, FRAC_PI_2, 0).unwrap(), lattice).unwrap();
    let u = dense_conventional(lattice, &coin);
    let mut v: DVector<C64> = to_vector(&init);
    for _ in 0..100 {
        v = &u * v;
    }
    let fast = evolve(&init, &Walk::Conventional(coin), 100).unwrap();
    let reference = from_vector(lattice, &v);
    for (a, b) in fast.position_distribution().iter().zip(reference.position_distribution()) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn momentum_unitary_matches_plane_wave_symbol() {
    let units = UnitsConfig::default();
    let lattice = LatticeSpec::periodic(5).unwrap();
    let u = dense_split(lattice, &CoinParams::rotation(FRAC_PI_6), &CoinParams::rotation(FRAC_PI_4));
    let closed = momentum_unitary(FRAC_PI_6, FRAC_PI_4, 1.0, &units).matrix;
    assert!(mat2_max_abs(&(plane_wave_symbol(&u, lattice, 1.0) - closed)) < 1e-12);

    for j in [-3, 0, 2, 5] {
        let k = lattice.quantized_momentum(j, &units);
        let closed = momentum_unitary(FRAC_PI_6, FRAC_PI_4, k, &units).matrix;
        assert!(mat2_max_abs(&(plane_wave_sandwich(&u, lattice, units.phase(k)) - closed)) < 1e-12);
    }
}

#[test]
fn spectrum_matches_generic_solvers() {
    let units = UnitsConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let (t1, t2, k) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
        let u = momentum_unitary(t1, t2, k, &units).matrix;
        let es = eigensystem(t1, t2, k, &units);
        if es.degenerate {
            continue;
        }
        let mut ev = schur_eigenvalues(&u);
        ev.sort_by(|a, b| b.im.total_cmp(&a.im));
        assert!((ev[0] - es.lambda_plus).norm() < 1e-12);
        assert!((ev[1] - es.lambda_minus).norm() < 1e-12);

        let h = effective_hamiltonian(t1, t2, k, &units).matrix;
        let reference = principal_log_hamiltonian(&u, units.hbar / units.tau);
        assert!(mat2_max_abs(&(h - reference)) < 1e-10, "({t1}, {t2}, {k})");
    }
}

#[test]
fn reduced_density_matches_full_density_oracle() {
    let lattice = LatticeSpec::periodic(10).unwrap();
    let p = SplitStepParams::from_thetas(0.3, FRAC_PI_4);
    let walk = Walk::SplitStep(p);
    let init = make_initial_state(&InitialCondition::new(1.1, 0.4, 0).unwrap(), lattice).unwrap();
    let fast = reduced_coin_density(&evolve(&init, &walk, 90).unwrap());
    let dense = dense_reduced_density(&operator_matrix(&walk, lattice), &init, 90);
    assert!(mat2_max_abs(&(fast.matrix() - dense)) < 1e-10);
    assert!((fast.entropy().unwrap() - entropy_by_eigensolver(&dense)).abs() < 1e-10);
}

#[test]
fn probe_states_match_density_oracle_for_both_walks() {
    let lattice = LatticeSpec::truncated(10).unwrap();
    let walks = [
        Walk::Conventional(CoinParams::rotation(FRAC_PI_4)),
        Walk::SplitStep(SplitStepParams::from_thetas(0.0, FRAC_PI_4)),
    ];
    for walk in walks {
        let u = operator_matrix(&walk, lattice);
        for init in probe_states() {
            let state = make_initial_state(&init, lattice).unwrap();
            let fast = reduced_coin_density(&evolve(&state, &walk, 9).unwrap()).entropy().unwrap();
            let reference = entropy_by_eigensolver(&dense_reduced_density(&u, &state, 9));
            assert!((fast - reference).abs() < 1e-10);
        }
    }
}

#[test]
fn sweep_cells_match_single_runs() {
    let init = InitialCondition::new(FRAC_PI_2, FRAC_PI_2, 0).unwrap();
    let grid = SweepGrid::CoinAngles {
        init,
        theta1: qwalk::entanglement::linspace(0.0, PI, 6),
        theta2: qwalk::entanglement::linspace(0.0, PI, 5),
    };
    let result = entropy_sweep(&grid, 20).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let (i, j) = (rng.gen_range(0..6), rng.gen_range(0..5));
        let walk = Walk::SplitStep(SplitStepParams::from_thetas(result.axis1[i], result.axis2[j]));
        let single = final_entropy(&init, &walk, 20).unwrap();
        assert!((result.get(i, j) - single).abs() <= 1e-12);
    }
}

#[test]
fn closed_form_series_matches_lattice_evolution() {
    let units = UnitsConfig::default();
    let lattice = LatticeSpec::periodic(16).unwrap();
    let sz = CoinObservable::sigma_z();
    for (t1, t2, j) in [(0.3, 0.7, 3), (FRAC_PI_6, FRAC_PI_4, -5), (1.2, -0.4, 7)] {
        let k = lattice.quantized_momentum(j, &units);
        let s = EnergySuperposition::equal_weight(k, t1, t2);
        let series = expectation_series(&s, &sz, 40, &units).unwrap();
        let walk = Walk::SplitStep(SplitStepParams::from_thetas(t1, t2));
        let mut state = SpinorState::plane_wave(lattice, s.spinor(&units), k, &units).unwrap();
        for (n, expected) in series.iter().enumerate() {
            let measured = state.coin_expectation(sz.matrix());
            assert!((measured - expected).abs() < 1e-8, "step {n}: {measured} vs {expected}");
            state = walk.step(&state).unwrap();
        }
    }
}

#[test]
fn hundred_step_supports() {
    let lattice = LatticeSpec::truncated(100).unwrap();
    let init = make_initial_state(&InitialCondition::new(FRAC_PI_2, FRAC_PI_2, 0).unwrap(), lattice).unwrap();
    for t1 in [0.0, FRAC_PI_4] {
        let walk = Walk::SplitStep(SplitStepParams::from_thetas(t1, FRAC_PI_4));
        let p = evolve(&init, &walk, 100).unwrap().position_distribution();
        assert!(p.iter().all(|&v| v > 0.0), "θ₁ = {t1}");
    }
    let conv = evolve(&init, &Walk::Conventional(CoinParams::rotation(FRAC_PI_4)), 100).unwrap();
    for x in (-99..=99).step_by(2) {
        assert_eq!(conv.at(x).unwrap().norm_squared(), 0.0);
    }
}
