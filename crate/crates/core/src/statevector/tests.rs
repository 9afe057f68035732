use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ising::generators::random_graph;
use crate::ising::{Coupling, ProblemGraph};

fn cfg(s: &str) -> SpinConfig {
    s.parse().unwrap()
}

fn random_model(n: usize, rng: &mut ChaCha8Rng) -> IsingModel {
    let g = random_graph(n, 0.6, rng);
    let linear = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let quadratic = g
        .edges()
        .iter()
        .map(|&(i, j)| Coupling {
            i,
            j,
            value: rng.gen_range(-1.0..1.0),
        })
        .collect();
    IsingModel::new(n, linear, quadratic, rng.gen_range(-1.0..1.0), 1.0).unwrap()
}

/// Equal up to a global phase: |⟨a|b⟩| = 1 for unit vectors.
fn same_ray(a: &Statevector, b: &Statevector, tol: f64) -> bool {
    (a.inner(b).norm() - 1.0).abs() < tol
}

#[test]
fn warm_start_with_zero_eps_is_the_basis_state() {
    let ws = WarmStart::new(cfg("0110"), 0.0).unwrap();
    let psi = Statevector::warm_start(&ws).unwrap();
    assert_eq!(psi, Statevector::from_config(&cfg("0110")).unwrap());
}

#[test]
fn warm_start_probabilities() {
    let ws = WarmStart::new(cfg("0101"), 0.499999).unwrap();
    let psi = Statevector::warm_start(&ws).unwrap();
    for q in 0..4 {
        let p1: f64 = (0..16)
            .filter(|i| (i >> q) & 1 == 1)
            .map(|i| psi.amplitude(i).norm_sqr())
            .sum();
        assert!((p1 - 0.5).abs() < 1e-5);
    }

    let ws = WarmStart::new(cfg("0"), 0.25).unwrap();
    assert!((ws.thetas()[0] - PI / 3.0).abs() < 1e-15);
    let psi = Statevector::warm_start(&ws).unwrap();
    assert!((psi.amplitude(1).norm_sqr() - 0.25).abs() < 1e-15);

    let ws = WarmStart::new(cfg("10"), 0.1).unwrap();
    let psi = Statevector::warm_start(&ws).unwrap();
    assert!(psi.amplitudes().iter().all(|a| a.im == 0.0 && a.re >= 0.0));
    // index 1 = qubit 0 set, qubit 1 clear: the base itself
    assert!((psi.amplitude(1).norm_sqr() - 0.81).abs() < 1e-12);
    assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
}

#[test]
fn warm_start_rejects_bad_eps() {
    assert!(WarmStart::new(cfg("01"), -0.1).is_err());
    assert!(WarmStart::new(cfg("01"), 0.6).is_err());
    assert!(WarmStart::new(cfg("01"), f64::NAN).is_err());
}

#[test]
fn cost_layer_is_diagonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let model = random_model(5, &mut rng);
    let ws = WarmStart::new(cfg("10110"), 0.3).unwrap();
    let psi = Statevector::warm_start(&ws).unwrap();

    let mut same = psi.clone();
    same.apply_cost_layer(&model, 0.0).unwrap();
    assert_eq!(same, psi);

    for gamma in [0.1, 1.7, -3.0] {
        let mut phi = psi.clone();
        phi.apply_cost_layer(&model, gamma).unwrap();
        for (a, b) in phi.probabilities().iter().zip(psi.probabilities()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn cost_layer_relative_phase() {
    let h = 0.8;
    let model = IsingModel::new(1, vec![h], vec![], 0.0, 1.0).unwrap();
    let mut psi = Statevector::warm_start(&WarmStart::new(cfg("0"), 0.5).unwrap()).unwrap();
    psi.apply_cost_layer(&model, PI / (2.0 * h)).unwrap();
    let ratio = psi.amplitude(1) / psi.amplitude(0);
    assert!((ratio - Complex64::from_polar(1.0, -PI)).norm() < 1e-12);
}

#[test]
fn cost_layer_dimension_mismatch() {
    let model = IsingModel::new(2, vec![0.0, 0.0], vec![], 0.0, 1.0).unwrap();
    let mut psi = Statevector::basis(3, 0).unwrap();
    assert!(psi.apply_cost_layer(&model, 0.5).is_err());
}

#[test]
fn mixer_layers() {
    let mut psi = Statevector::basis(3, 0).unwrap();
    psi.apply_mixer_layer(FRAC_PI_2, MixerKind::Standard, None)
        .unwrap();
    assert!(same_ray(
        &psi,
        &Statevector::basis(3, 0b111).unwrap(),
        1e-12
    ));

    let ws = WarmStart::new(cfg("101"), 0.2).unwrap();
    let start = Statevector::warm_start(&ws).unwrap();
    let mut psi = start.clone();
    psi.apply_mixer_layer(0.0, MixerKind::WarmStart, Some(&ws))
        .unwrap();
    assert!((psi.inner(&start) - 1.0).norm() < 1e-12);
    psi.apply_mixer_layer(0.0, MixerKind::Standard, None)
        .unwrap();
    assert!((psi.inner(&start) - 1.0).norm() < 1e-12);

    assert!(psi
        .apply_mixer_layer(0.3, MixerKind::WarmStart, None)
        .is_err());
}

#[test]
fn aligned_mixer_fixes_its_warm_start_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let base = SpinConfig::random(n, &mut rng);
        let eps = rng.gen_range(0.0..0.5);
        let beta = rng.gen_range(-PI..PI);
        let ws = WarmStart::new(base, eps).unwrap();
        let start = Statevector::warm_start(&ws).unwrap();
        let mut psi = start.clone();
        psi.apply_mixer_layer(beta, MixerKind::WarmStart, Some(&ws))
            .unwrap();
        assert!(same_ray(&psi, &start, 1e-10), "eps {eps} beta {beta}");
    }
}

#[test]
fn norm_preserved_by_any_layer_sequence() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let n = rng.gen_range(1..=7);
        let model = random_model(n, &mut rng);
        let ws = WarmStart::new(SpinConfig::random(n, &mut rng), rng.gen_range(0.0..0.5)).unwrap();
        let mut psi = Statevector::warm_start(&ws).unwrap();
        for _ in 0..6 {
            match rng.gen_range(0..3) {
                0 => psi
                    .apply_cost_layer(&model, rng.gen_range(-4.0..4.0))
                    .unwrap(),
                1 => psi
                    .apply_mixer_layer(rng.gen_range(-4.0..4.0), MixerKind::Standard, None)
                    .unwrap(),
                _ => psi
                    .apply_mixer_layer(rng.gen_range(-4.0..4.0), MixerKind::WarmStart, Some(&ws))
                    .unwrap(),
            }
            assert!((psi.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn zero_angle_circuit_returns_input() {
    let g = ProblemGraph::new(3, [(0, 1)]).unwrap();
    let model = IsingModel::mis(&g, 2.0).unwrap();
    let c = QaoaCircuit::warm_start(CircuitParams::new(0.0, 0.0), 0.0);
    let psi = c.apply(&model, &cfg("110")).unwrap();
    assert_eq!(psi, Statevector::from_config(&cfg("110")).unwrap());
}

#[test]
fn schedule_derivation() {
    let p = CircuitParams::from_schedule(0.25, 2.0, 0.5).unwrap();
    assert_eq!(p.gamma, 1.0 * 0.75 * 0.5);
    assert_eq!(p.beta, 0.25);
    let p = CircuitParams::from_schedule(1.0, 3.0, 2.0).unwrap();
    assert_eq!(p.gamma, 0.0);
    assert_eq!(p.beta, 1.5);
    assert!(CircuitParams::from_schedule(1.5, 1.0, 1.0).is_err());

    // κ = 1 leaves only the mixers
    let g = ProblemGraph::new(2, [(0, 1)]).unwrap();
    let model = IsingModel::mis(&g, 2.0).unwrap();
    let psi = QaoaCircuit::basis(p).apply(&model, &cfg("00")).unwrap();
    let mut expected = Statevector::basis(2, 0).unwrap();
    expected
        .apply_mixer_layer(1.5, MixerKind::Standard, None)
        .unwrap();
    expected
        .apply_mixer_layer(1.5, MixerKind::Standard, None)
        .unwrap();
    assert!((psi.inner(&expected) - 1.0).norm() < 1e-12);
}

/// Dense `exp(-i t A)` for a small Hermitian matrix by scaling and squaring a Taylor series.
fn expm_i(a: &[[Complex64; 4]; 4], t: f64) -> [[Complex64; 4]; 4] {
    let zero = Complex64::new(0.0, 0.0);
    let mul = |x: &[[Complex64; 4]; 4], y: &[[Complex64; 4]; 4]| {
        let mut out = [[zero; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (0..4).map(|k| x[i][k] * y[k][j]).sum();
            }
        }
        out
    };
    let squarings = 10;
    let scale = Complex64::new(0.0, -t / f64::from(1 << squarings));
    let mut m = [[zero; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[i][j] * scale;
        }
    }
    let mut result = [[zero; 4]; 4];
    let mut term = [[zero; 4]; 4];
    for i in 0..4 {
        result[i][i] = Complex64::new(1.0, 0.0);
        term[i][i] = Complex64::new(1.0, 0.0);
    }
    for k in 1..30 {
        term = mul(&term, &m);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= k as f64;
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mul(&result, &result);
    }
    result
}

#[test]
fn two_qubit_circuit_matches_dense_matrix_oracle() {
    let g = ProblemGraph::new(2, [(0, 1)]).unwrap();
    let model = IsingModel::mis(&g, 2.0).unwrap();
    let (gamma, beta) = (0.3, 0.4);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);

    // H_cost straight from the QUBO energies of 00, 10, 01, 11 (index order)
    let mut h_cost = [[zero; 4]; 4];
    for (i, e) in [0.0, -1.0, -1.0, 0.0].into_iter().enumerate() {
        h_cost[i][i] = Complex64::new(e, 0.0);
    }
    // X⊗I + I⊗X flips one bit of the index
    let mut h_mix = [[zero; 4]; 4];
    for i in 0..4usize {
        h_mix[i ^ 1][i] = one;
        h_mix[i ^ 2][i] = one;
    }
    let uc = expm_i(&h_cost, gamma);
    let um = expm_i(&h_mix, beta);

    let c = QaoaCircuit::basis(CircuitParams::new(gamma, beta));
    for start in 0..4usize {
        let mut v = [zero; 4];
        v[start] = one;
        for _ in 0..2 {
            for u in [&uc, &um] {
                let mut w = [zero; 4];
                for i in 0..4 {
                    w[i] = (0..4).map(|k| u[i][k] * v[k]).sum();
                }
                v = w;
            }
        }
        let psi = c.apply(&model, &SpinConfig::from_index(start, 2)).unwrap();
        for i in 0..4 {
            assert!(
                (psi.amplitude(i) - v[i]).norm() < 1e-9,
                "start {start} amp {i}"
            );
        }
    }
}

#[test]
fn sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let psi = Statevector::from_config(&cfg("1011")).unwrap();
    assert!(psi
        .sample(50, &mut rng)
        .unwrap()
        .iter()
        .all(|c| *c == cfg("1011")));
    assert!(psi.sample(0, &mut rng).is_err());

    let uniform = Statevector::warm_start(&WarmStart::new(cfg("0"), 0.5).unwrap()).unwrap();
    let shots = uniform.sample_indices(100_000, &mut rng).unwrap();
    let ones = shots.iter().filter(|&&i| i == 1).count() as f64 / 1e5;
    assert!((ones - 0.5).abs() < 0.01);

    let a = uniform
        .sample(100, &mut ChaCha8Rng::seed_from_u64(77))
        .unwrap();
    let b = uniform
        .sample(100, &mut ChaCha8Rng::seed_from_u64(77))
        .unwrap();
    assert_eq!(a, b);
}

/// Upper `1e-4` quantile of chi-square, Wilson–Hilferty approximation.
fn chi_square_critical(df: f64) -> f64 {
    let z = 3.719_016_485_455_68;
    let k = 2.0 / (9.0 * df);
    df * (1.0 - k + z * k.sqrt()).powi(3)
}

#[test]
fn sampling_passes_chi_square() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [3usize, 6, 8] {
        let model = random_model(n, &mut rng);
        let base = SpinConfig::random(n, &mut rng);
        let c = QaoaCircuit::warm_start(CircuitParams::new(0.7, 0.4), 0.25);
        let psi = c.apply(&model, &base).unwrap();
        let shots = 100_000usize;
        let mut counts = vec![0usize; psi.dim()];
        for i in psi.sample_indices(shots, &mut rng).unwrap() {
            counts[i] += 1;
        }
        // pool low-expectation cells so every cell expects at least 5
        let (mut stat, mut cells) = (0.0, 0usize);
        let (mut pooled_obs, mut pooled_exp) = (0.0, 0.0);
        for (p, &o) in psi.probabilities().iter().zip(&counts) {
            let e = p * shots as f64;
            if e < 5.0 {
                pooled_obs += o as f64;
                pooled_exp += e;
            } else {
                stat += (o as f64 - e).powi(2) / e;
                cells += 1;
            }
        }
        if pooled_exp > 0.0 {
            stat += (pooled_obs - pooled_exp).powi(2) / pooled_exp;
            cells += 1;
        }
        let df = (cells - 1) as f64;
        assert!(stat < chi_square_critical(df), "n {n}: chi2 {stat} df {df}");
    }
}

#[test]
fn basis_circuit_is_magnitude_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=6 {
        let model = random_model(n, &mut rng);
        let c = QaoaCircuit::basis(CircuitParams::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        ));
        let dim = 1usize << n;
        let columns: Vec<Statevector> = (0..dim)
            .map(|s| c.apply(&model, &SpinConfig::from_index(s, n)).unwrap())
            .collect();
        for s in 0..dim {
            for t in 0..dim {
                let forward = columns[s].amplitude(t).norm();
                let backward = columns[t].amplitude(s).norm();
                assert!((forward - backward).abs() < 1e-10);
            }
        }
        let s = SpinConfig::from_index(0, n);
        assert!(
            (c.transition_amplitude(&model, &s, &s).unwrap().norm()
                - columns[0].amplitude(0).norm())
            .abs()
                < 1e-15
        );
    }
}

#[test]
fn warm_start_circuit_breaks_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let model = random_model(4, &mut rng);
    let c = QaoaCircuit::warm_start(CircuitParams::new(0.9, 0.5), 0.25);
    let mut worst: f64 = 0.0;
    for s in 0..16 {
        for t in 0..16 {
            let a = c
                .transition_amplitude(
                    &model,
                    &SpinConfig::from_index(s, 4),
                    &SpinConfig::from_index(t, 4),
                )
                .unwrap();
            let b = c
                .transition_amplitude(
                    &model,
                    &SpinConfig::from_index(t, 4),
                    &SpinConfig::from_index(s, 4),
                )
                .unwrap();
            worst = worst.max((a.norm() - b.norm()).abs());
        }
    }
    assert!(worst > 1e-6);
}

#[test]
fn transition_amplitude_identity() {
    let g = ProblemGraph::new(3, [(0, 2)]).unwrap();
    let model = IsingModel::mis(&g, 2.0).unwrap();
    let c = QaoaCircuit::basis(CircuitParams::new(0.0, 0.0));
    let a = c
        .transition_amplitude(&model, &cfg("101"), &cfg("101"))
        .unwrap();
    assert!((a - 1.0).norm() < 1e-15);
}

#[test]
fn proposal_matrix_properties() {
    let g = ProblemGraph::new(3, [(0, 1), (1, 2)]).unwrap();
    let model = IsingModel::mis(&g, 2.0).unwrap();
    let q = QaoaCircuit::warm_start(CircuitParams::new(0.0, 0.0), 0.0)
        .proposal_matrix(&model)
        .unwrap();
    assert_eq!(q, ndarray::Array2::<f64>::eye(8));

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let params = CircuitParams::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let eps = rng.gen_range(0.0..0.5);
        let q = QaoaCircuit::warm_start(params, eps)
            .proposal_matrix(&model)
            .unwrap();
        for col in q.columns() {
            assert!(col.iter().all(|&p| p >= 0.0));
            assert!((col.sum() - 1.0).abs() < 1e-10);
        }
    }

    let big = IsingModel::mis(&ProblemGraph::new(13, []).unwrap(), 2.0).unwrap();
    assert!(QaoaCircuit::basis(CircuitParams::new(0.1, 0.1))
        .proposal_matrix(&big)
        .is_err());
}

#[test]
fn simulator_cap() {
    assert!(Statevector::basis(23, 0).is_err());
    assert!(Statevector::basis(0, 0).is_err());
}
