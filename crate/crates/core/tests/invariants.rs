use std::f64::consts::TAU;

use dunkl_amp::amplifier::{build_hamiltonian_ladder, build_hamiltonian_su11, numerical_spectrum};
use dunkl_amp::fock::{build_number, build_su11_generators, parity_sign};
use dunkl_amp::stats::{
    bogoliubov_oracle_statistics, closed_form_statistics, g2, intermediate_checks, mandel_q, mean_photon,
    oracle_statistics_for, photon_variance, OracleConfig,
};
use dunkl_amp::transforms::SqueezeParams;
use dunkl_amp::verify::verify_all;
use dunkl_amp::{FockMatrix64, ModelParams, ModelParams32, ModelParams64};
use proptest::prelude::*;

fn amp(mu: f64, f_mag: f64, theta: f64, dim: usize) -> ModelParams64 {
    ModelParams64::new(mu, 1.0, f_mag, theta, dim).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectrum_converges_under_doubling(mu in -0.4f64..2.0, f_mag in 0.0f64..0.45, theta in 0.0f64..TAU) {
        let small = numerical_spectrum(&amp(mu, f_mag, theta, 64)).unwrap();
        let large = numerical_spectrum(&amp(mu, f_mag, theta, 128)).unwrap();
        for n in 0..small.trusted_count {
            let (a, b) = (small.level(n), large.level(n));
            prop_assert!(((a - b) / b).abs() < 1e-10, "level {}: {} vs {}", n, a, b);
        }
    }

    #[test]
    fn mu_shift_law(mu1 in -0.4f64..2.0, mu2 in -0.4f64..2.0, f_mag in 0.0f64..0.4) {
        let p1 = amp(mu1, f_mag, 0.7, 128);
        let s1 = numerical_spectrum(&p1).unwrap();
        let s2 = numerical_spectrum(&p1.with_mu(mu2).unwrap()).unwrap();
        let half_omega = 0.5 * p1.rabi_frequency().unwrap();
        for n in 0..s1.trusted_count {
            let shift = s2.level(n) - s1.level(n);
            let expected = half_omega * (mu2 - mu1);
            prop_assert!((shift - expected).abs() <= 1e-8 * s2.level(n).abs().max(1.0));
        }
    }

    #[test]
    fn hamiltonians_are_hermitian(mu in -0.4f64..2.0, f_mag in 0.0f64..0.49, theta in 0.0f64..TAU) {
        let p = amp(mu, f_mag, theta, 32);
        prop_assert!(build_hamiltonian_ladder(&p).hermiticity_residual() < 1e-13);
        prop_assert!(build_hamiltonian_su11(&p).hermiticity_residual() < 1e-13);
    }

    #[test]
    fn statistics_are_physical(n in 0usize..12, mu in -0.45f64..3.0, r in 0.0f64..1.5) {
        prop_assert!(mean_photon(n, mu, r) >= 0.0);
        prop_assert!(photon_variance(n, mu, r) >= 0.0);
        if let Some(q) = mandel_q(n, mu, r) {
            prop_assert!(q >= -1.0 - 1e-12);
        }
        if let Some(g) = g2(n, mu, r) {
            prop_assert!(g >= 0.0);
        }
    }

    #[test]
    fn vacuum_q_is_super_poissonian_and_mu_blind(mu in -0.45f64..3.0, r in 0.01f64..2.0) {
        let q = mandel_q(0, mu, r).unwrap();
        prop_assert!(q > 1.0);
        prop_assert!((q - mandel_q(0, 0.0, r).unwrap()).abs() < 1e-12 * q);
    }

    #[test]
    fn oracle_routes_agree(n in 0usize..8, mu in -0.4f64..1.5, r in 0.0f64..0.7, phi in 0.0f64..TAU) {
        let sq = SqueezeParams::from_rapidity(r, phi);
        let disp = oracle_statistics_for(n, mu, &sq, &OracleConfig::default()).unwrap();
        let bog = bogoliubov_oracle_statistics(n, mu, &sq).unwrap();
        let closed = closed_form_statistics(n, mu, r).unwrap();
        prop_assert!(disp.max_abs_diff(&bog) < 1e-8);
        prop_assert!(disp.max_abs_diff(&closed) < 1e-6);
    }

    #[test]
    fn statistics_brackets(n in 0usize..20, mu in -0.45f64..3.0) {
        for b in intermediate_checks(n, mu).unwrap() {
            prop_assert!(b.residual() < 1e-12 * b.closed_form.abs().max(1.0), "{}", b.name);
        }
    }
}

#[test]
fn number_operator_from_k0() {
    for mu in [-0.4, 0.3, 1.7] {
        let p = ModelParams64::free(mu, 24).unwrap();
        let number = build_number(&p);
        let k0 = build_su11_generators(&p).k0;
        for n in 0..p.dim() - 1 {
            let expected = 2.0 * k0[(n, n)].re - 0.5 - mu * parity_sign::<f64>(n);
            assert!((number[(n, n)].re - expected).abs() < 1e-12);
        }
    }
}

#[test]
fn g2_depends_on_deformation() {
    let gap: f64 = g2(0, 1.0, 0.5).unwrap() - g2(0, 0.0, 0.5).unwrap();
    assert!(gap.abs() > 1e-3, "{gap}");
}

#[test]
fn hamiltonian_text_round_trip() {
    let h = build_hamiltonian_su11(&amp(0.4, 0.2, 1.0, 16));
    assert_eq!(FockMatrix64::from_text(&h.to_text()).unwrap(), h);
}

#[test]
fn single_precision_pipeline() {
    let p: ModelParams32 = ModelParams::new(0.5f32, 1.0, 0.3, 0.4, 32).unwrap();
    for id in verify_all(&p) {
        assert!(id.residual < 1e-3, "{}: {}", id.name, id.residual);
    }
    let levels = numerical_spectrum(&p).unwrap();
    assert!(levels.max_rel_error < 1e-4, "{}", levels.max_rel_error);
    let single = closed_form_statistics(3usize, 0.5f32, 0.4).unwrap();
    let double = closed_form_statistics(3usize, 0.5f64, 0.4).unwrap();
    assert!((f64::from(single.g2.unwrap()) - double.g2.unwrap()).abs() < 1e-5);
}
