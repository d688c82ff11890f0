use std::f64::consts::PI;

use mzi_parity::detection;
use mzi_parity::loss::{self, LossChannel};
use mzi_parity::oracle::{self, FockPipeline};
use mzi_parity::states::{self, IntelligentSpec};
use mzi_parity::su2::JState;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn families(two_j: u32) -> Vec<JState> {
    let mut out = vec![
        states::noon_equivalent_input(two_j).unwrap(),
        states::intelligent_state(&IntelligentSpec::new(two_j, (two_j % 2) as i32, 10.0).unwrap())
            .unwrap(),
    ];
    if two_j.is_multiple_of(2) {
        out.push(states::yurke_state(two_j).unwrap());
        out.push(states::dual_fock_state(two_j).unwrap());
    }
    out
}

#[test]
fn lossless_oracle_matches_d_matrix() {
    let mut rng = StdRng::seed_from_u64(53);
    for two_j in 1..=6 {
        let p = FockPipeline::new(two_j, LossChannel::lossless()).unwrap();
        for s in families(two_j) {
            for _ in 0..10 {
                let phi = rng.gen_range(0.0..PI);
                let (mean, second) = p.moments(&s, phi).unwrap();
                assert!((mean - detection::parity_expectation(&s, phi).unwrap()).abs() < 1e-10);
                assert!((second - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn lossy_oracle_matches_moments() {
    let mut rng = StdRng::seed_from_u64(59);
    for two_j in 1..=6 {
        for lambda in [0.2, 0.8] {
            let c = LossChannel::new(lambda).unwrap();
            let p = FockPipeline::new(two_j, c).unwrap();
            for s in families(two_j) {
                let phi = rng.gen_range(0.0..PI);
                let (mean, second) = p.moments(&s, phi).unwrap();
                let (m, q) = loss::lossy_parity_moments(&s, phi, c).unwrap();
                assert!((mean - m).abs() < 1e-10 && (second - q).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn noon_mean_follows_power_law() {
    let s = states::noon_equivalent_input(4).unwrap();
    let mut rng = StdRng::seed_from_u64(61);
    for _ in 0..10 {
        let phi = rng.gen_range(0.0..PI);
        let (mean, _) = oracle::simulate_pipeline(&s, phi, 0.8).unwrap();
        assert!((mean.abs() - 0.8f64.powi(4) * (4.0 * phi).cos().abs()).abs() < 1e-10);
    }
}

#[test]
fn dual_fock_second_moment() {
    let s = states::dual_fock_state(2).unwrap();
    for lambda in [0.1, 0.45, 0.9] {
        let (_, q) =
            loss::lossy_parity_moments(&s, 0.3, LossChannel::new(lambda).unwrap()).unwrap();
        for phi in [0.3, 1.7] {
            let (_, second) = oracle::simulate_pipeline(&s, phi, lambda).unwrap();
            assert!((second - q).abs() < 1e-10);
        }
    }
}

#[test]
fn single_photon_noon_sensitivity() {
    let s = states::noon_equivalent_input(1).unwrap();
    let best = detection::minimize_sensitivity(&s, detection::DetectionScheme::Parity).unwrap();
    assert!((best.delta_phi - 1.0).abs() < 1e-9);
    // cross-check the slope from oracle means
    let h = 1e-5;
    let phi = best.phi.max(0.3);
    let m = |x: f64| oracle::simulate_pipeline(&s, x, 1.0).unwrap().0;
    let slope = (m(phi + h) - m(phi - h)) / (2.0 * h);
    let var = 1.0 - m(phi).powi(2);
    assert!((var.sqrt() / slope.abs() - 1.0).abs() < 1e-6);
}

#[test]
fn verify_suite_passes_up_to_six_photons() {
    let rows = oracle::verify_suite(6).unwrap();
    assert!(rows.iter().any(|r| r.name.contains("closed form")));
    assert!(rows.iter().all(|r| r.passed()), "{rows:?}");
}

#[test]
fn guard_rejects_large_inputs() {
    assert!(oracle::verify_suite(11).is_err());
    let s = states::dual_fock_state(12).unwrap();
    assert!(oracle::simulate_pipeline(&s, 0.1, 1.0).is_err());
}
