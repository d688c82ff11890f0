//! Browser bindings: phase curves, transmission sweeps and state amplitudes.
//!
//! The plain functions return `Result<_, String>` and are tested natively;
//! the `#[wasm_bindgen]` wrappers only convert errors.

use std::f64::consts::PI;

use mzi_parity::detection::{self, Derivative, DetectionScheme};
use mzi_parity::loss::{self, LossChannel};
use mzi_parity::states::StateFamily;
use wasm_bindgen::prelude::*;

const MAX_PHOTONS: u32 = 40;
const MAX_POINTS: usize = 4000;

fn family(state: &str, eta: f64, m0: f64) -> Result<StateFamily, String> {
    Ok(match state {
        "yurke" => StateFamily::Yurke,
        "dual-fock" => StateFamily::DualFock,
        "noon" => StateFamily::Noon,
        "single-port" => StateFamily::SinglePort,
        "intelligent" => {
            let two_m0 = 2.0 * m0;
            if two_m0.fract() != 0.0 || !two_m0.is_finite() {
                return Err(format!("m0 must be a multiple of 1/2, got {m0}"));
            }
            let eta = if eta == 1.0 { 1.0 + 1e-6 } else { eta };
            StateFamily::Intelligent {
                eta,
                two_m0: two_m0 as i32,
            }
        }
        other => return Err(format!("unknown state '{other}'")),
    })
}

fn scheme(name: &str) -> Result<DetectionScheme, String> {
    name.parse().map_err(|e: mzi_parity::Error| e.to_string())
}

fn check_size(n: u32, points: usize) -> Result<(), String> {
    if n == 0 || n > MAX_PHOTONS {
        return Err(format!("photon number must be between 1 and {MAX_PHOTONS}"));
    }
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("point count must be between 2 and {MAX_POINTS}"));
    }
    Ok(())
}

/// Mean signal and sensitivity sampled at midpoints of `(0, pi)`.
#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct PhaseCurve {
    phi: Vec<f64>,
    mean: Vec<f64>,
    delta_phi: Vec<f64>,
    best_phi: f64,
    best_delta_phi: f64,
}

#[wasm_bindgen]
impl PhaseCurve {
    pub fn phi(&self) -> Vec<f64> {
        self.phi.clone()
    }

    pub fn mean(&self) -> Vec<f64> {
        self.mean.clone()
    }

    /// `Infinity` where the slope vanishes.
    pub fn delta_phi(&self) -> Vec<f64> {
        self.delta_phi.clone()
    }

    /// `NaN` when there is no phase signal.
    pub fn best_phi(&self) -> f64 {
        self.best_phi
    }

    pub fn best_delta_phi(&self) -> f64 {
        self.best_delta_phi
    }
}

pub fn compute_phase_curve(
    state: &str,
    n: u32,
    eta: f64,
    m0: f64,
    scheme_name: &str,
    lambda: f64,
    points: usize,
) -> Result<PhaseCurve, String> {
    check_size(n, points)?;
    let s = family(state, eta, m0)?
        .prepare(n)
        .map_err(|e| e.to_string())?;
    let scheme = scheme(scheme_name)?;
    if lambda.is_nan() || lambda <= 0.0 {
        return Err("lambda must be positive".into());
    }
    let channel = LossChannel::new(lambda).map_err(|e| e.to_string())?;
    if scheme == DetectionScheme::Jz && !channel.is_lossless() {
        return Err("the loss model covers parity detection only".into());
    }
    let phi: Vec<f64> = (0..points)
        .map(|k| PI * (k as f64 + 0.5) / points as f64)
        .collect();
    let mut mean = Vec::with_capacity(points);
    let mut delta_phi = Vec::with_capacity(points);
    for &p in &phi {
        if channel.is_lossless() {
            let r = detection::response(&s, p, scheme, Derivative::Analytic)
                .map_err(|e| e.to_string())?;
            mean.push(r.mean);
            let d = detection::sensitivity_with(&s, p, scheme, Derivative::Analytic)
                .map_err(|e| e.to_string())?;
            delta_phi.push(d.delta_phi);
        } else {
            let (m, _) = loss::lossy_parity_moments(&s, p, channel).map_err(|e| e.to_string())?;
            mean.push(m);
            delta_phi.push(
                loss::lossy_sensitivity(&s, p, channel)
                    .map_err(|e| e.to_string())?
                    .delta_phi,
            );
        }
    }
    let best = loss::sweep_lambda(&s, &[lambda], scheme).map_err(|e| e.to_string())?;
    Ok(PhaseCurve {
        phi,
        mean,
        delta_phi,
        best_phi: best[0].phi,
        best_delta_phi: best[0].delta_phi,
    })
}

/// Minimum parity sensitivity of the five reference inputs against
/// transmission, plus the `1/sqrt(lambda N)` baseline.
#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct LambdaSweep {
    lambda: Vec<f64>,
    baseline: Vec<f64>,
    curves: Vec<Vec<f64>>,
}

const SWEEP_LABELS: [&str; 5] = [
    "NOON",
    "dual-Fock",
    "intelligent η=10",
    "Yurke",
    "intelligent η→1",
];

#[wasm_bindgen]
impl LambdaSweep {
    pub fn lambda(&self) -> Vec<f64> {
        self.lambda.clone()
    }

    pub fn baseline(&self) -> Vec<f64> {
        self.baseline.clone()
    }

    pub fn count(&self) -> usize {
        self.curves.len()
    }

    pub fn label(&self, k: usize) -> String {
        SWEEP_LABELS.get(k).copied().unwrap_or_default().to_string()
    }

    pub fn curve(&self, k: usize) -> Vec<f64> {
        self.curves.get(k).cloned().unwrap_or_default()
    }
}

pub fn compute_lambda_sweep(n: u32, lambda_min: f64, points: usize) -> Result<LambdaSweep, String> {
    check_size(n, points)?;
    if n % 2 == 1 {
        return Err("the sweep needs an even photon number".into());
    }
    if !(lambda_min > 0.0 && lambda_min < 1.0) {
        return Err("lower transmission must lie in (0, 1)".into());
    }
    let step = (1.0 - lambda_min) / (points - 1) as f64;
    let lambda: Vec<f64> = (0..points)
        .map(|k| {
            if k + 1 == points {
                1.0
            } else {
                lambda_min + step * k as f64
            }
        })
        .collect();
    let fams = [
        StateFamily::Noon,
        StateFamily::DualFock,
        StateFamily::Intelligent {
            eta: 10.0,
            two_m0: 0,
        },
        StateFamily::Yurke,
        StateFamily::Intelligent {
            eta: 1.0 + 1e-6,
            two_m0: 0,
        },
    ];
    let curves = fams
        .iter()
        .map(|f| {
            let s = f.prepare(n)?;
            let sweep = loss::sweep_lambda(&s, &lambda, DetectionScheme::Parity)?;
            Ok(sweep.iter().map(|r| r.delta_phi).collect())
        })
        .collect::<mzi_parity::Result<Vec<Vec<f64>>>>()
        .map_err(|e| e.to_string())?;
    let baseline = lambda
        .iter()
        .map(|&l| 1.0 / (l * f64::from(n)).sqrt())
        .collect();
    Ok(LambdaSweep {
        lambda,
        baseline,
        curves,
    })
}

/// Flat `[m, re, im, m, re, im, ...]` in ascending `m`.
pub fn compute_state_amplitudes(
    state: &str,
    n: u32,
    eta: f64,
    m0: f64,
) -> Result<Vec<f64>, String> {
    check_size(n, 2)?;
    let s = family(state, eta, m0)?
        .prepare(n)
        .map_err(|e| e.to_string())?;
    Ok(s.components().flat_map(|(m, c)| [m, c.re, c.im]).collect())
}

#[wasm_bindgen]
pub fn phase_curve(
    state: &str,
    n: u32,
    eta: f64,
    m0: f64,
    scheme: &str,
    lambda: f64,
    points: usize,
) -> Result<PhaseCurve, JsError> {
    compute_phase_curve(state, n, eta, m0, scheme, lambda, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lambda_sweep(n: u32, lambda_min: f64, points: usize) -> Result<LambdaSweep, JsError> {
    compute_lambda_sweep(n, lambda_min, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn state_amplitudes(state: &str, n: u32, eta: f64, m0: f64) -> Result<Vec<f64>, JsError> {
    compute_state_amplitudes(state, n, eta, m0).map_err(|e| JsError::new(&e))
}
