//! Lossless read-out: parity `(-1)^(j - J_z)` or the photon-number difference
//! `J_z` at the output, and the linear-error-propagation sensitivity
//! `delta phi = Delta O / |d<O>/dphi|`.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::optimize;
use crate::su2::{self, JState, WignerBlock};

/// Output observable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetectionScheme {
    Parity,
    Jz,
}

impl fmt::Display for DetectionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Parity => "parity",
            Self::Jz => "jz",
        })
    }
}

impl FromStr for DetectionScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "parity" => Ok(Self::Parity),
            "jz" => Ok(Self::Jz),
            other => Err(Error::InvalidInput(format!(
                "unknown detection scheme '{other}' (expected parity or jz)"
            ))),
        }
    }
}

/// How the phase slope `d<O>/dphi` is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivative {
    /// Five-point central difference with step [`FD_STEP`].
    FiniteDifference,
    /// Closed form through the generator `-i J_y`.
    Analytic,
}

pub const FD_STEP: f64 = 1e-5;

/// Slopes below these magnitudes are indistinguishable from rounding noise
/// and mark the sample as divergent.
pub const FD_SLOPE_FLOOR: f64 = 1e-9;
pub const ANALYTIC_SLOPE_FLOOR: f64 = 1e-13;

const IMAG_TOL: f64 = 1e-11;

/// One point of a sensitivity curve.
#[derive(Clone, Debug, PartialEq)]
pub struct SensitivitySample {
    pub phi: f64,
    /// `f64::INFINITY` when the slope vanishes.
    pub delta_phi: f64,
    pub scheme: DetectionScheme,
    pub state_label: String,
    pub two_j: u32,
    pub lambda: f64,
    /// Probability that all photons reach the detectors.
    pub success_probability: f64,
}

impl SensitivitySample {
    pub fn is_divergent(&self) -> bool {
        !self.delta_phi.is_finite()
    }
}

/// Mean, variance and phase slope of the detected observable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseResponse {
    pub mean: f64,
    pub variance: f64,
    pub slope: f64,
}

impl PhaseResponse {
    fn delta_phi(&self, floor: f64) -> f64 {
        if self.slope.abs() < floor {
            f64::INFINITY
        } else {
            self.variance.max(0.0).sqrt() / self.slope.abs()
        }
    }
}

fn parity_sign(two_j: u32, p: usize) -> f64 {
    if (two_j as usize - p).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `<P_out> = sum_mn c_m^* (-1)^(j-m) d^j_mn(2 phi) c_n`.
pub fn parity_expectation(input: &JState, phi: f64) -> Result<f64> {
    let two_j = input.two_j();
    let block = WignerBlock::new(two_j, 2.0 * phi)?;
    let c = input.amps();
    let rotated = block.apply(c);
    let acc: Complex64 = c
        .iter()
        .zip(&rotated)
        .enumerate()
        .map(|(p, (cm, v))| cm.conj() * v * parity_sign(two_j, p))
        .sum();
    if acc.im.abs() > IMAG_TOL {
        return Err(Error::Consistency(format!(
            "parity expectation has imaginary part {:e} at phi = {phi}",
            acc.im
        )));
    }
    Ok(acc.re)
}

/// Parity expectation by rotating the state to the output and summing the
/// signed photon-number weights.
pub fn parity_expectation_direct(input: &JState, phi: f64) -> Result<f64> {
    let (even, odd) = parity_weights(input, phi)?;
    Ok(even - odd)
}

/// Output probabilities of even and odd photon number in port `b`.
pub fn parity_weights(input: &JState, phi: f64) -> Result<(f64, f64)> {
    let out = su2::rotate_y(input, phi)?;
    Ok(split_weights(out.two_j(), out.amps()))
}

fn split_weights(two_j: u32, amps: &[Complex64]) -> (f64, f64) {
    amps.iter().enumerate().fold((0.0, 0.0), |(e, o), (p, c)| {
        if parity_sign(two_j, p) > 0.0 {
            (e + c.norm_sqr(), o)
        } else {
            (e, o + c.norm_sqr())
        }
    })
}

/// Parity response with the analytic slope `2 Re <u| P (-i J_y) |u>`,
/// `u = exp(-i phi J_y) |in>`. The variance `1 - <P>^2` is formed as
/// `4 w_even w_odd`.
pub fn parity_response(input: &JState, phi: f64) -> Result<PhaseResponse> {
    let two_j = input.two_j();
    let block = WignerBlock::new(two_j, phi)?;
    let u = block.apply(input.amps());
    let du = su2::minus_i_jy_apply(two_j, &u);
    let (even, odd) = split_weights(two_j, &u);
    let slope: f64 = u
        .iter()
        .zip(&du)
        .enumerate()
        .map(|(p, (a, b))| 2.0 * parity_sign(two_j, p) * (a.conj() * b).re)
        .sum();
    Ok(PhaseResponse {
        mean: even - odd,
        variance: 4.0 * even * odd,
        slope,
    })
}

/// Mean and variance of `J_z,out = -sin(phi) J_x + cos(phi) J_z`.
pub fn jz_expectation_and_variance(input: &JState, phi: f64) -> (f64, f64) {
    let r = jz_response(input, phi);
    (r.mean, r.variance)
}

pub fn jz_response(input: &JState, phi: f64) -> PhaseResponse {
    let two_j = input.two_j();
    let jx = su2::jx_matrix(two_j);
    let jz = su2::jz_matrix(two_j);
    let (s, c) = phi.sin_cos();
    let op = jx
        .scale(Complex64::new(-s, 0.0))
        .add(&jz.scale(Complex64::new(c, 0.0)));
    let dop = jx
        .scale(Complex64::new(-c, 0.0))
        .add(&jz.scale(Complex64::new(-s, 0.0)));
    let mean = input.expectation(&op).re;
    let second = input.expectation(&op.matmul(&op)).re;
    PhaseResponse {
        mean,
        variance: (second - mean * mean).max(0.0),
        slope: input.expectation(&dop).re,
    }
}

/// Five-point central difference.
pub fn five_point(f: impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    Ok((-f(x + 2.0 * h)? + 8.0 * f(x + h)? - 8.0 * f(x - h)? + f(x - 2.0 * h)?) / (12.0 * h))
}

/// Response of `scheme` with the requested slope method.
pub fn response(
    input: &JState,
    phi: f64,
    scheme: DetectionScheme,
    derivative: Derivative,
) -> Result<PhaseResponse> {
    let analytic = match scheme {
        DetectionScheme::Parity => parity_response(input, phi)?,
        DetectionScheme::Jz => jz_response(input, phi),
    };
    if derivative == Derivative::Analytic {
        return Ok(analytic);
    }
    let (mean, slope) = match scheme {
        DetectionScheme::Parity => (
            parity_expectation(input, phi)?,
            five_point(|x| parity_expectation(input, x), phi, FD_STEP)?,
        ),
        DetectionScheme::Jz => (
            analytic.mean,
            five_point(|x| Ok(jz_response(input, x).mean), phi, FD_STEP)?,
        ),
    };
    check_slopes(slope, analytic.slope, phi)?;
    Ok(PhaseResponse {
        mean,
        variance: analytic.variance,
        slope,
    })
}

/// Finite-difference and analytic slopes must agree to `1e-7` relative, up
/// to the rounding floor of the difference quotient.
fn check_slopes(fd: f64, exact: f64, phi: f64) -> Result<()> {
    let tol = 1e-7 * exact.abs() + FD_SLOPE_FLOOR;
    if (fd - exact).abs() > tol {
        return Err(Error::Consistency(format!(
            "finite-difference slope {fd:e} disagrees with analytic slope {exact:e} at phi = {phi}"
        )));
    }
    Ok(())
}

fn check_phase(phi: f64) -> Result<()> {
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::InvalidInput(format!(
            "phase {phi} is outside (0, pi)"
        )));
    }
    Ok(())
}

fn sample(input: &JState, phi: f64, scheme: DetectionScheme, delta_phi: f64) -> SensitivitySample {
    SensitivitySample {
        phi,
        delta_phi,
        scheme,
        state_label: input.label().to_string(),
        two_j: input.two_j(),
        lambda: 1.0,
        success_probability: 1.0,
    }
}

/// `delta phi` at one phase, slope by finite differences.
pub fn sensitivity(input: &JState, phi: f64, scheme: DetectionScheme) -> Result<SensitivitySample> {
    sensitivity_with(input, phi, scheme, Derivative::FiniteDifference)
}

pub fn sensitivity_with(
    input: &JState,
    phi: f64,
    scheme: DetectionScheme,
    derivative: Derivative,
) -> Result<SensitivitySample> {
    check_phase(phi)?;
    let r = response(input, phi, scheme, derivative)?;
    let floor = match derivative {
        Derivative::FiniteDifference => FD_SLOPE_FLOOR,
        Derivative::Analytic => ANALYTIC_SLOPE_FLOOR,
    };
    Ok(sample(input, phi, scheme, r.delta_phi(floor)))
}

/// Global minimum of `delta phi` over `(0, pi)`.
pub fn minimize_sensitivity(input: &JState, scheme: DetectionScheme) -> Result<SensitivitySample> {
    let grid = optimize::phase_grid();
    minimize_over(input, scheme, &grid)
}

pub(crate) fn minimize_over(
    input: &JState,
    scheme: DetectionScheme,
    grid: &[f64],
) -> Result<SensitivitySample> {
    let objective = |phi: f64| match response(input, phi, scheme, Derivative::Analytic) {
        Ok(r) => r.delta_phi(ANALYTIC_SLOPE_FLOOR),
        Err(_) => f64::INFINITY,
    };
    let (phi, delta_phi) =
        optimize::minimize_on_grid(objective, grid, optimize::PHI_TOL).ok_or(Error::NoSignal)?;
    Ok(sample(input, phi, scheme, delta_phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use approx::assert_relative_eq;

    #[test]
    fn scheme_parsing() {
        assert_eq!(
            "parity".parse::<DetectionScheme>().unwrap(),
            DetectionScheme::Parity
        );
        assert_eq!(
            "JZ".parse::<DetectionScheme>().unwrap(),
            DetectionScheme::Jz
        );
        assert!("homodyne".parse::<DetectionScheme>().is_err());
        assert_eq!(DetectionScheme::Jz.to_string(), "jz");
    }

    #[test]
    fn dual_fock_spin_one_parity() {
        let s = states::dual_fock_state(2).unwrap();
        for phi in [0.1, 0.7, 1.3, 2.9] {
            assert_relative_eq!(
                parity_expectation(&s, phi).unwrap(),
                -(2.0 * phi).cos(),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn noon_two_photon_parity() {
        let s = states::noon_equivalent_input(2).unwrap();
        for phi in [0.2, 0.9, 2.0] {
            let p = parity_expectation(&s, phi).unwrap();
            assert_relative_eq!(p.abs(), (2.0 * phi).cos().abs(), epsilon = 1e-13);
        }
    }

    #[test]
    fn parity_at_zero_phase() {
        let s = states::yurke_state(4).unwrap();
        let want: f64 = s
            .components()
            .map(|(m, c)| {
                if (s.j() - m) as i64 % 2 == 0 {
                    c.norm_sqr()
                } else {
                    -c.norm_sqr()
                }
            })
            .sum();
        assert_relative_eq!(parity_expectation(&s, 0.0).unwrap(), want, epsilon = 1e-15);
    }

    #[test]
    fn jz_examples() {
        let d = states::dual_fock_state(6).unwrap();
        assert_eq!(jz_expectation_and_variance(&d, 0.8).0, 0.0);
        let y = states::yurke_state(2).unwrap();
        assert_relative_eq!(jz_expectation_and_variance(&y, 0.0).0, 0.5, epsilon = 1e-15);
        let s = states::single_port_fock(5).unwrap();
        let (mean, var) = jz_expectation_and_variance(&s, 0.0);
        assert_relative_eq!(mean, 2.5);
        assert!(var.abs() < 1e-14);
    }

    #[test]
    fn direct_route_matches_quadratic_form() {
        let s =
            states::intelligent_state(&states::IntelligentSpec::new(7, 1, 2.5).unwrap()).unwrap();
        for k in 0..40 {
            let phi = 0.05 + 0.077 * f64::from(k);
            let a = parity_expectation(&s, phi).unwrap();
            let b = parity_expectation_direct(&s, phi).unwrap();
            let c = parity_response(&s, phi).unwrap().mean;
            assert!((a - b).abs() < 1e-11 && (a - c).abs() < 1e-11);
        }
    }

    #[test]
    fn phase_outside_domain_is_rejected() {
        let s = states::yurke_state(2).unwrap();
        for phi in [0.0, PI, -1.0, f64::NAN] {
            assert!(sensitivity(&s, phi, DetectionScheme::Parity).is_err());
        }
    }

    #[test]
    fn noon_reaches_inverse_n() {
        let s = states::noon_equivalent_input(4).unwrap();
        let best = minimize_sensitivity(&s, DetectionScheme::Parity).unwrap();
        assert!((best.delta_phi - 0.25).abs() < 1e-9);
        assert_eq!(best.state_label, "noon");
        assert_eq!(best.lambda, 1.0);
    }

    #[test]
    fn dual_fock_jz_is_divergent() {
        let s = states::dual_fock_state(4).unwrap();
        let r = sensitivity(&s, 0.4, DetectionScheme::Jz).unwrap();
        assert!(r.is_divergent());
        assert_eq!(
            minimize_sensitivity(&s, DetectionScheme::Jz),
            Err(Error::NoSignal)
        );
    }

    #[test]
    fn single_photon_noon_has_unit_sensitivity() {
        let s = states::noon_equivalent_input(1).unwrap();
        let r = sensitivity(&s, 0.6, DetectionScheme::Parity).unwrap();
        assert_relative_eq!(r.delta_phi, 1.0, epsilon = 1e-9);
    }
}
