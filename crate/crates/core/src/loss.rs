//! Photon loss in arm `b` and parity statistics in the `N`-photon subspace.
//!
//! Loss acts inside the interferometer as `Lambda = diag(lambda^(j-m))`. The
//! projected parity then has first moment `lambda^N <P>` and a phase
//! independent second moment `<Y2> = <in| R^dag Lambda^2 R |in>` with
//! `R = exp(-i pi/2 J_x)`.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::detection::{self, DetectionScheme, PhaseResponse, SensitivitySample};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::optimize;
use crate::specialfn::{jacobi_poly_halves, log_factorial_i};
use crate::su2::{self, two_m_at, JState};

const IMAG_TOL: f64 = 1e-11;

/// Amplitude transmission of arm `b`; arm `a` is lossless.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LossChannel {
    lambda: f64,
}

impl LossChannel {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidInput(format!(
                "transmission lambda = {lambda} is outside [0, 1]"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn lossless() -> Self {
        Self { lambda: 1.0 }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn is_lossless(&self) -> bool {
        self.lambda == 1.0
    }

    /// Survival factor `lambda^N` of the parity mean.
    pub fn mean_factor(&self, two_j: u32) -> f64 {
        self.lambda.powi(two_j as i32)
    }
}

/// `Q_mn = <j,m| Y2 |j,n>` and its Hermitian part.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    two_j: u32,
    lambda: f64,
    q: CMatrix,
    sym: CMatrix,
}

impl QMatrix {
    /// `R^dag Lambda^2 R` summed over the intermediate index.
    pub fn direct(two_j: u32, channel: LossChannel) -> Result<Self> {
        let x = channel.lambda * channel.lambda;
        let diag: Vec<f64> = (0..=two_j as usize)
            .map(|k| x.powi((two_j as usize - k) as i32))
            .collect();
        Self::conjugated_diagonal(two_j, channel.lambda, &diag)
    }

    /// Entry-by-entry closed form, see [`q_element`].
    pub fn closed_form(two_j: u32, channel: LossChannel) -> Result<Self> {
        su2::position(two_j, two_j as i32)?;
        let dim = two_j as usize + 1;
        let mut q = CMatrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                q[(r, c)] = q_element(
                    two_j,
                    two_m_at(two_j, r),
                    two_m_at(two_j, c),
                    channel.lambda,
                )?;
            }
        }
        Ok(Self::from_q(two_j, channel.lambda, q))
    }

    fn conjugated_diagonal(two_j: u32, lambda: f64, diag: &[f64]) -> Result<Self> {
        let r = su2::rotation_x_matrix(two_j, FRAC_PI_2)?;
        let dim = diag.len();
        let q = CMatrix::from_fn(dim, |m, n| {
            (0..dim)
                .map(|k| r[(k, m)].conj() * diag[k] * r[(k, n)])
                .sum()
        });
        Ok(Self::from_q(two_j, lambda, q))
    }

    fn from_q(two_j: u32, lambda: f64, q: CMatrix) -> Self {
        let sym = q.add(&q.adjoint()).scale(Complex64::new(0.5, 0.0));
        Self {
            two_j,
            lambda,
            q,
            sym,
        }
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn q(&self) -> &CMatrix {
        &self.q
    }

    pub fn sym(&self) -> &CMatrix {
        &self.sym
    }

    /// `<in| sym |in>`, checked to be real.
    pub fn expectation(&self, input: &JState) -> Result<f64> {
        if input.two_j() != self.two_j {
            return Err(Error::InvalidInput(format!(
                "state with N = {} used with a Q matrix for N = {}",
                input.two_j(),
                self.two_j
            )));
        }
        let v = input.expectation(&self.sym);
        if v.im.abs() > IMAG_TOL {
            return Err(Error::Consistency(format!(
                "second moment has imaginary part {:e}",
                v.im
            )));
        }
        Ok(v.re)
    }
}

/// Closed form of `Q_mn(lambda)` with `x = lambda^2`:
///
/// `i^(-m-n) / (j-n+1)_(j+n) * (2j)! sqrt((j+n)!) / sqrt((j-m)! (j+m)! (j-n)!)
///  * ((x^2-1)/4)^j * ((1+x)/(1-x))^(j+n-m) * P_(j+n)^(-2j-1, m-n)(1 - 8x/(x+1)^2)`.
///
/// The factors are regrouped as `(-1)^j 4^-j (1+x)^(2j+n-m) (1-x)^(m-n)`, so
/// `x = 0` needs no special case; `x = 1` is a removable singularity and
/// returns the identity. For half-integer `j` the branch
/// `(-1)^j = exp(-i pi j)` is used.
pub fn q_element(two_j: u32, two_m: i32, two_n: i32, lambda: f64) -> Result<Complex64> {
    su2::position(two_j, two_m)?;
    su2::position(two_j, two_n)?;
    LossChannel::new(lambda)?;
    if lambda == 1.0 {
        return Ok(Complex64::new(if two_m == two_n { 1.0 } else { 0.0 }, 0.0));
    }
    let tj = i64::from(two_j);
    let (tm, tn) = (i64::from(two_m), i64::from(two_n));
    let x = lambda * lambda;
    let j = f64::from(two_j) / 2.0;

    let log_ratio = 0.5
        * (log_factorial_i((tj - tn) / 2) + log_factorial_i((tj + tn) / 2)
            - log_factorial_i((tj - tm) / 2)
            - log_factorial_i((tj + tm) / 2));
    let m_minus_n = ((tm - tn) / 2) as i32;
    let magnitude = log_ratio.exp()
        * 0.25f64.powf(j)
        * (1.0 + x).powi(two_j as i32 - m_minus_n)
        * (1.0 - x).powi(m_minus_n);

    let degree = ((tj + tn) / 2) as u32;
    let xm = -4.0 * x / ((1.0 + x) * (1.0 + x));
    let xp = ((1.0 - x) / (1.0 + x)).powi(2);
    let jac = jacobi_poly_halves(
        degree,
        -f64::from(two_j) - 1.0,
        f64::from(m_minus_n),
        xm,
        xp,
    );

    let phase = Complex64::from_polar(1.0, -FRAC_PI_2 * ((tm + tn) / 2) as f64)
        * Complex64::from_polar(1.0, -std::f64::consts::PI * j);
    Ok(phase * magnitude * jac)
}

/// `(<P_N>, <P_N^2>)` at phase `phi`.
pub fn lossy_parity_moments(input: &JState, phi: f64, channel: LossChannel) -> Result<(f64, f64)> {
    let mean = channel.mean_factor(input.two_j()) * detection::parity_expectation(input, phi)?;
    let second = QMatrix::direct(input.two_j(), channel)?.expectation(input)?;
    if second < mean * mean - 1e-10 {
        return Err(Error::Consistency(format!(
            "second moment {second} below squared mean {}",
            mean * mean
        )));
    }
    Ok((mean, second))
}

/// Per-state quantities that do not depend on `lambda` or `phi`: the
/// weights `|(R c)_k|^2` of the state inside the interferometer.
#[derive(Clone, Debug)]
struct InsideWeights {
    two_j: u32,
    weights: Vec<f64>,
}

impl InsideWeights {
    fn new(input: &JState) -> Result<Self> {
        let r = su2::rotation_x_matrix(input.two_j(), FRAC_PI_2)?;
        let weights = r
            .matvec(input.amps())
            .iter()
            .map(|c| c.norm_sqr())
            .collect();
        Ok(Self {
            two_j: input.two_j(),
            weights,
        })
    }

    /// `<Y2> - lambda^(2N)` as a sum of non-negative terms
    /// `w_k x^a (1 - x^(N-a))`, `a = j - k` photons in arm `b`.
    fn excess(&self, channel: LossChannel) -> f64 {
        let x = channel.lambda * channel.lambda;
        let n = self.two_j as i32;
        if x == 0.0 {
            return self.weights[self.two_j as usize];
        }
        self.weights
            .iter()
            .enumerate()
            .map(|(p, w)| {
                let a = n - p as i32;
                w * x.powi(a) * -((n - a) as f64 * x.ln()).exp_m1()
            })
            .sum()
    }
}

fn lossy_delta_phi(
    lossless: &PhaseResponse,
    excess: f64,
    channel: LossChannel,
    two_j: u32,
    floor: f64,
) -> f64 {
    let f = channel.mean_factor(two_j);
    if lossless.slope.abs() < floor || f == 0.0 {
        return f64::INFINITY;
    }
    let variance = excess + f * f * lossless.variance;
    variance.max(0.0).sqrt() / (f * lossless.slope.abs())
}

fn require_parity(scheme: DetectionScheme, channel: LossChannel) -> Result<()> {
    if scheme == DetectionScheme::Jz && !channel.is_lossless() {
        return Err(Error::InvalidInput(
            "the loss model is defined for parity detection only".into(),
        ));
    }
    Ok(())
}

/// `delta phi = sqrt(<P_N^2> - <P_N>^2) / |d<P_N>/dphi|`, slope by finite
/// differences.
pub fn lossy_sensitivity(
    input: &JState,
    phi: f64,
    channel: LossChannel,
) -> Result<SensitivitySample> {
    let lossless = detection::sensitivity(input, phi, DetectionScheme::Parity)?;
    if channel.is_lossless() {
        return Ok(lossless);
    }
    let r = detection::response(
        input,
        phi,
        DetectionScheme::Parity,
        detection::Derivative::FiniteDifference,
    )?;
    let excess = InsideWeights::new(input)?.excess(channel);
    Ok(SensitivitySample {
        delta_phi: lossy_delta_phi(
            &r,
            excess,
            channel,
            input.two_j(),
            detection::FD_SLOPE_FLOOR,
        ),
        lambda: channel.lambda,
        success_probability: QMatrix::direct(input.two_j(), channel)?.expectation(input)?,
        ..lossless
    })
}

/// `1 / sqrt(lambda N)`: shot noise of the photons that survive on average.
pub fn baseline_shot_noise(two_j: u32, channel: LossChannel) -> f64 {
    let n = f64::from(two_j) * channel.lambda;
    if n == 0.0 {
        f64::INFINITY
    } else {
        1.0 / n.sqrt()
    }
}

/// Lossless parity response of one state on the coarse phase grid, reused
/// for every `lambda`.
#[derive(Clone, Debug)]
pub struct PhaseProfile {
    input: JState,
    grid: Vec<f64>,
    responses: Vec<PhaseResponse>,
    inside: InsideWeights,
}

impl PhaseProfile {
    pub fn new(input: &JState) -> Result<Self> {
        let grid = optimize::phase_grid();
        let responses = grid
            .iter()
            .map(|&phi| detection::parity_response(input, phi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            input: input.clone(),
            grid,
            responses,
            inside: InsideWeights::new(input)?,
        })
    }

    /// Minimum of `delta phi` over `(0, pi)` at transmission `lambda`.
    pub fn minimize(&self, channel: LossChannel) -> Result<SensitivitySample> {
        let two_j = self.input.two_j();
        let excess = self.inside.excess(channel);
        let floor = detection::ANALYTIC_SLOPE_FLOOR;
        let values: Vec<f64> = self
            .responses
            .iter()
            .map(|r| lossy_delta_phi(r, excess, channel, two_j, floor))
            .collect();
        let objective = |phi: f64| match detection::parity_response(&self.input, phi) {
            Ok(r) => lossy_delta_phi(&r, excess, channel, two_j, floor),
            Err(_) => f64::INFINITY,
        };
        let (phi, delta_phi) =
            optimize::refine_best(objective, &self.grid, &values, optimize::PHI_TOL)
                .unwrap_or((f64::NAN, f64::INFINITY));
        Ok(SensitivitySample {
            phi,
            delta_phi,
            scheme: DetectionScheme::Parity,
            state_label: self.input.label().to_string(),
            two_j,
            lambda: channel.lambda,
            success_probability: excess + channel.mean_factor(two_j).powi(2),
        })
    }
}

/// Minimum sensitivity at each `lambda` of the grid, in grid order.
///
/// A `lambda` with no phase signal yields a divergent sample rather than an
/// error.
pub fn sweep_lambda(
    input: &JState,
    lambdas: &[f64],
    scheme: DetectionScheme,
) -> Result<Vec<SensitivitySample>> {
    let channels = lambdas
        .iter()
        .map(|&l| {
            if l <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "sweep needs lambda in (0, 1], got {l}"
                )));
            }
            let c = LossChannel::new(l)?;
            require_parity(scheme, c)?;
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    match scheme {
        DetectionScheme::Jz => {
            let s = match detection::minimize_sensitivity(input, scheme) {
                Ok(s) => s,
                Err(Error::NoSignal) => divergent_sample(input, scheme, 1.0),
                Err(e) => return Err(e),
            };
            Ok(channels.iter().map(|_| s.clone()).collect())
        }
        DetectionScheme::Parity => {
            let profile = PhaseProfile::new(input)?;
            channels.iter().map(|&c| profile.minimize(c)).collect()
        }
    }
}

/// Minimum lossy parity sensitivity for one `lambda`.
pub fn minimize_lossy_sensitivity(
    input: &JState,
    channel: LossChannel,
) -> Result<SensitivitySample> {
    let s = PhaseProfile::new(input)?.minimize(channel)?;
    if s.is_divergent() {
        return Err(Error::NoSignal);
    }
    Ok(s)
}

fn divergent_sample(input: &JState, scheme: DetectionScheme, lambda: f64) -> SensitivitySample {
    SensitivitySample {
        phi: f64::NAN,
        delta_phi: f64::INFINITY,
        scheme,
        state_label: input.label().to_string(),
        two_j: input.two_j(),
        lambda,
        success_probability: 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use approx::assert_relative_eq;

    fn ch(l: f64) -> LossChannel {
        LossChannel::new(l).unwrap()
    }

    #[test]
    fn channel_validation() {
        assert!(LossChannel::new(-0.1).is_err());
        assert!(LossChannel::new(1.01).is_err());
        assert!(LossChannel::new(f64::NAN).is_err());
        assert!(ch(1.0).is_lossless());
    }

    #[test]
    fn q_is_identity_without_loss() {
        for two_j in 1..=12 {
            let q = QMatrix::direct(two_j, ch(1.0)).unwrap();
            assert!(q.q().max_abs_diff(&CMatrix::identity(two_j as usize + 1)) < 1e-11);
            assert_eq!(
                q_element(two_j, two_j as i32, two_j as i32, 1.0).unwrap(),
                Complex64::new(1.0, 0.0)
            );
        }
    }

    #[test]
    fn spin_one_examples() {
        // R = exp(-i pi/2 J_x) for j = 1, rows and columns m = -1, 0, 1.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let i = Complex64::new(0.0, 1.0);
        let r = [
            [Complex64::new(0.5, 0.0), -i * s, Complex64::new(-0.5, 0.0)],
            [-i * s, Complex64::new(0.0, 0.0), -i * s],
            [Complex64::new(-0.5, 0.0), -i * s, Complex64::new(0.5, 0.0)],
        ];
        let lambda: f64 = 0.8;
        let x = lambda * lambda;
        let lam2 = [x * x, x, 1.0];
        let q00: Complex64 = (0..3).map(|k| r[k][1].conj() * lam2[k] * r[k][1]).sum();
        assert_relative_eq!(q00.re, (x * x + 1.0) / 2.0, epsilon = 1e-15);
        assert!((q_element(2, 0, 0, lambda).unwrap() - q00).norm() < 1e-11);
        let direct = QMatrix::direct(2, ch(lambda)).unwrap();
        assert!((direct.q()[(1, 1)] - q00).norm() < 1e-15);
        // lambda -> 0 keeps only the k = +j term
        let limit = r[2][2].conj() * r[2][0];
        assert!((q_element(2, 2, -2, 0.0).unwrap() - limit).norm() < 1e-14);
    }

    #[test]
    fn closed_form_matches_direct_sum() {
        for two_j in 1..=8 {
            for lambda in [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
                let a = QMatrix::direct(two_j, ch(lambda)).unwrap();
                let b = QMatrix::closed_form(two_j, ch(lambda)).unwrap();
                let dev = a.q().max_abs_diff(b.q());
                assert!(dev < 1e-10, "N={two_j} lambda={lambda}: {dev:e}");
            }
        }
    }

    #[test]
    fn q_is_positive_contraction() {
        for two_j in [3u32, 6, 11] {
            let q = QMatrix::direct(two_j, ch(0.6)).unwrap();
            assert!(q.q().is_hermitian(1e-14));
            let eig = crate::linalg::hermitian_eigen(q.sym()).unwrap();
            assert!(eig
                .values
                .iter()
                .all(|&v| (-1e-10..=1.0 + 1e-10).contains(&v)));
        }
    }

    #[test]
    fn dual_fock_two_photons() {
        let s = states::dual_fock_state(2).unwrap();
        for phi in [0.3, 1.1] {
            let (mean, _) = lossy_parity_moments(&s, phi, ch(0.5)).unwrap();
            assert_relative_eq!(mean, -0.25 * (2.0 * phi).cos(), epsilon = 1e-14);
        }
    }

    #[test]
    fn noon_moments_and_closed_form() {
        for two_j in [2u32, 4, 6] {
            let s = states::noon_equivalent_input(two_j).unwrap();
            let n = f64::from(two_j);
            for lambda in [0.4, 0.8, 0.95] {
                let l2n = f64::powi(lambda, 2 * two_j as i32);
                let (mean, second) = lossy_parity_moments(&s, 0.37, ch(lambda)).unwrap();
                assert_relative_eq!(second, (1.0 + l2n) / 2.0, epsilon = 1e-13);
                assert_relative_eq!(
                    mean.abs(),
                    l2n.sqrt() * (n * 0.37).cos().abs(),
                    epsilon = 1e-13
                );
                let best = minimize_lossy_sensitivity(&s, ch(lambda)).unwrap();
                let want = ((1.0 + l2n) / 2.0).sqrt() / (n * l2n.sqrt());
                assert_relative_eq!(best.delta_phi, want, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn lossless_limit_matches_detection() {
        let s = states::yurke_state(4).unwrap();
        let a = lossy_sensitivity(&s, 0.7, ch(1.0)).unwrap();
        let b = detection::sensitivity(&s, 0.7, DetectionScheme::Parity).unwrap();
        assert_eq!(a, b);
        let sweep = sweep_lambda(&s, &[1.0], DetectionScheme::Parity).unwrap();
        let direct = detection::minimize_sensitivity(&s, DetectionScheme::Parity).unwrap();
        assert_relative_eq!(sweep[0].delta_phi, direct.delta_phi, max_relative = 1e-12);
    }

    #[test]
    fn pointwise_agrees_with_moments() {
        let s =
            states::intelligent_state(&states::IntelligentSpec::new(6, 0, 3.0).unwrap()).unwrap();
        let c = ch(0.85);
        let phi = 0.9;
        let (mean, second) = lossy_parity_moments(&s, phi, c).unwrap();
        let h = 1e-5;
        let slope = (lossy_parity_moments(&s, phi + h, c).unwrap().0
            - lossy_parity_moments(&s, phi - h, c).unwrap().0)
            / (2.0 * h);
        let want = (second - mean * mean).sqrt() / slope.abs();
        let got = lossy_sensitivity(&s, phi, c).unwrap();
        assert_relative_eq!(got.delta_phi, want, max_relative = 1e-8);
        assert_relative_eq!(got.success_probability, second, epsilon = 1e-14);
        assert_eq!(got.lambda, 0.85);
    }

    #[test]
    fn vanishing_transmission_diverges() {
        let s = states::yurke_state(4).unwrap();
        assert!(lossy_sensitivity(&s, 0.5, ch(0.0)).unwrap().is_divergent());
    }

    #[test]
    fn baseline_examples() {
        assert_relative_eq!(baseline_shot_noise(4, ch(1.0)), 0.5);
        assert_relative_eq!(
            baseline_shot_noise(4, ch(0.75)),
            1.0 / 3f64.sqrt(),
            epsilon = 1e-15
        );
        assert!(baseline_shot_noise(4, ch(0.0)).is_infinite());
    }

    #[test]
    fn jz_with_loss_is_rejected() {
        let s = states::yurke_state(2).unwrap();
        assert!(sweep_lambda(&s, &[0.9], DetectionScheme::Jz).is_err());
        assert!(sweep_lambda(&s, &[0.0], DetectionScheme::Parity).is_err());
        let d = states::dual_fock_state(2).unwrap();
        assert!(sweep_lambda(&d, &[1.0], DetectionScheme::Jz).unwrap()[0].is_divergent());
    }
}
