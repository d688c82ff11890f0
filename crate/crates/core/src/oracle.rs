//! Brute-force Fock-space model of the lossy interferometer.
//!
//! Three modes `a`, `b` and an environment mode `e` share a fixed photon
//! budget `N`. Beam splitters are exponentials of `J_x` for a mode pair,
//! loss in arm `b` is a beam splitter coupling `b` to `e` with amplitude
//! transmission `lambda`, and parity is read on mode `b` after discarding
//! every outcome with a photon in `e`.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::detection;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::loss::{self, LossChannel, QMatrix};
use crate::states::{self, IntelligentSpec};
use crate::su2::{two_m_at, JState};

/// Largest photon number the oracle accepts.
pub const ORACLE_N_MAX: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModePair {
    /// `(a, b)`, the two interferometer arms.
    Ab,
    /// `(b, e)`, arm `b` and the environment.
    Be,
}

/// Occupations `(n_a, n_b, n_e)` with `n_a + n_b + n_e = N`, enumerated with
/// `n_a` descending, then `n_b` descending.
pub fn simplex(n_total: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::with_capacity(simplex_dim(n_total));
    for na in (0..=n_total).rev() {
        for nb in (0..=n_total - na).rev() {
            out.push((na, nb, n_total - na - nb));
        }
    }
    out
}

pub fn simplex_dim(n_total: u32) -> usize {
    let n = n_total as usize;
    (n + 1) * (n + 2) / 2
}

fn simplex_index(n_total: u32, na: u32, nb: u32) -> usize {
    let before: u32 = (na + 1..=n_total).map(|k| n_total - k + 1).sum();
    (before + (n_total - na - nb)) as usize
}

fn guard(n_total: u32) -> Result<()> {
    if n_total > ORACLE_N_MAX {
        return Err(Error::Dimension(format!(
            "oracle is limited to N <= {ORACLE_N_MAX} (got {n_total})"
        )));
    }
    Ok(())
}

/// Pure state on the photon-number simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct FockOracleState {
    n_total: u32,
    amps: Vec<Complex64>,
}

impl FockOracleState {
    /// Embeds `|j,m> -> |j+m, j-m, 0>`.
    pub fn from_jstate(input: &JState) -> Result<Self> {
        let n = input.two_j();
        guard(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); simplex_dim(n)];
        for (p, c) in input.amps().iter().enumerate() {
            let two_m = two_m_at(n, p);
            let na = ((n as i32 + two_m) / 2) as u32;
            amps[simplex_index(n, na, n - na)] = *c;
        }
        Ok(Self { n_total: n, amps })
    }

    pub fn n_total(&self) -> u32 {
        self.n_total
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.amps)
    }

    pub fn apply(&self, u: &CMatrix) -> Self {
        Self {
            n_total: self.n_total,
            amps: u.matvec(&self.amps),
        }
    }

    /// `exp(i phi n_b)`.
    pub fn phase_shift(&self, phi: f64) -> Self {
        let amps = simplex(self.n_total)
            .iter()
            .zip(&self.amps)
            .map(|(&(_, nb, _), c)| c * Complex64::from_polar(1.0, phi * f64::from(nb)))
            .collect();
        Self {
            n_total: self.n_total,
            amps,
        }
    }

    /// `(sum (-1)^n_b |amp|^2, sum |amp|^2)` over outcomes with `n_e = 0`.
    pub fn projected_parity(&self) -> (f64, f64) {
        simplex(self.n_total)
            .iter()
            .zip(&self.amps)
            .filter(|(&(_, _, ne), _)| ne == 0)
            .fold((0.0, 0.0), |(mean, second), (&(_, nb, _), c)| {
                let w = c.norm_sqr();
                let sign = if nb % 2 == 0 { 1.0 } else { -1.0 };
                (mean + sign * w, second + w)
            })
    }

    /// Amplitudes with `n_e = 0`, ordered by descending `n_a`.
    pub fn surviving(&self) -> Vec<Complex64> {
        simplex(self.n_total)
            .iter()
            .zip(&self.amps)
            .filter(|(&(_, _, ne), _)| ne == 0)
            .map(|(_, c)| *c)
            .collect()
    }
}

/// `J_x = (x^dag y + y^dag x) / 2` for the pair `(x, y)` on the simplex.
pub fn pair_jx(n_total: u32, pair: ModePair) -> CMatrix {
    let dim = simplex_dim(n_total);
    let mut jx = CMatrix::zeros(dim);
    for (col, &(na, nb, ne)) in simplex(n_total).iter().enumerate() {
        // x^dag y moves one photon from y to x
        let (nx, ny) = match pair {
            ModePair::Ab => (na, nb),
            ModePair::Be => (nb, ne),
        };
        if ny == 0 {
            continue;
        }
        let amp = 0.5 * (f64::from(nx + 1) * f64::from(ny)).sqrt();
        let row = match pair {
            ModePair::Ab => simplex_index(n_total, na + 1, nb - 1),
            ModePair::Be => simplex_index(n_total, na, nb + 1),
        };
        jx[(row, col)] += Complex64::new(amp, 0.0);
        jx[(col, row)] += Complex64::new(amp, 0.0);
    }
    jx
}

/// `exp(-i theta J_x)` on the pair.
pub fn beam_splitter_unitary(n_total: u32, pair: ModePair, theta: f64) -> Result<CMatrix> {
    guard(n_total)?;
    Ok(linalg::hermitian_eigen(&pair_jx(n_total, pair))?.unitary_exp(theta))
}

/// The fixed (phase independent) stages of the pipeline for one `N` and
/// `lambda`.
#[derive(Clone, Debug)]
pub struct FockPipeline {
    n_total: u32,
    bs_plus: CMatrix,
    loss: CMatrix,
    bs_minus: CMatrix,
}

impl FockPipeline {
    pub fn new(n_total: u32, channel: LossChannel) -> Result<Self> {
        guard(n_total)?;
        let eig = linalg::hermitian_eigen(&pair_jx(n_total, ModePair::Ab))?;
        // b -> cos(t) b - i sin(t) e with cos(t) = lambda
        let t = channel.lambda().acos();
        Ok(Self {
            n_total,
            bs_plus: eig.unitary_exp(FRAC_PI_2),
            loss: beam_splitter_unitary(n_total, ModePair::Be, 2.0 * t)?,
            bs_minus: eig.unitary_exp(-FRAC_PI_2),
        })
    }

    /// Every intermediate state: input, after `BS+`, after the phase, after
    /// loss and after `BS-`.
    pub fn stages(&self, input: &JState, phi: f64) -> Result<Vec<FockOracleState>> {
        if input.two_j() != self.n_total {
            return Err(Error::InvalidInput(format!(
                "state with N = {} sent through a pipeline for N = {}",
                input.two_j(),
                self.n_total
            )));
        }
        let s0 = FockOracleState::from_jstate(input)?;
        let s1 = s0.apply(&self.bs_plus);
        let s2 = s1.phase_shift(phi);
        let s3 = s2.apply(&self.loss);
        let s4 = s3.apply(&self.bs_minus);
        Ok(vec![s0, s1, s2, s3, s4])
    }

    /// `(<P_N>, <P_N^2>)`.
    pub fn moments(&self, input: &JState, phi: f64) -> Result<(f64, f64)> {
        Ok(self
            .stages(input, phi)?
            .last()
            .expect("five stages")
            .projected_parity())
    }

    /// `<j,m| Y2 |j,n>` from propagating basis states up to the loss stage.
    pub fn y2_matrix(&self) -> Result<CMatrix> {
        let two_j = self.n_total;
        let dim = two_j as usize + 1;
        let survivors = (0..dim)
            .map(|p| {
                let basis = JState::basis(two_j, two_m_at(two_j, p))?;
                let s = FockOracleState::from_jstate(&basis)?
                    .apply(&self.bs_plus)
                    .apply(&self.loss);
                Ok(s.surviving())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CMatrix::from_fn(dim, |m, n| {
            linalg::inner(&survivors[m], &survivors[n])
        }))
    }
}

/// `(<P_N>, <P_N^2>)` by brute force.
pub fn simulate_pipeline(input: &JState, phi: f64, lambda: f64) -> Result<(f64, f64)> {
    FockPipeline::new(input.two_j(), LossChannel::new(lambda)?)?.moments(input, phi)
}

/// One line of the verification table.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub two_j: u32,
    pub lambda: f64,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl CheckRow {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

fn phases() -> impl Iterator<Item = f64> {
    (0..10).map(|k| 0.13 + 0.29 * f64::from(k))
}

fn families(two_j: u32) -> Result<Vec<JState>> {
    let mut out = vec![
        states::noon_equivalent_input(two_j)?,
        states::intelligent_state(
            &IntelligentSpec::new(two_j, 0, 10.0)
                .or_else(|_| IntelligentSpec::new(two_j, 1, 10.0))?,
        )?,
    ];
    if two_j.is_multiple_of(2) {
        out.push(states::yurke_state(two_j)?);
        out.push(states::dual_fock_state(two_j)?);
    }
    Ok(out)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

/// Cross-checks between the closed forms, the direct sums and the Fock
/// oracle for `N <= n_max`.
pub fn verify_suite(n_max: u32) -> Result<Vec<CheckRow>> {
    guard(n_max)?;
    let mut rows = Vec::new();
    for two_j in 1..=n_max {
        let lossless = FockPipeline::new(two_j, LossChannel::lossless())?;
        let mut dev: f64 = 0.0;
        for s in families(two_j)? {
            for phi in phases() {
                let (mean, _) = lossless.moments(&s, phi)?;
                dev = dev.max((mean - detection::parity_expectation(&s, phi)?).abs());
            }
        }
        rows.push(CheckRow {
            name: "lossless parity: oracle vs d-matrix".into(),
            two_j,
            lambda: 1.0,
            max_deviation: dev,
            tolerance: 1e-10,
        });

        for lambda in [0.1, 0.5, 0.9] {
            let channel = LossChannel::new(lambda)?;
            let pipeline = FockPipeline::new(two_j, channel)?;
            let direct = QMatrix::direct(two_j, channel)?;
            let closed = QMatrix::closed_form(two_j, channel)?;
            let fock = pipeline.y2_matrix()?;
            rows.push(CheckRow {
                name: "Q matrix: closed form vs direct sum vs oracle".into(),
                two_j,
                lambda,
                max_deviation: direct
                    .q()
                    .max_abs_diff(closed.q())
                    .max(direct.q().max_abs_diff(&fock)),
                tolerance: 1e-10,
            });

            let mut mean_dev: f64 = 0.0;
            let mut second_dev: f64 = 0.0;
            let mut norm_dev: f64 = 0.0;
            for s in families(two_j)? {
                for phi in phases() {
                    let stages = pipeline.stages(&s, phi)?;
                    norm_dev =
                        norm_dev.max(max_of(stages.iter().map(|st| (st.norm() - 1.0).abs())));
                    let (mean, second) = stages[4].projected_parity();
                    let (m, q) = loss::lossy_parity_moments(&s, phi, channel)?;
                    mean_dev = mean_dev.max((mean - m).abs());
                    second_dev = second_dev.max((second - q).abs());
                }
            }
            rows.push(CheckRow {
                name: "lossy mean: oracle vs lambda^N factorization".into(),
                two_j,
                lambda,
                max_deviation: mean_dev,
                tolerance: 1e-10,
            });
            rows.push(CheckRow {
                name: "second moment: oracle vs Q matrix".into(),
                two_j,
                lambda,
                max_deviation: second_dev,
                tolerance: 1e-10,
            });
            rows.push(CheckRow {
                name: "norm conservation through every stage".into(),
                two_j,
                lambda,
                max_deviation: norm_dev,
                tolerance: 1e-12,
            });
        }
    }
    Ok(rows)
}
