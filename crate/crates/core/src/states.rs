//! Input states, expressed at the input of the first beam splitter.
//!
//! Every generator returns a normalized [`JState`] whose first significant
//! amplitude is real and positive.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::su2::{self, two_m_at, JState};

/// `(|j,0> + |j,1>) / sqrt(2)`.
pub fn yurke_state(two_j: u32) -> Result<JState> {
    require_integer_spin(two_j, "Yurke")?;
    let mut amps = vec![Complex64::new(0.0, 0.0); two_j as usize + 1];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    amps[su2::position(two_j, 0)?] = Complex64::new(r, 0.0);
    amps[su2::position(two_j, 2)?] = Complex64::new(r, 0.0);
    Ok(JState::new(two_j, amps)?.with_label(StateFamily::Yurke.label()))
}

/// `|j,0> = |j>_a |j>_b`.
pub fn dual_fock_state(two_j: u32) -> Result<JState> {
    require_integer_spin(two_j, "dual-Fock")?;
    Ok(JState::basis(two_j, 0)?.with_label(StateFamily::DualFock.label()))
}

/// Input that the first beam splitter turns into `(|j,j> + |j,-j>) / sqrt(2)`,
/// i.e. `exp(+i pi/2 J_x)` applied to the NOON state.
pub fn noon_equivalent_input(two_j: u32) -> Result<JState> {
    if two_j == 0 {
        return Err(Error::InvalidInput(
            "NOON state needs at least one photon".into(),
        ));
    }
    let dim = two_j as usize + 1;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = Complex64::new(r, 0.0);
    amps[dim - 1] += Complex64::new(r, 0.0);
    let noon = JState::new(two_j, amps)?;
    let input = su2::rotate_x(&noon, -FRAC_PI_2)?;
    Ok(JState::from_unnormalized(two_j, input.amps().to_vec())?
        .with_label(StateFamily::Noon.label()))
}

/// `|N>_a |0>_b = |j, j>`, the uncorrelated single-port reference.
pub fn single_port_fock(two_j: u32) -> Result<JState> {
    if two_j == 0 {
        return Err(Error::InvalidInput(
            "single-port input needs at least one photon".into(),
        ));
    }
    Ok(JState::basis(two_j, two_j as i32)?.with_label(StateFamily::SinglePort.label()))
}

fn require_integer_spin(two_j: u32, name: &str) -> Result<()> {
    if !two_j.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "{name} state needs an even photon number (got N = {two_j})"
        )));
    }
    if two_j == 0 {
        return Err(Error::InvalidInput(format!(
            "{name} state needs at least two photons"
        )));
    }
    Ok(())
}

/// Parameters of the intelligent state `(J_y + i eta J_z) |psi> = beta |psi>`
/// with `beta = i m0 sqrt(eta^2 - 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntelligentSpec {
    two_j: u32,
    two_m0: i32,
    eta: f64,
}

impl IntelligentSpec {
    /// `eta > 1` strictly; `m0 = two_m0 / 2` must be a magnetic number of `j`.
    pub fn new(two_j: u32, two_m0: i32, eta: f64) -> Result<Self> {
        if !eta.is_finite() || eta <= 1.0 {
            return Err(Error::InvalidInput(format!(
                "intelligent state needs a finite eta > 1 (got {eta})"
            )));
        }
        su2::position(two_j, two_m0).map_err(|_| {
            Error::InvalidInput(format!(
                "m0 = {} is not allowed for N = {two_j}",
                f64::from(two_m0) / 2.0
            ))
        })?;
        Ok(Self { two_j, two_m0, eta })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn m0(&self) -> f64 {
        f64::from(self.two_m0) / 2.0
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn eigenvalue(&self) -> Complex64 {
        Complex64::new(0.0, self.m0() * (self.eta * self.eta - 1.0).sqrt())
    }
}

/// Tridiagonal `J_y + i eta J_z - beta`, stored by row.
struct Tridiagonal {
    lower: Vec<Complex64>,
    diag: Vec<Complex64>,
    upper: Vec<Complex64>,
}

impl Tridiagonal {
    fn for_spec(spec: &IntelligentSpec) -> Self {
        let dim = spec.two_j as usize + 1;
        let j = f64::from(spec.two_j) / 2.0;
        let beta = spec.eigenvalue();
        let mut lower = vec![Complex64::new(0.0, 0.0); dim];
        let mut diag = vec![Complex64::new(0.0, 0.0); dim];
        let mut upper = vec![Complex64::new(0.0, 0.0); dim];
        for p in 0..dim {
            let m = f64::from(two_m_at(spec.two_j, p)) / 2.0;
            diag[p] = Complex64::new(0.0, spec.eta * m) - beta;
            if p > 0 {
                lower[p] = Complex64::new(0.0, -0.5 * ((j - m + 1.0) * (j + m)).sqrt());
            }
            if p + 1 < dim {
                upper[p] = Complex64::new(0.0, 0.5 * ((j + m + 1.0) * (j - m)).sqrt());
            }
        }
        Self { lower, diag, upper }
    }

    fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let dim = v.len();
        (0..dim)
            .map(|p| {
                let mut acc = self.diag[p] * v[p];
                if p > 0 {
                    acc += self.lower[p] * v[p - 1];
                }
                if p + 1 < dim {
                    acc += self.upper[p] * v[p + 1];
                }
                acc
            })
            .collect()
    }
}

const RESCALE_ABOVE: f64 = 1e150;

fn rescale_if_large(v: &mut [Complex64]) {
    let big = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if big > RESCALE_ABOVE {
        v.iter_mut().for_each(|c| *c /= big);
    }
}

/// Intelligent state from the three-term recurrence of its eigen-equation.
///
/// The recurrence is run inward from both edges and the two solutions are
/// spliced at the index that gives the smallest residual. The row at the
/// splice point holds because `beta` is an exact eigenvalue.
pub fn intelligent_state(spec: &IntelligentSpec) -> Result<JState> {
    let dim = spec.two_j as usize + 1;
    let t = Tridiagonal::for_spec(spec);
    let zero = Complex64::new(0.0, 0.0);

    let mut fwd = vec![zero; dim];
    fwd[0] = Complex64::new(1.0, 0.0);
    for p in 0..dim - 1 {
        let prev = if p > 0 { t.lower[p] * fwd[p - 1] } else { zero };
        fwd[p + 1] = -(prev + t.diag[p] * fwd[p]) / t.upper[p];
        rescale_if_large(&mut fwd[..=p + 1]);
    }
    let mut bwd = vec![zero; dim];
    bwd[dim - 1] = Complex64::new(1.0, 0.0);
    for p in (1..dim).rev() {
        let next = if p + 1 < dim {
            t.upper[p] * bwd[p + 1]
        } else {
            zero
        };
        bwd[p - 1] = -(t.diag[p] * bwd[p] + next) / t.lower[p];
        rescale_if_large(&mut bwd[p - 1..]);
    }
    if fwd.iter().chain(&bwd).any(|c| !c.is_finite()) {
        return Err(Error::Numeric(format!(
            "intelligent-state recurrence overflowed (N = {}, eta = {})",
            spec.two_j, spec.eta
        )));
    }

    let spliced = |k: usize| -> Vec<Complex64> {
        let ratio = fwd[k] / bwd[k];
        (0..dim)
            .map(|p| if p <= k { fwd[p] } else { bwd[p] * ratio })
            .collect()
    };
    let relative_residual = |v: &[Complex64]| {
        let n = crate::linalg::norm(v);
        if n > 0.0 && n.is_finite() {
            crate::linalg::norm(&t.apply(v)) / n
        } else {
            f64::INFINITY
        }
    };
    let amps = (0..dim)
        .filter(|&k| bwd[k].norm() > 0.0)
        .map(spliced)
        .min_by(|a, b| relative_residual(a).total_cmp(&relative_residual(b)))
        .ok_or_else(|| Error::Numeric("intelligent-state recurrence vanished".into()))?;

    let state = JState::from_unnormalized(spec.two_j, amps)?;
    let residual = crate::linalg::norm(&t.apply(state.amps()));
    let scale = intelligent_operator_norm(spec);
    if residual > 1e-10 * scale {
        return Err(Error::Numeric(format!(
            "intelligent-state residual {residual:e} exceeds tolerance (N = {}, eta = {}, m0 = {})",
            spec.two_j,
            spec.eta,
            spec.m0()
        )));
    }
    Ok(state.with_label(
        StateFamily::Intelligent {
            eta: spec.eta,
            two_m0: spec.two_m0,
        }
        .label(),
    ))
}

/// Frobenius norm of `J_y + i eta J_z`.
pub fn intelligent_operator_norm(spec: &IntelligentSpec) -> f64 {
    let op = su2::jy_matrix(spec.two_j)
        .add(&su2::jz_matrix(spec.two_j).scale(Complex64::new(0.0, spec.eta)));
    op.frobenius_norm()
}

/// `||(J_y + i eta J_z - beta) psi||`.
pub fn intelligent_residual(spec: &IntelligentSpec, state: &JState) -> f64 {
    crate::linalg::norm(&Tridiagonal::for_spec(spec).apply(state.amps()))
}

/// The input families with their generator parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateFamily {
    Yurke,
    DualFock,
    Noon,
    Intelligent { eta: f64, two_m0: i32 },
    SinglePort,
}

impl StateFamily {
    pub fn prepare(&self, two_j: u32) -> Result<JState> {
        match *self {
            Self::Yurke => yurke_state(two_j),
            Self::DualFock => dual_fock_state(two_j),
            Self::Noon => noon_equivalent_input(two_j),
            Self::Intelligent { eta, two_m0 } => {
                intelligent_state(&IntelligentSpec::new(two_j, two_m0, eta)?)
            }
            Self::SinglePort => single_port_fock(two_j),
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for StateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Yurke => f.write_str("yurke"),
            Self::DualFock => f.write_str("dual-fock"),
            Self::Noon => f.write_str("noon"),
            Self::Intelligent { eta, two_m0 } => {
                write!(f, "intelligent(eta={eta},m0={})", f64::from(*two_m0) / 2.0)
            }
            Self::SinglePort => f.write_str("single-port"),
        }
    }
}
