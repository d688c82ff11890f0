//! Two-mode states in the angular-momentum (Schwinger) picture.
//!
//! An `N`-photon state of modes `a` and `b` lives in the spin-`j = N/2`
//! irrep, with `|j, m> = |j+m>_a |j-m>_b`. Sizes are carried as `two_j = N`
//! and magnetic numbers as `two_m = 2m` so half-integer spins need no
//! floating point.
//!
//! Storage order is fixed crate-wide: amplitude position `p = m + j`,
//! `p = 0..=2j`, i.e. `m = -j` first.
//!
//! All rotations are active, `R_y(theta) = exp(-i theta J_y)`, with
//! `d^j_{mn}(theta) = <j,m| R_y(theta) |j,n>`.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::specialfn::{jacobi_poly_recurrence, log_factorial_i, N_MAX};

const NORM_TOL: f64 = 1e-12;

/// Position of magnetic number `two_m / 2` in a spin-`two_j / 2` amplitude array.
pub fn position(two_j: u32, two_m: i32) -> Result<usize> {
    let tj = two_j as i32;
    if two_m.abs() > tj || (tj - two_m) % 2 != 0 {
        return Err(Error::Range(format!(
            "m = {} is not a magnetic number of j = {}",
            f64::from(two_m) / 2.0,
            f64::from(tj) / 2.0
        )));
    }
    Ok(((two_m + tj) / 2) as usize)
}

/// Doubled magnetic number stored at position `p`.
pub fn two_m_at(two_j: u32, p: usize) -> i32 {
    2 * p as i32 - two_j as i32
}

fn check_size(two_j: u32) -> Result<()> {
    if two_j > N_MAX {
        return Err(Error::Dimension(format!(
            "N = {two_j} exceeds the supported maximum N = {N_MAX}"
        )));
    }
    Ok(())
}

/// Normalized pure state of `N = two_j` photons.
#[derive(Clone, Debug, PartialEq)]
pub struct JState {
    two_j: u32,
    amps: Vec<Complex64>,
    label: String,
}

impl JState {
    /// Wraps already-normalized amplitudes ordered `m = -j..=j`.
    pub fn new(two_j: u32, amps: Vec<Complex64>) -> Result<Self> {
        check_size(two_j)?;
        if amps.len() != two_j as usize + 1 {
            return Err(Error::InvalidInput(format!(
                "spin j = {} needs {} amplitudes, got {}",
                f64::from(two_j) / 2.0,
                two_j + 1,
                amps.len()
            )));
        }
        let norm_sqr: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidInput(format!(
                "state is not normalized (|c|^2 sums to {norm_sqr})"
            )));
        }
        Ok(Self {
            two_j,
            amps,
            label: "custom".into(),
        })
    }

    /// Normalizes `amps` and fixes the global phase so the first amplitude
    /// that is not rounding noise is real and positive.
    pub fn from_unnormalized(two_j: u32, amps: Vec<Complex64>) -> Result<Self> {
        let n = linalg::norm(&amps);
        if !n.is_finite() || n == 0.0 {
            return Err(Error::Numeric(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        let largest = amps.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let lead = amps
            .iter()
            .find(|c| c.norm() > 1e-12 * largest)
            .copied()
            .expect("nonzero vector has a leading amplitude");
        let phase = lead.conj() / lead.norm();
        let amps = amps.into_iter().map(|c| c * phase / n).collect();
        Self::new(two_j, amps)
    }

    /// `|j, m>`.
    pub fn basis(two_j: u32, two_m: i32) -> Result<Self> {
        check_size(two_j)?;
        let p = position(two_j, two_m)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); two_j as usize + 1];
        amps[p] = Complex64::new(1.0, 0.0);
        Self::new(two_j, amps)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn n_photons(&self) -> u32 {
        self.two_j
    }

    pub fn j(&self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, two_m: i32) -> Result<Complex64> {
        Ok(self.amps[position(self.two_j, two_m)?])
    }

    /// `(m, c_m)` pairs in storage order.
    pub fn components(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(|(p, &c)| (f64::from(two_m_at(self.two_j, p)) / 2.0, c))
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.amps)
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        linalg::inner(&self.amps, &other.amps)
    }

    /// `<self| op |self>`.
    pub fn expectation(&self, op: &CMatrix) -> Complex64 {
        linalg::inner(&self.amps, &op.matvec(&self.amps))
    }

    fn with_amps(&self, amps: Vec<Complex64>) -> Self {
        Self {
            two_j: self.two_j,
            amps,
            label: self.label.clone(),
        }
    }

    /// Applies a matrix in the `|j, m>` basis without renormalizing.
    pub fn apply(&self, op: &CMatrix) -> Self {
        self.with_amps(op.matvec(&self.amps))
    }
}

/// Maps `(m, n)` onto the region `m >= |n|` where the closed form has
/// non-negative Jacobi parameters, using `d_{mn} = (-1)^{m-n} d_{nm} = d_{-n,-m}`.
fn canonical_indices(two_m: i32, two_n: i32) -> (i32, i32, f64) {
    let sign_mn = if ((two_m - two_n) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    let big = two_m.abs().max(two_n.abs());
    if two_m == big {
        (two_m, two_n, 1.0)
    } else if two_n == big {
        (two_n, two_m, sign_mn)
    } else if two_m == -big {
        (-two_m, -two_n, sign_mn)
    } else {
        (-two_n, -two_m, 1.0)
    }
}

/// Wigner small-d element `d^j_{mn}(theta)`, all indices doubled.
///
/// Uses the Jacobi-polynomial closed form with the `(1 -+ cos theta)`
/// prefactors written as powers of `sin(theta/2)` and `cos(theta/2)`, so it is
/// exact at `theta = 0` and `theta = pi`.
pub fn wigner_d(two_j: u32, two_m: i32, two_n: i32, theta: f64) -> Result<f64> {
    check_size(two_j)?;
    position(two_j, two_m)?;
    position(two_j, two_n)?;
    Ok(wigner_d_unchecked(two_j, two_m, two_n, theta))
}

fn wigner_d_unchecked(two_j: u32, two_m: i32, two_n: i32, theta: f64) -> f64 {
    let (tm, tn, sign) = canonical_indices(two_m, two_n);
    let tj = two_j as i32;
    // All of these are integers once m >= |n|.
    let j_minus_m = ((tj - tm) / 2) as i64;
    let j_plus_m = ((tj + tm) / 2) as i64;
    let j_minus_n = ((tj - tn) / 2) as i64;
    let j_plus_n = ((tj + tn) / 2) as i64;
    let m_minus_n = (tm - tn) / 2;
    let m_plus_n = (tm + tn) / 2;

    let log_ratio = 0.5
        * (log_factorial_i(j_minus_m) + log_factorial_i(j_plus_m)
            - log_factorial_i(j_minus_n)
            - log_factorial_i(j_plus_n));
    let (s, c) = (theta / 2.0).sin_cos();
    let jac = jacobi_poly_recurrence(
        j_minus_m as u32,
        f64::from(m_minus_n),
        f64::from(m_plus_n),
        theta.cos(),
    )
    .expect("canonical Jacobi parameters are non-negative");
    let parity = if m_minus_n % 2 == 0 { 1.0 } else { -1.0 };
    sign * parity * log_ratio.exp() * s.powi(m_minus_n) * c.powi(m_plus_n) * jac
}

/// Dense `(2j+1) x (2j+1)` matrix of `d^j_{mn}(theta)`, row `m`, column `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerBlock {
    two_j: u32,
    theta: f64,
    d: Vec<f64>,
}

impl WignerBlock {
    pub fn new(two_j: u32, theta: f64) -> Result<Self> {
        check_size(two_j)?;
        let dim = two_j as usize + 1;
        let mut d = vec![0.0; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                d[r * dim + c] =
                    wigner_d_unchecked(two_j, two_m_at(two_j, r), two_m_at(two_j, c), theta);
            }
        }
        Ok(Self { two_j, theta, d })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    /// Entry by storage positions.
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.d[row * self.dim() + col]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.d
    }

    /// `d/dtheta d^j(theta) = (-i J_y) d^j(theta)`; `-i J_y` is real and
    /// tridiagonal, so the result is again a real block.
    pub fn derivative(&self) -> Vec<f64> {
        let dim = self.dim();
        let gen = minus_i_jy_bands(self.two_j);
        let mut out = vec![0.0; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let mut acc = 0.0;
                if r > 0 {
                    acc += gen.lower[r] * self.at(r - 1, c);
                }
                if r + 1 < dim {
                    acc += gen.upper[r] * self.at(r + 1, c);
                }
                out[r * dim + c] = acc;
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let dim = self.dim();
        assert_eq!(v.len(), dim, "dimension mismatch");
        (0..dim)
            .map(|r| {
                self.d[r * dim..(r + 1) * dim]
                    .iter()
                    .zip(v)
                    .map(|(&d, &x)| x * d)
                    .sum()
            })
            .collect()
    }

    /// `(d/dtheta d^j(theta)) v`, computed as `(-i J_y) (d^j v)`.
    pub fn apply_derivative(&self, v: &[Complex64]) -> Vec<Complex64> {
        minus_i_jy_apply(self.two_j, &self.apply(v))
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Vec<f64> {
        let dim = self.dim();
        assert_eq!(dim, other.dim(), "dimension mismatch");
        let mut out = vec![0.0; dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.at(r, k);
                for c in 0..dim {
                    out[r * dim + c] += a * other.at(k, c);
                }
            }
        }
        out
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_fn(self.dim(), |r, c| Complex64::new(self.at(r, c), 0.0))
    }
}

/// Sub- and super-diagonal of the real matrix `-i J_y`, indexed by row.
struct Bands {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

fn minus_i_jy_bands(two_j: u32) -> Bands {
    let dim = two_j as usize + 1;
    let j = f64::from(two_j) / 2.0;
    let mut lower = vec![0.0; dim];
    let mut upper = vec![0.0; dim];
    for r in 0..dim {
        let m = f64::from(two_m_at(two_j, r)) / 2.0;
        if r > 0 {
            // <m| J_+ |m-1> = sqrt((j-m+1)(j+m))
            lower[r] = -0.5 * ((j - m + 1.0) * (j + m)).sqrt();
        }
        if r + 1 < dim {
            // <m| J_- |m+1> = sqrt((j+m+1)(j-m))
            upper[r] = 0.5 * ((j + m + 1.0) * (j - m)).sqrt();
        }
    }
    Bands { lower, upper }
}

/// `(-i J_y) v`, the generator of `exp(-i theta J_y)` acting on a vector.
pub fn minus_i_jy_apply(two_j: u32, v: &[Complex64]) -> Vec<Complex64> {
    let dim = two_j as usize + 1;
    assert_eq!(v.len(), dim, "dimension mismatch");
    let gen = minus_i_jy_bands(two_j);
    (0..dim)
        .map(|r| {
            let mut acc = Complex64::new(0.0, 0.0);
            if r > 0 {
                acc += v[r - 1] * gen.lower[r];
            }
            if r + 1 < dim {
                acc += v[r + 1] * gen.upper[r];
            }
            acc
        })
        .collect()
}

/// `exp(-i theta J_y)`.
pub fn rotate_y(state: &JState, theta: f64) -> Result<JState> {
    let block = WignerBlock::new(state.two_j, theta)?;
    Ok(state.with_amps(block.apply(&state.amps)))
}

/// `exp(-i theta J_z)`: `c_m -> exp(-i theta m) c_m`.
pub fn rotate_z(state: &JState, theta: f64) -> JState {
    let amps = state
        .components()
        .map(|(m, c)| c * Complex64::from_polar(1.0, -theta * m))
        .collect();
    state.with_amps(amps)
}

/// `exp(-i theta J_x) = exp(+i pi/2 J_z) exp(-i theta J_y) exp(-i pi/2 J_z)`.
pub fn rotate_x(state: &JState, theta: f64) -> Result<JState> {
    let s = rotate_z(state, FRAC_PI_2);
    let s = rotate_y(&s, theta)?;
    Ok(rotate_z(&s, -FRAC_PI_2))
}

/// General lossless beam splitter `exp(-i alpha J_z) exp(-i beta J_y) exp(-i gamma J_z)`.
pub fn rotate_euler(state: &JState, alpha: f64, beta: f64, gamma: f64) -> Result<JState> {
    let s = rotate_z(state, gamma);
    let s = rotate_y(&s, beta)?;
    Ok(rotate_z(&s, alpha))
}

/// Matrix of `exp(-i theta J_x)` in the `|j, m>` basis.
pub fn rotation_x_matrix(two_j: u32, theta: f64) -> Result<CMatrix> {
    let block = WignerBlock::new(two_j, theta)?;
    let phase = |p: usize| {
        let m = f64::from(two_m_at(two_j, p)) / 2.0;
        Complex64::from_polar(1.0, FRAC_PI_2 * m)
    };
    Ok(CMatrix::from_fn(block.dim(), |r, c| {
        phase(r) * block.at(r, c) * phase(c).conj()
    }))
}

/// `J_z = diag(m)`.
pub fn jz_matrix(two_j: u32) -> CMatrix {
    let diag: Vec<Complex64> = (0..=two_j as usize)
        .map(|p| Complex64::new(f64::from(two_m_at(two_j, p)) / 2.0, 0.0))
        .collect();
    CMatrix::from_diagonal(&diag)
}

/// `J_+` with `<m+1| J_+ |m> = sqrt((j-m)(j+m+1))`.
pub fn jplus_matrix(two_j: u32) -> CMatrix {
    let dim = two_j as usize + 1;
    let j = f64::from(two_j) / 2.0;
    let mut out = CMatrix::zeros(dim);
    for p in 0..dim.saturating_sub(1) {
        let m = f64::from(two_m_at(two_j, p)) / 2.0;
        out[(p + 1, p)] = Complex64::new(((j - m) * (j + m + 1.0)).sqrt(), 0.0);
    }
    out
}

/// `J_x = (J_+ + J_-) / 2`.
pub fn jx_matrix(two_j: u32) -> CMatrix {
    let jp = jplus_matrix(two_j);
    jp.add(&jp.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// `J_y = (J_+ - J_-) / (2i)`.
pub fn jy_matrix(two_j: u32) -> CMatrix {
    let jp = jplus_matrix(two_j);
    jp.sub(&jp.adjoint()).scale(Complex64::new(0.0, -0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{rngs::StdRng, Rng, SeedableRng};
    use std::f64::consts::{PI, SQRT_2};

    const C0: Complex64 = Complex64::new(0.0, 0.0);

    fn random_state(two_j: u32, rng: &mut StdRng) -> JState {
        let amps = (0..=two_j)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        JState::from_unnormalized(two_j, amps).unwrap()
    }

    /// Independent route to `exp(-i theta J)`: Hermitian eigendecomposition.
    fn exp_oracle(gen: &CMatrix, theta: f64) -> CMatrix {
        linalg::hermitian_eigen(gen).unwrap().unitary_exp(theta)
    }

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn position_round_trip_and_errors() {
        assert_eq!(position(3, -3).unwrap(), 0);
        assert_eq!(position(3, 3).unwrap(), 3);
        assert_eq!(two_m_at(3, 2), 1);
        assert!(position(2, 1).is_err());
        assert!(position(2, 4).is_err());
    }

    #[test]
    fn jstate_validation() {
        assert!(JState::new(2, vec![C0; 2]).is_err());
        assert!(JState::new(1, vec![Complex64::new(1.0, 0.0); 2]).is_err());
        assert!(matches!(
            JState::basis(N_MAX + 2, 0),
            Err(Error::Dimension(_))
        ));
        let s =
            JState::from_unnormalized(1, vec![Complex64::new(0.0, 3.0), Complex64::new(4.0, 0.0)])
                .unwrap();
        assert_relative_eq!(s.amps()[0].re, 0.6, max_relative = 1e-15);
        assert_eq!(s.amps()[0].im, 0.0);
        assert_relative_eq!(s.amps()[1].im, -0.8, max_relative = 1e-15);
    }

    #[test]
    fn wigner_d_examples() {
        for theta in [0.0, 0.3, 1.9, PI, -2.2] {
            assert_relative_eq!(
                wigner_d(2, 0, 0, theta).unwrap(),
                f64::cos(theta),
                epsilon = 1e-15
            );
            for two_j in 0..=12u32 {
                let expect = (theta / 2.0).cos().powi(two_j as i32);
                assert_relative_eq!(
                    wigner_d(two_j, two_j as i32, two_j as i32, theta).unwrap(),
                    expect,
                    epsilon = 1e-14
                );
            }
        }
        for two_j in 0..=20u32 {
            for p in 0..=two_j as usize {
                for q in 0..=two_j as usize {
                    let v = wigner_d(two_j, two_m_at(two_j, p), two_m_at(two_j, q), 0.0).unwrap();
                    let expect = if p == q { 1.0 } else { 0.0 };
                    assert!((v - expect).abs() <= 1e-14);
                }
            }
        }
        assert!(matches!(wigner_d(2, 4, 0, 0.1), Err(Error::Range(_))));
        assert!(matches!(wigner_d(2, 1, 0, 0.1), Err(Error::Range(_))));
    }

    #[test]
    fn wigner_d_matches_matrix_exponential() {
        for two_j in 0..=12u32 {
            let jy = jy_matrix(two_j);
            for theta in [0.37, 1.4, 2.9, -0.8] {
                let oracle = exp_oracle(&jy, theta);
                let block = WignerBlock::new(two_j, theta).unwrap();
                for r in 0..block.dim() {
                    for c in 0..block.dim() {
                        assert!(
                            (oracle[(r, c)] - block.at(r, c)).norm() < 1e-11,
                            "two_j={two_j} theta={theta} ({r},{c})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn spin_one_quarter_turn() {
        // d^1_{m,0}(pi/2) over m = -1, 0, 1
        let s = rotate_y(&JState::basis(2, 0).unwrap(), FRAC_PI_2).unwrap();
        let expect = [1.0 / SQRT_2, 0.0, -1.0 / SQRT_2];
        for (a, e) in s.amps().iter().zip(expect) {
            assert!((a - e).norm() < 1e-15);
        }
    }

    #[test]
    fn block_orthogonality_and_symmetries() {
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..40 {
            let two_j = rng.gen_range(0..=20u32);
            let theta = rng.gen_range(-PI..PI);
            let b = WignerBlock::new(two_j, theta).unwrap();
            let dim = b.dim();
            for r in 0..dim {
                for c in 0..dim {
                    let dot: f64 = (0..dim).map(|k| b.at(k, r) * b.at(k, c)).sum();
                    let expect = if r == c { 1.0 } else { 0.0 };
                    assert!((dot - expect).abs() < 1e-11, "orthogonality j2={two_j}");
                    let (tm, tn) = (two_m_at(two_j, r), two_m_at(two_j, c));
                    let sign = if ((tm - tn) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    let d = b.at(r, c);
                    assert!((d - sign * b.at(c, r)).abs() < 1e-12);
                    let (nr, nc) = (dim - 1 - c, dim - 1 - r);
                    assert!((d - b.at(nr, nc)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn block_composition() {
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..30 {
            let two_j = rng.gen_range(0..=20u32);
            let (t1, t2) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let prod = WignerBlock::new(two_j, t1)
                .unwrap()
                .compose(&WignerBlock::new(two_j, t2).unwrap());
            let sum = WignerBlock::new(two_j, t1 + t2).unwrap();
            for (a, b) in prod.iter().zip(sum.as_slice()) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-5;
        for two_j in [1u32, 4, 9] {
            let theta = 0.71;
            let d = WignerBlock::new(two_j, theta).unwrap().derivative();
            let up = WignerBlock::new(two_j, theta + h).unwrap();
            let dn = WignerBlock::new(two_j, theta - h).unwrap();
            for (k, dv) in d.iter().enumerate() {
                let fd = (up.as_slice()[k] - dn.as_slice()[k]) / (2.0 * h);
                assert!((dv - fd).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn rotations_are_unitary() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..60 {
            let two_j = rng.gen_range(0..=40u32);
            let s = random_state(two_j, &mut rng);
            let t = rng.gen_range(-4.0..4.0);
            for r in [
                rotate_y(&s, t).unwrap(),
                rotate_z(&s, t),
                rotate_x(&s, t).unwrap(),
                rotate_euler(&s, t, 0.4 * t, -t).unwrap(),
            ] {
                assert!((r.norm() - 1.0).abs() < 1e-12, "two_j = {two_j}");
            }
        }
    }

    #[test]
    fn rotate_y_matches_exponential_and_composes() {
        let mut rng = StdRng::seed_from_u64(13);
        for two_j in 0..=12u32 {
            let s = random_state(two_j, &mut rng);
            let t = rng.gen_range(-PI..PI);
            let oracle = exp_oracle(&jy_matrix(two_j), t).matvec(s.amps());
            assert!(max_diff(rotate_y(&s, t).unwrap().amps(), &oracle) < 1e-10);
            let t2 = rng.gen_range(-PI..PI);
            let twice = rotate_y(&rotate_y(&s, t).unwrap(), t2).unwrap();
            let once = rotate_y(&s, t + t2).unwrap();
            assert!(max_diff(twice.amps(), once.amps()) < 1e-10);
            assert!(max_diff(rotate_y(&s, 0.0).unwrap().amps(), s.amps()) < 1e-14);
        }
    }

    #[test]
    fn rotate_z_examples() {
        let s = JState::basis(3, 1).unwrap();
        let r = rotate_z(&s, 0.8);
        assert!((r.amp(1).unwrap() - Complex64::from_polar(1.0, -0.4)).norm() < 1e-15);
        let mut rng = StdRng::seed_from_u64(2);
        let s = random_state(6, &mut rng);
        assert!(max_diff(rotate_z(&s, 2.0 * PI).amps(), s.amps()) < 1e-14);
        assert_eq!(rotate_z(&s, 0.0), s);
    }

    #[test]
    fn rotate_x_matches_exponential_and_inverts() {
        let mut rng = StdRng::seed_from_u64(17);
        for two_j in 0..=10u32 {
            let s = random_state(two_j, &mut rng);
            let t = rng.gen_range(-PI..PI);
            let oracle = exp_oracle(&jx_matrix(two_j), t).matvec(s.amps());
            assert!(max_diff(rotate_x(&s, t).unwrap().amps(), &oracle) < 1e-10);
            let back = rotate_x(&rotate_x(&s, FRAC_PI_2).unwrap(), -FRAC_PI_2).unwrap();
            assert!(max_diff(back.amps(), s.amps()) < 1e-13);
            let m = rotation_x_matrix(two_j, t).unwrap();
            assert!(max_diff(&m.matvec(s.amps()), &oracle) < 1e-10);
        }
    }

    #[test]
    fn balanced_beam_splitter_mode_matrix() {
        // For one photon, |1/2, +1/2> = |1>_a and |1/2, -1/2> = |1>_b; the
        // state-space matrix coincides with the mode matrix (1/sqrt2)[[1,-i],[-i,1]].
        let m = rotation_x_matrix(1, FRAC_PI_2).unwrap();
        let r = 1.0 / SQRT_2;
        let expect = CMatrix::from_fn(2, |a, b| {
            if a == b {
                Complex64::new(r, 0.0)
            } else {
                Complex64::new(0.0, -r)
            }
        });
        assert!(m.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn interferometer_composes_to_y_rotation() {
        // BS_- . phase . BS_+ = exp(i pi/2 J_x) exp(-i phi J_z) exp(-i pi/2 J_x) = exp(-i phi J_y)
        let mut rng = StdRng::seed_from_u64(29);
        for two_j in 1..=10u32 {
            let s = random_state(two_j, &mut rng);
            let phi = rng.gen_range(-PI..PI);
            let inside = rotate_z(&rotate_x(&s, FRAC_PI_2).unwrap(), phi);
            let out = rotate_x(&inside, -FRAC_PI_2).unwrap();
            assert!(max_diff(out.amps(), rotate_y(&s, phi).unwrap().amps()) < 1e-12);
        }
    }

    #[test]
    fn angular_momentum_algebra() {
        for two_j in 0..=20u32 {
            let (jx, jy, jz) = (jx_matrix(two_j), jy_matrix(two_j), jz_matrix(two_j));
            let comm = jx.matmul(&jy).sub(&jy.matmul(&jx));
            assert!(comm.max_abs_diff(&jz.scale(Complex64::new(0.0, 1.0))) < 1e-12);
            let j = f64::from(two_j) / 2.0;
            let casimir = jx.matmul(&jx).add(&jy.matmul(&jy)).add(&jz.matmul(&jz));
            let expect =
                CMatrix::identity(two_j as usize + 1).scale(Complex64::new(j * (j + 1.0), 0.0));
            assert!(casimir.max_abs_diff(&expect) < 1e-12);
            for p in 0..=two_j as usize {
                let m = f64::from(two_m_at(two_j, p)) / 2.0;
                assert_eq!(jz[(p, p)].re, m);
            }
        }
    }
}
