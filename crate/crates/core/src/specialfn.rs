//! Factorials, rising factorials and Jacobi polynomials.
//!
//! Factorial ratios are formed in the log domain and exponentiated once, which
//! keeps every formula in this crate finite for photon numbers up to
//! [`N_MAX`].

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest supported photon number.
pub const N_MAX: u32 = 40;

/// Largest argument covered by the log-factorial table. Wigner-d and
/// Q-matrix formulas never need more than `4 N + 4`.
pub const K_MAX: usize = 4 * N_MAX as usize + 4;

/// `values[k] = ln(k!)` for `k = 0..=K_MAX`.
#[derive(Debug)]
pub struct LogFactorialTable {
    values: Vec<f64>,
}

impl LogFactorialTable {
    fn build(k_max: usize) -> Self {
        let mut values = Vec::with_capacity(k_max + 1);
        let mut acc = 0.0f64;
        values.push(0.0);
        for k in 1..=k_max {
            acc += (k as f64).ln();
            values.push(acc);
        }
        Self { values }
    }

    /// Process-wide table, built on first use.
    pub fn global() -> &'static Self {
        static TABLE: OnceLock<LogFactorialTable> = OnceLock::new();
        TABLE.get_or_init(|| Self::build(K_MAX))
    }

    pub fn k_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> Result<f64> {
        self.values.get(k).copied().ok_or_else(|| {
            Error::Range(format!(
                "log_factorial({k}) exceeds table size {}",
                self.k_max()
            ))
        })
    }
}

/// `ln(k!)`.
pub fn log_factorial(k: usize) -> Result<f64> {
    LogFactorialTable::global().get(k)
}

pub(crate) fn log_factorial_i(k: i64) -> f64 {
    debug_assert!(k >= 0);
    LogFactorialTable::global()
        .get(k as usize)
        .expect("factorial argument inside the supported photon range")
}

/// Rising factorial `p (p+1) ... (p+q-1)`; the empty product for `q = 0` is 1.
pub fn pochhammer(p: f64, q: u32) -> f64 {
    (0..q).map(|k| p + f64::from(k)).product()
}

/// Jacobi polynomial `P_n^(alpha, beta)(x)` as the finite sum
/// `sum_s C(n+alpha, n-s) C(n+beta, s) ((x-1)/2)^s ((x+1)/2)^(n-s)`.
///
/// The generalized binomials are rising products, so the expression is a
/// polynomial in `alpha` and `beta` and stays valid for negative integer
/// parameters where the orthogonality weight does not exist (the loss matrix
/// needs `alpha = -2j-1`).
pub fn jacobi_poly(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    jacobi_poly_halves(n, alpha, beta, (x - 1.0) / 2.0, (x + 1.0) / 2.0)
}

/// [`jacobi_poly`] with `(x-1)/2` and `(x+1)/2` supplied directly, for
/// callers that know them more accurately than `x` itself.
pub fn jacobi_poly_halves(n: u32, alpha: f64, beta: f64, xm: f64, xp: f64) -> f64 {
    let nf = f64::from(n);
    let mut sum = 0.0;
    for s in 0..=n {
        let sf = f64::from(s);
        let left = pochhammer(alpha + sf + 1.0, n - s) / log_factorial_i(i64::from(n - s)).exp();
        let right = pochhammer(nf + beta - sf + 1.0, s) / log_factorial_i(i64::from(s)).exp();
        sum += left * right * xm.powi(s as i32) * xp.powi((n - s) as i32);
    }
    sum
}

/// Jacobi polynomial by the standard three-term recurrence in the degree.
///
/// Only valid for `alpha, beta > -1`; it is the numerically stable route for
/// the non-negative parameters that appear in Wigner-d elements.
pub fn jacobi_poly_recurrence(n: u32, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(Error::InvalidInput(format!(
            "recurrence needs alpha, beta > -1 (got {alpha}, {beta})"
        )));
    }
    let ab = alpha + beta;
    let mut p_prev = 1.0;
    if n == 0 {
        return Ok(p_prev);
    }
    let mut p = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = f64::from(k);
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + alpha * alpha - beta * beta);
        let a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
        let next = (a2 * p - a3 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    Ok(p)
}
