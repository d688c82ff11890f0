//! Scalar minimization over the phase interval `(0, pi)`.

use std::f64::consts::PI;

/// Number of coarse phase samples.
pub const GRID_POINTS: usize = 2001;

/// Smallest phase sampled; stands in for the open endpoint at 0.
pub const PHI_EDGE: f64 = 1e-6;

/// Bracket width at which golden-section refinement stops.
pub const PHI_TOL: f64 = 1e-10;

/// `{1e-6, k pi/2000 for k = 1..1999, pi - 1e-6}`.
pub fn phase_grid() -> Vec<f64> {
    let steps = GRID_POINTS - 1;
    (0..GRID_POINTS)
        .map(|k| match k {
            0 => PHI_EDGE,
            k if k == steps => PI - PHI_EDGE,
            k => k as f64 * PI / steps as f64,
        })
        .collect()
}

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// Returns the best abscissa seen and its value. Non-finite values of `f`
/// are treated as `+inf`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let eval = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (eval(c), eval(d));
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Global minimum of `f` over `grid`: the best finite sample is refined by
/// golden section inside its neighbouring grid cells.
///
/// `None` when no sample is finite.
pub fn minimize_on_grid(f: impl Fn(f64) -> f64, grid: &[f64], tol: f64) -> Option<(f64, f64)> {
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    refine_best(f, grid, &values, tol)
}

/// Golden-section refinement around the best finite entry of `values`,
/// which holds `f` sampled on `grid`.
pub fn refine_best(
    f: impl Fn(f64) -> f64,
    grid: &[f64],
    values: &[f64],
    tol: f64,
) -> Option<(f64, f64)> {
    let best = values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)?;
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let (x, fx) = golden_section(f, lo, hi, tol);
    if fx < values[best] {
        Some((x, fx))
    } else {
        Some((grid[best], values[best]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn grid_shape() {
        let g = phase_grid();
        assert_eq!(g.len(), GRID_POINTS);
        assert_eq!(g[0], PHI_EDGE);
        assert_eq!(g[GRID_POINTS - 1], PI - PHI_EDGE);
        assert_relative_eq!(g[1000], PI / 2.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn golden_section_on_parabola() {
        let (x, fx) = golden_section(|x| (x - 0.3).powi(2) + 2.0, 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert_relative_eq!(fx, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn golden_section_skips_nan() {
        let f = |x: f64| if x > 0.8 { f64::NAN } else { (x - 0.5).abs() };
        let (x, _) = golden_section(f, 0.0, 1.0, 1e-10);
        assert!((x - 0.5).abs() < 1e-9);
    }

    #[test]
    fn grid_minimum_finds_global_basin() {
        // two basins; the deeper one is narrow
        let f =
            |x: f64| 1.0 - (-(x - 0.5).powi(2)).exp() - 1.5 * (-((x - 2.71) / 0.01).powi(2)).exp();
        let (x, fx) = minimize_on_grid(f, &phase_grid(), PHI_TOL).unwrap();
        assert!((x - 2.71).abs() < 1e-5, "{x}");
        assert!(fx <= f(2.71));
        assert!(fx < -0.4);
    }

    #[test]
    fn grid_minimum_at_edge() {
        let (x, fx) = minimize_on_grid(|x| x, &phase_grid(), PHI_TOL).unwrap();
        assert!(x <= PHI_EDGE);
        assert!(fx <= PHI_EDGE);
    }

    #[test]
    fn all_infinite_is_none() {
        assert!(minimize_on_grid(|_| f64::INFINITY, &phase_grid(), PHI_TOL).is_none());
    }
}
