//! Composite Simpson quadrature on uniform grids, in both point-data and
//! callable form, plus cumulative (antiderivative) variants.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::scalar::Real;

/// Composite Simpson over node data with spacing `h`; `values.len()` odd.
pub fn simpson<F: Real>(values: &[F], h: F) -> F {
    debug_assert!(values.len() >= 3 && !values.len().is_multiple_of(2));
    let four = F::lit(4.0);
    let two = F::lit(2.0);
    let mut acc = values[0] + values[values.len() - 1];
    for (i, &v) in values.iter().enumerate().skip(1).take(values.len() - 2) {
        acc += if i.is_multiple_of(2) {
            two * v
        } else {
            four * v
        };
    }
    acc * h / F::lit(3.0)
}

pub fn simpson_grid<F: Real>(g: &GridFunction<F>) -> F {
    simpson(g.values(), g.spacing())
}

/// Simpson with midpoint refinement: every grid interval is integrated with
/// its own three-point rule, evaluating `f` at the interval midpoints. Fourth
/// order for smooth `f` at every node of the coarse grid.
pub fn simpson_fn<F: Real>(f: impl Fn(F) -> F, a: F, b: F, m: usize) -> Result<F> {
    Ok(*cumulative_simpson_fn(f, a, b, m)?.last().unwrap())
}

/// Cumulative antiderivative `x_i -> integral from a to x_i of f`, one
/// midpoint-refined Simpson panel per grid interval.
pub fn cumulative_simpson_fn<F: Real>(f: impl Fn(F) -> F, a: F, b: F, m: usize) -> Result<Vec<F>> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "interval count m={m} must be even and >= 2"
        )));
    }
    let h = (b - a) / F::from_usize(m).unwrap();
    let sixth = h / F::lit(6.0);
    let four = F::lit(4.0);
    let half = F::lit(0.5);
    let mut out = Vec::with_capacity(m + 1);
    let mut acc = F::zero();
    out.push(acc);
    let mut left = f(a);
    for i in 0..m {
        let xl = a + h * F::from_usize(i).unwrap();
        let mid = f(xl + half * h);
        let right = f(xl + h);
        if !left.is_finite() || !mid.is_finite() || !right.is_finite() {
            return Err(Error::Quadrature(format!(
                "non-finite integrand near x={xl}"
            )));
        }
        acc += sixth * (left + four * mid + right);
        out.push(acc);
        left = right;
    }
    Ok(out)
}

/// Cumulative antiderivative from node data only. Even nodes accumulate
/// composite Simpson panels; odd nodes add the one-sided three-point rule
/// `h/12 (5 f_i + 8 f_{i+1} - f_{i+2})` on top of the previous even node.
pub fn cumulative_simpson<F: Real>(values: &[F], h: F) -> Result<Vec<F>> {
    if values.len() < 3 || values.len().is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "node count {} must be odd and >= 3",
            values.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Quadrature("non-finite node value".into()));
    }
    let third = h / F::lit(3.0);
    let twelfth = h / F::lit(12.0);
    let four = F::lit(4.0);
    let five = F::lit(5.0);
    let eight = F::lit(8.0);
    let mut out = vec![F::zero(); values.len()];
    for i in (2..values.len()).step_by(2) {
        out[i] = out[i - 2] + third * (values[i - 2] + four * values[i - 1] + values[i]);
    }
    for i in (1..values.len()).step_by(2) {
        out[i] = out[i - 1] + twelfth * (five * values[i - 1] + eight * values[i] - values[i + 1]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_exact_for_cubics() {
        let g = GridFunction::sample(0.0, 2.0, 8, |x: f64| x * x * x - x).unwrap();
        // integral of x^3 - x over [0,2] = 4 - 2 = 2
        assert!((simpson_grid(&g) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn simpson_fn_matches_analytic_sine() {
        let v = simpson_fn(|x: f64| x.sin(), 0.0, std::f64::consts::PI, 128).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn cumulative_fn_fourth_order() {
        // error against the analytic antiderivative shrinks ~16x per doubling
        let err = |m: usize| {
            let cum = cumulative_simpson_fn(|x: f64| x.cos(), 0.0, 2.0, m).unwrap();
            cum.iter()
                .enumerate()
                .map(|(i, &v)| (v - (2.0 * i as f64 / m as f64).sin()).abs())
                .fold(0.0f64, f64::max)
        };
        let (e1, e2) = (err(64), err(128));
        let ratio = e1 / e2;
        assert!(ratio > 12.0 && ratio < 20.0, "ratio {ratio}");
    }

    #[test]
    fn cumulative_node_data_handles_odd_nodes() {
        let m = 512;
        let h = 2.0 / m as f64;
        let values: Vec<f64> = (0..=m).map(|i| (i as f64 * h).cos()).collect();
        let cum = cumulative_simpson(&values, h).unwrap();
        for (i, &v) in cum.iter().enumerate() {
            let x = i as f64 * h;
            assert!((v - x.sin()).abs() < 1e-9, "node {i}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(cumulative_simpson(&[0.0f64, 1.0], 0.1).is_err());
        assert!(cumulative_simpson(&[0.0f64, f64::INFINITY, 0.0], 0.1).is_err());
        assert!(simpson_fn(|_: f64| f64::NAN, 0.0, 1.0, 4).is_err());
    }
}
