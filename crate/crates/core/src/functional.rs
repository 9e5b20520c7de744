//! Quadrature evaluation of the weighted functional
//! `K(v) = integral of theta (H(v) - F v)`, its directional derivative,
//! the exact quartic expansion of an increment, and Lp norms on grid data.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::problem::{eval_h, Problem};
use crate::quadrature::simpson;
use crate::scalar::Real;

/// Norm exponent: a finite `p >= 1` or the sup norm. The sup norm is a
/// distinct value, not a large float.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PNorm<F> {
    Finite(F),
    Infinity,
}

impl<F: Real> PNorm<F> {
    pub fn validate(&self) -> Result<()> {
        match self {
            PNorm::Finite(p) if *p < F::one() || !p.is_finite() => Err(Error::Domain(format!(
                "norm exponent must satisfy p >= 1, got {p}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn finite(&self) -> Option<F> {
        match self {
            PNorm::Finite(p) => Some(*p),
            PNorm::Infinity => None,
        }
    }
}

impl<F: Real> fmt::Display for PNorm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PNorm::Finite(p) => write!(f, "{p}"),
            PNorm::Infinity => write!(f, "inf"),
        }
    }
}

impl<F: Real> FromStr for PNorm<F> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "INF" | "infinity" => Ok(PNorm::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::Domain(format!("cannot parse norm exponent '{other}'")))?;
                let p = PNorm::Finite(F::lit(p));
                p.validate()?;
                Ok(p)
            }
        }
    }
}

/// The exact quartic decomposition of `K(v + h) - K(v)`:
///
/// ```text
///   K(v+h) = K(v) + t1 + t2 + t3 + t4,
///   t1 = integral theta [v (v^2/2 - lambda) - F] h
///   t2 = integral 1/2 theta (3/2 v^2 - lambda) h^2
///   t3 = integral 1/2 theta v h^3
///   t4 = integral 1/8 theta h^4
/// ```
///
/// The identity is algebraic, so with a shared quadrature rule it holds to
/// rounding, not merely to discretization error.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TaylorTerms<F> {
    pub k_at_v: F,
    pub t1: F,
    pub t2: F,
    pub t3: F,
    pub t4: F,
    pub k_at_v_plus_h: F,
}

impl<F: Real> TaylorTerms<F> {
    pub fn delta(&self) -> F {
        self.t1 + self.t2 + self.t3 + self.t4
    }

    pub fn identity_residual(&self) -> F {
        (self.k_at_v_plus_h - self.k_at_v - self.delta()).abs()
    }
}

fn common_grid<F: Real>(
    problem: &Problem<F>,
    f_pot: &GridFunction<F>,
    v: &GridFunction<F>,
) -> Result<GridFunction<F>> {
    problem.require_interval(f_pot, "potential")?;
    f_pot.require_same_grid(v, "potential vs profile")?;
    problem.theta_on(v.intervals())
}

/// `K(v) = integral of theta (H(v) - F v)` by composite Simpson.
pub fn eval_k<F: Real>(
    problem: &Problem<F>,
    f_pot: &GridFunction<F>,
    v: &GridFunction<F>,
) -> Result<F> {
    let theta = common_grid(problem, f_pot, v)?;
    let lambda = problem.lambda();
    let vals: Vec<F> = (0..v.values().len())
        .map(|i| theta.value(i) * (eval_h(v.value(i), lambda) - f_pot.value(i) * v.value(i)))
        .collect();
    Ok(simpson(&vals, v.spacing()))
}

/// Directional derivative `T_v(h) = integral theta [v (v^2/2 - lambda) - F] h`.
pub fn eval_gateaux<F: Real>(
    problem: &Problem<F>,
    f_pot: &GridFunction<F>,
    v: &GridFunction<F>,
    h: &GridFunction<F>,
) -> Result<F> {
    let theta = common_grid(problem, f_pot, v)?;
    v.require_same_grid(h, "profile vs perturbation")?;
    let lambda = problem.lambda();
    let half = F::lit(0.5);
    let vals: Vec<F> = (0..v.values().len())
        .map(|i| {
            let vi = v.value(i);
            theta.value(i) * (vi * (half * vi * vi - lambda) - f_pot.value(i)) * h.value(i)
        })
        .collect();
    Ok(simpson(&vals, v.spacing()))
}

pub fn taylor_decompose<F: Real>(
    problem: &Problem<F>,
    f_pot: &GridFunction<F>,
    v: &GridFunction<F>,
    h: &GridFunction<F>,
) -> Result<TaylorTerms<F>> {
    let theta = common_grid(problem, f_pot, v)?;
    v.require_same_grid(h, "profile vs perturbation")?;
    let lambda = problem.lambda();
    let half = F::lit(0.5);
    let eighth = F::lit(0.125);
    let three_half = F::lit(1.5);
    let n = v.values().len();
    let spacing = v.spacing();

    let mut i1 = Vec::with_capacity(n);
    let mut i2 = Vec::with_capacity(n);
    let mut i3 = Vec::with_capacity(n);
    let mut i4 = Vec::with_capacity(n);
    for i in 0..n {
        let (ti, vi, hi, fi) = (theta.value(i), v.value(i), h.value(i), f_pot.value(i));
        let h2 = hi * hi;
        i1.push(ti * (vi * (half * vi * vi - lambda) - fi) * hi);
        i2.push(half * ti * (three_half * vi * vi - lambda) * h2);
        i3.push(half * ti * vi * h2 * hi);
        i4.push(eighth * ti * h2 * h2);
    }

    let vh = v.add(h)?;
    Ok(TaylorTerms {
        k_at_v: eval_k(problem, f_pot, v)?,
        t1: simpson(&i1, spacing),
        t2: simpson(&i2, spacing),
        t3: simpson(&i3, spacing),
        t4: simpson(&i4, spacing),
        k_at_v_plus_h: eval_k(problem, f_pot, &vh)?,
    })
}

/// `(integral |h|^p)^{1/p}` by Simpson for finite `p`, max node magnitude
/// for the sup norm.
pub fn lp_norm<F: Real>(h: &GridFunction<F>, p: PNorm<F>) -> Result<F> {
    p.validate()?;
    match p {
        PNorm::Infinity => Ok(h.sup_norm()),
        PNorm::Finite(p) => {
            let vals: Vec<F> = h.values().iter().map(|v| v.abs().powf(p)).collect();
            let integral = simpson(&vals, h.spacing()).max(F::zero());
            Ok(integral.powf(F::one() / p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::func::FuncSpec;
    use crate::problem::build_potential;

    const TAU: f64 = std::f64::consts::TAU;
    const PI: f64 = std::f64::consts::PI;

    fn example_problem(m: usize) -> (Problem<f64>, GridFunction<f64>) {
        let p = Problem::new(
            0.0,
            TAU,
            3.0,
            FuncSpec::Constant { value: 1.0 },
            FuncSpec::Sine {
                amplitude: -0.5,
                frequency: 1.0,
                phase: 0.0,
            },
            m,
        )
        .unwrap();
        let f = build_potential(&p, m).unwrap();
        (p, f)
    }

    #[test]
    fn k_of_zero_profile() {
        let (p, f) = example_problem(256);
        let v = GridFunction::zeros(0.0, TAU, 256).unwrap();
        // integrand is the constant H(0) = lambda^2 / 2 = 4.5
        assert!((eval_k(&p, &f, &v).unwrap() - 9.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn k_vanishes_at_well_bottom() {
        let p = Problem::new(
            0.0,
            TAU,
            3.0,
            FuncSpec::Constant { value: 1.0 },
            FuncSpec::Constant { value: 0.0 },
            256,
        )
        .unwrap();
        let f = build_potential(&p, 256).unwrap();
        let v = GridFunction::sample(0.0, TAU, 256, |_| 6.0f64.sqrt()).unwrap();
        assert!(eval_k(&p, &f, &v).unwrap().abs() < 1e-25);
    }

    #[test]
    fn k_matches_refined_grid() {
        use crate::probe::stationary_point;
        let (p, f) = example_problem(512);
        let v = stationary_point(&p, &f).unwrap();
        let k = eval_k(&p, &f, &v).unwrap();

        let (p10, f10) = example_problem(5120);
        let v10 = stationary_point(&p10, &f10).unwrap();
        let k10 = eval_k(&p10, &f10, &v10).unwrap();
        assert!((k - k10).abs() / k10.abs() < 1e-8, "k={k}, k10={k10}");
    }

    #[test]
    fn gateaux_analytic_value() {
        // T_0(sin(x/2)) = -integral F sin(x/2) = -8/3 for the example problem
        let (p, f) = example_problem(1024);
        let v = GridFunction::zeros(0.0, TAU, 1024).unwrap();
        let h = GridFunction::sample(0.0, TAU, 1024, |x| (x / 2.0).sin()).unwrap();
        let t = eval_gateaux(&p, &f, &v, &h).unwrap();
        assert!((t - (-8.0 / 3.0)).abs() < 1e-9, "{t}");
    }

    #[test]
    fn gateaux_linear_in_zero() {
        let (p, f) = example_problem(256);
        let v = GridFunction::sample(0.0, TAU, 256, |x| 0.3 * x.sin()).unwrap();
        let h = GridFunction::zeros(0.0, TAU, 256).unwrap();
        assert_eq!(eval_gateaux(&p, &f, &v, &h).unwrap(), 0.0);
    }

    #[test]
    fn gateaux_matches_central_differences() {
        // slope of log error vs log t should be ~2 for the central quotient
        let (p, f) = example_problem(512);
        // same integer mode for v and h so the cubic term does not vanish
        // by orthogonality and the O(t^2) error is visible
        let v = GridFunction::sample(0.0, TAU, 512, |x| 0.2 * x.sin()).unwrap();
        let h = GridFunction::sample(0.0, TAU, 512, |x| 0.7 * x.sin()).unwrap();
        let t_v = eval_gateaux(&p, &f, &v, &h).unwrap();
        let mut pts = Vec::new();
        for k in 2..=4 {
            let t = 10.0f64.powi(-k);
            let plus = eval_k(&p, &f, &v.add(&h.scale(t)).unwrap()).unwrap();
            let minus = eval_k(&p, &f, &v.add(&h.scale(-t)).unwrap()).unwrap();
            let quotient = (plus - minus) / (2.0 * t);
            let err = (quotient - t_v).abs();
            if err > 1e-13 {
                pts.push((t.ln(), err.ln()));
            }
        }
        assert_eq!(pts.len(), 3);
        let n = pts.len() as f64;
        let (sx, sy): (f64, f64) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
        let (sxx, sxy): (f64, f64) = pts
            .iter()
            .fold((0.0, 0.0), |(a, b), p| (a + p.0 * p.0, b + p.0 * p.1));
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!((slope - 2.0).abs() < 0.2, "slope {slope}");
    }

    #[test]
    fn taylor_terms_trivial_cases() {
        let (p, f) = example_problem(256);
        let z = GridFunction::zeros(0.0, TAU, 256).unwrap();
        let t = taylor_decompose(&p, &f, &z, &z).unwrap();
        assert_eq!(t.t1, 0.0);
        assert_eq!(t.t4, 0.0);
        assert!((t.k_at_v - 9.0 * PI).abs() < 1e-10);
        assert!(t.identity_residual() < 1e-12);
    }

    #[test]
    fn taylor_constant_increment() {
        // v = 0, h = 1, theta = 1, F = 0, lambda = 1.5 on [0,1]:
        // t2 = -lambda/2 = -0.75, t3 = 0, t4 = 0.125
        let p = Problem::new(
            0.0,
            1.0,
            1.5,
            FuncSpec::Constant { value: 1.0 },
            FuncSpec::Constant { value: 0.0 },
            16,
        )
        .unwrap();
        let f = build_potential(&p, 16).unwrap();
        let v = GridFunction::zeros(0.0, 1.0, 16).unwrap();
        let h = GridFunction::sample(0.0, 1.0, 16, |_: f64| 1.0).unwrap();
        let t = taylor_decompose(&p, &f, &v, &h).unwrap();
        assert!((t.t2 - -0.75).abs() < 1e-14);
        assert!(t.t3.abs() < 1e-15);
        assert!((t.t4 - 0.125).abs() < 1e-15);
        assert!(t.identity_residual() < 1e-14);
    }

    #[test]
    fn taylor_identity_at_stationary_profile() {
        use crate::probe::stationary_point;
        let (p, f) = example_problem(512);
        let v = stationary_point(&p, &f).unwrap();
        let h =
            GridFunction::sample(0.0, TAU, 512, |x| 0.4 * x.sin() - 0.1 * (3.0 * x).sin()).unwrap();
        let t = taylor_decompose(&p, &f, &v, &h).unwrap();
        let scale = 1.0 + t.k_at_v_plus_h.abs().max(t.k_at_v.abs());
        assert!(t.identity_residual() < 1e-10 * scale);
    }

    #[test]
    fn lp_norm_examples() {
        let s = GridFunction::sample(0.0, TAU, 2048, |x: f64| x.sin()).unwrap();
        assert_eq!(lp_norm(&s, PNorm::Infinity).unwrap(), 1.0);
        let l2 = lp_norm(&s, PNorm::Finite(2.0)).unwrap();
        assert!((l2 - PI.sqrt()).abs() < 1e-10);
        let z = GridFunction::zeros(0.0, TAU, 16).unwrap();
        assert_eq!(lp_norm(&z, PNorm::Finite(3.0)).unwrap(), 0.0);
        assert!(lp_norm(&s, PNorm::Finite(0.5)).is_err());
    }

    #[test]
    fn lp_norm_monotone_in_p_when_mean_scaled() {
        // ((b-a)^{-1} integral |h|^p)^{1/p} is nondecreasing in p
        let s = GridFunction::sample(0.0, TAU, 2048, |x: f64| x.sin()).unwrap();
        let mean = |p: f64| {
            let norm = lp_norm(&s, PNorm::Finite(p)).unwrap();
            norm / TAU.powf(1.0 / p)
        };
        let mut prev = mean(1.0);
        for p in [1.5, 2.0, 3.0, 4.0, 8.0, 16.0] {
            let cur = mean(p);
            assert!(cur >= prev - 1e-12, "p={p}");
            prev = cur;
        }
    }

    #[test]
    fn lp_norm_approaches_sup() {
        let s = GridFunction::sample(0.0, TAU, 4096, |x: f64| x.sin()).unwrap();
        let p64 = lp_norm(&s, PNorm::Finite(64.0)).unwrap();
        assert!((p64 - 1.0).abs() < 0.01, "{p64}");
    }

    #[test]
    fn pnorm_parsing() {
        assert_eq!("inf".parse::<PNorm<f64>>().unwrap(), PNorm::Infinity);
        assert_eq!("2".parse::<PNorm<f64>>().unwrap(), PNorm::Finite(2.0));
        assert!("0.5".parse::<PNorm<f64>>().is_err());
        assert!("xyz".parse::<PNorm<f64>>().is_err());
    }

    #[test]
    fn grid_mismatch_everywhere() {
        let (p, f) = example_problem(256);
        let v = GridFunction::zeros(0.0, TAU, 128).unwrap();
        assert!(eval_k(&p, &f, &v).is_err());
        let w = GridFunction::zeros(0.0, 1.0, 256).unwrap();
        assert!(eval_k(&p, &w, &w).is_err());
    }
}
