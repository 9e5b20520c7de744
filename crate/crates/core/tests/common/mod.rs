//! Shared oracles for the integration suites. Everything here stays
//! independent of the solver paths it is used to check: root-finding is
//! plain bisection, slopes are an in-place least-squares fit.

// each test target uses its own subset
#![allow(dead_code)]

use dwell_core::func::FuncSpec;
use dwell_core::grid::GridFunction;
use dwell_core::problem::{build_potential, Problem};
use dwell_core::radial::RadialProblem;

pub const TAU: f64 = std::f64::consts::TAU;

/// The running example: f = -0.5 sin x on [0, 2 pi], lambda = 3, theta = 1.
pub fn example_problem(m: usize) -> (Problem<f64>, GridFunction<f64>) {
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

/// The running annulus: n = 2 on [1, 2] with f(r) = -(3 - 2r)/r, so the
/// reduced potential is (r - 1)(2 - r)/r.
pub fn annulus(m: usize) -> RadialProblem<f64> {
    RadialProblem::new(
        2,
        1.0,
        2.0,
        1.5,
        1.0,
        FuncSpec::PolyOverR {
            coeffs: vec![-3.0, 2.0],
            denom_power: 1,
        },
        m,
    )
    .unwrap()
}

/// Bisection to ~1e-15 on a sign-changing bracket.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    assert!(
        flo * f(hi) <= 0.0,
        "bracket [{lo}, {hi}] does not change sign"
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if flo * fm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// Middle branch of `z (z^2/2 - lambda) = a` by bisection over
/// `(-kappa, kappa)`; independent of the trigonometric solver.
pub fn middle_root_oracle(a: f64, lambda: f64) -> f64 {
    let kappa = (2.0 * lambda / 3.0).sqrt();
    // G decreases on the middle bracket
    bisect(|z| -(z * (0.5 * z * z - lambda) - a), -kappa, kappa)
}

/// Least-squares slope of ln y against ln x.
pub fn fit_loglog(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    assert!(pts.len() >= 2, "not enough positive points for a fit");
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Prints the per-criterion verdict line and fails the test on FAIL.
pub fn conclude(name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {name}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {name} failed: {detail}");
}
