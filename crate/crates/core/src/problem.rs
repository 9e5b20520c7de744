//! Variational problem data on an interval: the parameter `lambda`, a
//! strictly positive weight `theta`, a forcing function, and the grid
//! resolution. Admissibility of the forcing (zero mean, single-signed
//! potential, L1 smallness) is checked numerically and reported rather than
//! silently assumed.

use serde::Serialize;

use crate::cubic::{kappa, kappa_cubed};
use crate::error::{Error, Result};
use crate::func::FuncSpec;
use crate::grid::GridFunction;
use crate::quadrature::{cumulative_simpson, cumulative_simpson_fn, simpson};
use crate::scalar::Real;

/// The double-well integrand `H(y) = 1/2 (1/2 y^2 - lambda)^2`.
pub fn eval_h<F: Real>(y: F, lambda: F) -> F {
    let w = y * y / F::lit(2.0) - lambda;
    w * w / F::lit(2.0)
}

#[derive(Clone, Debug)]
pub struct Problem<F> {
    a: F,
    b: F,
    lambda: F,
    theta: FuncSpec<F>,
    forcing: FuncSpec<F>,
    m: usize,
    mu: F,
    nu: Option<F>,
}

impl<F: Real> Problem<F> {
    /// General construction: `theta` is the integrand weight and `forcing`
    /// is the linear data of the functional itself.
    pub fn new(
        a: F,
        b: F,
        lambda: F,
        theta: FuncSpec<F>,
        forcing: FuncSpec<F>,
        m: usize,
    ) -> Result<Self> {
        if a >= b || !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!("invalid interval [{a}, {b}]")));
        }
        if lambda <= F::zero() || !lambda.is_finite() {
            return Err(Error::Domain(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        if m < 8 || !m.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "grid intervals m={m} must be even and >= 8"
            )));
        }
        let theta_grid = theta.sample_on(a, b, m)?;
        let mu = theta_grid
            .values()
            .iter()
            .fold(F::infinity(), |acc, &v| acc.min(v));
        if mu <= F::zero() || mu.is_nan() {
            return Err(Error::Domain(format!(
                "weight must stay positive; min over grid = {mu}"
            )));
        }
        forcing.sample_on(a, b, m)?; // rejects non-finite forcing data up front
        Ok(Problem {
            a,
            b,
            lambda,
            theta,
            forcing,
            m,
            mu,
            nu: None,
        })
    }

    /// Construction from the constant-multiplier form of the functional,
    /// `integral of (nu H(u') - f u)`: the weight becomes the constant `nu`
    /// and the forcing is replaced by `f / nu`, which makes the potential
    /// built below directly the one the stationarity cubic sees.
    pub fn with_nu(a: F, b: F, lambda: F, nu: F, forcing: FuncSpec<F>, m: usize) -> Result<Self> {
        if nu <= F::zero() || !nu.is_finite() {
            return Err(Error::Domain(format!("nu must be positive, got {nu}")));
        }
        let mut p = Self::new(
            a,
            b,
            lambda,
            FuncSpec::Constant { value: nu },
            forcing.scaled(F::one() / nu),
            m,
        )?;
        p.nu = Some(nu);
        Ok(p)
    }

    pub fn a(&self) -> F {
        self.a
    }

    pub fn b(&self) -> F {
        self.b
    }

    pub fn lambda(&self) -> F {
        self.lambda
    }

    pub fn theta(&self) -> &FuncSpec<F> {
        &self.theta
    }

    pub fn forcing(&self) -> &FuncSpec<F> {
        &self.forcing
    }

    pub fn default_m(&self) -> usize {
        self.m
    }

    /// Minimum of the weight over the grid.
    pub fn mu(&self) -> F {
        self.mu
    }

    /// The original constant multiplier when constructed via [`Problem::with_nu`].
    pub fn nu(&self) -> Option<F> {
        self.nu
    }

    pub fn kappa(&self) -> F {
        kappa(self.lambda)
    }

    /// Location of the well bottoms of `H`, `sqrt(2 lambda)`.
    pub fn well_bottom(&self) -> F {
        (F::lit(2.0) * self.lambda).sqrt()
    }

    pub fn kappa_cubed(&self) -> F {
        kappa_cubed(self.lambda)
    }

    pub fn theta_on(&self, m: usize) -> Result<GridFunction<F>> {
        self.theta.sample_on(self.a, self.b, m)
    }

    pub fn forcing_on(&self, m: usize) -> Result<GridFunction<F>> {
        self.forcing.sample_on(self.a, self.b, m)
    }

    /// Checks that a grid function lives on this problem's interval.
    pub fn require_interval(&self, g: &GridFunction<F>, what: &str) -> Result<()> {
        if g.a() == self.a && g.b() == self.b {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "{what} lives on [{}, {}], problem on [{}, {}]",
                g.a(),
                g.b(),
                self.a,
                self.b
            )))
        }
    }
}

/// Numerical admissibility report for the forcing: zero mean, constant sign
/// of the potential on the interior, L1 smallness against `kappa^3`, and the
/// implied sup bound on the potential.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub balance_ok: bool,
    pub balance_residual: f64,
    pub sign_ok: bool,
    /// +1 / -1 for a single-signed potential on the interior, 0 otherwise.
    pub potential_sign: i8,
    pub l1_ok: bool,
    pub forcing_l1: f64,
    pub l1_bound: f64,
    pub finf_ok: bool,
    pub potential_sup: f64,
    pub sup_bound: f64,
    /// Count of strict sign changes of the forcing along the grid. Reported
    /// for information only; the sign condition is enforced on the potential.
    pub f_zero_crossings: usize,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.balance_ok && self.sign_ok && self.l1_ok && self.finf_ok
    }
}

/// Evaluates the admissibility conditions by analytic formula where the
/// preset allows it and by quadrature otherwise.
pub fn validate_forcing<F: Real>(problem: &Problem<F>) -> Result<ValidationReport> {
    let m = problem.default_m();
    let (a, b) = (problem.a(), problem.b());
    let f_grid = problem.forcing_on(m)?;
    let h = f_grid.spacing();

    let integral = match problem.forcing().integral(a, b) {
        Some(v) => v,
        None => simpson(f_grid.values(), h),
    };
    let f_sup = f_grid.sup_norm();
    let balance_tol = F::tol(1e-10) * (b - a) * F::one().max(f_sup);
    let balance_ok = integral.abs() <= balance_tol;

    let l1 = match problem.forcing().l1_norm(a, b) {
        Some(v) => v,
        None => {
            let abs_grid = f_grid.map(|_, v| v.abs())?;
            simpson(abs_grid.values(), h)
        }
    };
    let kc = problem.kappa_cubed();
    let l1_ok = l1 < kc;

    let potential = build_potential(problem, m)?;
    let (sign, sign_ok) = interior_sign(&potential);
    let f_sup_pot = potential.sup_norm();
    let finf_ok = f_sup_pot < kc;

    let crossings = count_sign_changes(f_grid.values());

    Ok(ValidationReport {
        balance_ok,
        balance_residual: integral.abs().as_f64(),
        sign_ok,
        potential_sign: sign,
        l1_ok,
        forcing_l1: l1.as_f64(),
        l1_bound: kc.as_f64(),
        finf_ok,
        potential_sup: f_sup_pot.as_f64(),
        sup_bound: kc.as_f64(),
        f_zero_crossings: crossings,
    })
}

/// Strict sign changes along node data, skipping nodes where the value sits
/// below rounding scale (a zero landing exactly on a node still counts as
/// one crossing, not zero).
pub(crate) fn count_sign_changes<F: Real>(values: &[F]) -> usize {
    let sup = values.iter().fold(F::zero(), |acc, v| acc.max(v.abs()));
    let tol = F::tol(1e-14) * F::one().max(sup);
    values
        .iter()
        .filter(|v| v.abs() > tol)
        .collect::<Vec<_>>()
        .windows(2)
        .filter(|w| *w[0] * *w[1] < F::zero())
        .count()
}

/// Sign classification of a grid function on the interior nodes.
pub(crate) fn interior_sign<F: Real>(g: &GridFunction<F>) -> (i8, bool) {
    let tol = F::tol(1e-12) * F::one().max(g.sup_norm());
    let mut pos = 0usize;
    let mut neg = 0usize;
    for &v in &g.values()[1..g.values().len() - 1] {
        if v > tol {
            pos += 1;
        } else if v < -tol {
            neg += 1;
        }
    }
    if pos > 0 && neg == 0 {
        (1, true)
    } else if neg > 0 && pos == 0 {
        (-1, true)
    } else {
        (0, false)
    }
}

/// The potential `F(x) = - integral from a to x of f`, sampled on the grid
/// by cumulative composite Simpson. `F(a) = 0` exactly; `F(b)` equals minus
/// the balance residual of the forcing.
pub fn build_potential<F: Real>(problem: &Problem<F>, m: usize) -> Result<GridFunction<F>> {
    if m < 8 || !m.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "grid intervals m={m} must be even and >= 8"
        )));
    }
    let (a, b) = (problem.a(), problem.b());
    let cum = match problem.forcing() {
        FuncSpec::Samples { values } => {
            if values.len() != m + 1 {
                return Err(Error::Domain(format!(
                    "sampled forcing has {} nodes but the grid needs {}",
                    values.len(),
                    m + 1
                )));
            }
            let h = (b - a) / F::from_usize(m).unwrap();
            cumulative_simpson(values, h)?
        }
        preset => cumulative_simpson_fn(|x| preset.eval(x).unwrap(), a, b, m)?,
    };
    GridFunction::from_values(a, b, cum.into_iter().map(|v| -v).collect())
}
