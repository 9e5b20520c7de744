//! Branch-resolved solvers for the two parameterized cubics
//!
//! ```text
//!   G(z) = z (z^2/2 - lambda)          three branches for |A| < kappa^3,
//!   E(y) = 2 y^2 (lambda + y/nu)       three roots for A2 in [0, 8 lambda^3 nu^2 / 27),
//! ```
//!
//! with `kappa = sqrt(2 lambda / 3)`. The G-roots are obtained from the
//! trigonometric solution of the depressed cubic, where the cosine angle
//! index *is* the branch index, so no bracket bookkeeping is needed:
//!
//! ```text
//!   z_k = 2 kappa cos(phi - 2 pi k / 3),   phi = acos(A / kappa^3) / 3,
//! ```
//!
//! giving `k = 0 -> z3 in (kappa, 2 kappa)`, `k = 1 -> z2 in (-kappa, kappa)`,
//! `k = 2 -> z1 in (-2 kappa, -kappa)`. One Newton step per root polishes the
//! trigonometric values to full precision. The E-roots reuse the G-solver
//! through the substitution `y z = A` (equivalently `E(y) = A^2` iff
//! `G(z) = A`), rescaled by `nu` via `y -> y / nu`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// The three ordered real roots of `G(z) = A`, `z1 < z2 < z3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchTriple<F> {
    /// Right-hand side `A`.
    pub a_value: F,
    pub z1: F,
    pub z2: F,
    pub z3: F,
}

/// The three ordered real roots of `E(y) = A2`, `e3 <= e2 <= e1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EBranchTriple<F> {
    /// Right-hand side `A^2`, in `[0, 8 lambda^3 nu^2 / 27)`.
    pub a2_value: F,
    pub e1: F,
    pub e2: F,
    pub e3: F,
}

pub fn kappa<F: Real>(lambda: F) -> F {
    (F::lit(2.0) * lambda / F::lit(3.0)).sqrt()
}

/// `kappa^3 = (2 lambda / 3)^{3/2}`, the half-width of the three-root window.
pub fn kappa_cubed<F: Real>(lambda: F) -> F {
    (F::lit(2.0) * lambda / F::lit(3.0)).powf(F::lit(1.5))
}

pub fn g_poly<F: Real>(z: F, lambda: F) -> F {
    z * (z * z / F::lit(2.0) - lambda)
}

fn g_poly_deriv<F: Real>(z: F, lambda: F) -> F {
    F::lit(1.5) * z * z - lambda
}

pub fn e_poly<F: Real>(y: F, lambda: F, nu: F) -> F {
    F::lit(2.0) * y * y * (lambda + y / nu)
}

fn check_lambda<F: Real>(lambda: F) -> Result<()> {
    if lambda <= F::zero() || !lambda.is_finite() {
        return Err(Error::Domain(format!(
            "lambda must be positive and finite, got {lambda}"
        )));
    }
    Ok(())
}

/// Solves `G(z) = A` for the three branches. Errors when `|A| >= kappa^3`
/// (two roots merge or go complex there).
pub fn solve_g<F: Real>(a: F, lambda: F) -> Result<BranchTriple<F>> {
    check_lambda(lambda)?;
    let kc = kappa_cubed(lambda);
    if !a.is_finite() || a.abs() >= kc {
        return Err(Error::Domain(format!(
            "|A| = {} outside the three-root window (-{kc}, {kc})",
            a.abs()
        )));
    }
    let k = kappa(lambda);
    if a.is_zero() {
        let z3 = F::lit(3.0).sqrt() * k;
        return Ok(BranchTriple {
            a_value: a,
            z1: -z3,
            z2: F::zero(),
            z3,
        });
    }
    let two_k = F::lit(2.0) * k;
    let phi = (a / kc).max(-F::one()).min(F::one()).acos() / F::lit(3.0);
    let third_turn = F::lit(2.0) * F::PI() / F::lit(3.0);
    let root = |angle: F| polish(two_k * angle.cos(), a, lambda);
    Ok(BranchTriple {
        a_value: a,
        z1: root(phi - third_turn - third_turn),
        z2: root(phi - third_turn),
        z3: root(phi),
    })
}

/// One guarded Newton step on `G(z) - A`; keeps the update only when it
/// reduces the residual and the local derivative is not degenerate.
fn polish<F: Real>(z: F, a: F, lambda: F) -> F {
    let d = g_poly_deriv(z, lambda);
    if d.abs() <= F::epsilon().sqrt() * F::one().max(lambda) {
        return z;
    }
    let z_new = z - (g_poly(z, lambda) - a) / d;
    if (g_poly(z_new, lambda) - a).abs() <= (g_poly(z, lambda) - a).abs() {
        z_new
    } else {
        z
    }
}

/// Solves `E(y) = A2`. For `A2 > 0` the roots come from the G-solver via
/// `e = nu * (sqrt(A2)/nu) / z`; at `A2 = 0` the cubic factors exactly as
/// `y = -nu lambda` (simple) and `y = 0` (double).
pub fn solve_e<F: Real>(a2: F, lambda: F, nu: F) -> Result<EBranchTriple<F>> {
    check_lambda(lambda)?;
    if nu <= F::zero() || !nu.is_finite() {
        return Err(Error::Domain(format!(
            "nu must be positive and finite, got {nu}"
        )));
    }
    let bound = {
        let nk = nu * kappa_cubed(lambda);
        nk * nk // = 8 lambda^3 nu^2 / 27
    };
    if !a2.is_finite() || a2 < F::zero() || a2 >= bound {
        return Err(Error::Domain(format!("A2 = {a2} outside [0, {bound})")));
    }
    if a2.is_zero() {
        return Ok(EBranchTriple {
            a2_value: a2,
            e1: F::zero(),
            e2: F::zero(),
            e3: -nu * lambda,
        });
    }
    let a_tilde = a2.sqrt() / nu;
    let g = solve_g(a_tilde, lambda)?;
    let map = |z: F| polish_e(nu * a_tilde / z, a2, lambda, nu);
    Ok(EBranchTriple {
        a2_value: a2,
        e1: map(g.z3),
        e2: map(g.z1),
        e3: map(g.z2),
    })
}

fn polish_e<F: Real>(y: F, a2: F, lambda: F, nu: F) -> F {
    // E'(y) = 4 lambda y + 6 y^2 / nu
    let d = F::lit(4.0) * lambda * y + F::lit(6.0) * y * y / nu;
    if d.abs() <= F::epsilon().sqrt() * F::one().max(lambda * nu) {
        return y;
    }
    let y_new = y - (e_poly(y, lambda, nu) - a2) / d;
    if (e_poly(y_new, lambda, nu) - a2).abs() <= (e_poly(y, lambda, nu) - a2).abs() {
        y_new
    } else {
        y
    }
}

/// Residuals of the branch correspondence `z1 e2 = z2 e3 = z3 e1 = A`,
/// where the G-branches are taken at `A / nu` and the E-roots at `A^2`.
pub fn correspondence_check<F: Real>(a: F, lambda: F, nu: F) -> Result<[F; 3]> {
    if a <= F::zero() || a.is_nan() {
        return Err(Error::Domain(format!(
            "correspondence needs A > 0, got {a}"
        )));
    }
    let g = solve_g(a / nu, lambda)?;
    let e = solve_e(a * a, lambda, nu)?;
    Ok([
        (g.z1 * e.e2 - a).abs(),
        (g.z2 * e.e3 - a).abs(),
        (g.z3 * e.e1 - a).abs(),
    ])
}
