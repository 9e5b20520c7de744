use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A real function sampled on a uniform grid over `[a, b]` with an even
/// number of intervals (so composite Simpson applies directly). The `in_c0`
/// flag records whether both endpoint values vanish within a scale-aware
/// tolerance, i.e. whether the sample can stand in for a member of
/// C0[a, b] = { v continuous, v(a) = v(b) = 0 }.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridFunction<F> {
    a: F,
    b: F,
    values: Vec<F>,
    in_c0: bool,
}

impl<F: Real> GridFunction<F> {
    pub fn from_values(a: F, b: F, values: Vec<F>) -> Result<Self> {
        if a >= b || !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!("invalid interval [{a}, {b}]")));
        }
        if values.len() < 3 || values.len().is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "grid needs an odd node count >= 3, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Quadrature("non-finite node value".into()));
        }
        let mut g = GridFunction {
            a,
            b,
            values,
            in_c0: false,
        };
        g.in_c0 = g.endpoints_vanish();
        Ok(g)
    }

    /// Samples `f` at the `m + 1` nodes of the uniform grid.
    pub fn sample(a: F, b: F, m: usize, f: impl Fn(F) -> F) -> Result<Self> {
        if m < 2 || !m.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "node count m={m} must be even and >= 2"
            )));
        }
        let h = (b - a) / F::from_usize(m).unwrap();
        let values = (0..=m)
            .map(|i| f(a + h * F::from_usize(i).unwrap()))
            .collect();
        Self::from_values(a, b, values)
    }

    pub fn zeros(a: F, b: F, m: usize) -> Result<Self> {
        Self::sample(a, b, m, |_| F::zero())
    }

    pub fn a(&self) -> F {
        self.a
    }

    pub fn b(&self) -> F {
        self.b
    }

    /// Number of grid intervals (`m`); the node count is `m + 1`.
    pub fn intervals(&self) -> usize {
        self.values.len() - 1
    }

    pub fn spacing(&self) -> F {
        (self.b - self.a) / F::from_usize(self.intervals()).unwrap()
    }

    pub fn x(&self, i: usize) -> F {
        self.a + self.spacing() * F::from_usize(i).unwrap()
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn value(&self, i: usize) -> F {
        self.values[i]
    }

    pub fn in_c0(&self) -> bool {
        self.in_c0
    }

    pub fn sup_norm(&self) -> F {
        self.values
            .iter()
            .fold(F::zero(), |acc, v| acc.max(v.abs()))
    }

    /// Linear interpolation between nodes; clamps to the interval.
    pub fn value_at(&self, x: F) -> F {
        let h = self.spacing();
        let t = ((x - self.a) / h).max(F::zero());
        let i = t.floor().to_usize().unwrap_or(0).min(self.values.len() - 2);
        let w = (t - F::from_usize(i).unwrap()).max(F::zero()).min(F::one());
        self.values[i] * (F::one() - w) + self.values[i + 1] * w
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.values.len() == other.values.len()
    }

    pub fn require_same_grid(&self, other: &Self, what: &str) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(what.into()))
        }
    }

    /// New grid function with values `f(x_i, self_i)`.
    pub fn map(&self, f: impl Fn(F, F) -> F) -> Result<Self> {
        let h = self.spacing();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| f(self.a + h * F::from_usize(i).unwrap(), v))
            .collect();
        Self::from_values(self.a, self.b, values)
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(F, F) -> F) -> Result<Self> {
        self.require_same_grid(other, "zip_with operands")?;
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(&u, &v)| f(u, v))
            .collect();
        Self::from_values(self.a, self.b, values)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |u, v| u + v)
    }

    pub fn scale(&self, c: F) -> Self {
        let values = self.values.iter().map(|&v| v * c).collect();
        Self::from_values(self.a, self.b, values).expect("scaling preserves validity")
    }

    /// Forces both endpoint values to exactly zero. Only call when the
    /// endpoints already vanish up to the C0 tolerance.
    pub(crate) fn snap_endpoints_to_zero(&mut self) {
        *self.values.first_mut().unwrap() = F::zero();
        *self.values.last_mut().unwrap() = F::zero();
        self.in_c0 = true;
    }

    fn endpoints_vanish(&self) -> bool {
        let tol = F::tol(1e-9) * F::one().max(self.sup_norm());
        self.values[0].abs() <= tol && self.values[self.values.len() - 1].abs() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(GridFunction::<f64>::from_values(0.0, 1.0, vec![0.0, 1.0]).is_err());
        assert!(GridFunction::<f64>::from_values(1.0, 0.0, vec![0.0, 1.0, 0.0]).is_err());
        assert!(GridFunction::<f64>::from_values(0.0, 1.0, vec![0.0, f64::NAN, 0.0]).is_err());
        let g = GridFunction::from_values(0.0, 1.0, vec![0.0, 2.0, 0.0]).unwrap();
        assert!(g.in_c0());
        assert_eq!(g.sup_norm(), 2.0);
    }

    #[test]
    fn sampling_and_interpolation() {
        let g = GridFunction::sample(0.0, 2.0, 4, |x: f64| x * x).unwrap();
        assert_eq!(g.values(), &[0.0, 0.25, 1.0, 2.25, 4.0]);
        assert!(!g.in_c0());
        assert!((g.value_at(0.25) - 0.125).abs() < 1e-15); // chord between 0 and 0.25
        assert_eq!(g.value_at(-1.0), 0.0);
        assert_eq!(g.value_at(5.0), 4.0);
    }

    #[test]
    fn grid_mismatch_detected() {
        let g = GridFunction::<f64>::zeros(0.0, 1.0, 4).unwrap();
        let h = GridFunction::<f64>::zeros(0.0, 1.0, 8).unwrap();
        assert!(g.add(&h).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let g = GridFunction::<f32>::sample(0.0, 1.0, 8, |x| x.sin()).unwrap();
        assert!(g.sup_norm() > 0.8);
    }
}
