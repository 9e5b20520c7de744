//! Named function presets for forcing and weight data. Presets carry
//! analytic integrals where those are cheap and exact; everything else
//! falls back to quadrature on the grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::scalar::Real;

/// A function on `[a, b]`, either a symbolic preset or raw node samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
#[serde(bound(
    serialize = "F: Serialize",
    deserialize = "F: Deserialize<'de> + Default"
))]
pub enum FuncSpec<F> {
    Constant {
        value: F,
    },
    /// `amplitude * sin(frequency * x + phase)`
    Sine {
        amplitude: F,
        frequency: F,
        #[serde(default)]
        phase: F,
    },
    /// `amplitude * cos(frequency * x + phase)`
    Cosine {
        amplitude: F,
        frequency: F,
        #[serde(default)]
        phase: F,
    },
    /// `coeffs[0] + coeffs[1] x + coeffs[2] x^2 + ...`
    Polynomial {
        coeffs: Vec<F>,
    },
    /// `(coeffs[0] + coeffs[1] x + ...) / x^denom_power`; the interval must
    /// stay away from zero for positive powers.
    PolyOverR {
        coeffs: Vec<F>,
        denom_power: u32,
    },
    /// Raw values on the uniform grid the problem is discretized on.
    Samples {
        values: Vec<F>,
    },
}

impl<F: Real> FuncSpec<F> {
    pub fn is_samples(&self) -> bool {
        matches!(self, FuncSpec::Samples { .. })
    }

    /// Pointwise evaluation. `Samples` cannot be evaluated symbolically.
    pub fn eval(&self, x: F) -> Option<F> {
        match self {
            FuncSpec::Constant { value } => Some(*value),
            FuncSpec::Sine {
                amplitude,
                frequency,
                phase,
            } => Some(*amplitude * (*frequency * x + *phase).sin()),
            FuncSpec::Cosine {
                amplitude,
                frequency,
                phase,
            } => Some(*amplitude * (*frequency * x + *phase).cos()),
            FuncSpec::Polynomial { coeffs } => Some(horner(coeffs, x)),
            FuncSpec::PolyOverR {
                coeffs,
                denom_power,
            } => Some(horner(coeffs, x) / x.powi(*denom_power as i32)),
            FuncSpec::Samples { .. } => None,
        }
    }

    /// Analytic integral over `[a, b]` when one is available.
    pub fn integral(&self, a: F, b: F) -> Option<F> {
        match self {
            FuncSpec::Constant { value } => Some(*value * (b - a)),
            FuncSpec::Sine {
                amplitude,
                frequency,
                phase,
            } => sine_integral(*amplitude, *frequency, *phase, a, b),
            FuncSpec::Cosine {
                amplitude,
                frequency,
                phase,
            } => {
                // cos t = sin(t + pi/2)
                sine_integral(*amplitude, *frequency, *phase + F::FRAC_PI_2(), a, b)
            }
            FuncSpec::Polynomial { coeffs } => {
                let mut acc = F::zero();
                for (k, &c) in coeffs.iter().enumerate() {
                    let kp1 = F::from_usize(k + 1).unwrap();
                    acc += c * (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / kp1;
                }
                Some(acc)
            }
            FuncSpec::PolyOverR {
                coeffs,
                denom_power,
            } => {
                if *denom_power > 0 && a <= F::zero() {
                    return None;
                }
                let mut acc = F::zero();
                for (k, &c) in coeffs.iter().enumerate() {
                    let q = k as i32 - *denom_power as i32;
                    if q == -1 {
                        acc += c * (b / a).ln();
                    } else {
                        let qp1 = F::from_i32(q + 1).unwrap();
                        acc += c * (b.powi(q + 1) - a.powi(q + 1)) / qp1;
                    }
                }
                Some(acc)
            }
            FuncSpec::Samples { .. } => None,
        }
    }

    /// Analytic L1 norm over `[a, b]` when one is available.
    pub fn l1_norm(&self, a: F, b: F) -> Option<F> {
        match self {
            FuncSpec::Constant { value } => Some(value.abs() * (b - a)),
            FuncSpec::Sine {
                amplitude,
                frequency,
                phase,
            } => sine_l1(*amplitude, *frequency, *phase, a, b),
            FuncSpec::Cosine {
                amplitude,
                frequency,
                phase,
            } => sine_l1(*amplitude, *frequency, *phase + F::FRAC_PI_2(), a, b),
            _ => None,
        }
    }

    /// Same function with all values multiplied by `c`.
    pub fn scaled(&self, c: F) -> FuncSpec<F> {
        match self {
            FuncSpec::Constant { value } => FuncSpec::Constant { value: *value * c },
            FuncSpec::Sine {
                amplitude,
                frequency,
                phase,
            } => FuncSpec::Sine {
                amplitude: *amplitude * c,
                frequency: *frequency,
                phase: *phase,
            },
            FuncSpec::Cosine {
                amplitude,
                frequency,
                phase,
            } => FuncSpec::Cosine {
                amplitude: *amplitude * c,
                frequency: *frequency,
                phase: *phase,
            },
            FuncSpec::Polynomial { coeffs } => FuncSpec::Polynomial {
                coeffs: coeffs.iter().map(|&v| v * c).collect(),
            },
            FuncSpec::PolyOverR {
                coeffs,
                denom_power,
            } => FuncSpec::PolyOverR {
                coeffs: coeffs.iter().map(|&v| v * c).collect(),
                denom_power: *denom_power,
            },
            FuncSpec::Samples { values } => FuncSpec::Samples {
                values: values.iter().map(|&v| v * c).collect(),
            },
        }
    }

    /// Samples the function on the `m`-interval grid over `[a, b]`. For the
    /// `Samples` variant the stored node count must match.
    pub fn sample_on(&self, a: F, b: F, m: usize) -> Result<GridFunction<F>> {
        match self {
            FuncSpec::Samples { values } => {
                if values.len() != m + 1 {
                    return Err(Error::Domain(format!(
                        "sample data has {} nodes but the grid needs {}",
                        values.len(),
                        m + 1
                    )));
                }
                GridFunction::from_values(a, b, values.clone())
            }
            _ => GridFunction::sample(a, b, m, |x| self.eval(x).unwrap()),
        }
    }
}

fn horner<F: Real>(coeffs: &[F], x: F) -> F {
    coeffs.iter().rev().fold(F::zero(), |acc, &c| acc * x + c)
}

fn sine_integral<F: Real>(amp: F, freq: F, phase: F, a: F, b: F) -> Option<F> {
    if freq.is_zero() {
        return Some(amp * phase.sin() * (b - a));
    }
    let anti = |x: F| -amp / freq * (freq * x + phase).cos();
    Some(anti(b) - anti(a))
}

/// Exact integral of `|amp sin(freq x + phase)|` over `[a, b]`, by splitting
/// at the sign changes. Uses the running integral of `|sin|`,
/// `S(u) = 2 floor(u/pi) + 1 - cos(u - pi floor(u/pi))`.
fn sine_l1<F: Real>(amp: F, freq: F, phase: F, a: F, b: F) -> Option<F> {
    if freq.is_zero() {
        return Some((amp * phase.sin()).abs() * (b - a));
    }
    let (ua, ub) = {
        let ua = freq * a + phase;
        let ub = freq * b + phase;
        if ua <= ub {
            (ua, ub)
        } else {
            (ub, ua)
        }
    };
    let s = |u: F| {
        let k = (u / F::PI()).floor();
        F::lit(2.0) * k + F::one() - (u - F::PI() * k).cos()
    };
    Some(amp.abs() / freq.abs() * (s(ub) - s(ua)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::simpson_fn;

    const TAU: f64 = std::f64::consts::TAU;

    #[test]
    fn sine_integral_and_l1() {
        // f = -0.5 sin x on [0, 2pi]: balanced; L1 = 2
        let f = FuncSpec::Sine {
            amplitude: -0.5f64,
            frequency: 1.0,
            phase: 0.0,
        };
        assert!(f.integral(0.0, TAU).unwrap().abs() < 1e-15);
        assert!((f.l1_norm(0.0, TAU).unwrap() - 2.0).abs() < 1e-14);
        // partial interval, cross-checked by quadrature
        let quad = simpson_fn(|x: f64| (-0.5 * x.sin()).abs(), 0.4, 5.1, 4096).unwrap();
        assert!((f.l1_norm(0.4, 5.1).unwrap() - quad).abs() < 1e-6);
    }

    #[test]
    fn cosine_delegates() {
        let f = FuncSpec::Cosine {
            amplitude: 1.0f64,
            frequency: 1.0,
            phase: 0.0,
        };
        assert!(f.integral(0.0, TAU).unwrap().abs() < 1e-14);
        assert!((f.l1_norm(0.0, TAU).unwrap() - 4.0).abs() < 1e-13);
        assert!((f.eval(0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn polynomial_eval_and_integral() {
        let f = FuncSpec::Polynomial {
            coeffs: vec![1.0f64, -2.0, 3.0],
        };
        assert_eq!(f.eval(2.0).unwrap(), 1.0 - 4.0 + 12.0);
        // integral over [0,1]: 1 - 1 + 1 = 1
        assert!((f.integral(0.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn poly_over_r() {
        // f(r) = (2r - 3)/r on [1, 2]; integral = 2 - 3 ln 2
        let f = FuncSpec::PolyOverR {
            coeffs: vec![-3.0f64, 2.0],
            denom_power: 1,
        };
        assert!((f.eval(1.5).unwrap() - 0.0).abs() < 1e-15);
        let expect = 2.0 - 3.0 * 2.0f64.ln();
        assert!((f.integral(1.0, 2.0).unwrap() - expect).abs() < 1e-14);
        assert!(f.integral(-1.0, 2.0).is_none());
    }

    #[test]
    fn samples_roundtrip_and_mismatch() {
        let f = FuncSpec::Samples {
            values: vec![0.0f64, 1.0, 0.0],
        };
        assert!(f.sample_on(0.0, 1.0, 2).is_ok());
        assert!(f.sample_on(0.0, 1.0, 4).is_err());
        assert!(f.integral(0.0, 1.0).is_none());
    }

    #[test]
    fn scaling() {
        let f = FuncSpec::Sine {
            amplitude: -1.0f64,
            frequency: 1.0,
            phase: 0.0,
        };
        let g = f.scaled(0.5);
        assert!((g.eval(1.0).unwrap() - -0.5 * 1.0f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn config_json_shape() {
        let f: FuncSpec<f64> =
            serde_json::from_str(r#"{"preset":"sine","amplitude":-0.5,"frequency":1.0}"#).unwrap();
        assert_eq!(
            f,
            FuncSpec::Sine {
                amplitude: -0.5,
                frequency: 1.0,
                phase: 0.0
            }
        );
        assert!(serde_json::from_str::<FuncSpec<f64>>(r#"{"preset":"sine","amp":1}"#).is_err());
    }
}
