//! Numerical toolkit for the nonconvex double-well variational problem
//!
//! ```text
//!   J(u) = integral of theta (H(u') - f u),   H(y) = 1/2 (1/2 y^2 - lambda)^2,
//! ```
//!
//! reduced over profiles with vanishing endpoint derivative to
//! `K(v) = integral of theta (H(v) - F v)` with `F = -integral f`. The crate
//!
//! * solves the two branch cubics `G(z) = A` and `E(y) = A^2` with the
//!   branch identity carried by the trigonometric angle index,
//! * builds the unique stationary profile `z2(F)` and the two inadmissible
//!   companion branch profiles,
//! * certifies the stationary profile as a strict sup-norm local maximizer
//!   and demonstrates that it is not an Lp extremum for p < 4,
//! * runs rate probes for the differentiability dichotomy at p = 4,
//! * and reduces the radially symmetric n-dimensional shell problem to the
//!   same machinery via the measure `gamma_n r^{n-1} dr`.
//!
//! All numerics are generic over the scalar type through [`scalar::Real`]
//! (implemented by `f32` and `f64`); the `*64` aliases below fix `f64`.
//!
//! ```
//! use dwell_core::func::FuncSpec;
//! use dwell_core::problem::{build_potential, validate_forcing, Problem};
//! use dwell_core::probe::{local_max_certificate, stationary_point};
//!
//! let problem = Problem::new(
//!     0.0,
//!     std::f64::consts::TAU,
//!     3.0,
//!     FuncSpec::Constant { value: 1.0 },
//!     FuncSpec::Sine { amplitude: -0.5, frequency: 1.0, phase: 0.0 },
//!     256,
//! )
//! .unwrap();
//! assert!(validate_forcing(&problem).unwrap().all_ok());
//!
//! let potential = build_potential(&problem, 256).unwrap();
//! let profile = stationary_point(&problem, &potential).unwrap();
//! let cert = local_max_certificate(&problem, &profile).unwrap();
//! assert!(profile.in_c0() && cert.epsilon > 0.0);
//! ```

pub mod cubic;
pub mod error;
pub mod func;
pub mod functional;
pub mod grid;
pub mod probe;
pub mod problem;
pub mod quadrature;
pub mod radial;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type GridFunction64 = grid::GridFunction<f64>;
pub type FuncSpec64 = func::FuncSpec<f64>;
pub type Problem64 = problem::Problem<f64>;
pub type BranchTriple64 = cubic::BranchTriple<f64>;
pub type EBranchTriple64 = cubic::EBranchTriple<f64>;
pub type PNorm64 = functional::PNorm<f64>;
pub type TaylorTerms64 = functional::TaylorTerms<f64>;
pub type Certificate64 = probe::Certificate<f64>;
pub type SpikeFamily64 = probe::SpikeFamily<f64>;
pub type CandidateProfiles64 = probe::CandidateProfiles<f64>;
pub type RadialProblem64 = radial::RadialProblem<f64>;
pub type RadialProbeOptions64 = radial::RadialProbeOptions<f64>;

pub type GridFunction32 = grid::GridFunction<f32>;
pub type Problem32 = problem::Problem<f32>;
pub type BranchTriple32 = cubic::BranchTriple<f32>;
pub type RadialProblem32 = radial::RadialProblem<f32>;
