//! Numerical laboratory for the coupled Sasa-Satsuma system
//!
//!   u_t + u_xxx + 6 (|u|^2 + |v|^2) u_x + 3 u (|u|^2 + |v|^2)_x = 0
//!   v_t + v_xxx + 6 (|u|^2 + |v|^2) v_x + 3 v (|u|^2 + |v|^2)_x = 0
//!
//! on the line, truncated to a periodic grid. Three layers cooperate:
//!
//! - [`scattering`] computes Jost solutions of the 5x5 spectral problem,
//!   the scattering matrix s(lambda), its blocks a and b, the reflection
//!   row gamma = b a^{-1}, and an argument-principle diagnostic certifying
//!   solitonless data;
//! - [`pde`] evolves the fields with an integrating-factor RK4
//!   pseudospectral scheme (ground truth for comparisons);
//! - [`asymptotics`] and [`model`] evaluate the explicit leading-order
//!   long-time formula along rays x = -12 lambda_0^2 t, together with the
//!   parabolic-cylinder / Gamma layer ([`specfun`]) behind its constants.
//!
//! The [`compare`] harness ties everything together and is exposed through
//! the `satsuma` CLI (`scatter`, `evolve`, `asymptote`, `compare`,
//! `reduce-check`, `selfcheck`).

pub mod asymptotics;
pub mod compare;
pub mod config;
pub mod error;
pub mod exec;
pub mod grid;
pub mod linalg;
pub mod model;
pub mod pde;
pub mod quad;
pub mod reductions;
pub mod report;
pub mod scattering;
pub mod specfun;
pub mod spline;

pub use error::{Error, Result};
