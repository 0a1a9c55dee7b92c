//! Special-function layer: complex Gamma and the parabolic cylinder
//! function D_a, the ingredients of the model Riemann-Hilbert problem.

mod gamma;
mod pcf;

pub use gamma::{arg_gamma_imag, complex_gamma, recip_gamma};
pub use pcf::{parabolic_cylinder, weber_residual, PCFValue, PCF_MAX_ARG, PCF_MAX_ORDER};
