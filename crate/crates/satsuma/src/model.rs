//! Coefficients of the local model problem at the stationary points:
//! the beta column/row pair built from the reflection row at +-lambda_0,
//! the unimodular factor delta_A, and the residue entry (M_1)_{12}.
//!
//! The normalization enforced here is the self-consistent one: with
//! beta_12 = -beta_21^dag and |gamma(lambda_0)| = |gamma(-lambda_0)| the
//! product beta_21 beta_12 equals -nu exactly, which also makes
//! nu |Gamma(i nu)| e^{-pi nu / 2} / sqrt(2 pi) = sqrt(nu) / |gamma(lambda_0)|
//! an identity via |Gamma(i nu)|^2 = pi / (nu sinh(pi nu)).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::specfun::complex_gamma;

/// Row/column coefficient pair of the model problem.
#[derive(Clone, Copy, Debug)]
pub struct BetaPair {
    /// 4x1 column
    pub beta12: ComplexMatrix,
    /// 1x4 row
    pub beta21: ComplexMatrix,
    pub nu: f64,
}

impl BetaPair {
    /// Scalar product beta21 . beta12.
    pub fn product(&self) -> Complex64 {
        self.beta21.mul(&self.beta12)[(0, 0)]
    }
}

/// Build the beta pair from gamma(-lambda_0), gamma(lambda_0) (1x4 rows) and nu.
pub fn beta_coefficients(
    gamma_at_minus_lambda0: &ComplexMatrix,
    gamma_at_lambda0: &ComplexMatrix,
    nu: f64,
) -> Result<BetaPair> {
    if gamma_at_minus_lambda0.rows() != 1
        || gamma_at_minus_lambda0.cols() != 4
        || gamma_at_lambda0.rows() != 1
        || gamma_at_lambda0.cols() != 4
    {
        return Err(Error::Data("gamma rows must be 1x4".into()));
    }
    if nu < 0.0 {
        return Err(Error::Data(format!("nu = {nu} must be nonnegative")));
    }
    let norm_plus = gamma_at_lambda0.frobenius_norm();
    let norm_minus = gamma_at_minus_lambda0.frobenius_norm();
    if (norm_plus - norm_minus).abs() > 1e-6 * (1.0 + norm_plus) {
        return Err(Error::Data(format!(
            "|gamma(lambda0)| = {norm_plus:.6e} and |gamma(-lambda0)| = {norm_minus:.6e} disagree beyond 1e-6"
        )));
    }

    if nu == 0.0 || norm_plus == 0.0 {
        return Ok(BetaPair {
            beta12: ComplexMatrix::zeros(4, 1),
            beta21: ComplexMatrix::zeros(1, 4),
            nu,
        });
    }

    let gamma_i_nu = complex_gamma(Complex64::new(0.0, nu))?;
    let gamma_minus_i_nu = gamma_i_nu.conj();
    let scale = nu * (-PI * nu / 2.0).exp() / (2.0 * PI).sqrt();
    let c21 = -scale * gamma_minus_i_nu * Complex64::from_polar(1.0, PI / 4.0);
    let c12 = scale * gamma_i_nu * Complex64::from_polar(1.0, -PI / 4.0);

    let beta21 = gamma_at_minus_lambda0.scale(c21);
    // sigma1 gamma^T swaps components (1,2) and (3,4)
    let mut beta12 = ComplexMatrix::zeros(4, 1);
    beta12[(0, 0)] = gamma_at_lambda0[(0, 1)];
    beta12[(1, 0)] = gamma_at_lambda0[(0, 0)];
    beta12[(2, 0)] = gamma_at_lambda0[(0, 3)];
    beta12[(3, 0)] = gamma_at_lambda0[(0, 2)];
    let beta12 = beta12.scale(c12);

    let pair = BetaPair { beta12, beta21, nu };
    let residual = (pair.product() + nu).norm();
    if residual > 1e-8 * (1.0 + nu) {
        return Err(Error::Data(format!(
            "beta21 . beta12 = {} deviates from -nu = {} by {residual:.3e}",
            pair.product(),
            -nu
        )));
    }
    Ok(pair)
}

/// delta_A = e^{chi(-lambda_0) - 8 i tau} (192 tau)^{-i nu / 2}, tau = lambda_0^3 t.
pub fn delta_a(tau: f64, nu: f64, chi_at_minus_lambda0: Complex64) -> Result<Complex64> {
    if tau <= 0.0 {
        return Err(Error::Domain(format!("tau = {tau} must be positive")));
    }
    let log_factor = (192.0 * tau).ln();
    let exponent = chi_at_minus_lambda0 + Complex64::new(0.0, -8.0 * tau - 0.5 * nu * log_factor);
    Ok(exponent.exp())
}

/// (M_1)_{12} = i delta_A^2 beta_12, the 4x1 column entering reconstruction.
pub fn model_m1_12(beta: &BetaPair, delta_a: Complex64) -> ComplexMatrix {
    beta.beta12
        .scale(Complex64::new(0.0, 1.0) * delta_a * delta_a)
}
