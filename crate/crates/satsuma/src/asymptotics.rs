//! Leading-order long-time asymptotics along the rays x = -12 lambda_0^2 t:
//! the stationary point, the modulation exponent nu, the phase integral,
//! the full phase phi, the predicted envelopes, and the closed-form
//! determinant of the conjugating delta function.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use crate::scattering::ScatteringTable;
use crate::specfun::arg_gamma_imag;

/// Quadrature self-consistency tolerance (64 vs 128 nodes).
pub const QUADRATURE_TOL: f64 = 1e-6;
/// Proximity guard around the jump segment [-lambda_0, lambda_0].
pub const SEGMENT_PROXIMITY: f64 = 1e-6;
/// |gamma|^2 below this is treated as reflectionless (degenerate limit).
const DEGENERATE_GAMMA_SQR: f64 = 1e-280;

fn gl64() -> &'static GaussLegendre {
    static GL: OnceLock<GaussLegendre> = OnceLock::new();
    GL.get_or_init(|| GaussLegendre::new(64))
}

fn gl128() -> &'static GaussLegendre {
    static GL: OnceLock<GaussLegendre> = OnceLock::new();
    GL.get_or_init(|| GaussLegendre::new(128))
}

/// Phase function theta = lambda (x/t + 4 lambda^2).
pub fn theta(lambda: f64, x: f64, t: f64) -> f64 {
    lambda * (x / t + 4.0 * lambda * lambda)
}

/// Positive stationary point lambda_0 = sqrt(-x / (12 t)); requires the
/// oscillatory sector x < 0, t > 0.
pub fn stationary_point(x: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t = {t} must be positive")));
    }
    if !(x < 0.0) {
        return Err(Error::Domain(format!(
            "x = {x} must be negative (outside the oscillatory sector otherwise)"
        )));
    }
    Ok((-x / (12.0 * t)).sqrt())
}

/// nu = log(1 + |gamma(lambda_0)|^2) / (2 pi).
pub fn nu_of(table: &ScatteringTable, lambda0: f64) -> Result<f64> {
    check_in_range(table, lambda0)?;
    let g2 = table.gamma_norm_sqr_at(lambda0)?;
    Ok(g2.ln_1p() / (2.0 * PI))
}

fn check_in_range(table: &ScatteringTable, lambda0: f64) -> Result<()> {
    if !table.in_range(lambda0) || !table.in_range(-lambda0) {
        return Err(Error::OutOfRange {
            what: "lambda0",
            value: lambda0,
            min: 0.0,
            max: table.lambda_max(),
        });
    }
    Ok(())
}

/// log((1 + |gamma(xi)|^2) / (1 + |gamma(lambda_0)|^2)), the common
/// integrand numerator; vanishes at xi = +-lambda_0 up to interpolation.
fn log_ratio(table: &ScatteringTable, xi: f64, log1p_g0: f64) -> f64 {
    let g2 = table
        .gamma_norm_sqr_at(xi)
        .expect("integration node inside checked table range");
    g2.ln_1p() - log1p_g0
}

fn phase_integral_with(table: &ScatteringTable, lambda0: f64, gl: &GaussLegendre) -> f64 {
    let log1p_g0 = table
        .gamma_norm_sqr_at(lambda0)
        .expect("lambda0 range checked")
        .ln_1p();
    // left panel [-lambda_0, 0]: xi = -lambda_0 + lambda_0 s^2 removes the
    // endpoint singularity; integrand becomes 2 f(xi(s)) / s
    let left = gl.integrate(0.0, 1.0, |s| {
        if s == 0.0 {
            return 0.0;
        }
        let xi = -lambda0 + lambda0 * s * s;
        2.0 * log_ratio(table, xi, log1p_g0) / s
    });
    // right panel [0, lambda_0] is regular
    let right = gl.integrate(0.0, lambda0, |xi| {
        log_ratio(table, xi, log1p_g0) / (xi + lambda0)
    });
    (left + right) / PI
}

/// (1/pi) int_{-lambda_0}^{lambda_0} log((1+|gamma|^2)/(1+|gamma(lambda_0)|^2)) dxi/(xi+lambda_0),
/// with a 64-vs-128-node self-estimate.
pub fn phase_integral(table: &ScatteringTable, lambda0: f64) -> Result<f64> {
    check_in_range(table, lambda0)?;
    if table.samples_inside(lambda0) < 16 {
        return Err(Error::Data(format!(
            "only {} table nodes inside (-{lambda0}, {lambda0}); need at least 16",
            table.samples_inside(lambda0)
        )));
    }
    let coarse = phase_integral_with(table, lambda0, gl64());
    let fine = phase_integral_with(table, lambda0, gl128());
    let estimate = (coarse - fine).abs();
    if estimate > QUADRATURE_TOL {
        return Err(Error::QuadratureAccuracy {
            estimate,
            tol: QUADRATURE_TOL,
        });
    }
    Ok(fine)
}

/// Integrand numerator with derivatives: f = log(1+s) - log(1+s(lambda_0))
/// where s = |gamma|^2 from the splines.
fn log_ratio_jet(table: &ScatteringTable, xi: f64, log1p_g0: f64) -> Result<(f64, f64, f64)> {
    let (s, s1, s2) = table.gamma_norm_sqr_jet(xi)?;
    let denom = 1.0 + s;
    let f = s.ln_1p() - log1p_g0;
    let f1 = s1 / denom;
    let f2 = s2 / denom - (s1 / denom) * (s1 / denom);
    Ok((f, f1, f2))
}

/// chi(lambda) = (1/2 pi i) int log-ratio / (xi - lambda) dxi off the segment.
///
/// The Cauchy kernel is integrated with the quadratic Taylor part of the
/// numerator removed around r = clamp(Re lambda) and restored in closed
/// form, which keeps fixed-node Gauss-Legendre accurate arbitrarily close
/// to the cut (down to the 1e-6 proximity guard).
pub fn chi_at(table: &ScatteringTable, lambda0: f64, lambda: Complex64) -> Result<Complex64> {
    check_in_range(table, lambda0)?;
    let dist = segment_distance(lambda, lambda0);
    if dist < SEGMENT_PROXIMITY {
        return Err(Error::Domain(format!(
            "lambda = {lambda} is within {dist:.2e} of the segment [-{lambda0}, {lambda0}]"
        )));
    }
    let log1p_g0 = table.gamma_norm_sqr_at(lambda0)?.ln_1p();
    let r = lambda.re.clamp(-lambda0, lambda0);
    let (f_r, f1_r, f2_r) = log_ratio_jet(table, r, log1p_g0)?;

    let gl = gl64();
    let mut total = Complex64::new(0.0, 0.0);
    for (a, b) in [(-lambda0, r), (r, lambda0)] {
        if b - a < 1e-300 {
            continue;
        }
        // smooth remainder after removing the quadratic Taylor part at r
        total += gl.integrate_complex(a, b, |xi| {
            let f = log_ratio(table, xi, log1p_g0);
            let dxi = xi - r;
            let p2 = f_r + f1_r * dxi + 0.5 * f2_r * dxi * dxi;
            (f - p2) / (Complex64::new(xi, 0.0) - lambda)
        });
        // closed forms for the removed part: with d = lambda - r,
        //   I0 = Ln(b - lambda) - Ln(a - lambda)
        //   I1 = (b - a) + d I0
        //   I2 = ((b-lambda)^2 - (a-lambda)^2)/2 + 2 d (b - a) + d^2 I0
        let bl = Complex64::new(b, 0.0) - lambda;
        let al = Complex64::new(a, 0.0) - lambda;
        let d = lambda - r;
        let i0 = bl.ln() - al.ln();
        let i1 = Complex64::new(b - a, 0.0) + d * i0;
        let i2 = (bl * bl - al * al) * 0.5 + 2.0 * d * (b - a) + d * d * i0;
        total += f_r * i0 + f1_r * i1 + 0.5 * f2_r * i2;
    }
    Ok(total / Complex64::new(0.0, 2.0 * PI))
}

/// chi evaluated at the left stationary point, -i/2 times the phase integral.
pub fn chi_at_minus_lambda0(table: &ScatteringTable, lambda0: f64) -> Result<Complex64> {
    Ok(Complex64::new(0.0, -0.5) * phase_integral(table, lambda0)?)
}

fn segment_distance(lambda: Complex64, lambda0: f64) -> f64 {
    if lambda.re.abs() <= lambda0 {
        lambda.im.abs()
    } else {
        (lambda - Complex64::new(lambda0.copysign(lambda.re), 0.0)).norm()
    }
}

/// det delta(lambda) = ((lambda+lambda_0)/(lambda-lambda_0))^{i nu} e^{chi(lambda)}.
pub fn det_delta(table: &ScatteringTable, lambda0: f64, lambda: Complex64) -> Result<Complex64> {
    let nu = nu_of(table, lambda0)?;
    let chi = chi_at(table, lambda0, lambda)?;
    // the Moebius ratio never touches the negative real axis off the cut,
    // so the principal log of the ratio is the analytic branch
    let ratio = (lambda + lambda0) / (lambda - lambda0);
    let power = (Complex64::new(0.0, nu) * ratio.ln()).exp();
    Ok(power * chi.exp())
}

/// Jump ratio det delta_+ / det delta_- at real |lambda| < lambda_0,
/// computed at symmetric offsets +-i eps with one Richardson step, which
/// cancels the O(eps) boundary-layer error: R(eps/2)^2 / R(eps).
pub fn det_delta_jump_ratio(
    table: &ScatteringTable,
    lambda0: f64,
    lambda: f64,
    eps: f64,
) -> Result<Complex64> {
    let r = |e: f64| -> Result<Complex64> {
        let up = det_delta(table, lambda0, Complex64::new(lambda, e))?;
        let dn = det_delta(table, lambda0, Complex64::new(lambda, -e))?;
        Ok(up / dn)
    };
    let r1 = r(eps)?;
    let r2 = r(eps * 0.5)?;
    Ok(r2 * r2 / r1)
}

/// Everything Theorem-style leading order needs at one (x, t).
#[derive(Clone, Copy, Debug)]
pub struct AsymptoticEvaluation {
    pub x: f64,
    pub t: f64,
    pub lambda0: f64,
    pub nu: f64,
    pub phase_integral: f64,
    pub phi: f64,
    pub u_as: Complex64,
    pub v_as: Complex64,
    /// reflectionless sample: amplitude formula degenerates to zero
    pub degenerate: bool,
}

impl AsymptoticEvaluation {
    /// The full prediction u ~ u_as / sqrt(t).
    pub fn u_predicted(&self) -> Complex64 {
        self.u_as / self.t.sqrt()
    }

    pub fn v_predicted(&self) -> Complex64 {
        self.v_as / self.t.sqrt()
    }
}

/// phi = 16 t lambda_0^3 + arg Gamma(i nu) + nu log(192 lambda_0^3 t)
///       + phase integral - 5 pi / 4, unreduced.
pub fn phi(x: f64, t: f64, table: &ScatteringTable) -> Result<(f64, bool)> {
    let lambda0 = stationary_point(x, t)?;
    let nu = nu_of(table, lambda0)?;
    let pint = phase_integral(table, lambda0)?;
    let degenerate = table.gamma_norm_sqr_at(lambda0)? < DEGENERATE_GAMMA_SQR;
    let arg_gamma = if degenerate {
        -PI / 2.0
    } else {
        arg_gamma_imag(nu)
    };
    let value =
        16.0 * t * lambda0.powi(3) + arg_gamma + nu * (192.0 * lambda0.powi(3) * t).ln() + pint
            - 5.0 * PI / 4.0;
    Ok((value, degenerate))
}

/// Leading-order envelopes at (x, t) from the tabulated reflection row.
pub fn leading_order(x: f64, t: f64, table: &ScatteringTable) -> Result<AsymptoticEvaluation> {
    let lambda0 = stationary_point(x, t)?;
    let nu = nu_of(table, lambda0)?;
    let pint = phase_integral(table, lambda0)?;
    let g2 = table.gamma_norm_sqr_at(lambda0)?;
    let degenerate = g2 < DEGENERATE_GAMMA_SQR;
    let arg_gamma = if degenerate {
        -PI / 2.0
    } else {
        arg_gamma_imag(nu)
    };
    let phi_value =
        16.0 * t * lambda0.powi(3) + arg_gamma + nu * (192.0 * lambda0.powi(3) * t).ln() + pint
            - 5.0 * PI / 4.0;

    let (u_as, v_as) = if degenerate {
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    } else {
        let g = table.gamma_at(lambda0)?;
        let amp = nu.sqrt() / ((12.0 * lambda0).sqrt() * g2.sqrt());
        let e_plus = Complex64::from_polar(1.0, phi_value);
        let e_minus = e_plus.conj();
        // |g_k| e^{+-i(phi + arg g_k)} = g_k e^{i phi} resp. conj(g_k) e^{-i phi}
        let u = amp * (g[1] * e_plus + g[0].conj() * e_minus);
        let v = amp * (g[3] * e_plus + g[2].conj() * e_minus);
        (u, v)
    };
    Ok(AsymptoticEvaluation {
        x,
        t,
        lambda0,
        nu,
        phase_integral: pint,
        phi: phi_value,
        u_as,
        v_as,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::ScatteringTable;
    use approx::assert_relative_eq;

    /// Synthetic table on the half-offset grid from a closure for gamma.
    fn table_from_fn<F: Fn(f64) -> [Complex64; 4]>(
        lambda_max: f64,
        m: usize,
        f: F,
    ) -> ScatteringTable {
        let step = lambda_max / m as f64;
        let lambdas: Vec<f64> = (0..2 * m)
            .map(|i| {
                if i < m {
                    -(m as f64 - i as f64 - 0.5) * step
                } else {
                    (i as f64 - m as f64 + 0.5) * step
                }
            })
            .collect();
        let gammas: Vec<[Complex64; 4]> = lambdas.iter().map(|&l| f(l)).collect();
        ScatteringTable::from_gamma_rows(lambdas, gammas).unwrap()
    }

    fn zero_table() -> ScatteringTable {
        table_from_fn(2.0, 64, |_| [Complex64::new(0.0, 0.0); 4])
    }

    /// |gamma(xi)|^2 = xi^2 realized through the first component.
    fn linear_gamma_table() -> ScatteringTable {
        table_from_fn(2.0, 256, |l| {
            [
                Complex64::new(l, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ]
        })
    }

    #[test]
    fn stationary_point_algebra() {
        assert_relative_eq!(stationary_point(-12.0, 1.0).unwrap(), 1.0);
        assert_relative_eq!(stationary_point(-48.0, 1.0).unwrap(), 2.0);
        assert!(stationary_point(1.0, 1.0).is_err());
        assert!(stationary_point(-1.0, 0.0).is_err());
        assert!(stationary_point(-1.0, -2.0).is_err());
        // theta at the stationary point equals -8 lambda_0^3
        let l0 = stationary_point(-12.0, 1.0).unwrap();
        assert_relative_eq!(theta(l0, -12.0, 1.0), -8.0 * l0.powi(3));
    }

    #[test]
    fn nu_reference_points() {
        let zt = zero_table();
        assert_eq!(nu_of(&zt, 0.5).unwrap(), 0.0);

        // |gamma|^2 = e^{2 pi} - 1 -> nu = 1
        let big = ((2.0 * PI).exp() - 1.0).sqrt();
        let t1 = table_from_fn(2.0, 64, move |_| {
            [
                Complex64::new(big, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ]
        });
        assert_relative_eq!(nu_of(&t1, 0.7).unwrap(), 1.0, max_relative = 1e-12);

        // |gamma| = 1 -> log 2 / 2 pi
        let t2 = table_from_fn(2.0, 64, |_| {
            [
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ]
        });
        assert_relative_eq!(
            nu_of(&t2, 0.7).unwrap(),
            0.11031780007632580,
            max_relative = 1e-12
        );
        assert!(nu_of(&t2, 5.0).is_err());
    }

    #[test]
    fn phase_integral_vanishes_for_flat_gamma() {
        let zt = zero_table();
        assert_eq!(phase_integral(&zt, 0.8).unwrap(), 0.0);
        let flat = table_from_fn(2.0, 64, |_| {
            [
                Complex64::new(0.4, 0.3),
                Complex64::new(-0.1, 0.2),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.5, 0.0),
            ]
        });
        let v = phase_integral(&flat, 0.8).unwrap();
        assert!(v.abs() < 1e-12, "flat-gamma integral {v:.3e}");
    }

    /// adaptive Simpson on the substituted integrand, the independent oracle
    fn adaptive_simpson<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
        }
        fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let left = simpson(f, a, m);
            let right = simpson(f, m, b);
            if depth > 40 || (left + right - whole).abs() < 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, m, left, tol / 2.0, depth + 1) + rec(f, m, b, right, tol / 2.0, depth + 1)
            }
        }
        let whole = simpson(&f, a, b);
        rec(&f, a, b, whole, tol, 0)
    }

    #[test]
    fn phase_integral_matches_adaptive_oracle() {
        let table = linear_gamma_table();
        let lambda0 = 1.0;
        let got = phase_integral(&table, lambda0).unwrap();

        // oracle: same substituted integrands, adaptive Simpson at 1e-10
        let f0 = (1.0f64 + 1.0).ln();
        let left = adaptive_simpson(
            |s| {
                if s == 0.0 {
                    return 0.0;
                }
                let xi: f64 = -1.0 + s * s;
                2.0 * ((1.0 + xi * xi).ln() - f0) / s
            },
            0.0,
            1.0,
            1e-10,
        );
        let right = adaptive_simpson(
            |xi| ((1.0 + xi * xi).ln() - f0) / (xi + 1.0),
            0.0,
            1.0,
            1e-10,
        );
        let oracle = (left + right) / PI;
        assert_relative_eq!(got, oracle, epsilon = 1e-8);
        // closed form for this family: -pi/8
        assert_relative_eq!(got, -PI / 8.0, epsilon = 1e-7);
    }

    #[test]
    fn phi_degenerate_reference() {
        let zt = zero_table();
        let (value, degenerate) = phi(-12.0, 1.0, &zt).unwrap();
        assert!(degenerate);
        assert_relative_eq!(value, 16.0 - PI / 2.0 - 5.0 * PI / 4.0, max_relative = 1e-14);
    }

    #[test]
    fn phi_refines_with_the_table() {
        let coarse = table_from_fn(2.0, 64, |l| {
            [
                Complex64::new(0.3 / (1.0 + l * l), 0.1 * l),
                Complex64::new(0.2, -0.1 * l * l),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ]
        });
        let fine = table_from_fn(2.0, 128, |l| {
            [
                Complex64::new(0.3 / (1.0 + l * l), 0.1 * l),
                Complex64::new(0.2, -0.1 * l * l),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ]
        });
        let (p1, d1) = phi(-3.0, 1.0, &coarse).unwrap();
        let (p2, d2) = phi(-3.0, 1.0, &fine).unwrap();
        assert!(!d1 && !d2);
        assert!((p1 - p2).abs() < 1e-5, "phi refinement gap {}", (p1 - p2).abs());
    }

    #[test]
    fn leading_order_structure() {
        let zt = zero_table();
        let eval = leading_order(-12.0, 1.0, &zt).unwrap();
        assert_eq!(eval.u_as, Complex64::new(0.0, 0.0));
        assert_eq!(eval.v_as, Complex64::new(0.0, 0.0));
        assert!(eval.degenerate);

        // second field unexcited -> v_as = 0
        let t = table_from_fn(2.0, 64, |l| {
            [
                Complex64::new(0.4 / (1.0 + l * l), 0.0),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ]
        });
        let eval = leading_order(-3.0, 1.0, &t).unwrap();
        assert_eq!(eval.v_as, Complex64::new(0.0, 0.0));
        assert!(eval.u_as.norm() > 0.0);

        // amplitude bound |u_as| <= sqrt(2 nu / (12 lambda0))
        let bound = (2.0 * eval.nu / (12.0 * eval.lambda0)).sqrt();
        assert!(eval.u_as.norm() <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn amplitude_is_constant_along_a_ray() {
        // beat-free data (gamma_1 = gamma_4 = 0): |u_as| depends on t only
        // through phi, whose modulus contribution then drops out
        let table = table_from_fn(2.0, 128, |l| {
            [
                Complex64::new(0.0, 0.0),
                Complex64::new(0.3 / (1.0 + l * l), 0.1),
                Complex64::new(0.05, -0.2 / (1.0 + l * l)),
                Complex64::new(0.0, 0.0),
            ]
        });
        let lambda0: f64 = 0.6;
        let mut first: Option<f64> = None;
        for t in [10.0, 40.0, 160.0] {
            let x = -12.0 * lambda0 * lambda0 * t;
            let eval = leading_order(x, t, &table).unwrap();
            assert_relative_eq!(eval.lambda0, lambda0, max_relative = 1e-12);
            let amp = eval.u_as.norm();
            match first {
                None => first = Some(amp),
                Some(a) => assert!((amp - a).abs() < 1e-10, "|u_as| drifts along the ray"),
            }
        }
    }

    #[test]
    fn det_delta_properties() {
        let zt = zero_table();
        let one = det_delta(&zt, 0.5, Complex64::new(0.3, 0.7)).unwrap();
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-14);

        let table = linear_gamma_table();
        let lambda0 = 1.0;
        // frozen reference at lambda = 3i (mpmath, 30 digits)
        let got = det_delta(&table, lambda0, Complex64::new(0.0, 3.0)).unwrap();
        let reference = Complex64::new(1.02669272226626008901, 0.0);
        assert!(
            (got - reference).norm() < 1e-8,
            "det delta(3i) = {got}, expected {reference}"
        );

        // decay to 1 far away
        let far = det_delta(&table, lambda0, Complex64::new(0.0, 1e3)).unwrap();
        assert!((far - Complex64::new(1.0, 0.0)).norm() < 1e-3);

        // conjugation symmetry |det delta(lambda) conj(det delta(conj lambda))| = 1
        for lam in [Complex64::new(0.4, 0.9), Complex64::new(-1.7, -0.35)] {
            let d = det_delta(&table, lambda0, lam).unwrap();
            let dc = det_delta(&table, lambda0, lam.conj()).unwrap();
            let prod = (d * dc.conj()).norm();
            assert!((prod - 1.0).abs() < 1e-8, "conjugation product {prod}");
        }

        // proximity guard
        assert!(det_delta(&table, lambda0, Complex64::new(0.2, 1e-8)).is_err());
    }

    #[test]
    fn det_delta_jump_matches_one_plus_gamma_sqr() {
        let table = linear_gamma_table();
        let lambda0 = 1.0;
        for &lam in &[-0.8, -0.3, 0.25, 0.6, 0.95] {
            let ratio = det_delta_jump_ratio(&table, lambda0, lam, 1e-4).unwrap();
            let expected = 1.0 + lam * lam;
            let err = (ratio - expected).norm() / expected;
            assert!(
                err < 1e-6,
                "jump ratio at {lam}: {ratio} vs {expected} (err {err:.3e})"
            );
        }
    }
}
