//! Complex gamma function via the Lanczos approximation (g = 7, n = 9),
//! with the reflection formula covering Re z < 1/2.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

// GSL / Numerical Recipes coefficient set for g = 7.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Gamma(z) for complex z. Poles at the nonpositive integers are errors.
pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::GammaPole { re: z.re, im: z.im });
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        let pi_z = z * PI;
        return PI / (pi_z.sin() * gamma_unchecked(Complex64::new(1.0, 0.0) - z));
    }
    let x = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_P[0], 0.0);
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        acc += p / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    let sqrt_two_pi = (2.0 * PI).sqrt();
    sqrt_two_pi * t.powc(x + 0.5) * (-t).exp() * acc
}

/// 1/Gamma(z); entire, zero at the nonpositive integers.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    1.0 / gamma_unchecked(z)
}

/// Principal-branch arg Gamma(i nu) with the nu -> 0+ limit -pi/2.
pub fn arg_gamma_imag(nu: f64) -> f64 {
    if nu == 0.0 {
        return -PI / 2.0;
    }
    gamma_unchecked(Complex64::new(0.0, nu)).arg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_axis_values() {
        assert_relative_eq!(
            complex_gamma(c(1.0, 0.0)).unwrap().re,
            1.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            complex_gamma(c(0.5, 0.0)).unwrap().re,
            PI.sqrt(),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            complex_gamma(c(6.0, 0.0)).unwrap().re,
            120.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn matches_arbitrary_precision_references() {
        // mpmath, 40 significant digits
        let cases = [
            (
                c(0.0, 0.5),
                c(-0.3992794763291927125044534487971959663576, -1.603388194139434445195512623174308493394),
            ),
            (
                c(3.5, -2.25),
                c(-1.359667332827631272061786358642091028603, -0.7087481369339484278907234848988100485281),
            ),
            (
                c(-4.5, 0.5),
                c(-0.01697262994241275149298594052685960843549, -0.01769985985375867231549879804331041433067),
            ),
            (
                c(12.0, 9.0),
                c(-1126910.820490374797710630382619608168145, -1110877.374715765499232766602546754522837),
            ),
        ];
        for (z, expected) in cases {
            let got = complex_gamma(z).unwrap();
            let rel = (got - expected).norm() / expected.norm();
            assert!(rel < 1e-12, "Gamma({z}) rel error {rel:.3e}");
        }
    }

    #[test]
    fn recurrence_and_reflection_identities() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..200 {
            let z = c(rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0));
            if (z.re - z.re.round()).abs() < 0.05 && z.im.abs() < 0.05 {
                continue;
            }
            let g = complex_gamma(z).unwrap();
            let g1 = complex_gamma(z + 1.0).unwrap();
            let rec = (g1 - z * g).norm() / g1.norm();
            assert!(rec < 1e-10, "recurrence residual {rec:.3e} at {z}");
            let refl = complex_gamma(c(1.0, 0.0) - z).unwrap();
            let lhs = g * refl * (z * PI).sin() / PI;
            assert!(
                (lhs - 1.0).norm() < 1e-10,
                "reflection residual {:.3e} at {z}",
                (lhs - 1.0).norm()
            );
        }
    }

    #[test]
    fn modulus_identity_on_imaginary_axis() {
        for nu in [0.1, 0.5, 1.0, 2.0] {
            let g = complex_gamma(c(0.0, nu)).unwrap();
            let check = g.norm_sqr() * nu * (PI * nu).sinh() / PI;
            assert!(
                (check - 1.0).abs() < 1e-10,
                "|Gamma(i nu)|^2 identity residual {:.3e} at nu = {nu}",
                (check - 1.0).abs()
            );
        }
        // |Gamma(0.5 i)|^2 = pi / (0.5 sinh(pi/2)) = 2.730277801323431...
        let g = complex_gamma(c(0.0, 0.5)).unwrap();
        assert_relative_eq!(g.norm_sqr(), 2.730277801323431, max_relative = 1e-12);
    }

    #[test]
    fn pole_handling() {
        assert!(complex_gamma(c(0.0, 0.0)).is_err());
        assert!(complex_gamma(c(-3.0, 0.0)).is_err());
        assert_eq!(recip_gamma(c(-7.0, 0.0)), c(0.0, 0.0));
        assert!(recip_gamma(c(-7.0, 1e-9)).norm() > 0.0);
    }

    #[test]
    fn arg_gamma_limit_at_zero() {
        assert_eq!(arg_gamma_imag(0.0), -PI / 2.0);
        // mpmath: arg gamma(0.3i) = -1.733616998962752301403044620354718787808
        assert_relative_eq!(
            arg_gamma_imag(0.3),
            -1.7336169989627523,
            max_relative = 1e-12
        );
        // continuity toward the limit
        assert!((arg_gamma_imag(1e-8) + PI / 2.0).abs() < 1e-6);
    }
}
