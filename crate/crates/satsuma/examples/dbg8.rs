use num_complex::Complex64;
use std::f64::consts::PI;
use satsuma::specfun::{complex_gamma, recip_gamma};

fn main() {
    let a = Complex64::new(4.702778571768872, -0.8372081909855275);
    let zeta = Complex64::from_polar(12.0, -2.8090462222911795);
    let ln_zeta = zeta.ln();
    println!("Gamma(-a)     = {}", complex_gamma(-a).unwrap());
    println!("1/Gamma(-a)   = {}", recip_gamma(-a));
    println!("e^(-a pi i)   = {}", (a * Complex64::new(0.0, -PI)).exp());
    println!("exponent      = {}", (-a - 1.0) * ln_zeta + zeta * zeta * 0.25);
}
