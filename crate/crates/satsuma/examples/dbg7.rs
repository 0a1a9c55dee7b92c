use num_complex::Complex64;
use std::f64::consts::PI;

fn main() {
    // re-implement asymptotic_jet's pieces inline for inspection
    let a = Complex64::new(4.702778571768872, -0.8372081909855275);
    let zeta = Complex64::from_polar(12.0, -2.8090462222911795);
    let inv_z2 = 1.0 / (zeta * zeta);
    let ln_zeta = zeta.ln();
    let lead = (a * ln_zeta - zeta * zeta * 0.25).exp();
    let mut s0 = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut prev = f64::INFINITY;
    let mut broke_at = 0;
    for s in 0..60 {
        s0 += term;
        let t_norm = term.norm();
        if t_norm < 1e-18 * s0.norm() || t_norm > prev {
            broke_at = s;
            break;
        }
        prev = t_norm;
        let sf = s as f64;
        term *= -(-a + 2.0 * sf) * (-a + 2.0 * sf + 1.0) * inv_z2 / (2.0 * (sf + 1.0));
        broke_at = s + 1;
    }
    println!("S1 sum = {s0}, first = {}, terms used = {broke_at}", lead * s0);

    let sign = if zeta.arg() >= 0.0 { 1.0 } else { -1.0 };
    let phase = (a * Complex64::new(0.0, sign * PI)).exp();
    let coeff = -(2.0 * PI).sqrt() * satsuma::specfun::recip_gamma(-a) * phase;
    let lead2 = ((-a - 1.0) * ln_zeta + zeta * zeta * 0.25).exp() * coeff;
    let mut r0 = Complex64::new(0.0, 0.0);
    let mut t2 = Complex64::new(1.0, 0.0);
    let mut prev2 = f64::INFINITY;
    let mut used = 0;
    for s in 0..60 {
        r0 += t2;
        let t_norm = t2.norm();
        if t_norm < 1e-18 * r0.norm() || t_norm > prev2 {
            used = s;
            break;
        }
        prev2 = t_norm;
        let sf = s as f64;
        t2 *= (a + 1.0 + 2.0 * sf) * (a + 2.0 + 2.0 * sf) * inv_z2 / (2.0 * (sf + 1.0));
        used = s + 1;
    }
    println!("S2 sum = {r0}, second = {}, terms used = {used}", lead2 * r0);
    println!("total = {}", lead * s0 + lead2 * r0);
    println!("expected  389326261.687370698912565877246 - 191282212.147802215572637877036i");
}
