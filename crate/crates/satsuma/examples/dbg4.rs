use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use satsuma::specfun::{parabolic_cylinder, weber_residual};
use std::f64::consts::PI;

fn main() {
    let mut rng = StdRng::seed_from_u64(12345);
    let mut worst = (0.0f64, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for _ in 0..100 {
        let a = Complex64::from_polar(rng.gen_range(0.0..10.0), rng.gen_range(-PI..PI));
        let z = Complex64::from_polar(rng.gen_range(0.05..50.0), rng.gen_range(-PI..PI));
        let r = weber_residual(a, z).unwrap();
        if r > worst.0 {
            worst = (r, a, z);
        }
    }
    let (r, a, z) = worst;
    let v = parabolic_cylinder(a, z).unwrap();
    println!("worst residual {r:.3e} at a = {a}, zeta = {z} (|zeta| = {:.2})", z.norm());
    println!("|g| = {:.3e}, |g'| = {:.3e}", v.value.norm(), v.derivative.norm());
}
