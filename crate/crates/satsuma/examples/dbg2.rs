use num_complex::Complex64;
use satsuma::asymptotics::{leading_order, phase_integral};
use satsuma::grid::{FieldPair, Grid1D};
use satsuma::scattering::{detect_discrete_spectrum, Rectangle, ScatteringTable};

fn table_from_fn<F: Fn(f64) -> [Complex64; 4]>(lambda_max: f64, m: usize, f: F) -> ScatteringTable {
    let step = lambda_max / m as f64;
    let lambdas: Vec<f64> = (0..2 * m)
        .map(|i| if i < m { -(m as f64 - i as f64 - 0.5) * step } else { (i as f64 - m as f64 + 0.5) * step })
        .collect();
    let gammas: Vec<[Complex64; 4]> = lambdas.iter().map(|&l| f(l)).collect();
    ScatteringTable::from_gamma_rows(lambdas, gammas).unwrap()
}

fn main() {
    // amplitude test reproduction
    let table = table_from_fn(2.0, 128, |l| {
        [
            Complex64::new(0.5 / (1.0 + l * l), 0.2 * l),
            Complex64::new(0.3 * l, 0.1),
            Complex64::new(0.05, -0.2),
            Complex64::new(0.0, 0.15),
        ]
    });
    let lambda0: f64 = 0.6;
    match phase_integral(&table, lambda0) {
        Ok(v) => println!("phase integral = {v}"),
        Err(e) => println!("phase integral ERR: {e}"),
    }
    for t in [10.0, 40.0, 160.0] {
        let x = -12.0 * lambda0 * lambda0 * t;
        match leading_order(x, t, &table) {
            Ok(e) => println!("t = {t}: |u_as| = {}", e.u_as.norm()),
            Err(e) => println!("t = {t}: ERR {e}"),
        }
    }
    // zero-field winding on a big grid
    let g = Grid1D::new(-100.0, 100.0, 256).unwrap();
    let fp = FieldPair::zero(g);
    let rect = Rectangle { re_min: -2.0, re_max: 2.0, im_min: 0.01, im_max: 2.0 };
    match detect_discrete_spectrum(&fp, rect, 48) {
        Ok(w) => println!("zero-field winding = {w}"),
        Err(e) => println!("winding ERR: {e}"),
    }
}
