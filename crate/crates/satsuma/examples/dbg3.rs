use num_complex::Complex64;
use satsuma::specfun::parabolic_cylinder;

fn main() {
    let a = Complex64::new(0.7, -0.4);
    let phi = -2.748893571891069_f64;
    let refs = [
        (3.999, Complex64::new(1.75464554747889884209036825265, -0.168392537751810280115872069522)),
        (4.001, Complex64::new(1.75879400544817214627074688938, -0.163485241913841934502925055565)),
        (12.0, Complex64::new(-801444919.464473029846655315966, -1565147668.51346756985366977852)),
    ];
    for (r, expected) in refs {
        let z = Complex64::from_polar(r, phi);
        let got = parabolic_cylinder(a, z).unwrap().value;
        println!("r={r}: got {got}, rel err {:.3e}", (got - expected).norm() / expected.norm());
    }
    let anchor = Complex64::from_polar(12.0, -3.0 * std::f64::consts::PI / 4.0);
    let got = parabolic_cylinder(a, anchor).unwrap().value;
    let expected = Complex64::new(1.29980221785232079887691196511, -1.78686760742092478471829413875);
    println!("anchor: got {got}, rel err {:.3e}", (got - expected).norm() / expected.norm());
}
