use num_complex::Complex64;
use satsuma::grid::{field_from_profiles, FieldProfile, Grid1D};
use satsuma::scattering::det_a_complex;

fn main() {
    let g = Grid1D::new(-15.0, 15.0, 256).unwrap();
    let fp = field_from_profiles(
        g,
        &FieldProfile::Sech { amplitude: 0.05, width: 1.0, center: 0.0, chirp: 0.0 },
        &FieldProfile::Zero,
    );
    for lam in [
        Complex64::new(0.0, 0.01),
        Complex64::new(0.0, 0.5),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, 1.34),
        Complex64::new(2.0, 1.34),
        Complex64::new(2.0, 2.0),
        Complex64::new(-2.0, 0.7),
    ] {
        match det_a_complex(&fp, lam) {
            Ok(d) => println!("lambda {lam}: det a = {d} (|.| = {:.3e})", d.norm()),
            Err(e) => println!("lambda {lam}: ERR {e}"),
        }
    }
}
