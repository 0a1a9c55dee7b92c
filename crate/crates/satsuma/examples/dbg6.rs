use num_complex::Complex64;
use satsuma::specfun::parabolic_cylinder;

fn main() {
    let a = Complex64::new(4.702778571768872, -0.8372081909855275);
    let cases = [
        (Complex64::new(-5.013875345021234, -1.7319971255848048),
         Complex64::new(5.82718505463227309272386079815, -4.82635429868860320417979137002)),
        (Complex64::from_polar(12.0, -2.8090462222911795),
         Complex64::new(389326261.687370698912565877246, -191282212.147802215572637877036)),
        (Complex64::from_polar(12.0, -3.0*std::f64::consts::PI/4.0),
         Complex64::new(6750.38661347572547359681896123, 15563.7206331090349619530388427)),
        (Complex64::from_polar(5.305, -3.0*std::f64::consts::PI/4.0),
         Complex64::new(381.864402526687788193433820206, -158.18578309497550370842794272)),
    ];
    for (z, expected) in cases {
        let got = parabolic_cylinder(a, z).unwrap().value;
        println!("zeta = {z}: rel err {:.3e}", (got - expected).norm() / expected.norm());
    }
    let z = Complex64::new(-5.013875345021234, -1.7319971255848048);
    let got = parabolic_cylinder(a, z).unwrap();
    let dp = Complex64::new(-15.3398601691811487916457225331, 1.26114001423547957012458974684);
    println!("deriv rel err {:.3e}", (got.derivative - dp).norm() / dp.norm());
}
