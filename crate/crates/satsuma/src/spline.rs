//! Natural cubic spline interpolation on a strictly increasing knot set.

use crate::error::{Error, Result};

/// Natural cubic spline through (x_i, y_i); second derivative vanishes
/// at both ends.
#[derive(Clone, Debug)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// second derivatives at knots
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 3 || y.len() != n {
            return Err(Error::Data(format!(
                "spline needs at least 3 matching knots, got {} / {}",
                n,
                y.len()
            )));
        }
        if !x.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::Data("spline knots must be strictly increasing".into()));
        }
        // Thomas algorithm on the tridiagonal system for second derivatives.
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        diag[0] = 1.0;
        diag[n - 1] = 1.0;
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            sub[i] = h0;
            diag[i] = 2.0 * (h0 + h1);
            sup[i] = h1;
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        for i in 1..n {
            let w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        }
        Ok(CubicSpline { x, y, m })
    }

    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.x.last().unwrap()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.x_min() && x <= self.x_max()
    }

    /// Evaluate at `x`; errors outside the knot range.
    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.eval_with_derivatives(x)?.0)
    }

    /// Value, first, and second derivative at `x`.
    pub fn eval_with_derivatives(&self, x: f64) -> Result<(f64, f64, f64)> {
        if !self.contains(x) {
            return Err(Error::OutOfRange {
                what: "spline abscissa",
                value: x,
                min: self.x_min(),
                max: self.x_max(),
            });
        }
        let i = match self.x.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.x.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.x.len() - 2),
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - x) / h;
        let b = (x - self.x[i]) / h;
        let value = a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0;
        let d1 = (self.y[i + 1] - self.y[i]) / h
            + ((3.0 * b * b - 1.0) * self.m[i + 1] - (3.0 * a * a - 1.0) * self.m[i]) * h / 6.0;
        let d2 = a * self.m[i] + b * self.m[i + 1];
        Ok((value, d1, d2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_knot_values() {
        let x: Vec<f64> = (0..12).map(|i| i as f64 * 0.5).collect();
        let y: Vec<f64> = x.iter().map(|&t| (t * 1.3).sin()).collect();
        let s = CubicSpline::new(x.clone(), y.clone()).unwrap();
        for (xi, yi) in x.iter().zip(y.iter()) {
            assert!((s.eval(*xi).unwrap() - yi).abs() < 1e-14);
        }
    }

    #[test]
    fn cubic_accuracy_on_smooth_decaying_data() {
        // Schwartz-type data: the natural end conditions are exact there
        let n = 129;
        let x: Vec<f64> = (0..n).map(|i| -8.0 + 16.0 * i as f64 / (n - 1) as f64).collect();
        let f = |t: f64| (2.0 * t).cos() / t.cosh();
        let y: Vec<f64> = x.iter().map(|&t| f(t)).collect();
        let s = CubicSpline::new(x, y).unwrap();
        let mut worst: f64 = 0.0;
        for k in 0..2000 {
            let t = -7.9 + 15.8 * k as f64 / 1999.0;
            worst = worst.max((s.eval(t).unwrap() - f(t)).abs());
        }
        assert!(worst < 2e-3, "spline error {worst:.3e}");
        let mut interior: f64 = 0.0;
        for k in 0..2000 {
            let t = -4.0 + 8.0 * k as f64 / 1999.0;
            interior = interior.max((s.eval(t).unwrap() - f(t)).abs());
        }
        assert!(interior < 5e-4, "interior spline error {interior:.3e}");
    }

    #[test]
    fn rejects_out_of_range_and_bad_knots() {
        let s = CubicSpline::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]).unwrap();
        assert!(s.eval(-0.1).is_err());
        assert!(s.eval(2.1).is_err());
        assert!(CubicSpline::new(vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]).is_err());
    }
}
