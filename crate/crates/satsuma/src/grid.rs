//! Uniform periodic grids and the sampled field pair (u, v).
//!
//! One grid is shared by the scattering and evolution layers: n is a power
//! of two so the FFT path never pads, the right endpoint is excluded, and
//! Schwartz-class data is expected to vanish at the truncation edges.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-10;

/// Uniform periodic grid on [x_min, x_max) with n samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::Grid(format!(
                "x_max ({x_max}) must exceed x_min ({x_min})"
            )));
        }
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::Grid(format!(
                "n = {n} must be a power of two and at least 16"
            )));
        }
        Ok(Grid1D { x_min, x_max, n })
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    #[inline]
    pub fn point(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    /// True when x_min = -x_max up to one grid spacing.
    pub fn symmetric_about_origin(&self) -> bool {
        (self.x_min + self.x_max).abs() <= self.spacing() * (1.0 + 1e-12)
    }

    /// Index of the grid point nearest to x.
    pub fn nearest_index(&self, x: f64) -> usize {
        let j = ((x - self.x_min) / self.spacing()).round();
        (j.max(0.0) as usize).min(self.n - 1)
    }
}

/// Sampled complex envelopes (u, v) at time t on a shared grid.
#[derive(Clone, Debug)]
pub struct FieldPair {
    pub grid: Grid1D,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub t: f64,
}

impl FieldPair {
    pub fn new(grid: Grid1D, u: Vec<Complex64>, v: Vec<Complex64>, t: f64) -> Result<Self> {
        if u.len() != grid.n || v.len() != grid.n {
            return Err(Error::Grid(format!(
                "field length ({}, {}) does not match grid.n = {}",
                u.len(),
                v.len(),
                grid.n
            )));
        }
        Ok(FieldPair { grid, u, v, t })
    }

    pub fn zero(grid: Grid1D) -> Self {
        FieldPair {
            grid,
            u: vec![Complex64::new(0.0, 0.0); grid.n],
            v: vec![Complex64::new(0.0, 0.0); grid.n],
            t: 0.0,
        }
    }

    /// Largest |u| or |v| over the outer `fraction` of samples at each edge.
    pub fn edge_amplitude(&self, fraction: f64) -> f64 {
        let n = self.grid.n;
        let band = ((n as f64 * fraction).ceil() as usize).clamp(1, n / 2);
        let mut amp: f64 = 0.0;
        for j in (0..band).chain(n - band..n) {
            amp = amp.max(self.u[j].norm()).max(self.v[j].norm());
        }
        amp
    }

    /// Schwartz-compatibility check over the outer 5% of samples:
    /// returns the offending amplitude when it exceeds `tol`.
    pub fn schwartz_violation(&self, tol: f64) -> Option<f64> {
        let amp = self.edge_amplitude(0.05);
        (amp > tol).then_some(amp)
    }

    pub fn is_finite(&self) -> bool {
        self.u
            .iter()
            .chain(self.v.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Trapezoid mass integral (all periodic points weigh h).
    pub fn mass(&self) -> f64 {
        let h = self.grid.spacing();
        h * self
            .u
            .iter()
            .zip(self.v.iter())
            .map(|(u, v)| u.norm_sqr() + v.norm_sqr())
            .sum::<f64>()
    }
}

/// Named analytic profiles for one envelope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "lowercase")]
pub enum FieldProfile {
    /// A sech(w (x - x0)) e^{i c x}
    Sech {
        amplitude: f64,
        #[serde(default = "default_width")]
        width: f64,
        #[serde(default)]
        center: f64,
        #[serde(default)]
        chirp: f64,
    },
    /// A e^{-w (x - x0)^2} e^{i c x}
    Gaussian {
        amplitude: f64,
        #[serde(default = "default_width")]
        width: f64,
        #[serde(default)]
        center: f64,
        #[serde(default)]
        chirp: f64,
    },
    Zero,
}

fn default_width() -> f64 {
    1.0
}

impl FieldProfile {
    pub fn eval(&self, x: f64) -> Complex64 {
        match *self {
            FieldProfile::Sech {
                amplitude,
                width,
                center,
                chirp,
            } => {
                let env = amplitude / (width * (x - center)).cosh();
                Complex64::from_polar(env, chirp * x)
            }
            FieldProfile::Gaussian {
                amplitude,
                width,
                center,
                chirp,
            } => {
                let env = amplitude * (-width * (x - center) * (x - center)).exp();
                Complex64::from_polar(env, chirp * x)
            }
            FieldProfile::Zero => Complex64::new(0.0, 0.0),
        }
    }

    pub fn sample(&self, grid: &Grid1D) -> Vec<Complex64> {
        (0..grid.n).map(|j| self.eval(grid.point(j))).collect()
    }
}

/// Build a field pair at t = 0 from per-envelope profiles.
pub fn field_from_profiles(grid: Grid1D, u: &FieldProfile, v: &FieldProfile) -> FieldPair {
    FieldPair {
        grid,
        u: u.sample(&grid),
        v: v.sample(&grid),
        t: 0.0,
    }
}

/// Parse the five-column complex CSV (x, Re u, Im u, Re v, Im v).
/// The x column must reproduce the grid points to within 1e-9 * h.
pub fn field_from_csv(grid: Grid1D, text: &str) -> Result<FieldPair> {
    let mut u = Vec::with_capacity(grid.n);
    let mut v = Vec::with_capacity(grid.n);
    let mut row = 0usize;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        // skip a header row
        if row == 0 && line.chars().next().is_some_and(|c| c.is_alphabetic()) {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 5 {
            return Err(Error::Data(format!(
                "field CSV row {row} has {} columns, expected 5",
                cols.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| Error::Data(format!("bad number '{s}' in field CSV row {row}")))
        };
        let x = parse(cols[0])?;
        if row >= grid.n {
            return Err(Error::Data(format!(
                "field CSV has more rows than grid.n = {}",
                grid.n
            )));
        }
        let expected = grid.point(row);
        if (x - expected).abs() > 1e-9 * grid.spacing().max(1.0) {
            return Err(Error::Data(format!(
                "field CSV x = {x} at row {row} does not match grid point {expected}"
            )));
        }
        u.push(Complex64::new(parse(cols[1])?, parse(cols[2])?));
        v.push(Complex64::new(parse(cols[3])?, parse(cols[4])?));
        row += 1;
    }
    if row != grid.n {
        return Err(Error::Data(format!(
            "field CSV has {row} rows, expected grid.n = {}",
            grid.n
        )));
    }
    FieldPair::new(grid, u, v, 0.0)
}
