//! Direct scattering for the 5x5 spectral problem.
//!
//! The x-part of the Lax pair, mu_x - i lambda [sigma, mu] = U mu, is
//! integrated in the sigma-hat conjugated gauge w = e^{-i lambda x sigma_hat} mu,
//! where the commutator disappears and the carrier phases e^{+-2 i lambda x}
//! multiply the potential entries exactly. The stepper therefore sees only
//! the envelope of the potential and stays fourth-order uniformly in lambda.
//! The scattering matrix is the conjugated Jost solution at the right
//! truncation edge, s(lambda) = e^{-i lambda x_max sigma_hat} mu_-(x_max).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::map_indexed;
use crate::grid::FieldPair;
use crate::linalg::{ComplexMatrix, StructureConstants};
use crate::spline::CubicSpline;

pub const SINGULAR_A_THRESHOLD: f64 = 1e-12;
pub const WINDING_DET_FLOOR: f64 = 1e-10;

/// Top-right 4x1 potential column (u, conj u, v, conj v) at sample j.
fn potential_column(fp: &FieldPair, j: usize) -> [Complex64; 4] {
    let u = fp.u[j];
    let v = fp.v[j];
    [u, u.conj(), v, v.conj()]
}

/// assemble U at sample j: top-right block is the potential column,
/// bottom-left its negative adjoint, zeros elsewhere. U^dag = -U, tr U = 0.
pub fn assemble_potential(fp: &FieldPair, j: usize) -> Result<ComplexMatrix> {
    if j >= fp.grid.n {
        return Err(Error::IndexOutOfRange {
            index: j,
            len: fp.grid.n,
        });
    }
    let col = potential_column(fp, j);
    let mut m = ComplexMatrix::zeros(5, 5);
    for (i, &p) in col.iter().enumerate() {
        m[(i, 4)] = p;
        m[(4, i)] = -p.conj();
    }
    Ok(m)
}

/// Conjugated right-hand side: out = U_tilde(x) w with
/// U_tilde_{i5} = pot_i e^{-2 i lambda x} (= p), U_tilde_{5i} = -conj(pot_i) e^{+2 i lambda x} (= q).
#[inline]
fn apply_conjugated(
    pots: &[Complex64; 4],
    p: Complex64,
    q: Complex64,
    w: &ComplexMatrix,
    out: &mut ComplexMatrix,
) {
    let cols = w.cols();
    // a vanished potential contributes nothing even where the counter-phase
    // has left floating-point range (0 * inf would poison the state)
    let zero = Complex64::new(0.0, 0.0);
    let times = |a: Complex64, phase: Complex64| if a == zero { zero } else { a * phase };
    let scaled: [Complex64; 4] = [
        times(pots[0], p),
        times(pots[1], p),
        times(pots[2], p),
        times(pots[3], p),
    ];
    let scaled_adj: [Complex64; 4] = [
        times(pots[0].conj(), q),
        times(pots[1].conj(), q),
        times(pots[2].conj(), q),
        times(pots[3].conj(), q),
    ];
    for c in 0..cols {
        let w5 = w[(4, c)];
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..4 {
            out[(i, c)] = scaled[i] * w5;
            acc += scaled_adj[i] * w[(i, c)];
        }
        out[(4, c)] = -acc;
    }
}

/// Potential column interpolated at midpoint j + 1/2 by the 4-point cubic
/// stencil (-1, 9, 9, -1)/16 with periodic wrap.
fn midpoint_column(fp: &FieldPair, j: usize) -> [Complex64; 4] {
    let n = fp.grid.n;
    let jm1 = (j + n - 1) % n;
    let jp1 = (j + 1) % n;
    let jp2 = (j + 2) % n;
    let mid = |a: Complex64, b: Complex64, c: Complex64, d: Complex64| {
        (-a + 9.0 * b + 9.0 * c - d) / 16.0
    };
    let u = mid(fp.u[jm1], fp.u[j], fp.u[jp1], fp.u[jp2]);
    let v = mid(fp.v[jm1], fp.v[j], fp.v[jp1], fp.v[jp2]);
    [u, u.conj(), v, v.conj()]
}

/// Integrate the conjugated system w' = U_tilde w across the grid with RK4.
/// `ncols` = 5 for the full Jost matrix, 4 for the analytic a-block columns.
/// Returns w at the n+1 nodes x_min + j h (j = 0..=n), ordered left to right.
fn integrate_conjugated(
    fp: &FieldPair,
    lambda: Complex64,
    ncols: usize,
    from_minus_infinity: bool,
) -> Result<Vec<ComplexMatrix>> {
    let n = fp.grid.n;
    let h = fp.grid.spacing();
    let two_i_lambda = Complex64::new(0.0, 2.0) * lambda;

    let mut w0 = ComplexMatrix::zeros(5, ncols);
    for i in 0..ncols.min(5) {
        w0[(i, i)] = Complex64::new(1.0, 0.0);
    }
    let mut values = vec![ComplexMatrix::zeros(5, ncols); n + 1];

    // phases at a node x: p = e^{-2 i lambda x}, q = e^{+2 i lambda x},
    // each its own exponential (a reciprocal would overflow in norm_sqr
    // long before the exponentials themselves leave range)
    let phases = |x: f64| {
        let z = two_i_lambda * x;
        ((-z).exp(), z.exp())
    };

    let mut k1 = ComplexMatrix::zeros(5, ncols);
    let mut k2 = ComplexMatrix::zeros(5, ncols);
    let mut k3 = ComplexMatrix::zeros(5, ncols);
    let mut k4 = ComplexMatrix::zeros(5, ncols);

    let mut step = |w: &ComplexMatrix,
                    j_from: usize,
                    j_to: usize,
                    x_from: f64,
                    sign: f64|
     -> ComplexMatrix {
        let dt = sign * h;
        let x_mid = x_from + 0.5 * dt;
        let x_to = x_from + dt;
        let pots_from = potential_column(fp, j_from % n);
        let pots_mid = midpoint_column(fp, j_from.min(j_to) % n);
        let pots_to = potential_column(fp, j_to % n);
        let (pf, qf) = phases(x_from);
        let (pm, qm) = phases(x_mid);
        let (pt, qt) = phases(x_to);

        apply_conjugated(&pots_from, pf, qf, w, &mut k1);
        let y = w.add(&k1.scale(Complex64::new(0.5 * dt, 0.0)));
        apply_conjugated(&pots_mid, pm, qm, &y, &mut k2);
        let y = w.add(&k2.scale(Complex64::new(0.5 * dt, 0.0)));
        apply_conjugated(&pots_mid, pm, qm, &y, &mut k3);
        let y = w.add(&k3.scale(Complex64::new(dt, 0.0)));
        apply_conjugated(&pots_to, pt, qt, &y, &mut k4);

        let incr = k1
            .add(&k2.scale(Complex64::new(2.0, 0.0)))
            .add(&k3.scale(Complex64::new(2.0, 0.0)))
            .add(&k4)
            .scale(Complex64::new(dt / 6.0, 0.0));
        w.add(&incr)
    };

    if from_minus_infinity {
        values[0] = w0;
        let mut w = w0;
        for j in 0..n {
            let x = fp.grid.point(j);
            w = step(&w, j, j + 1, x, 1.0);
            values[j + 1] = w;
        }
    } else {
        values[n] = w0;
        let mut w = w0;
        for j in (0..n).rev() {
            let x = fp.grid.point(j) + h;
            w = step(&w, j + 1, j, x, -1.0);
            values[j] = w;
        }
    }

    if !values[if from_minus_infinity { n } else { 0 }].is_finite() {
        return Err(Error::NonFinite {
            context: "Jost integration",
        });
    }
    Ok(values)
}

/// Jost solution sampled on the grid nodes (plus the right edge x_max).
#[derive(Clone, Debug)]
pub struct JostSolution {
    pub lambda: f64,
    pub from_minus_infinity: bool,
    /// mu at x_min + j h for j = 0..=n
    pub mu: Vec<ComplexMatrix>,
    /// largest boundary amplitude when the Schwartz check fails
    pub boundary_warning: Option<f64>,
}

impl JostSolution {
    pub fn node_x(&self, grid: &crate::grid::Grid1D, j: usize) -> f64 {
        grid.x_min + j as f64 * grid.spacing()
    }
}

/// Solve for mu_- (boundary I at x_min) or mu_+ (boundary I at x_max).
pub fn jost_solve(fp: &FieldPair, lambda: f64, from_minus_infinity: bool) -> Result<JostSolution> {
    let boundary_warning = fp.schwartz_violation(crate::grid::DEFAULT_BOUNDARY_TOL);
    let lam = Complex64::new(lambda, 0.0);
    let w = integrate_conjugated(fp, lam, 5, from_minus_infinity)?;
    // transform back: mu = e^{+i lambda x sigma_hat} w
    let h = fp.grid.spacing();
    let mu = w
        .into_iter()
        .enumerate()
        .map(|(j, wj)| {
            let x = fp.grid.x_min + j as f64 * h;
            let e = (Complex64::new(0.0, 2.0 * lambda) * x).exp();
            let mut m = wj;
            for i in 0..4 {
                m[(i, 4)] *= e;
                let q = m[(4, i)];
                m[(4, i)] = q / e;
            }
            m
        })
        .collect();
    Ok(JostSolution {
        lambda,
        from_minus_infinity,
        mu,
        boundary_warning,
    })
}

/// s(lambda) = e^{-i lambda x_max sigma_hat} mu_-(x_max), the conjugated
/// Jost solution evaluated at the right truncation edge.
pub fn scattering_matrix(fp: &FieldPair, lambda: f64) -> Result<ComplexMatrix> {
    let lam = Complex64::new(lambda, 0.0);
    let w = integrate_conjugated(fp, lam, 5, true)?;
    Ok(*w.last().unwrap())
}

/// Per-lambda scattering record: blocks of s and the reflection row.
#[derive(Clone, Debug)]
pub struct SpectralSample {
    pub lambda: f64,
    /// 4x4 block s_11
    pub a: ComplexMatrix,
    /// 1x4 block s_21
    pub b: ComplexMatrix,
    /// gamma = b a^{-1}
    pub gamma: ComplexMatrix,
    pub det_a: Complex64,
}

impl SpectralSample {
    pub fn gamma_norm_sqr(&self) -> f64 {
        let g = &self.gamma;
        (0..4).map(|j| g[(0, j)].norm_sqr()).sum()
    }

    /// Rebuild the full 5x5 s from the blocks (real lambda), per the
    /// block structure s = (a, -adj(a^dag) b^dag; b, det a^dag).
    pub fn rebuild_s(&self) -> Result<ComplexMatrix> {
        let a_dag = self.a.adjoint();
        let b_dag = self.b.adjoint();
        let s12 = a_dag.adjugate()?.mul(&b_dag).scale(Complex64::new(-1.0, 0.0));
        let mut s = ComplexMatrix::zeros(5, 5);
        for i in 0..4 {
            for j in 0..4 {
                s[(i, j)] = self.a[(i, j)];
            }
            s[(i, 4)] = s12[(i, 0)];
            s[(4, i)] = self.b[(0, i)];
        }
        s[(4, 4)] = a_dag.det();
        Ok(s)
    }
}

/// Per-lambda consistency diagnostics computed from the same integration.
#[derive(Clone, Copy, Debug)]
pub struct SampleDiagnostics {
    pub det_s_error: f64,
    pub unitarity_error: f64,
}

fn sample_with_diagnostics(
    fp: &FieldPair,
    lambda: f64,
) -> Result<(SpectralSample, SampleDiagnostics)> {
    let s = scattering_matrix(fp, lambda)?;
    let det_s_error = (s.det() - Complex64::new(1.0, 0.0)).norm();
    let unitarity_error = s
        .adjoint()
        .mul(&s)
        .sub(&ComplexMatrix::identity(5))
        .frobenius_norm();
    let a = s.block(0, 0, 4, 4);
    let b = s.block(4, 0, 1, 4);
    let det_a = a.det();
    if det_a.norm() < SINGULAR_A_THRESHOLD {
        return Err(Error::SingularBlock {
            lambda,
            det_abs: det_a.norm(),
            threshold: SINGULAR_A_THRESHOLD,
        });
    }
    let gamma = b.mul(&a.inverse()?);
    Ok((
        SpectralSample {
            lambda,
            a,
            b,
            gamma,
            det_a,
        },
        SampleDiagnostics {
            det_s_error,
            unitarity_error,
        },
    ))
}

/// Reflection data gamma(lambda) = b(lambda) a^{-1}(lambda).
pub fn reflection(fp: &FieldPair, lambda: f64) -> Result<SpectralSample> {
    sample_with_diagnostics(fp, lambda).map(|(s, _)| s)
}

/// Worst-case symmetry violations over a sampled table.
#[derive(Clone, Copy, Debug, Default, serde::Serialize)]
pub struct SymmetryReport {
    pub max_det_s_error: f64,
    pub max_unitarity_error: f64,
    pub max_a_symmetry_error: f64,
    pub max_b_symmetry_error: f64,
}

/// gamma(lambda) tabulated on the symmetric half-offset grid with cubic
/// interpolation of each component.
pub struct ScatteringTable {
    pub lambdas: Vec<f64>,
    pub samples: Vec<SpectralSample>,
    pub diagnostics: Vec<SampleDiagnostics>,
    pub symmetry: SymmetryReport,
    pub sup_gamma: f64,
    splines: Vec<CubicSpline>,
}

impl ScatteringTable {
    pub fn lambda_max(&self) -> f64 {
        *self.lambdas.last().unwrap()
    }

    pub fn in_range(&self, lambda: f64) -> bool {
        lambda >= self.lambdas[0] && lambda <= self.lambda_max()
    }

    /// Interpolated reflection row at lambda.
    pub fn gamma_at(&self, lambda: f64) -> Result<[Complex64; 4]> {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (c, slot) in out.iter_mut().enumerate() {
            let re = self.splines[2 * c].eval(lambda)?;
            let im = self.splines[2 * c + 1].eval(lambda)?;
            *slot = Complex64::new(re, im);
        }
        Ok(out)
    }

    pub fn gamma_row_at(&self, lambda: f64) -> Result<ComplexMatrix> {
        let g = self.gamma_at(lambda)?;
        let mut m = ComplexMatrix::zeros(1, 4);
        for (j, v) in g.iter().enumerate() {
            m[(0, j)] = *v;
        }
        Ok(m)
    }

    /// |gamma(lambda)|^2 from the interpolants.
    pub fn gamma_norm_sqr_at(&self, lambda: f64) -> Result<f64> {
        Ok(self.gamma_at(lambda)?.iter().map(|z| z.norm_sqr()).sum())
    }

    /// |gamma|^2 with first and second derivative, from the spline jets.
    pub fn gamma_norm_sqr_jet(&self, lambda: f64) -> Result<(f64, f64, f64)> {
        let mut s = 0.0;
        let mut s1 = 0.0;
        let mut s2 = 0.0;
        for spline in &self.splines {
            let (v, d1, d2) = spline.eval_with_derivatives(lambda)?;
            s += v * v;
            s1 += 2.0 * v * d1;
            s2 += 2.0 * (d1 * d1 + v * d2);
        }
        Ok((s, s1, s2))
    }

    /// Count of table nodes strictly inside (-l, l).
    pub fn samples_inside(&self, l: f64) -> usize {
        self.lambdas.iter().filter(|&&x| x.abs() < l).count()
    }

    /// Rebuild a table from raw (lambda, gamma) rows, e.g. parsed from CSV.
    /// Symmetry metadata and block matrices are not reconstructed.
    pub fn from_gamma_rows(lambdas: Vec<f64>, gammas: Vec<[Complex64; 4]>) -> Result<Self> {
        if lambdas.len() != gammas.len() || lambdas.len() < 8 {
            return Err(Error::Data("table needs at least 8 matching rows".into()));
        }
        let splines = build_splines(&lambdas, &gammas)?;
        let sup_gamma = gammas
            .iter()
            .map(|g| g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0f64, f64::max);
        let samples = lambdas
            .iter()
            .zip(gammas.iter())
            .map(|(&lambda, g)| {
                let mut gamma = ComplexMatrix::zeros(1, 4);
                for (j, v) in g.iter().enumerate() {
                    gamma[(0, j)] = *v;
                }
                SpectralSample {
                    lambda,
                    a: ComplexMatrix::identity(4),
                    b: ComplexMatrix::zeros(1, 4),
                    gamma,
                    det_a: Complex64::new(1.0, 0.0),
                }
            })
            .collect();
        let n = lambdas.len();
        Ok(ScatteringTable {
            lambdas,
            samples,
            diagnostics: vec![
                SampleDiagnostics {
                    det_s_error: 0.0,
                    unitarity_error: 0.0
                };
                n
            ],
            symmetry: SymmetryReport::default(),
            sup_gamma,
            splines,
        })
    }
}

fn build_splines(lambdas: &[f64], gammas: &[[Complex64; 4]]) -> Result<Vec<CubicSpline>> {
    let mut splines = Vec::with_capacity(8);
    for c in 0..4 {
        let re: Vec<f64> = gammas.iter().map(|g| g[c].re).collect();
        let im: Vec<f64> = gammas.iter().map(|g| g[c].im).collect();
        splines.push(CubicSpline::new(lambdas.to_vec(), re)?);
        splines.push(CubicSpline::new(lambdas.to_vec(), im)?);
    }
    Ok(splines)
}

/// Sample the reflection on the symmetric grid {+-(k+1/2) lambda_max / m}
/// and attach interpolants plus the symmetry report. Each lambda is an
/// independent integration; the sweep runs in parallel and merges by index.
pub fn build_table(fp: &FieldPair, lambda_max: f64, m: usize) -> Result<ScatteringTable> {
    if m < 8 || m % 2 != 0 {
        return Err(Error::Config(format!("m = {m} must be even and at least 8")));
    }
    if !(lambda_max > 0.0) {
        return Err(Error::Config(format!("lambda_max = {lambda_max} must be positive")));
    }
    let step = lambda_max / m as f64;
    let lambdas: Vec<f64> = (0..2 * m)
        .map(|i| {
            if i < m {
                -(m as f64 - i as f64 - 0.5) * step
            } else {
                (i as f64 - m as f64 + 0.5) * step
            }
        })
        .collect();

    let results = map_indexed(lambdas.len(), |i| sample_with_diagnostics(fp, lambdas[i]));
    let mut samples = Vec::with_capacity(lambdas.len());
    let mut diagnostics = Vec::with_capacity(lambdas.len());
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok((s, d)) => {
                samples.push(s);
                diagnostics.push(d);
            }
            Err(e) => {
                return Err(Error::Data(format!(
                    "table aborted at lambda = {}: {e}",
                    lambdas[i]
                )))
            }
        }
    }

    let sc = StructureConstants::new();
    let mut report = SymmetryReport::default();
    for d in &diagnostics {
        report.max_det_s_error = report.max_det_s_error.max(d.det_s_error);
        report.max_unitarity_error = report.max_unitarity_error.max(d.unitarity_error);
    }
    let n = lambdas.len();
    for i in 0..m {
        // pair (lambda, -lambda): indices m+k and m-1-k
        let plus = &samples[m + i];
        let minus = &samples[m - 1 - i];
        debug_assert!((plus.lambda + minus.lambda).abs() < 1e-12);
        let a_sym = plus
            .a
            .sub(&sc.sigma1_conjugate(&minus.a.conj()))
            .frobenius_norm();
        let b_sym = minus
            .b
            .conj()
            .mul(&sc.sigma1)
            .sub(&plus.b)
            .frobenius_norm();
        report.max_a_symmetry_error = report.max_a_symmetry_error.max(a_sym);
        report.max_b_symmetry_error = report.max_b_symmetry_error.max(b_sym);
    }

    let gammas: Vec<[Complex64; 4]> = samples
        .iter()
        .map(|s| {
            let mut g = [Complex64::new(0.0, 0.0); 4];
            for (j, v) in g.iter_mut().enumerate() {
                *v = s.gamma[(0, j)];
            }
            g
        })
        .collect();
    let splines = build_splines(&lambdas, &gammas)?;
    let sup_gamma = samples
        .iter()
        .map(|s| s.gamma_norm_sqr().sqrt())
        .fold(0.0f64, f64::max);
    if !sup_gamma.is_finite() {
        return Err(Error::NonFinite {
            context: "reflection table",
        });
    }
    debug_assert_eq!(n, samples.len());

    Ok(ScatteringTable {
        lambdas,
        samples,
        diagnostics,
        symmetry: report,
        sup_gamma,
        splines,
    })
}

/// Rectangle in the open upper half plane for the winding diagnostic.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize, PartialEq)]
pub struct Rectangle {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rectangle {
    pub fn validate(&self) -> Result<()> {
        if !(self.im_min > 0.0 && self.im_max > self.im_min && self.re_max > self.re_min) {
            return Err(Error::Config(format!(
                "rectangle must lie strictly in the upper half plane with positive extent, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// The upper-half-plane analytic determinant carrying the discrete
/// spectrum, evaluated off the real axis.
///
/// With this Lax-pair sign convention the first-block columns of mu_-
/// continue analytically to Im lambda < 0, where the conjugated
/// integration is also numerically stable (the competing exponential
/// decays). The function analytic in the upper half plane is the
/// Hermitian reflection det a^dag(conj lambda) = conj(det a(conj lambda)),
/// which agrees with det a's zero count: its zeros in C_+ are exactly the
/// mirrored discrete eigenvalues. For Im lambda > 0 the block is therefore
/// integrated at the conjugate point and conjugated back.
pub fn det_a_complex(fp: &FieldPair, lambda: Complex64) -> Result<Complex64> {
    let (eval_at, reflect) = if lambda.im > 0.0 {
        (lambda.conj(), true)
    } else {
        (lambda, false)
    };
    let w = integrate_conjugated(fp, eval_at, 4, true)?;
    let a = w.last().unwrap().block(0, 0, 4, 4);
    if !a.is_finite() {
        return Err(Error::NonFinite {
            context: "analytic a block",
        });
    }
    let det = a.det();
    Ok(if reflect { det.conj() } else { det })
}

/// Argument-principle winding count of det a around the rectangle boundary,
/// sampled counterclockwise and phase-unwrapped. Zero certifies solitonless
/// data inside the box.
pub fn detect_discrete_spectrum(
    fp: &FieldPair,
    rect: Rectangle,
    samples_per_side: usize,
) -> Result<i64> {
    rect.validate()?;
    let k = samples_per_side.max(8);
    let corners = [
        Complex64::new(rect.re_min, rect.im_min),
        Complex64::new(rect.re_max, rect.im_min),
        Complex64::new(rect.re_max, rect.im_max),
        Complex64::new(rect.re_min, rect.im_max),
    ];
    let mut nodes = Vec::with_capacity(4 * k);
    for side in 0..4 {
        let from = corners[side];
        let to = corners[(side + 1) % 4];
        for j in 0..k {
            nodes.push(from + (to - from) * (j as f64 / k as f64));
        }
    }

    let dets = map_indexed(nodes.len(), |i| det_a_complex(fp, nodes[i]));
    let mut values = Vec::with_capacity(nodes.len());
    for (node, det) in nodes.iter().zip(dets.into_iter()) {
        let d = det?;
        if d.norm() < WINDING_DET_FLOOR {
            return Err(Error::WindingBoundary {
                re: node.re,
                im: node.im,
                det_abs: d.norm(),
            });
        }
        values.push(d);
    }

    let mut total = 0.0;
    for i in 0..values.len() {
        let next = values[(i + 1) % values.len()];
        let delta = (next / values[i]).arg();
        if delta.abs() > std::f64::consts::FRAC_PI_2 {
            return Err(Error::WindingBoundary {
                re: nodes[i].re,
                im: nodes[i].im,
                det_abs: values[i].norm(),
            });
        }
        total += delta;
    }
    let winding = (total / (2.0 * std::f64::consts::PI)).round();
    if (total - winding * 2.0 * std::f64::consts::PI).abs() > 0.5 {
        return Err(Error::Data(format!(
            "winding sum {total:.3e} is not close to a multiple of 2 pi; refine the boundary sampling"
        )));
    }
    Ok(winding as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{field_from_profiles, FieldPair, FieldProfile, Grid1D};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sech_field(amplitude: f64, n: usize, half_width: f64) -> FieldPair {
        let g = Grid1D::new(-half_width, half_width, n).unwrap();
        field_from_profiles(
            g,
            &FieldProfile::Sech {
                amplitude,
                width: 1.0,
                center: 0.0,
                chirp: 0.0,
            },
            &FieldProfile::Zero,
        )
    }

    #[test]
    fn potential_matrix_structure() {
        let g = Grid1D::new(-10.0, 10.0, 64).unwrap();
        let mut fp = FieldPair::zero(g);
        // zero field -> zero matrix
        assert_eq!(assemble_potential(&fp, 3).unwrap().frobenius_norm(), 0.0);

        fp.u[5] = c(1.0, 0.0);
        let m = assemble_potential(&fp, 5).unwrap();
        assert_eq!(m[(0, 4)], c(1.0, 0.0));
        assert_eq!(m[(1, 4)], c(1.0, 0.0));
        assert_eq!(m[(4, 0)], c(-1.0, 0.0));
        assert_eq!(m[(4, 1)], c(-1.0, 0.0));
        let mut nonzero = 0;
        for i in 0..5 {
            for j in 0..5 {
                if m[(i, j)].norm() > 0.0 {
                    nonzero += 1;
                }
            }
        }
        assert_eq!(nonzero, 4);

        assert!(assemble_potential(&fp, 64).is_err());
    }

    #[test]
    fn potential_is_antihermitian_and_traceless() {
        let g = Grid1D::new(-10.0, 10.0, 64).unwrap();
        let mut fp = FieldPair::zero(g);
        fp.u[7] = c(0.0, 1.0);
        fp.v[7] = c(0.0, 2.0);
        let m = assemble_potential(&fp, 7).unwrap();
        let sum = m.add(&m.adjoint()).frobenius_norm();
        assert_eq!(sum, 0.0);
        assert_eq!(m.trace(), c(0.0, 0.0));
    }

    #[test]
    fn zero_potential_jost_is_identity() {
        let g = Grid1D::new(-15.0, 15.0, 128).unwrap();
        let fp = FieldPair::zero(g);
        for lambda in [0.0, 0.7, -2.3] {
            let sol = jost_solve(&fp, lambda, true).unwrap();
            for m in &sol.mu {
                assert!(m.sub(&ComplexMatrix::identity(5)).frobenius_norm() < 1e-14);
            }
            let s = scattering_matrix(&fp, lambda).unwrap();
            assert!(s.sub(&ComplexMatrix::identity(5)).frobenius_norm() < 1e-14);
        }
    }

    #[test]
    fn det_mu_stays_one() {
        let fp = sech_field(0.8, 2048, 25.0);
        for lambda in [0.0, 0.5] {
            let sol = jost_solve(&fp, lambda, true).unwrap();
            for (j, m) in sol.mu.iter().enumerate().step_by(64) {
                let err = (m.det() - c(1.0, 0.0)).norm();
                assert!(err < 1e-8, "det mu error {err:.3e} at node {j}");
            }
            // mu_+ too
            let sol_p = jost_solve(&fp, lambda, false).unwrap();
            let err = (sol_p.mu[0].det() - c(1.0, 0.0)).norm();
            assert!(err < 1e-8);
        }
    }

    #[test]
    fn scattering_unitarity_and_det() {
        let fp = sech_field(1.0, 2048, 25.0);
        let s = scattering_matrix(&fp, 0.7).unwrap();
        let det_err = (s.det() - c(1.0, 0.0)).norm();
        assert!(det_err < 1e-8, "det s error {det_err:.3e}");
        let uni = s
            .adjoint()
            .mul(&s)
            .sub(&ComplexMatrix::identity(5))
            .frobenius_norm();
        assert!(uni < 1e-6, "unitarity error {uni:.3e}");
    }

    #[test]
    fn richardson_consistency_under_step_halving() {
        // refine the analytic profile onto finer grids and compare s(lambda)
        let coarse = sech_field(1.0, 512, 20.0);
        let fine = sech_field(1.0, 1024, 20.0);
        let finest = sech_field(1.0, 2048, 20.0);
        let lambda = 0.5;
        let s_c = scattering_matrix(&coarse, lambda).unwrap();
        let s_f = scattering_matrix(&fine, lambda).unwrap();
        let s_r = scattering_matrix(&finest, lambda).unwrap();
        let err_c = s_c.sub(&s_r).frobenius_norm();
        let err_f = s_f.sub(&s_r).frobenius_norm();
        let ratio = err_c / err_f;
        assert!(
            ratio >= 12.0,
            "refinement ratio {ratio:.2} below nominal order 4 (errors {err_c:.3e}, {err_f:.3e})"
        );
    }

    #[test]
    fn v_rows_stay_unexcited_for_u_only_data() {
        let fp = sech_field(0.6, 1024, 25.0);
        let sample = reflection(&fp, 0.4).unwrap();
        assert!(sample.gamma[(0, 2)].norm() < 1e-10);
        assert!(sample.gamma[(0, 3)].norm() < 1e-10);
        assert!(sample.gamma[(0, 0)].norm() > 1e-4);
    }

    #[test]
    fn reflection_symmetry_across_sign_of_lambda() {
        let fp = sech_field(0.9, 1024, 25.0);
        let plus = reflection(&fp, 0.6).unwrap();
        let minus = reflection(&fp, -0.6).unwrap();
        let diff = (plus.gamma_norm_sqr() - minus.gamma_norm_sqr()).abs();
        assert!(diff < 1e-8, "|gamma|^2 symmetry violation {diff:.3e}");
    }

    #[test]
    fn zero_field_reflection_and_table() {
        let g = Grid1D::new(-10.0, 10.0, 64).unwrap();
        let fp = FieldPair::zero(g);
        let sample = reflection(&fp, 0.3).unwrap();
        assert_eq!(sample.gamma.frobenius_norm(), 0.0);

        let table = build_table(&fp, 1.0, 8).unwrap();
        assert_eq!(table.lambdas.len(), 16);
        assert_eq!(table.sup_gamma, 0.0);
        assert!(table.symmetry.max_det_s_error < 1e-13);
        // symmetric grid: -lambda present for every lambda
        for &l in &table.lambdas {
            assert!(table.lambdas.iter().any(|&m| (m + l).abs() < 1e-12));
        }
    }

    #[test]
    fn table_interpolation_refines() {
        let fp = sech_field(0.5, 512, 20.0);
        let t64 = build_table(&fp, 2.0, 64).unwrap();
        let t128 = build_table(&fp, 2.0, 128).unwrap();
        let g1 = t64.gamma_at(0.33).unwrap();
        let g2 = t128.gamma_at(0.33).unwrap();
        let diff: f64 = g1
            .iter()
            .zip(g2.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-6, "interpolation refinement gap {diff:.3e}");
    }

    #[test]
    fn rebuilt_s_matches_block_structure() {
        let fp = sech_field(0.8, 2048, 25.0);
        let lambda = 0.45;
        let s = scattering_matrix(&fp, lambda).unwrap();
        let sample = reflection(&fp, lambda).unwrap();
        let rebuilt = sample.rebuild_s().unwrap();
        let err = s.sub(&rebuilt).frobenius_norm();
        assert!(err < 1e-6, "block reconstruction error {err:.3e}");
        let det_err = (rebuilt.det() - c(1.0, 0.0)).norm();
        assert!(det_err < 1e-8);
    }

    #[test]
    fn winding_zero_for_small_data() {
        let fp = sech_field(0.05, 256, 15.0);
        let rect = Rectangle {
            re_min: -2.0,
            re_max: 2.0,
            im_min: 0.01,
            im_max: 2.0,
        };
        let w = detect_discrete_spectrum(&fp, rect, 24).unwrap();
        assert_eq!(w, 0);
    }

    #[test]
    fn winding_is_additive_over_split_rectangles() {
        let fp = sech_field(0.3, 256, 15.0);
        let whole = Rectangle {
            re_min: -1.5,
            re_max: 1.5,
            im_min: 0.05,
            im_max: 1.2,
        };
        let left = Rectangle {
            re_min: -1.5,
            re_max: 0.1,
            im_min: 0.05,
            im_max: 1.2,
        };
        let right = Rectangle {
            re_min: 0.1,
            re_max: 1.5,
            im_min: 0.05,
            im_max: 1.2,
        };
        let w = detect_discrete_spectrum(&fp, whole, 24).unwrap();
        let wl = detect_discrete_spectrum(&fp, left, 24).unwrap();
        let wr = detect_discrete_spectrum(&fp, right, 24).unwrap();
        assert_eq!(w, wl + wr);
    }

    #[test]
    fn rectangle_outside_upper_half_plane_is_rejected() {
        let fp = sech_field(0.1, 256, 15.0);
        let rect = Rectangle {
            re_min: -1.0,
            re_max: 1.0,
            im_min: -0.1,
            im_max: 1.0,
        };
        assert!(detect_discrete_spectrum(&fp, rect, 16).is_err());
    }
}
