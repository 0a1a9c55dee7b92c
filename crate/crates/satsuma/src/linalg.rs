//! Small dense complex matrices for the 5x5 spectral problem.
//!
//! Everything the scattering layer needs fits in fixed 5x5 storage:
//! the Lax potential, Jost solutions, the scattering matrix and its
//! 4x4 / 1x4 blocks. Matrices are `Copy` and live on the stack; the
//! determinant and inverse go through LU with partial pivoting.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 5;

/// Dense row-major complex matrix with dimensions up to 5x5.
#[derive(Clone, Copy, Debug)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: [Complex64; MAX_DIM * MAX_DIM],
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(
            rows >= 1 && rows <= MAX_DIM && cols >= 1 && cols <= MAX_DIM,
            "matrix dimensions {rows}x{cols} outside supported range"
        );
        ComplexMatrix {
            rows,
            cols,
            data: [Complex64::new(0.0, 0.0); MAX_DIM * MAX_DIM],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Real matrix entered as integer-valued rows (for the structure constants).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(v, 0.0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> ComplexMatrix {
        let mut out = *self;
        for v in out.data.iter_mut() {
            *v = v.conj();
        }
        out
    }

    pub fn transpose(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = *self;
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = *self;
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        let mut out = *self;
        for v in out.data.iter_mut() {
            *v *= s;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm sqrt(tr A^dag A) = sqrt(sum |a_ij|^2).
    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                s += self[(i, j)].norm_sqr();
            }
        }
        s.sqrt()
    }

    /// Extract the block with rows r0..r0+nr, cols c0..c0+nc.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> ComplexMatrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols);
        let mut out = ComplexMatrix::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                out[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| self[(i, j)].re.is_finite() && self[(i, j)].im.is_finite())
        })
    }

    fn lu(&self) -> Option<(ComplexMatrix, [usize; MAX_DIM], bool)> {
        assert_eq!(self.rows, self.cols, "LU requires a square matrix");
        let n = self.rows;
        let mut lu = *self;
        let mut perm = [0usize; MAX_DIM];
        for (i, p) in perm.iter_mut().enumerate().take(n) {
            *p = i;
        }
        let mut odd = false;
        for k in 0..n {
            let mut pivot = k;
            let mut best = lu[(k, k)].norm_sqr();
            for r in (k + 1)..n {
                let m = lu[(r, k)].norm_sqr();
                if m > best {
                    best = m;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return None;
            }
            if pivot != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot, j)];
                    lu[(pivot, j)] = tmp;
                }
                perm.swap(k, pivot);
                odd = !odd;
            }
            let inv_pivot = Complex64::new(1.0, 0.0) / lu[(k, k)];
            for r in (k + 1)..n {
                let factor = lu[(r, k)] * inv_pivot;
                lu[(r, k)] = factor;
                for j in (k + 1)..n {
                    let sub = factor * lu[(k, j)];
                    lu[(r, j)] -= sub;
                }
            }
        }
        Some((lu, perm, odd))
    }

    pub fn det(&self) -> Complex64 {
        match self.lu() {
            None => Complex64::new(0.0, 0.0),
            Some((lu, _, odd)) => {
                let mut d = Complex64::new(if odd { -1.0 } else { 1.0 }, 0.0);
                for i in 0..self.rows {
                    d *= lu[(i, i)];
                }
                d
            }
        }
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        let n = self.rows;
        let (lu, perm, _) = self.lu().ok_or_else(|| {
            Error::Data("singular matrix has no inverse".to_string())
        })?;
        let mut inv = ComplexMatrix::zeros(n, n);
        for col in 0..n {
            // forward substitution on the permuted unit vector
            let mut y = [Complex64::new(0.0, 0.0); MAX_DIM];
            for i in 0..n {
                let mut s = if perm[i] == col {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                for j in 0..i {
                    s -= lu[(i, j)] * y[j];
                }
                y[i] = s;
            }
            // back substitution
            for i in (0..n).rev() {
                let mut s = y[i];
                for j in (i + 1)..n {
                    s -= lu[(i, j)] * inv[(j, col)];
                }
                inv[(i, col)] = s / lu[(i, i)];
            }
        }
        Ok(inv)
    }

    /// Classical adjugate, det(A) * A^{-1} computed by cofactors via LU.
    pub fn adjugate(&self) -> Result<ComplexMatrix> {
        let d = self.det();
        let inv = self.inverse()?;
        Ok(inv.scale(d))
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * MAX_DIM + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * MAX_DIM + j]
    }
}

/// The constant matrices shared by the spectral problem and its symmetries:
/// sigma = diag(1,1,1,1,-1), the 4x4 swap sigma1, and the 5x5 involution nabla.
pub struct StructureConstants {
    pub sigma: ComplexMatrix,
    pub sigma1: ComplexMatrix,
    pub nabla: ComplexMatrix,
}

impl StructureConstants {
    pub fn new() -> Self {
        let sigma = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, -1.0],
        ]);
        let sigma1 = ComplexMatrix::from_real_rows(&[
            &[0.0, 1.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ]);
        let nabla = ComplexMatrix::from_real_rows(&[
            &[0.0, 1.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 1.0],
        ]);
        StructureConstants {
            sigma,
            sigma1,
            nabla,
        }
    }

    /// sigma1 A sigma1 for a 4x4 matrix A.
    pub fn sigma1_conjugate(&self, a: &ComplexMatrix) -> ComplexMatrix {
        self.sigma1.mul(a).mul(&self.sigma1)
    }
}

impl Default for StructureConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// Frobenius norm |A| = sqrt(tr A^dag A).
pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    a.frobenius_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, rng: &mut StdRng) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        m
    }

    #[test]
    fn frobenius_norm_reference_values() {
        assert_relative_eq!(ComplexMatrix::identity(4).frobenius_norm(), 2.0);
        assert_eq!(ComplexMatrix::zeros(3, 3).frobenius_norm(), 0.0);
        let m = ComplexMatrix::from_real_rows(&[&[3.0, 4.0], &[0.0, 0.0]]);
        assert_relative_eq!(m.frobenius_norm(), 5.0);
    }

    #[test]
    fn structure_constants_are_involutions() {
        let sc = StructureConstants::new();
        let i5 = ComplexMatrix::identity(5);
        let i4 = ComplexMatrix::identity(4);
        assert_eq!(sc.sigma.mul(&sc.sigma).sub(&i5).frobenius_norm(), 0.0);
        assert_eq!(sc.sigma1.mul(&sc.sigma1).sub(&i4).frobenius_norm(), 0.0);
        assert_eq!(sc.nabla.mul(&sc.nabla).sub(&i5).frobenius_norm(), 0.0);
    }

    #[test]
    fn sigma1_conjugation_is_an_involution() {
        let sc = StructureConstants::new();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_matrix(4, &mut rng);
            let twice = sc.sigma1_conjugate(&sc.sigma1_conjugate(&a));
            assert!(twice.sub(&a).frobenius_norm() < 1e-14);
        }
    }

    #[test]
    fn lu_inverse_and_det_agree_with_direct_checks() {
        let mut rng = StdRng::seed_from_u64(11);
        for n in 2..=5 {
            for _ in 0..20 {
                let a = random_matrix(n, &mut rng);
                let inv = a.inverse().expect("random matrix should be invertible");
                let err = a.mul(&inv).sub(&ComplexMatrix::identity(n)).frobenius_norm();
                assert!(err < 1e-12, "A A^-1 deviates from I by {err:.3e}");
                // det(A) * det(A^-1) = 1
                let prod = a.det() * inv.det();
                assert!((prod - c(1.0, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn det_of_triangular_matrix_is_product_of_diagonal() {
        let a = ComplexMatrix::from_rows(&[
            &[c(2.0, 1.0), c(5.0, -3.0), c(0.5, 0.0)],
            &[c(0.0, 0.0), c(-1.0, 0.5), c(7.0, 7.0)],
            &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 3.0)],
        ]);
        let expected = c(2.0, 1.0) * c(-1.0, 0.5) * c(0.0, 3.0);
        assert!((a.det() - expected).norm() < 1e-13);
    }

    #[test]
    fn singular_matrix_reports_zero_det_and_no_inverse() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert_eq!(a.det(), c(0.0, 0.0));
        assert!(a.inverse().is_err());
    }

    #[test]
    fn adjugate_matches_det_times_inverse_on_permutation() {
        let sc = StructureConstants::new();
        let adj = sc.sigma1.adjugate().unwrap();
        // sigma1 is its own inverse with det +1;
        // det(sigma1) = +1 because it is two disjoint swaps.
        assert!(adj.sub(&sc.sigma1).frobenius_norm() < 1e-14);
    }
}
