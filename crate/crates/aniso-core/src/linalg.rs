//! Dense complex matrices and the Jacobi eigen/singular-value kernels.
//!
//! Everything in scope is at most 256 x 256 (and almost always 4 x 4 or
//! 16 x 16), so cyclic Jacobi rotations are spectrally exact, simple, and
//! dependency-free.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 float math under no_std
use num_traits::Float;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

/// Off-diagonal mass threshold for Jacobi convergence, relative to the
/// Frobenius norm of the input.
const JACOBI_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 60;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] + other[(r, c)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] - other[(r, c)])
    }

    pub fn scale(&self, s: Complex64) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| s * self[(r, c)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, z| m.max(z.norm()))
    }

    /// Max-entry deviation from the identity.
    pub fn max_dev_from_identity(&self) -> f64 {
        let mut dev = 0.0f64;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let expect = if r == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                dev = dev.max((self[(r, c)] - expect).norm());
            }
        }
        dev
    }

    /// Max-entry deviation from Hermiticity.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for r in 0..self.rows {
            for c in 0..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn tensor(&self, other: &Matrix) -> Matrix {
        let (ar, ac, br, bc) = (self.rows, self.cols, other.rows, other.cols);
        Matrix::from_fn(ar * br, ac * bc, |r, c| {
            self[(r / br, c / bc)] * other[(r % br, c % bc)]
        })
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

fn offdiag_norm(a: &Matrix) -> f64 {
    let mut s = 0.0;
    for r in 0..a.rows {
        for c in 0..a.cols {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Real Jacobi rotation (c, s) zeroing the off-diagonal of the 2x2
/// symmetric block [[app, r], [r, aqq]] with r > 0.
fn jacobi_cs(app: f64, aqq: f64, r: f64) -> (f64, f64) {
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c)
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues in ascending order and the matching
/// orthonormal eigenvector columns.
///
/// The caller is responsible for checking Hermiticity; the routine reads
/// only the strict upper triangle plus real diagonal parts.
pub fn eigh(a: &Matrix) -> (Vec<f64>, Matrix) {
    debug_assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    // Symmetrize defensively against last-bit asymmetry.
    for r in 0..n {
        for c in (r + 1)..n {
            let avg = 0.5 * (m[(r, c)] + m[(c, r)].conj());
            m[(r, c)] = avg;
            m[(c, r)] = avg.conj();
        }
        m[(r, r)] = Complex64::new(m[(r, r)].re, 0.0);
    }
    let mut v = Matrix::identity(n);
    let scale = m.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if offdiag_norm(&m) <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE * 16.0 {
                    continue;
                }
                let u = apq / r;
                let (c, s) = jacobi_cs(m[(p, p)].re, m[(q, q)].re, r);
                // Column update: A <- A J, with J = [[c, s u], [-s conj(u), c]]
                for i in 0..n {
                    let aip = m[(i, p)];
                    let aiq = m[(i, q)];
                    m[(i, p)] = c * aip - s * u.conj() * aiq;
                    m[(i, q)] = s * u * aip + c * aiq;
                }
                // Row update: A <- J^dag A
                for j in 0..n {
                    let apj = m[(p, j)];
                    let aqj = m[(q, j)];
                    m[(p, j)] = c * apj - s * u * aqj;
                    m[(q, j)] = s * u.conj() * apj + c * aqj;
                }
                // Accumulate eigenvectors: V <- V J
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = c * vip - s * u.conj() * viq;
                    v[(i, q)] = s * u * vip + c * viq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eig: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| eig[i].partial_cmp(&eig[j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| eig[i]).collect();
    let vecs = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (vals, vecs)
}

/// Singular values of an arbitrary complex matrix by one-sided Jacobi
/// column orthogonalization, descending. Small singular values come out
/// with absolute accuracy near machine epsilon times the matrix norm,
/// which the separability checks rely on.
pub fn singular_values(a: &Matrix) -> Vec<f64> {
    // Work on the taller orientation so columns are long.
    let mut m = if a.rows >= a.cols { a.clone() } else { a.adjoint() };
    let n = m.cols;
    let tol = 1e-15;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0f64;
                let mut aqq = 0.0f64;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..m.rows {
                    let cp = m[(i, p)];
                    let cq = m[(i, q)];
                    app += cp.norm_sqr();
                    aqq += cq.norm_sqr();
                    apq += cp.conj() * cq;
                }
                let r = apq.norm();
                if r <= tol * (app * aqq).sqrt() + f64::MIN_POSITIVE {
                    continue;
                }
                rotated = true;
                let u = apq / r;
                let (c, s) = jacobi_cs(app, aqq, r);
                for i in 0..m.rows {
                    let cp = m[(i, p)];
                    let cq = m[(i, q)];
                    m[(i, p)] = c * cp - s * u.conj() * cq;
                    m[(i, q)] = s * u * cp + c * cq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = (0..n)
        .map(|c| (0..m.rows).map(|r| m[(r, c)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

/// Spectral norm (largest singular value).
pub fn spectral_norm(a: &Matrix) -> f64 {
    if a.rows == 0 || a.cols == 0 {
        return 0.0;
    }
    singular_values(a).first().copied().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigh_diagonal_matrix() {
        let mut a = Matrix::zeros(3, 3);
        a[(0, 0)] = c(2.0, 0.0);
        a[(1, 1)] = c(-1.0, 0.0);
        a[(2, 2)] = c(0.5, 0.0);
        let (vals, _) = eigh(&a);
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 0.5).abs() < 1e-14);
        assert!((vals[2] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn eigh_pauli_y_spectrum_and_residual() {
        let mut a = Matrix::zeros(2, 2);
        a[(0, 1)] = c(0.0, -1.0);
        a[(1, 0)] = c(0.0, 1.0);
        let (vals, v) = eigh(&a);
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        // Residual ||A v - lambda v|| per eigenpair.
        for k in 0..2 {
            for r in 0..2 {
                let av: Complex64 = (0..2).map(|j| a[(r, j)] * v[(j, k)]).sum();
                assert!((av - vals[k] * v[(r, k)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn eigh_orthonormal_eigenvectors() {
        // Fixed dense Hermitian 4x4.
        let mut a = Matrix::zeros(4, 4);
        let entries = [
            (0, 0, 1.0, 0.0),
            (1, 1, -0.3, 0.0),
            (2, 2, 0.9, 0.0),
            (3, 3, 0.1, 0.0),
            (0, 1, 0.2, 0.7),
            (0, 2, -0.5, 0.1),
            (0, 3, 0.0, -0.4),
            (1, 2, 0.3, 0.3),
            (1, 3, -0.2, 0.0),
            (2, 3, 0.6, -0.1),
        ];
        for &(r, cc, re, im) in &entries {
            a[(r, cc)] = c(re, im);
            if r != cc {
                a[(cc, r)] = c(re, -im);
            }
        }
        let (vals, v) = eigh(&a);
        assert!(v.adjoint().mul(&v).max_dev_from_identity() < 1e-13);
        // Trace and Frobenius invariants.
        let tr: f64 = vals.iter().sum();
        assert!((tr - a.trace().re).abs() < 1e-12);
        let fro2: f64 = vals.iter().map(|x| x * x).sum();
        assert!((fro2 - a.frobenius_norm().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn singular_values_known_cases() {
        // diag(3, 0) has singular values (3, 0).
        let mut a = Matrix::zeros(2, 2);
        a[(0, 0)] = c(3.0, 0.0);
        let sv = singular_values(&a);
        assert!((sv[0] - 3.0).abs() < 1e-14);
        assert!(sv[1].abs() < 1e-14);

        // A unitary has all singular values 1.
        let mut u = Matrix::zeros(2, 2);
        let r = 0.5f64.sqrt();
        u[(0, 0)] = c(r, 0.0);
        u[(0, 1)] = c(0.0, r);
        u[(1, 0)] = c(0.0, r);
        u[(1, 1)] = c(r, 0.0);
        for s in singular_values(&u) {
            assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_values_rectangular() {
        let mut a = Matrix::zeros(3, 1);
        a[(0, 0)] = c(0.0, 2.0);
        a[(2, 0)] = c(1.0, 0.0);
        let sv = singular_values(&a);
        assert!((sv[0] - 5.0f64.sqrt()).abs() < 1e-14);
    }
}
