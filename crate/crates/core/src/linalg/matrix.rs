use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::eigen::hermitian_eigs;
use super::poly::Polynomial;

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn scalar(n: usize, alpha: Complex64) -> Self {
        Self::identity(n).scale(alpha)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn diag(values: &[Complex64]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                values[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Builds a matrix from rows; every row must have the same length as the row count.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        let m = Self { n, data };
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }

    /// Builds a matrix from separate real and imaginary parts.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::Dimension {
                expected: re.len(),
                actual: im.len(),
            });
        }
        let rows = re
            .iter()
            .zip(im)
            .map(|(r, i)| {
                if r.len() != i.len() {
                    return Err(Error::Dimension {
                        expected: r.len(),
                        actual: i.len(),
                    });
                }
                Ok(r.iter().zip(i).map(|(&a, &b)| Complex64::new(a, b)).collect())
            })
            .collect::<Result<Vec<Vec<Complex64>>>>()?;
        Self::from_rows(&rows)
    }

    /// The `n×n` Jordan block with zero diagonal and ones on the superdiagonal.
    pub fn jordan(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if j == i + 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| z * alpha).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `(A + A*)/2`, exactly Hermitian.
    pub fn real_part(&self) -> Self {
        let mut h = Self::from_fn(self.n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5);
        h.symmetrize();
        h
    }

    /// `(A − A*)/(2i)`, exactly Hermitian.
    pub fn imag_part(&self) -> Self {
        let two_i = Complex64::new(0.0, 2.0);
        let mut h = Self::from_fn(self.n, |i, j| (self[(i, j)] - self[(j, i)].conj()) / two_i);
        h.symmetrize();
        h
    }

    /// Hermitian part of `e^{−iγ}A`: `(e^{−iγ}A + e^{iγ}A*)/2`.
    pub fn rotated_real_part(&self, gamma: f64) -> Self {
        let rot = Complex64::from_polar(1.0, -gamma);
        let mut h = Self::from_fn(self.n, |i, j| {
            (rot * self[(i, j)] + (rot * self[(j, i)]).conj()) * 0.5
        });
        h.symmetrize();
        h
    }

    /// Forces the lower triangle to mirror the upper one and the diagonal to be real.
    fn symmetrize(&mut self) {
        for i in 0..self.n {
            let d = self[(i, i)].re;
            self[(i, i)] = Complex64::new(d, 0.0);
            for j in (i + 1)..self.n {
                let v = self[(i, j)];
                self[(j, i)] = v.conj();
            }
        }
    }

    /// Frobenius norm of `H − H*`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        s.sqrt()
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix dimension");
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Rayleigh quotient `⟨Ax, x⟩ = x* A x` (no normalization).
    pub fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        self.matvec(x)
            .iter()
            .zip(x)
            .map(|(ax, xi)| ax * xi.conj())
            .sum()
    }

    /// True when `A = αI` to within `tol·max(1, ‖A‖_F)`; returns `α`.
    pub fn as_scalar(&self, tol: f64) -> Option<Complex64> {
        if self.n == 0 {
            return None;
        }
        let alpha = self.trace() / self.n as f64;
        let dev = (self - &Self::scalar(self.n, alpha)).frobenius_norm();
        (dev <= tol * self.frobenius_norm().max(1.0)).then_some(alpha)
    }

    /// Largest singular value, from the top eigenvalue of `A*A`.
    pub fn operator_norm(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let gram = &self.adjoint() * self;
        // A*A is Hermitian up to rounding; the symmetrized copy always passes the check.
        let mut g = gram;
        g.symmetrize();
        match hermitian_eigs(&g) {
            Ok(eig) => eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt(),
            Err(_) => f64::NAN,
        }
    }

    /// Evaluates `p(A)` with the Horner recurrence.
    pub fn poly_eval(&self, p: &Polynomial) -> Self {
        let coeffs = p.coeffs();
        let mut acc = Self::scalar(self.n, *coeffs.last().unwrap_or(&Complex64::new(0.0, 0.0)));
        for &c in coeffs.iter().rev().skip(1) {
            acc = &acc * self;
            for i in 0..self.n {
                acc[(i, i)] += c;
            }
        }
        acc
    }
}

/// `p(A)` by Horner's rule.
pub fn mat_poly_eval(p: &Polynomial, a: &CMatrix) -> CMatrix {
    a.poly_eval(p)
}

/// Spectral norm `‖A‖`.
pub fn operator_norm(a: &CMatrix) -> f64 {
    a.operator_norm()
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions must agree");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions must agree");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions must agree");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
