//! Finite Blaschke products and the compressed shift `S_B`.
//!
//! `S_B` is represented in the Takenaka–Malmquist basis as an upper triangular
//! matrix. Adding one row and one column parametrized by `λ ∈ T` makes it
//! unitary; the eigenvalues of that dilation are the `n+1` solutions of
//! `z·B(z) = λ`, and their convex hull is a polygon inscribed in the unit
//! circle that circumscribes `W(S_B)`. Intersecting these polygons over `λ`
//! recovers `W(S_B)`.
//!
//! The unimodular constant of `B` does not enter `S_B` or the dilation
//! formula (both are stated for `B = ∏ b_{a_j}`); a constant `c` is absorbed by
//! rotating `λ` to `λ/c` in callers.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{convex_hull, polygon_intersection, CMatrix, ConvexPolygon, Polynomial};

/// Zeros must satisfy `|a| < 1 − ZERO_MARGIN`.
pub const ZERO_MARGIN: f64 = 1e-12;
/// Tolerance for `|λ| = 1` and for the unit constant.
pub const UNIMODULAR_TOL: f64 = 1e-12;
/// Dilation eigenvalues within this distance of `T` are projected onto it.
pub const CIRCLE_TOL: f64 = 1e-9;

pub(crate) fn validate_zeros(zeros: &[Complex64]) -> Result<()> {
    for &a in zeros {
        if !a.re.is_finite() || !a.im.is_finite() {
            return Err(Error::NonFinite);
        }
        if a.norm() >= 1.0 - ZERO_MARGIN {
            return Err(Error::ZeroOutsideDisk {
                zero: format!("{a}"),
                modulus: a.norm(),
            });
        }
    }
    Ok(())
}

fn validate_unimodular(lambda: Complex64) -> Result<()> {
    if (lambda.norm() - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::NotUnimodular {
            modulus: lambda.norm(),
        });
    }
    Ok(())
}

/// `B(z) = c·∏ (z − a_j)/(1 − ā_j z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
    constant: Complex64,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<Complex64>) -> Result<Self> {
        Self::with_constant(zeros, Complex64::new(1.0, 0.0))
    }

    pub fn with_constant(zeros: Vec<Complex64>, constant: Complex64) -> Result<Self> {
        validate_zeros(&zeros)?;
        validate_unimodular(constant)?;
        Ok(Self { zeros, constant })
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        blaschke_eval(self, z)
    }

    /// Matrix of `S_B` in the Takenaka–Malmquist basis.
    pub fn compressed_shift(&self) -> Result<CMatrix> {
        sb_matrix(&self.zeros)
    }

    /// Continuous branch of `t ↦ arg B(e^{it})` sampled on `[0, 2π)`.
    pub fn boundary_argument(&self, samples: usize) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(samples);
        let mut prev: Option<f64> = None;
        for k in 0..samples {
            let t = 2.0 * PI * k as f64 / samples as f64;
            let mut arg = self.eval(Complex64::from_polar(1.0, t))?.arg();
            if let Some(p) = prev {
                while arg < p - PI {
                    arg += 2.0 * PI;
                }
                while arg > p + PI {
                    arg -= 2.0 * PI;
                }
            }
            prev = Some(arg);
            out.push(arg);
        }
        Ok(out)
    }
}

/// Product formula value of `B` at `z`.
pub fn blaschke_eval(b: &BlaschkeProduct, z: Complex64) -> Result<Complex64> {
    let mut acc = b.constant;
    for &a in &b.zeros {
        let den = Complex64::new(1.0, 0.0) - a.conj() * z;
        if den.norm() <= f64::EPSILON * (1.0 + z.norm()) {
            return Err(Error::Pole);
        }
        acc *= (z - a) / den;
    }
    Ok(acc)
}

/// `∏_{k ∈ range} (−ā_k)` with 0-based indices.
fn neg_conj_product(zeros: &[Complex64], range: std::ops::Range<usize>) -> Complex64 {
    zeros[range]
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, a| acc * (-a.conj()))
}

fn defect(a: Complex64) -> f64 {
    (1.0 - a.norm_sqr()).sqrt()
}

/// Upper triangular matrix of `S_B`: `A_jj = a_j` and, for `i < j`,
/// `A_ij = (∏_{i<k<j} (−ā_k))·√(1−|a_i|²)·√(1−|a_j|²)`.
pub fn sb_matrix(zeros: &[Complex64]) -> Result<CMatrix> {
    if zeros.is_empty() {
        return Err(Error::InvalidParameter("S_B needs at least one zero".into()));
    }
    validate_zeros(zeros)?;
    Ok(CMatrix::from_fn(zeros.len(), |i, j| {
        if i == j {
            zeros[i]
        } else if i < j {
            neg_conj_product(zeros, i + 1..j) * (defect(zeros[i]) * defect(zeros[j]))
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Unitary 1-dilation of `S_B` for the parameter `λ`.
#[derive(Debug, Clone)]
pub struct UnitaryDilation {
    pub zeros: Vec<Complex64>,
    pub lambda: Complex64,
    pub matrix: CMatrix,
}

impl UnitaryDilation {
    /// `‖U*U − I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.matrix.dim();
        (&(&self.matrix.adjoint() * &self.matrix) - &CMatrix::identity(n)).frobenius_norm()
    }
}

/// Builds the `(n+1)×(n+1)` unitary `U_λ` whose leading `n×n` block is `S_B`.
pub fn unitary_dilation(zeros: &[Complex64], lambda: Complex64) -> Result<UnitaryDilation> {
    validate_unimodular(lambda)?;
    let sb = sb_matrix(zeros)?;
    let n = zeros.len();
    let matrix = CMatrix::from_fn(n + 1, |i, j| match (i == n, j == n) {
        (false, false) => sb[(i, j)],
        // bottom row: λ·(∏_{k<j} −ā_k)·√(1−|a_j|²)
        (true, false) => lambda * neg_conj_product(zeros, 0..j) * defect(zeros[j]),
        // last column: (∏_{k>i} −ā_k)·√(1−|a_i|²)
        (false, true) => neg_conj_product(zeros, i + 1..n) * defect(zeros[i]),
        (true, true) => lambda * neg_conj_product(zeros, 0..n),
    });
    Ok(UnitaryDilation {
        zeros: zeros.to_vec(),
        lambda,
        matrix,
    })
}

/// `z·∏(z − a_k) − λ·∏(1 − ā_k z)`, whose roots solve `z·B(z) = λ`.
pub fn dilation_polynomial(zeros: &[Complex64], lambda: Complex64) -> Polynomial {
    let one = Complex64::new(1.0, 0.0);
    let mut lhs = Polynomial::new(vec![Complex64::new(0.0, 0.0), one]);
    let mut rhs = Polynomial::new(vec![lambda]);
    for &a in zeros {
        lhs = &lhs * &Polynomial::new(vec![-a, one]);
        rhs = &rhs * &Polynomial::new(vec![one, -a.conj()]);
    }
    &lhs - &rhs
}

/// The `n+1` eigenvalues of `U_λ`, sorted by argument in `[0, 2π)`.
pub fn dilation_eigenvalues(zeros: &[Complex64], lambda: Complex64) -> Result<Vec<Complex64>> {
    dilation_eigenvalues_tol(zeros, lambda, CIRCLE_TOL)
}

/// As [`dilation_eigenvalues`] with an explicit tolerance for the unit-circle projection.
pub fn dilation_eigenvalues_tol(zeros: &[Complex64], lambda: Complex64, tol: f64) -> Result<Vec<Complex64>> {
    validate_unimodular(lambda)?;
    validate_zeros(zeros)?;
    let p = dilation_polynomial(zeros, lambda);
    let mut roots = p.roots()?;
    for r in roots.iter_mut() {
        let dev = (r.norm() - 1.0).abs();
        if dev > tol {
            return Err(Error::OffCircle {
                root: format!("{r}"),
                deviation: dev,
            });
        }
        *r /= r.norm();
    }
    roots.sort_by(|a, b| arg_2pi(*a).total_cmp(&arg_2pi(*b)));
    Ok(roots)
}

fn arg_2pi(z: Complex64) -> f64 {
    let a = z.arg();
    // Roots at 1 come back with arguments of either sign at rounding level.
    if a.abs() < 1e-13 {
        0.0
    } else if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Inscribed `(n+1)`-gon with vertices at the dilation eigenvalues.
pub fn poncelet_polygon(zeros: &[Complex64], lambda: Complex64) -> Result<ConvexPolygon> {
    Ok(convex_hull(&dilation_eigenvalues(zeros, lambda)?))
}

/// `λ_k = e^{2πik/count}`.
pub fn lambda_grid(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / count as f64))
        .collect()
}

/// `⋂_k W(U_{λ_k})` over the uniform `λ` grid; converges to `W(S_B)` from outside.
pub fn numrange_via_dilations(zeros: &[Complex64], lambda_count: usize) -> Result<ConvexPolygon> {
    if lambda_count < 3 {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 dilation parameters, got {lambda_count}"
        )));
    }
    validate_zeros(zeros)?;
    if zeros.is_empty() {
        return Err(Error::InvalidParameter("S_B needs at least one zero".into()));
    }
    let polygons: Vec<ConvexPolygon> = lambda_grid(lambda_count)
        .into_par_iter()
        .map(|lambda| poncelet_polygon(zeros, lambda))
        .collect::<Result<_>>()?;
    let mut acc = polygons[0].clone();
    for p in &polygons[1..] {
        acc = polygon_intersection(&acc, p);
        if acc.is_empty() {
            return Err(Error::Numerical(
                "intersection of dilation polygons became empty".into(),
            ));
        }
    }
    Ok(acc)
}
