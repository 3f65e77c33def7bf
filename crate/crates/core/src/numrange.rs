//! Numerical range `W(A)` from Kippenhahn support lines.
//!
//! For each direction `γ` the largest eigenvalue `h(γ)` of the Hermitian part
//! of `e^{−iγ}A` gives the support line `x cos γ + y sin γ = h(γ)`, and the
//! top eigenvector `v` gives the touching point `⟨Av, v⟩`. Sampling `γ`
//! yields an inner polygon (hull of touching points) and an outer polygon
//! (intersection of the support half-planes) that sandwich `W(A)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    convex_hull, hermitian_eigs, support_lines_intersection, CMatrix, ConvexPolygon, Polynomial,
    SupportLine,
};

pub use crate::ellipse::{elliptical_range, Ellipse};

/// Default γ-grid size.
pub const DEFAULT_SAMPLES: usize = 720;

/// Eigenvalues closer than this (relative) to the top one count as a repeated top eigenvalue.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SupportValue {
    pub h: f64,
    /// Unit eigenvector of the top eigenvalue.
    pub vector: Vec<Complex64>,
}

/// One Kippenhahn sample: the support value and the point where the support line touches `W(A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportSample {
    pub gamma: f64,
    pub h: f64,
    pub point: Complex64,
}

impl SupportSample {
    /// Derivative `h'(γ) = Im(e^{−iγ}·point)` of the support function (Hellmann–Feynman).
    pub fn h_prime(&self) -> f64 {
        (Complex64::from_polar(1.0, -self.gamma) * self.point).im
    }
}

#[derive(Debug, Clone)]
pub struct NumericalRangeApprox {
    /// Hull of the touching points; contained in `W(A)`.
    pub inner: ConvexPolygon,
    /// Intersection of the support half-planes; contains `W(A)`.
    pub outer: ConvexPolygon,
    pub samples: Vec<SupportSample>,
}

/// Largest eigenvalue of `Re(e^{−iγ}A)` and an associated unit eigenvector.
///
/// When the top eigenvalue is repeated (a flat edge of `W(A)`), the eigenvector
/// with the lowest index in the ascending ordering is used.
pub fn support_value(a: &CMatrix, gamma: f64) -> Result<SupportValue> {
    let h = a.rotated_real_part(gamma);
    let eig = hermitian_eigs(&h)?;
    let top = eig.max_value();
    let scale = eig.values.iter().map(|v| v.abs()).fold(1.0, f64::max);
    let k = eig
        .values
        .iter()
        .position(|&v| v >= top - TIE_TOL * scale)
        .unwrap_or(eig.values.len() - 1);
    Ok(SupportValue {
        h: top,
        vector: eig.vectors[k].clone(),
    })
}

/// `⟨Av, v⟩` for the top eigenvector `v` of `Re(e^{−iγ}A)`.
pub fn boundary_point(a: &CMatrix, gamma: f64) -> Result<Complex64> {
    Ok(support_sample(a, gamma)?.point)
}

pub fn support_sample(a: &CMatrix, gamma: f64) -> Result<SupportSample> {
    let sv = support_value(a, gamma)?;
    Ok(SupportSample {
        gamma,
        h: sv.h,
        point: a.quadratic_form(&sv.vector),
    })
}

/// Support samples on the uniform grid `γ_k = 2πk/nsamples`, in grid order.
pub fn support_samples(a: &CMatrix, nsamples: usize) -> Result<Vec<SupportSample>> {
    (0..nsamples)
        .into_par_iter()
        .map(|k| support_sample(a, 2.0 * PI * k as f64 / nsamples as f64))
        .collect()
}

/// Inner and outer polygonal approximations of `W(A)` from `nsamples` support lines.
pub fn numerical_range(a: &CMatrix, nsamples: usize) -> Result<NumericalRangeApprox> {
    if nsamples < 3 {
        return Err(Error::InvalidParameter(format!(
            "numerical_range needs at least 3 samples, got {nsamples}"
        )));
    }
    if a.dim() == 0 {
        return Err(Error::Dimension {
            expected: 1,
            actual: 0,
        });
    }
    let samples = support_samples(a, nsamples)?;
    let inner = convex_hull(&samples.iter().map(|s| s.point).collect::<Vec<_>>());
    let lines: Vec<SupportLine> = samples
        .iter()
        .map(|s| SupportLine {
            gamma: s.gamma,
            h: s.h,
        })
        .collect();
    let mut outer = support_lines_intersection(&lines)?;
    if outer.is_empty() {
        // Rounding can only make the exact lines of a point-like W(A) miss each other.
        outer = inner.clone();
    }
    Ok(NumericalRangeApprox {
        inner,
        outer,
        samples,
    })
}

/// Extreme eigenvalues of `Re(A)` and `Im(A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingRectangle {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl BoundingRectangle {
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        z.re >= self.re_min - tol && z.re <= self.re_max + tol && z.im >= self.im_min - tol && z.im <= self.im_max + tol
    }
}

pub fn bounding_rectangle(a: &CMatrix) -> Result<BoundingRectangle> {
    let re = hermitian_eigs(&a.real_part())?;
    let im = hermitian_eigs(&a.imag_part())?;
    Ok(BoundingRectangle {
        re_min: re.min_value(),
        re_max: re.max_value(),
        im_min: im.min_value(),
        im_max: im.max_value(),
    })
}

/// `max_γ h(γ)` over the uniform grid; approaches `w(A) = max{|z| : z ∈ W(A)}` from below.
pub fn numerical_radius(a: &CMatrix, nsamples: usize) -> Result<f64> {
    if nsamples < 3 {
        return Err(Error::InvalidParameter(format!(
            "numerical_radius needs at least 3 samples, got {nsamples}"
        )));
    }
    if let Some(alpha) = a.as_scalar(1e-14) {
        return Ok(alpha.norm());
    }
    let values: Vec<f64> = (0..nsamples)
        .into_par_iter()
        .map(|k| support_value(a, 2.0 * PI * k as f64 / nsamples as f64).map(|s| s.h))
        .collect::<Result<_>>()?;
    Ok(values.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

/// Pieces of a Crouzeix ratio estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrouzeixEstimate {
    /// `‖p(A)‖`.
    pub norm: f64,
    /// `max |p|` over the densified outer polygon boundary (≥ the true maximum on `W(A)`).
    pub max_outer: f64,
    /// `max |p|` over the touching points (≤ the true maximum on `W(A)`).
    pub max_inner: f64,
}

impl CrouzeixEstimate {
    /// Conservative ratio `‖p(A)‖ / max_outer`, a lower estimate of the true ratio.
    pub fn ratio(&self) -> f64 {
        self.norm / self.max_outer
    }

    /// `‖p(A)‖ / max_inner`, an upper estimate of the true ratio.
    pub fn ratio_upper(&self) -> f64 {
        self.norm / self.max_inner
    }
}

pub fn crouzeix_estimate(p: &Polynomial, a: &CMatrix, nsamples: usize) -> Result<CrouzeixEstimate> {
    let approx = numerical_range(a, nsamples)?;
    let norm = a.poly_eval(p).operator_norm();
    let max_outer = approx
        .outer
        .densify(nsamples)
        .iter()
        .map(|&z| p.eval(z).norm())
        .fold(0.0, f64::max);
    let max_inner = approx
        .samples
        .iter()
        .map(|s| p.eval(s.point).norm())
        .fold(0.0, f64::max);
    if max_outer == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    Ok(CrouzeixEstimate {
        norm,
        max_outer,
        max_inner,
    })
}

/// `‖p(A)‖ / max_{z ∈ ∂outer} |p(z)|` with the outer polygon from `nsamples` support lines.
///
/// The outer polygon contains `W(A)`, so the denominator is overestimated and
/// the returned ratio never exceeds the true one.
pub fn crouzeix_ratio(p: &Polynomial, a: &CMatrix, nsamples: usize) -> Result<f64> {
    Ok(crouzeix_estimate(p, a, nsamples)?.ratio())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_support_is_cosine() {
        let a = CMatrix::identity(3);
        for g in [0.0, 0.4, 1.9, 3.3, 5.0] {
            assert!((support_value(&a, g).unwrap().h - g.cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn jordan_support_at_zero() {
        for n in 2..7 {
            let h = support_value(&CMatrix::jordan(n), 0.0).unwrap().h;
            assert!((h - (PI / (n as f64 + 1.0)).cos()).abs() < 1e-13);
        }
    }

    #[test]
    fn diag_boundary_point() {
        let a = CMatrix::diag(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert!((boundary_point(&a, 0.0).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn jordan_boundary_point_at_quarter_turn() {
        let z = boundary_point(&CMatrix::jordan(2), PI / 2.0).unwrap();
        assert!((z - c(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn rectangle_of_diagonal() {
        let r = bounding_rectangle(&CMatrix::diag(&[c(1.0, 2.0), c(3.0, -1.0)])).unwrap();
        assert_eq!((r.re_min, r.re_max, r.im_min, r.im_max), (1.0, 3.0, -1.0, 2.0));
        let j = bounding_rectangle(&CMatrix::jordan(2)).unwrap();
        for (got, want) in [(j.re_min, -0.5), (j.re_max, 0.5), (j.im_min, -0.5), (j.im_max, 0.5)] {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn scalar_matrix_range_is_point() {
        let alpha = c(0.25, -1.5);
        let nr = numerical_range(&CMatrix::scalar(3, alpha), 16).unwrap();
        assert!(nr.inner.is_degenerate());
        assert_eq!(nr.inner.len(), 1);
        assert!((nr.inner.vertices()[0] - alpha).norm() < 1e-14);
        assert_eq!(nr.outer.len(), 1);
        assert_eq!(numerical_radius(&CMatrix::scalar(3, alpha), 16).unwrap(), alpha.norm());
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            numerical_range(&CMatrix::identity(2), 2),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn unitary_roots_radius() {
        let roots: Vec<Complex64> = (0..5).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 5.0)).collect();
        let r = numerical_radius(&CMatrix::diag(&roots), 720).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
    }

    #[test]
    fn crouzeix_identity_is_one() {
        let p = Polynomial::from_real(&[0.0, 1.0]);
        let r = crouzeix_ratio(&p, &CMatrix::identity(3), 64).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
    }

    #[test]
    fn crouzeix_zero_denominator() {
        let p = Polynomial::from_real(&[0.0, 1.0]);
        assert_eq!(
            crouzeix_ratio(&p, &CMatrix::zeros(2), 16),
            Err(Error::DegenerateDenominator)
        );
    }
}
