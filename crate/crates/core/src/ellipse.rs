use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{convex_hull, CMatrix, ConvexPolygon};

/// Closed elliptical disk given by its foci and the full length of its minor axis.
///
/// `minor_axis == 0` is the segment between the foci; equal foci give a circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub focus1: Complex64,
    pub focus2: Complex64,
    pub minor_axis: f64,
}

impl Ellipse {
    pub fn new(focus1: Complex64, focus2: Complex64, minor_axis: f64) -> Result<Self> {
        if !(minor_axis >= 0.0) || !minor_axis.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "minor axis must be a finite non-negative number, got {minor_axis}"
            )));
        }
        Ok(Self {
            focus1,
            focus2,
            minor_axis,
        })
    }

    pub fn center(&self) -> Complex64 {
        (self.focus1 + self.focus2) * 0.5
    }

    pub fn semi_minor(&self) -> f64 {
        0.5 * self.minor_axis
    }

    pub fn semi_major(&self) -> f64 {
        self.semi_minor().hypot(0.5 * (self.focus2 - self.focus1).norm())
    }

    /// Direction of the major axis (0 for a circle).
    pub fn rotation(&self) -> f64 {
        let d = self.focus2 - self.focus1;
        if d.norm() == 0.0 {
            0.0
        } else {
            d.arg()
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.minor_axis == 0.0
    }

    pub fn point_at(&self, s: f64) -> Complex64 {
        self.center()
            + Complex64::from_polar(1.0, self.rotation())
                * Complex64::new(self.semi_major() * s.cos(), self.semi_minor() * s.sin())
    }

    /// Hull of `npoints` boundary points equally spaced in the eccentric anomaly.
    pub fn boundary_polygon(&self, npoints: usize) -> ConvexPolygon {
        let pts: Vec<Complex64> = (0..npoints.max(1))
            .map(|k| self.point_at(2.0 * PI * k as f64 / npoints.max(1) as f64))
            .collect();
        convex_hull(&pts)
    }

    /// Exact support function `max Re(e^{−iγ} z)` over the disk.
    pub fn support(&self, gamma: f64) -> f64 {
        let phi = gamma - self.rotation();
        let (a, b) = (self.semi_major(), self.semi_minor());
        (Complex64::from_polar(1.0, -gamma) * self.center()).re + (a * a * phi.cos().powi(2) + b * b * phi.sin().powi(2)).sqrt()
    }

    /// Sum of focal distances is at most the major axis length.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        (z - self.focus1).norm() + (z - self.focus2).norm() <= 2.0 * self.semi_major() + tol
    }
}

/// Eigenvalues of a 2×2 matrix from the characteristic quadratic.
pub fn eigenvalues_2x2(a: &CMatrix) -> Result<(Complex64, Complex64)> {
    if a.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            actual: a.dim(),
        });
    }
    let half_tr = a.trace() * 0.5;
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    let disc = (half_tr * half_tr - det).sqrt();
    Ok((half_tr + disc, half_tr - disc))
}

/// Exact numerical range of a 2×2 matrix: foci at the eigenvalues, minor axis
/// `sqrt(tr(A*A) − |a|² − |b|²)`.
pub fn elliptical_range(a: &CMatrix) -> Result<Ellipse> {
    let (l1, l2) = eigenvalues_2x2(a)?;
    let fro2 = a.frobenius_norm().powi(2);
    let minor = (fro2 - l1.norm_sqr() - l2.norm_sqr()).max(0.0).sqrt();
    Ellipse::new(l1, l2, minor)
}
