//! Two-variable rational inner functions `Θ = λ·p̃/p` and the numerical range
//! of their compressed shift, computed from one-variable slices.
//!
//! Freezing `z₂ = τ ∈ T` turns `Θ` into a finite Blaschke product `θ_τ` of
//! degree `m` (unless `τ` lies in the finite exceptional set where `p(·, τ)`
//! vanishes on `T`). The numerical range is the closed convex hull of the
//! ranges `W(S_{θ_τ})`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{convex_hull, CMatrix, ConvexPolygon, Polynomial};
use crate::numrange::{elliptical_range, numerical_range};
use crate::shift::{sb_matrix, BlaschkeProduct, CIRCLE_TOL, UNIMODULAR_TOL};

/// Slices whose denominator has a root this close to `T` are skipped.
pub const EXCLUSION_RADIUS: f64 = 1e-6;
/// `|p|` must exceed this on every validation sample.
pub const NONVANISHING_TOL: f64 = 1e-10;
const VALIDATION_SAMPLES: usize = 1000;
const VALIDATION_SEED: u64 = 0x0b1d_15c0;
const SLICE_CHECK_POINTS: usize = 20;
const SLICE_CHECK_TOL: f64 = 1e-8;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Polynomial in `(z₁, z₂)` stored as an `(m+1)×(n+1)` grid; entry `(i, j)`
/// multiplies `z₁^i z₂^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly {
    m: usize,
    n: usize,
    coeffs: Vec<Complex64>,
}

impl BiPoly {
    pub fn zeros(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            coeffs: vec![zero(); (m + 1) * (n + 1)],
        }
    }

    /// From rows `grid[i][j]`; every row must have the same length.
    pub fn from_grid(grid: &[Vec<Complex64>]) -> Result<Self> {
        let rows = grid.len();
        if rows == 0 || grid[0].is_empty() {
            return Err(Error::InvalidParameter("empty coefficient grid".into()));
        }
        let cols = grid[0].len();
        if let Some(bad) = grid.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension {
                expected: cols,
                actual: bad.len(),
            });
        }
        let coeffs: Vec<Complex64> = grid.iter().flatten().copied().collect();
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            m: rows - 1,
            n: cols - 1,
            coeffs,
        })
    }

    /// Real coefficient grid.
    pub fn from_real(grid: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = grid
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_grid(&rows)
    }

    pub fn degree(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        self.coeffs[i * (self.n + 1) + j]
    }

    fn coeff_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.coeffs[i * (self.n + 1) + j]
    }

    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        self.slice(z2).eval(z1)
    }

    /// `z₁ ↦ p(z₁, z₂)` with the trailing zero coefficients trimmed.
    pub fn slice(&self, z2: Complex64) -> Polynomial {
        Polynomial::new(
            (0..=self.m)
                .map(|i| {
                    (0..=self.n)
                        .rev()
                        .fold(zero(), |acc, j| acc * z2 + self.coeff(i, j))
                })
                .collect(),
        )
    }

    /// `z₂ ↦ p(z₁, z₂)`.
    pub fn slice_z2(&self, z1: Complex64) -> Polynomial {
        Polynomial::new(
            (0..=self.n)
                .map(|j| {
                    (0..=self.m)
                        .rev()
                        .fold(zero(), |acc, i| acc * z1 + self.coeff(i, j))
                })
                .collect(),
        )
    }

    /// `z₁^m z₂^n · conj(p(1/z̄₁, 1/z̄₂))` for the declared degree `(m, n)`.
    pub fn reflect(&self) -> Self {
        let mut out = Self::zeros(self.m, self.n);
        for i in 0..=self.m {
            for j in 0..=self.n {
                *out.coeff_mut(i, j) = self.coeff(self.m - i, self.n - j).conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.m + other.m, self.n + other.n);
        for i in 0..=self.m {
            for j in 0..=self.n {
                let a = self.coeff(i, j);
                for k in 0..=other.m {
                    for l in 0..=other.n {
                        *out.coeff_mut(i + k, j + l) += a * other.coeff(k, l);
                    }
                }
            }
        }
        out
    }
}

/// Coefficient-grid reflection; an involution.
pub fn reflect_poly(p: &BiPoly) -> BiPoly {
    p.reflect()
}

/// `Θ = λ·p̃/p` with `p` zero-free on the closed bidisk away from finitely many torus points.
#[derive(Debug, Clone)]
pub struct RationalInnerFunction {
    p: BiPoly,
    p_tilde: BiPoly,
    constant: Complex64,
}

fn sample_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    let r: f64 = rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, 2.0 * PI * rng.gen::<f64>())
}

fn sample_circle(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * rng.gen::<f64>())
}

impl RationalInnerFunction {
    pub fn new(p: BiPoly) -> Result<Self> {
        Self::with_constant(p, Complex64::new(1.0, 0.0))
    }

    /// Rejects `p` if it is small at any of 10³ seeded samples spread over
    /// `D²`, `D×T` and `T×D`. Point values alone cannot see an interior zero
    /// set, so at each sample the one-variable slice through the sampled
    /// `z₂` (or `z₁` on `T×D`) must also be root-free in the open disk.
    /// Coprimality of `p` and `p̃` is not checked.
    pub fn with_constant(p: BiPoly, constant: Complex64) -> Result<Self> {
        if (constant.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::NotUnimodular {
                modulus: constant.norm(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
        for k in 0..VALIDATION_SAMPLES {
            let (z1, z2) = match k % 3 {
                0 => (sample_disk(&mut rng), sample_disk(&mut rng)),
                1 => (sample_disk(&mut rng), sample_circle(&mut rng)),
                _ => (sample_circle(&mut rng), sample_disk(&mut rng)),
            };
            let vanishes = |z1: Complex64, z2: Complex64| Error::DenominatorVanishes {
                z1: format!("{z1}"),
                z2: format!("{z2}"),
            };
            if p.eval(z1, z2).norm() <= NONVANISHING_TOL {
                return Err(vanishes(z1, z2));
            }
            let slice = if k % 3 == 2 { p.slice_z2(z1) } else { p.slice(z2) };
            if slice.degree() > 0 {
                if let Some(r) = slice.roots()?.into_iter().find(|r| r.norm() < 1.0 - CIRCLE_TOL) {
                    return Err(if k % 3 == 2 { vanishes(z1, r) } else { vanishes(r, z2) });
                }
            }
        }
        let p_tilde = p.reflect();
        Ok(Self {
            p,
            p_tilde,
            constant,
        })
    }

    /// `Θ(z₁) = c·B(z₁)` lifted to two variables (independent of `z₂`).
    pub fn lift_blaschke(b: &BlaschkeProduct) -> Result<Self> {
        let den = Polynomial::from_roots(&[]);
        let den = b.zeros().iter().fold(den, |acc, a| {
            &acc * &Polynomial::new(vec![Complex64::new(1.0, 0.0), -a.conj()])
        });
        let mut coeffs = den.coeffs().to_vec();
        coeffs.resize(b.degree() + 1, zero());
        let grid: Vec<Vec<Complex64>> = coeffs.into_iter().map(|c| vec![c]).collect();
        Self::with_constant(BiPoly::from_grid(&grid)?, b.constant())
    }

    /// `θ₁²` with `θ₁ = p̃/p`, `p = a − z₁ + c·z₂`.
    pub fn theta1_squared(a: f64, c: f64) -> Result<Self> {
        if !(a > 0.0 && c > 0.0) || !a.is_finite() || !c.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "a and c must be positive, got a = {a}, c = {c}"
            )));
        }
        let p = BiPoly::from_real(&[&[a, c], &[-1.0, 0.0]])?;
        Self::new(p.mul(&p))
    }

    /// Degree-(2,2) product with `p = (2 − z₁ − z₂)(3 − 2z₁ − z₂)`.
    pub fn mtheta_example() -> Result<Self> {
        let p1 = BiPoly::from_real(&[&[2.0, -1.0], &[-1.0, 0.0]])?;
        let p2 = BiPoly::from_real(&[&[3.0, -1.0], &[-2.0, 0.0]])?;
        Self::new(p1.mul(&p2))
    }

    pub fn degree(&self) -> (usize, usize) {
        self.p.degree()
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn denominator(&self) -> &BiPoly {
        &self.p
    }

    pub fn reflection(&self) -> &BiPoly {
        &self.p_tilde
    }

    pub fn theta(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        let den = self.p.eval(z1, z2);
        if den.norm() <= NONVANISHING_TOL * self.p.coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max) {
            return Err(Error::DenominatorVanishes {
                z1: format!("{z1}"),
                z2: format!("{z2}"),
            });
        }
        Ok(self.constant * self.p_tilde.eval(z1, z2) / den)
    }
}

/// Whether `z₁ ↦ p(z₁, τ)` has a root within `tol` of the unit circle.
pub fn exceptional_check(theta: &RationalInnerFunction, tau: Complex64, tol: f64) -> bool {
    let slice = theta.p.slice(tau);
    if slice.is_zero() {
        return true;
    }
    match slice.roots() {
        Ok(roots) => roots.iter().any(|r| (r.norm() - 1.0).abs() <= tol),
        Err(Error::ConstantPolynomial) => false,
        // Unresolvable roots are treated as suspect.
        Err(_) => true,
    }
}

#[derive(Debug, Clone)]
pub struct SliceResult {
    pub tau: Complex64,
    /// `None` exactly when `excluded`.
    pub blaschke: Option<BlaschkeProduct>,
    pub excluded: bool,
}

fn validate_tau(tau: Complex64) -> Result<()> {
    if (tau.norm() - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::NotUnimodular { modulus: tau.norm() });
    }
    Ok(())
}

fn slice_rng(tau: Complex64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(VALIDATION_SEED ^ tau.re.to_bits() ^ tau.im.to_bits().rotate_left(32))
}

/// The slice `θ_τ = Θ(·, τ)` as a Blaschke product.
pub fn slice_blaschke(theta: &RationalInnerFunction, tau: Complex64) -> Result<SliceResult> {
    validate_tau(tau)?;
    if exceptional_check(theta, tau, EXCLUSION_RADIUS) {
        return Ok(SliceResult {
            tau,
            blaschke: None,
            excluded: true,
        });
    }
    let (m, _) = theta.degree();
    let num = theta.p_tilde.slice(tau);
    let zeros = if num.degree() == 0 { vec![] } else { num.roots()? };
    if zeros.len() != m {
        return Err(Error::SliceFailed {
            tau: format!("{tau}"),
            reason: format!("numerator has degree {} in z1, expected {m}", zeros.len()),
        });
    }
    if let Some(r) = zeros.iter().find(|r| r.norm() >= 1.0 - CIRCLE_TOL) {
        return Err(Error::ZeroOutsideDisk {
            zero: format!("{r}"),
            modulus: r.norm(),
        });
    }

    // Fit the unimodular constant at the first point where the bare product is not tiny.
    let bare = BlaschkeProduct::new(zeros.clone())?;
    let candidates = [
        zero(),
        Complex64::new(0.5, 0.0),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, 0.5),
    ];
    let mut constant = None;
    for z in candidates {
        let b = bare.eval(z)?;
        if b.norm() > 1e-3 {
            constant = Some(theta.theta(z, tau)? / b);
            break;
        }
    }
    let constant = constant.ok_or_else(|| Error::SliceFailed {
        tau: format!("{tau}"),
        reason: "no fitting point for the unimodular constant".into(),
    })?;
    if (constant.norm() - 1.0).abs() > SLICE_CHECK_TOL {
        return Err(Error::SliceFailed {
            tau: format!("{tau}"),
            reason: format!("fitted constant has modulus {}", constant.norm()),
        });
    }
    let blaschke = BlaschkeProduct::with_constant(zeros, constant / constant.norm())?;

    let mut rng = slice_rng(tau);
    for _ in 0..SLICE_CHECK_POINTS {
        let z = sample_disk(&mut rng) * 0.95;
        let err = (blaschke.eval(z)? - theta.theta(z, tau)?).norm();
        if err > SLICE_CHECK_TOL {
            return Err(Error::SliceFailed {
                tau: format!("{tau}"),
                reason: format!("slice mismatch {err:e} at {z}"),
            });
        }
    }
    Ok(SliceResult {
        tau,
        blaschke: Some(blaschke),
        excluded: false,
    })
}

/// `τ_k = e^{2πik/count}`.
pub fn tau_grid(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / count as f64))
        .collect()
}

#[derive(Debug, Clone)]
pub struct BidiskRange {
    pub hull: ConvexPolygon,
    pub excluded_count: usize,
    pub tau_count: usize,
}

fn require_tau_count(tau_count: usize) -> Result<()> {
    if tau_count < 8 {
        return Err(Error::InvalidParameter(format!(
            "tau_count must be at least 8, got {tau_count}"
        )));
    }
    Ok(())
}

/// Hull of the inner polygons of `W(S_{θ_τ})` over the non-exceptional `τ` of a uniform grid.
pub fn bidisk_numrange(theta: &RationalInnerFunction, tau_count: usize, gamma_count: usize) -> Result<BidiskRange> {
    require_tau_count(tau_count)?;
    if theta.degree().0 == 0 {
        return Err(Error::InvalidParameter("Θ must depend on z1".into()));
    }
    let per_tau: Vec<Option<Vec<Complex64>>> = tau_grid(tau_count)
        .into_par_iter()
        .map(|tau| {
            let slice = slice_blaschke(theta, tau)?;
            match slice.blaschke {
                None => Ok(None),
                Some(b) => {
                    let nr = numerical_range(&sb_matrix(b.zeros())?, gamma_count)?;
                    Ok(Some(nr.inner.vertices().to_vec()))
                }
            }
        })
        .collect::<Result<_>>()?;
    let excluded_count = per_tau.iter().filter(|v| v.is_none()).count();
    if excluded_count == tau_count {
        return Err(Error::AllSlicesExcluded);
    }
    let points: Vec<Complex64> = per_tau.into_iter().flatten().flatten().collect();
    Ok(BidiskRange {
        hull: convex_hull(&points),
        excluded_count,
        tau_count,
    })
}

/// The printed 2×2 Toeplitz-symbol matrix `M_Θ(τ)` for the degree-(2,2)
/// product of [`RationalInnerFunction::mtheta_example`]:
/// `[[1/(2−τ̄), 0], [−√6(1−τ̄)²/((2−τ̄)(3−τ̄)), 2/(3−τ̄)]]`.
pub fn mtheta_fixture(tau: Complex64) -> Result<CMatrix> {
    if !(tau.norm() <= 1.0 + UNIMODULAR_TOL) {
        return Err(Error::InvalidParameter(format!("|tau| must be at most 1, got {}", tau.norm())));
    }
    let tb = tau.conj();
    let one = Complex64::new(1.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let three = Complex64::new(3.0, 0.0);
    let off = -(6.0f64).sqrt() * (one - tb) * (one - tb) / ((two - tb) * (three - tb));
    CMatrix::from_rows(&[vec![one / (two - tb), zero()], vec![off, two / (three - tb)]])
}

/// Hull over a uniform `τ` grid of the exact elliptical ranges `W(M_Θ(τ))`,
/// each sampled at `gamma_count` boundary points.
pub fn bidisk_numrange_via_mtheta(tau_count: usize, gamma_count: usize) -> Result<ConvexPolygon> {
    require_tau_count(tau_count)?;
    let points: Vec<Vec<Complex64>> = tau_grid(tau_count)
        .into_par_iter()
        .map(|tau| {
            let e = elliptical_range(&mtheta_fixture(tau)?)?;
            Ok(e.boundary_polygon(gamma_count).vertices().to_vec())
        })
        .collect::<Result<_>>()?;
    Ok(convex_hull(&points.concat()))
}

/// Parametric boundary of `W(S_Θ)` for `Θ = θ₁²`, `p = a − z₁ + c·z₂` with `a = 1 + c`.
pub fn boundary_curve(a: f64, c: f64, t: f64) -> Result<(f64, f64)> {
    if !(a > 0.0 && c > 0.0) || (a - 1.0 - c).abs() >= 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "boundary curve needs a, c > 0 with a = 1 + c, got a = {a}, c = {c}"
        )));
    }
    let s = a + c;
    let phase = t - (a / s * t.sin()).clamp(-1.0, 1.0).asin();
    let r = a * c * (1.0 - t.cos()) / (s * s);
    Ok((
        (a + c * t.cos()) / s + r * phase.cos(),
        c * t.sin() / s + r * phase.sin(),
    ))
}
