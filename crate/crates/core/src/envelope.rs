//! Discriminant envelopes of one-parameter curve families `F(x, y, t) = 0`.
//!
//! A point belongs to the discriminant envelope when `F = 0` and `∂F/∂t = 0`
//! hold for the same `t`. For each `t` we run a 2-d Newton iteration on
//! `(F, F_t)` from seeds placed on the member curve `Γ_t`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::numrange::support_sample;

/// Residual threshold on both `|F|` and `|F_t|` for accepting a point.
pub const CONVERGENCE_TOL: f64 = 1e-10;
/// Points closer than this (at the same `t`) are merged.
pub const DEDUP_TOL: f64 = 1e-8;
pub const DEFAULT_SEEDS: usize = 8;
const MAX_NEWTON_STEPS: usize = 60;
/// `|∇_{x,y} F|` below this marks the member curve as singular at the point.
const SINGULAR_GRADIENT: f64 = 1e-8;

/// `F`, `F_t` and their partial derivatives in `x` and `y` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyEval {
    pub f: f64,
    pub f_t: f64,
    pub f_x: f64,
    pub f_y: f64,
    pub f_tx: f64,
    pub f_ty: f64,
}

/// A one-parameter family of plane curves with an analytic `t`-derivative.
pub trait CurveFamily: Sync {
    fn eval(&self, x: f64, y: f64, t: f64) -> FamilyEval;

    /// `count` starting points on (or near) the member curve `Γ_t`.
    fn seeds(&self, t: f64, count: usize) -> Vec<(f64, f64)>;
}

/// A point of the discriminant envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopePoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    /// `∇_{x,y}F = 0` here: the member `Γ_t` is singular at the point (for
    /// example a zero-radius circle), so the point need not lie on a smooth
    /// envelope branch.
    pub isolated: bool,
}

impl EnvelopePoint {
    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

/// Circles `C_t` with center `(1 − t², 0)` and radius `m·t·√(1 − t²)`, `t ∈ [0, 1]`.
///
/// Their union is `W(T)` for `T = [[0, m], [0, 1]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFamily {
    m: f64,
}

impl CircleFamily {
    pub fn new(m: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::InvalidParameter(format!("m must be positive, got {m}")));
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn center(&self, t: f64) -> f64 {
        1.0 - t * t
    }

    pub fn radius(&self, t: f64) -> f64 {
        self.m * t * (1.0 - t * t).max(0.0).sqrt()
    }
}

/// `F(x,y,t) = (x − (1 − t²))² + y² − m²t²(1 − t²)` and `∂F/∂t`.
pub fn family_f(m: f64, x: f64, y: f64, t: f64) -> (f64, f64) {
    let e = CircleFamily { m }.eval(x, y, t);
    (e.f, e.f_t)
}

impl CurveFamily for CircleFamily {
    fn eval(&self, x: f64, y: f64, t: f64) -> FamilyEval {
        let m2 = self.m * self.m;
        let dx = x - (1.0 - t * t);
        FamilyEval {
            f: dx * dx + y * y - m2 * t * t * (1.0 - t * t),
            f_t: 4.0 * t * dx - m2 * (2.0 * t - 4.0 * t * t * t),
            f_x: 2.0 * dx,
            f_y: 2.0 * y,
            f_tx: 4.0 * t,
            f_ty: 0.0,
        }
    }

    fn seeds(&self, t: f64, count: usize) -> Vec<(f64, f64)> {
        let (c, r) = (self.center(t), self.radius(t));
        (0..count)
            .map(|k| {
                let phi = 2.0 * PI * (k as f64 + 0.5) / count as f64;
                (c + r * phi.cos(), r * phi.sin())
            })
            .collect()
    }
}

/// Closed-form envelope points of the circle family at `t`:
/// `x = (1 − t²) + (m²/2)(1 − 2t²)`, `y = ±√(m²(t² − t⁴) − (m⁴/4)(1 − 2t²)²)`.
/// Empty when the radicand is negative or `t ∉ [0, 1]`.
pub fn ert_envelope(m: f64, t: f64) -> Vec<EnvelopePoint> {
    if !(0.0..=1.0).contains(&t) {
        return vec![];
    }
    let m2 = m * m;
    let s = 1.0 - 2.0 * t * t;
    let x = (1.0 - t * t) + 0.5 * m2 * s;
    let radicand = m2 * (t * t - t.powi(4)) - 0.25 * m2 * m2 * s * s;
    if radicand < 0.0 {
        return vec![];
    }
    let y = radicand.sqrt();
    let point = |y| EnvelopePoint {
        t,
        x,
        y,
        isolated: false,
    };
    if y == 0.0 {
        vec![point(0.0)]
    } else {
        vec![point(y), point(-y)]
    }
}

/// `|(x − ½)²/(1 + m²) + y²/m² − ¼|`.
pub fn verify_on_ellipse(x: f64, y: f64, m: f64) -> f64 {
    ((x - 0.5).powi(2) / (1.0 + m * m) + y * y / (m * m) - 0.25).abs()
}

/// Solves `F = F_t = 0` from every seed at every `t`; converged points are
/// deduplicated per `t` and returned in grid order.
pub fn discriminant_envelope<F: CurveFamily + ?Sized>(
    family: &F,
    t_grid: &[f64],
    seeds_per_t: usize,
) -> Vec<EnvelopePoint> {
    t_grid
        .par_iter()
        .map(|&t| envelope_at(family, t, seeds_per_t))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn envelope_at<F: CurveFamily + ?Sized>(family: &F, t: f64, seeds_per_t: usize) -> Vec<EnvelopePoint> {
    let mut found: Vec<EnvelopePoint> = Vec::new();
    for (x0, y0) in family.seeds(t, seeds_per_t) {
        let Some((x, y, grad)) = newton(family, x0, y0, t) else {
            continue;
        };
        if found
            .iter()
            .any(|p| (p.x - x).hypot(p.y - y) <= DEDUP_TOL)
        {
            continue;
        }
        found.push(EnvelopePoint {
            t,
            x,
            y,
            isolated: grad <= SINGULAR_GRADIENT,
        });
    }
    found
}

fn converged(e: &FamilyEval) -> bool {
    e.f.abs() < CONVERGENCE_TOL && e.f_t.abs() < CONVERGENCE_TOL
}

/// Newton on `(F, F_t)` in `(x, y)`; falls back to a damped least-squares
/// step when the Jacobian is singular. Returns the point and `|∇F|` there.
fn newton<F: CurveFamily + ?Sized>(family: &F, mut x: f64, mut y: f64, t: f64) -> Option<(f64, f64, f64)> {
    for _ in 0..MAX_NEWTON_STEPS {
        let e = family.eval(x, y, t);
        if !e.f.is_finite() || !e.f_t.is_finite() {
            return None;
        }
        if converged(&e) {
            let (x, y) = polish(family, x, y, t, &e);
            let e = family.eval(x, y, t);
            return Some((x, y, e.f_x.hypot(e.f_y)));
        }
        let (a, b, c, d) = (e.f_x, e.f_y, e.f_tx, e.f_ty);
        let det = a * d - b * c;
        let jscale = a * a + b * b + c * c + d * d;
        let (dx, dy) = if det.abs() > 1e-12 * jscale && jscale > 0.0 {
            ((d * e.f - b * e.f_t) / det, (a * e.f_t - c * e.f) / det)
        } else {
            // (JᵀJ + μI)⁻¹ Jᵀ r
            let mu = 1e-10 * jscale.max(1e-300);
            let (g11, g12, g22) = (a * a + c * c + mu, a * b + c * d, b * b + d * d + mu);
            let (r1, r2) = (a * e.f + c * e.f_t, b * e.f + d * e.f_t);
            let gdet = g11 * g22 - g12 * g12;
            if gdet == 0.0 || !gdet.is_finite() {
                return None;
            }
            ((g22 * r1 - g12 * r2) / gdet, (g11 * r2 - g12 * r1) / gdet)
        };
        x -= dx;
        y -= dy;
        if !x.is_finite() || !y.is_finite() {
            return None;
        }
    }
    let e = family.eval(x, y, t);
    converged(&e).then(|| (x, y, e.f_x.hypot(e.f_y)))
}

/// A few more plain Newton steps past the acceptance threshold, kept only
/// while the residual keeps shrinking. When `|∇F|` is small the threshold on
/// `F` alone leaves the point far less accurate than the data allow.
fn polish<F: CurveFamily + ?Sized>(family: &F, mut x: f64, mut y: f64, t: f64, e: &FamilyEval) -> (f64, f64) {
    let residual = |e: &FamilyEval| e.f.hypot(e.f_t);
    let mut e = *e;
    for _ in 0..4 {
        let det = e.f_x * e.f_ty - e.f_y * e.f_tx;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let nx = x - (e.f_ty * e.f - e.f_y * e.f_t) / det;
        let ny = y - (e.f_x * e.f_t - e.f_tx * e.f) / det;
        let ne = family.eval(nx, ny, t);
        if !(residual(&ne) < residual(&e)) {
            break;
        }
        (x, y, e) = (nx, ny, ne);
    }
    (x, y)
}

/// Kippenhahn support lines `x cos γ + y sin γ = h(γ)` of `W(A)`, parametrized by `γ`.
///
/// `F_γ` uses `h'(γ) = Im(e^{−iγ}⟨Av, v⟩)` for the top eigenvector `v`.
pub struct SupportLineFamily {
    a: CMatrix,
    spread: f64,
}

impl SupportLineFamily {
    pub fn new(a: CMatrix) -> Self {
        let spread = a.frobenius_norm().max(1.0);
        Self { a, spread }
    }
}

impl CurveFamily for SupportLineFamily {
    fn eval(&self, x: f64, y: f64, t: f64) -> FamilyEval {
        let (s, c) = t.sin_cos();
        let (h, hp) = match support_sample(&self.a, t) {
            Ok(sample) => (sample.h, sample.h_prime()),
            Err(_) => (f64::NAN, f64::NAN),
        };
        FamilyEval {
            f: x * c + y * s - h,
            f_t: -x * s + y * c - hp,
            f_x: c,
            f_y: s,
            f_tx: -s,
            f_ty: c,
        }
    }

    fn seeds(&self, t: f64, count: usize) -> Vec<(f64, f64)> {
        let h = support_sample(&self.a, t).map(|s| s.h).unwrap_or(0.0);
        let dir = Complex64::from_polar(1.0, t);
        (0..count)
            .map(|k| {
                let offset = if count > 1 {
                    self.spread * (2.0 * k as f64 / (count - 1) as f64 - 1.0)
                } else {
                    0.0
                };
                let p = dir * Complex64::new(h, offset);
                (p.re, p.im)
            })
            .collect()
    }
}

/// A family given by closures; `(F, F_t)` must be supplied, the `x`/`y`
/// partials are taken by central differences.
pub struct ClosureFamily<V, S>
where
    V: Fn(f64, f64, f64) -> (f64, f64) + Sync,
    S: Fn(f64, usize) -> Vec<(f64, f64)> + Sync,
{
    value: V,
    seeds: S,
}

impl<V, S> ClosureFamily<V, S>
where
    V: Fn(f64, f64, f64) -> (f64, f64) + Sync,
    S: Fn(f64, usize) -> Vec<(f64, f64)> + Sync,
{
    pub fn new(value: V, seeds: S) -> Self {
        Self { value, seeds }
    }
}

impl<V, S> CurveFamily for ClosureFamily<V, S>
where
    V: Fn(f64, f64, f64) -> (f64, f64) + Sync,
    S: Fn(f64, usize) -> Vec<(f64, f64)> + Sync,
{
    fn eval(&self, x: f64, y: f64, t: f64) -> FamilyEval {
        let (f, f_t) = (self.value)(x, y, t);
        let hx = 1e-6 * (1.0 + x.abs());
        let hy = 1e-6 * (1.0 + y.abs());
        let (fxp, ftxp) = (self.value)(x + hx, y, t);
        let (fxm, ftxm) = (self.value)(x - hx, y, t);
        let (fyp, ftyp) = (self.value)(x, y + hy, t);
        let (fym, ftym) = (self.value)(x, y - hy, t);
        FamilyEval {
            f,
            f_t,
            f_x: (fxp - fxm) / (2.0 * hx),
            f_y: (fyp - fym) / (2.0 * hy),
            f_tx: (ftxp - ftxm) / (2.0 * hx),
            f_ty: (ftyp - ftym) / (2.0 * hy),
        }
    }

    fn seeds(&self, t: f64, count: usize) -> Vec<(f64, f64)> {
        (self.seeds)(t, count)
    }
}
