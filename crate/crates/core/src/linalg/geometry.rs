//! Planar convex geometry on complex points.
//!
//! Polygons are stored counterclockwise. Point and segment polygons are valid
//! values and carry their [`PolygonKind`]; the numerical range of a normal
//! matrix with collinear spectrum is a segment, not an error.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for collinearity, duplicate vertices and clipping.
pub const GEOM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonKind {
    Empty,
    Point,
    Segment,
    Proper,
}

/// Convex polygon with counterclockwise vertices and no repeated vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Complex64>,
    kind: PolygonKind,
}

#[inline]
fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn extent(points: &[Complex64]) -> f64 {
    points.iter().map(|p| p.norm()).fold(0.0, f64::max)
}

fn tolerance_for(points: &[Complex64]) -> f64 {
    GEOM_TOL * extent(points).max(1.0)
}

impl ConvexPolygon {
    pub fn empty() -> Self {
        Self {
            vertices: vec![],
            kind: PolygonKind::Empty,
        }
    }

    pub fn point(p: Complex64) -> Self {
        Self {
            vertices: vec![p],
            kind: PolygonKind::Point,
        }
    }

    /// Regular `n`-gon inscribed in the circle `|z − center| = radius`, first vertex at angle `phase`.
    pub fn regular(center: Complex64, radius: f64, n: usize, phase: f64) -> Self {
        convex_hull(
            &(0..n)
                .map(|k| center + Complex64::from_polar(radius, phase + 2.0 * PI * k as f64 / n as f64))
                .collect::<Vec<_>>(),
        )
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn kind(&self) -> PolygonKind {
        self.kind
    }

    pub fn is_empty(&self) -> bool {
        self.kind == PolygonKind::Empty
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.kind, PolygonKind::Point | PolygonKind::Segment)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    fn tol(&self) -> f64 {
        tolerance_for(&self.vertices)
    }

    /// Directed edges `(v_k, v_{k+1})`, cyclically.
    pub fn edges(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |k| (self.vertices[k], self.vertices[(k + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        if self.kind != PolygonKind::Proper {
            return 0.0;
        }
        0.5 * self.edges().map(|(a, b)| cross(a, b)).sum::<f64>()
    }

    pub fn perimeter(&self) -> f64 {
        match self.kind {
            PolygonKind::Empty | PolygonKind::Point => 0.0,
            _ => self.edges().map(|(a, b)| (b - a).norm()).sum(),
        }
    }

    /// Support function `max_v Re(e^{−iγ} v)`.
    pub fn support(&self, gamma: f64) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::EmptyPolygon);
        }
        let rot = Complex64::from_polar(1.0, -gamma);
        Ok(self
            .vertices
            .iter()
            .map(|&v| (rot * v).re)
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// Euclidean distance from `q` to the filled polygon (0 inside).
    pub fn distance_to(&self, q: Complex64) -> Result<f64> {
        match self.kind {
            PolygonKind::Empty => Err(Error::EmptyPolygon),
            PolygonKind::Point => Ok((q - self.vertices[0]).norm()),
            PolygonKind::Segment => Ok(segment_distance(q, self.vertices[0], self.vertices[1])),
            PolygonKind::Proper => {
                if self.contains_strict(q) {
                    return Ok(0.0);
                }
                let mut outside = false;
                let mut best = f64::INFINITY;
                for (a, b) in self.edges() {
                    if cross(b - a, q - a) < 0.0 {
                        outside = true;
                    }
                    best = best.min(segment_distance(q, a, b));
                }
                Ok(if outside { best } else { 0.0 })
            }
        }
    }

    /// Signed distance to the boundary: positive inside, negative outside.
    pub fn signed_distance(&self, q: Complex64) -> Result<f64> {
        let d = self.distance_to(q)?;
        if d > 0.0 || self.kind != PolygonKind::Proper {
            return Ok(-d);
        }
        Ok(self
            .edges()
            .map(|(a, b)| cross(b - a, q - a) / (b - a).norm())
            .fold(f64::INFINITY, f64::min))
    }

    pub fn contains(&self, q: Complex64, tol: f64) -> bool {
        self.distance_to(q).map(|d| d <= tol).unwrap_or(false)
    }

    /// `O(log n)` wedge test; only meaningful for proper polygons.
    fn contains_strict(&self, q: Complex64) -> bool {
        let v = &self.vertices;
        let n = v.len();
        let v0 = v[0];
        if cross(v[1] - v0, q - v0) < 0.0 || cross(v[n - 1] - v0, q - v0) > 0.0 {
            return false;
        }
        let (mut lo, mut hi) = (1, n - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if cross(v[mid] - v0, q - v0) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        cross(v[hi] - v[lo], q - v[lo]) >= 0.0
    }

    /// Boundary resampled so that consecutive points are at most `perimeter/count` apart.
    /// Original vertices are always kept.
    pub fn densify(&self, count: usize) -> Vec<Complex64> {
        match self.kind {
            PolygonKind::Empty => vec![],
            PolygonKind::Point => self.vertices.clone(),
            _ => {
                let step = self.perimeter() / count.max(1) as f64;
                let mut out = Vec::with_capacity(count + self.vertices.len());
                for (a, b) in self.edges() {
                    let pieces = if step > 0.0 {
                        ((b - a).norm() / step).ceil().max(1.0) as usize
                    } else {
                        1
                    };
                    for k in 0..pieces {
                        out.push(a + (b - a) * (k as f64 / pieces as f64));
                    }
                }
                out
            }
        }
    }

    /// True when every turn is counterclockwise to within `tol` (relative to edge lengths).
    pub fn is_convex(&self, tol: f64) -> bool {
        if self.kind != PolygonKind::Proper {
            return true;
        }
        let n = self.vertices.len();
        (0..n).all(|k| {
            let a = self.vertices[k];
            let b = self.vertices[(k + 1) % n];
            let c = self.vertices[(k + 2) % n];
            cross(b - a, c - b) >= -tol * (b - a).norm() * (c - b).norm()
        })
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        convex_hull(&self.vertices.iter().map(|&v| f(v)).collect::<Vec<_>>())
    }
}

fn segment_distance(q: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (q - a).norm();
    }
    let t = (((q - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (q - (a + d * t)).norm()
}

/// Andrew's monotone chain. Collinear and duplicate points are dropped.
pub fn convex_hull(points: &[Complex64]) -> ConvexPolygon {
    let mut pts: Vec<Complex64> = points
        .iter()
        .copied()
        .filter(|p| p.re.is_finite() && p.im.is_finite())
        .collect();
    if pts.is_empty() {
        return ConvexPolygon::empty();
    }
    let tol = tolerance_for(&pts);
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup_by(|a, b| (*a - *b).norm() <= tol);

    if pts.iter().all(|p| (p - pts[0]).norm() <= tol) {
        return ConvexPolygon::point(pts[0]);
    }

    let turns_left = |o: Complex64, a: Complex64, b: Complex64| {
        let (u, v) = (a - o, b - o);
        cross(u, v) > GEOM_TOL * u.norm() * v.norm()
    };
    let mut hull: Vec<Complex64> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2 && !turns_left(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && !turns_left(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();

    // Drop near-duplicates left at the seams.
    let mut clean: Vec<Complex64> = Vec::with_capacity(hull.len());
    for p in hull {
        if clean.last().is_none_or(|&q: &Complex64| (p - q).norm() > tol) {
            clean.push(p);
        }
    }
    while clean.len() > 1 && (clean[0] - clean[clean.len() - 1]).norm() <= tol {
        clean.pop();
    }
    let kind = match clean.len() {
        0 => PolygonKind::Empty,
        1 => PolygonKind::Point,
        2 => PolygonKind::Segment,
        _ => PolygonKind::Proper,
    };
    ConvexPolygon {
        vertices: clean,
        kind,
    }
}

/// Keeps the part of the closed chain `subject` on the left of the directed line `a → b`.
fn clip_left(subject: &[Complex64], a: Complex64, b: Complex64, tol: f64) -> Vec<Complex64> {
    let dir = b - a;
    let len = dir.norm();
    let side = |p: Complex64| cross(dir, p - a) / len;
    let n = subject.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let cur = subject[i];
        let prev = subject[(i + n - 1) % n];
        let (dc, dp) = (side(cur), side(prev));
        let cur_in = dc >= -tol;
        let prev_in = dp >= -tol;
        if cur_in != prev_in && n > 1 {
            let t = (dp / (dp - dc)).clamp(0.0, 1.0);
            out.push(prev + (cur - prev) * t);
        }
        if cur_in {
            out.push(cur);
        }
    }
    out
}

/// Intersection of two convex polygons by successive half-plane clipping.
pub fn polygon_intersection(p: &ConvexPolygon, q: &ConvexPolygon) -> ConvexPolygon {
    if p.is_empty() || q.is_empty() {
        return ConvexPolygon::empty();
    }
    let tol = p.tol().max(q.tol());
    match (p.kind, q.kind) {
        (_, PolygonKind::Proper) => clip_by(p, q, tol),
        (PolygonKind::Proper, _) => clip_by(q, p, tol),
        _ => degenerate_intersection(p, q, tol),
    }
}

fn clip_by(subject: &ConvexPolygon, clipper: &ConvexPolygon, tol: f64) -> ConvexPolygon {
    let mut verts = subject.vertices.clone();
    for (a, b) in clipper.edges() {
        verts = clip_left(&verts, a, b, tol);
        if verts.is_empty() {
            return ConvexPolygon::empty();
        }
    }
    convex_hull(&verts)
}

fn degenerate_intersection(p: &ConvexPolygon, q: &ConvexPolygon, tol: f64) -> ConvexPolygon {
    if p.kind == PolygonKind::Point {
        let x = p.vertices[0];
        return if q.contains(x, tol) {
            ConvexPolygon::point(x)
        } else {
            ConvexPolygon::empty()
        };
    }
    if q.kind == PolygonKind::Point {
        return degenerate_intersection(q, p, tol);
    }
    // Two segments.
    let (a, b) = (p.vertices[0], p.vertices[1]);
    let (c, d) = (q.vertices[0], q.vertices[1]);
    let u = b - a;
    let len = u.norm();
    let off_c = cross(u, c - a) / len;
    let off_d = cross(u, d - a) / len;
    if off_c.abs() <= tol && off_d.abs() <= tol {
        let dir = u / len;
        let proj = |z: Complex64| ((z - a) * dir.conj()).re;
        let (tc, td) = (proj(c), proj(d));
        let lo = tc.min(td).max(0.0);
        let hi = tc.max(td).min(len);
        if hi < lo - tol {
            return ConvexPolygon::empty();
        }
        return convex_hull(&[a + dir * lo, a + dir * hi.max(lo)]);
    }
    let v = d - c;
    let denom = cross(u, v);
    if denom.abs() <= f64::MIN_POSITIVE {
        return ConvexPolygon::empty();
    }
    let s = cross(c - a, v) / denom;
    let x = a + u * s;
    if segment_distance(x, a, b) <= tol && segment_distance(x, c, d) <= tol {
        ConvexPolygon::point(x)
    } else {
        ConvexPolygon::empty()
    }
}

/// Support value of `P` in direction `γ`.
pub fn polygon_support(p: &ConvexPolygon, gamma: f64) -> Result<f64> {
    p.support(gamma)
}

/// Symmetric Hausdorff distance between two filled convex polygons.
///
/// For convex sets the distance to the other set is a convex function, so its
/// maximum over a polygon sits at a vertex; the vertex-to-set sweep is exact.
pub fn hausdorff_distance(p: &ConvexPolygon, q: &ConvexPolygon) -> Result<f64> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::EmptyPolygon);
    }
    Ok(directed_hausdorff(p, q)?.max(directed_hausdorff(q, p)?))
}

/// `max_{v ∈ P} dist(v, Q)`.
pub fn directed_hausdorff(p: &ConvexPolygon, q: &ConvexPolygon) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &v in p.vertices() {
        worst = worst.max(q.distance_to(v)?);
    }
    Ok(worst)
}

/// A half-plane `{z : Re(e^{−iγ} z) ≤ h}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportLine {
    pub gamma: f64,
    pub h: f64,
}

impl SupportLine {
    fn excess(&self, z: Complex64) -> f64 {
        (Complex64::from_polar(1.0, -self.gamma) * z).re - self.h
    }

    /// Intersection of the two boundary lines, or `None` if parallel.
    fn meet(&self, other: &SupportLine) -> Option<Complex64> {
        let delta = other.gamma - self.gamma;
        let s = delta.sin();
        if s.abs() < 1e-15 {
            return None;
        }
        let t = (other.h - self.h * delta.cos()) / s;
        Some(Complex64::from_polar(1.0, self.gamma) * Complex64::new(self.h, t))
    }
}

/// Intersection of half-planes given in strictly increasing `γ` order spanning
/// the full circle with gaps below `π` (so the result is bounded).
///
/// Linear-time deque sweep, so it scales to very fine angle grids.
pub fn support_lines_intersection(lines: &[SupportLine]) -> Result<ConvexPolygon> {
    if lines.len() < 3 {
        return Err(Error::InvalidParameter(
            "need at least three support lines".into(),
        ));
    }
    let scale = lines.iter().map(|l| l.h.abs()).fold(1.0, f64::max);
    let tol = GEOM_TOL * scale;
    let outside = |l: &SupportLine, p: Option<Complex64>| p.is_some_and(|p| l.excess(p) > tol);

    let mut dq: VecDeque<SupportLine> = VecDeque::with_capacity(lines.len());
    for line in lines {
        while dq.len() >= 2 && outside(line, dq[dq.len() - 2].meet(&dq[dq.len() - 1])) {
            dq.pop_back();
        }
        while dq.len() >= 2 && outside(line, dq[0].meet(&dq[1])) {
            dq.pop_front();
        }
        dq.push_back(*line);
    }
    while dq.len() >= 3 && outside(&dq[0], dq[dq.len() - 2].meet(&dq[dq.len() - 1])) {
        dq.pop_back();
    }
    while dq.len() >= 3 && outside(&dq[dq.len() - 1], dq[0].meet(&dq[1])) {
        dq.pop_front();
    }
    if dq.len() < 3 {
        return Ok(ConvexPolygon::empty());
    }
    let n = dq.len();
    let vertices: Vec<Complex64> = (0..n).filter_map(|k| dq[k].meet(&dq[(k + 1) % n])).collect();
    Ok(convex_hull(&vertices))
}
