//! Complex polynomials and simultaneous root finding.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const ABERTH_TOL: f64 = 1e-13;
const ABERTH_MAX_ITERS: usize = 200;
const CLUSTER_TOL: f64 = 1e-7;
const RESIDUAL_TOL: f64 = 1e-8;

/// Polynomial with complex coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Trailing exact zeros are trimmed; the zero polynomial keeps a single `0` coefficient.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == Complex64::new(0.0, 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial `∏(z − r)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Self::new(vec![Complex64::new(1.0, 0.0)]);
        for &r in roots {
            p = &p * &Self::new(vec![-r, Complex64::new(1.0, 0.0)]);
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value, derivative, and the rounding-error bound `Σ|c_k||z|^k` in one Horner pass.
    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64, f64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        let mut bound = 0.0;
        let r = z.norm();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
            bound = bound * r + c.norm();
        }
        (p, dp, bound)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::new(vec![Complex64::new(0.0, 0.0)]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// All `degree` roots, with multiplicity.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        poly_roots(self)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Polynomial::new(
            (0..len)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(zero) - rhs.coeffs.get(k).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }
}

/// Upper bound on root moduli: `1 + max_k |c_k / c_n|`.
fn cauchy_bound(p: &Polynomial) -> f64 {
    let lead = p.leading().norm();
    1.0 + p.coeffs[..p.degree()]
        .iter()
        .map(|c| c.norm() / lead)
        .fold(0.0, f64::max)
}

/// Aberth–Ehrlich simultaneous iteration; clustered roots are replaced by their mean.
pub fn poly_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if p.coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    if n == 1 {
        return Ok(vec![-p.coeffs[0] / p.coeffs[1]]);
    }

    // Exact zero roots factor out cleanly.
    let zero_roots = p.coeffs.iter().take_while(|c| **c == Complex64::new(0.0, 0.0)).count();
    if zero_roots > 0 {
        let reduced = Polynomial::new(p.coeffs[zero_roots..].to_vec());
        let mut roots = vec![Complex64::new(0.0, 0.0); zero_roots];
        if reduced.degree() > 0 {
            roots.extend(poly_roots(&reduced)?);
        }
        return Ok(roots);
    }

    let radius = cauchy_bound(p);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];

    let mut iterations = 0;
    while iterations < ABERTH_MAX_ITERS && done.iter().any(|d| !d) {
        iterations += 1;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (val, der, bound) = p.eval_with_derivative(z[k]);
            // Value indistinguishable from rounding noise: root is as good as it gets.
            if val.norm() <= 4.0 * f64::EPSILON * bound * (n as f64) {
                done[k] = true;
                continue;
            }
            let ratio = val / der;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // Derivative vanished; nudge off the critical point.
                let bump = Complex64::new(1e-8, 1e-8) * (1.0 + z[k].norm());
                z[k] += bump;
                continue;
            }
            z[k] -= step;
            if step.norm() <= ABERTH_TOL * (1.0 + z[k].norm()) {
                done[k] = true;
            }
        }
    }

    merge_clusters(&mut z);
    polish_clusters(p, &mut z);

    let scale = p.max_abs_coeff();
    let max_residual = z
        .iter()
        .map(|&r| p.eval(r).norm() / scale)
        .fold(0.0, f64::max);
    if max_residual > RESIDUAL_TOL || z.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
        return Err(Error::RootsNotConverged {
            iterations,
            max_residual,
        });
    }
    Ok(z)
}

/// Replaces each group of roots lying within `CLUSTER_TOL` of one another by the group mean.
fn merge_clusters(z: &mut [Complex64]) {
    let n = z.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn find(group: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while group[r] != r {
            r = group[r];
        }
        group[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (z[i] - z[j]).norm() <= CLUSTER_TOL * (1.0 + z[i].norm()) {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                if a != b {
                    group[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut group, i)).collect();
    let mut sums = vec![(Complex64::new(0.0, 0.0), 0usize); n];
    for i in 0..n {
        sums[roots[i]].0 += z[i];
        sums[roots[i]].1 += 1;
    }
    for i in 0..n {
        let (s, c) = sums[roots[i]];
        if c > 1 {
            z[i] = s / c as f64;
        }
    }
}

/// A root of multiplicity `k` is a simple root of `p^{(k−1)}`; Newton on that
/// derivative recovers the digits the cluster mean loses.
fn polish_clusters(p: &Polynomial, z: &mut [Complex64]) {
    let n = z.len();
    let mut seen = vec![false; n];
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let members: Vec<usize> = (i..n).filter(|&j| z[j] == z[i]).collect();
        for &j in &members {
            seen[j] = true;
        }
        let k = members.len();
        if k < 2 {
            continue;
        }
        let d = (1..k).fold(p.clone(), |acc, _| acc.derivative());
        let dd = d.derivative();
        let start = z[i];
        let mut w = start;
        for _ in 0..20 {
            let step = d.eval(w) / dd.eval(w);
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            w -= step;
            if step.norm() <= 4.0 * f64::EPSILON * (1.0 + w.norm()) {
                break;
            }
        }
        if w.re.is_finite() && w.im.is_finite() && (w - start).norm() <= CLUSTER_TOL * (1.0 + start.norm()) {
            for &j in &members {
                z[j] = w;
            }
        }
    }
}
