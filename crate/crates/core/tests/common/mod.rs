//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use numrange::{CMatrix, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
}

pub fn cnormal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(normal(rng), normal(rng))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, |_, _| cnormal(rng))
}

/// Haar-like unitary from Gram–Schmidt on a complex Gaussian matrix (columns orthonormalized).
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| cnormal(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let dot: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= dot * y;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    CMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Uniform point in the disk of radius `r`.
pub fn disk_point(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.gen::<f64>().sqrt(), 2.0 * PI * rng.gen::<f64>())
}

pub fn unimodular(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * rng.gen::<f64>())
}

pub fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

/// `U·T·U*` with upper triangular `T` carrying `eigs` on its diagonal;
/// `T` is diagonal when `normal` is set.
pub fn with_spectrum(rng: &mut ChaCha8Rng, eigs: &[Complex64], normal: bool) -> CMatrix {
    let n = eigs.len();
    let t = CMatrix::from_fn(n, |i, j| {
        if i == j {
            eigs[i]
        } else if i < j && !normal {
            cnormal(rng)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let u = random_unitary(rng, n);
    &(&u * &t) * &u.adjoint()
}
