//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `h_pq`, then applies
//! the classical real Jacobi rotation. Sweeps run over all `p < q` pairs
//! until the off-diagonal Frobenius norm drops below `1e-14·‖H‖_F`.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::matrix::CMatrix;

const HERMITIAN_TOL: f64 = 1e-12;
const OFF_DIAG_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 60;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

impl HermitianEigen {
    pub fn max_value(&self) -> f64 {
        *self.values.last().expect("eigendecomposition of an empty matrix")
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }
}

fn off_diagonal_norm(h: &CMatrix) -> f64 {
    let n = h.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += h[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigs(h: &CMatrix) -> Result<HermitianEigen> {
    let n = h.dim();
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    let scale = h.frobenius_norm();
    let deviation = h.hermitian_deviation();
    let limit = HERMITIAN_TOL * scale;
    if deviation > limit {
        return Err(Error::NotHermitian { deviation, limit });
    }
    if n == 0 {
        return Ok(HermitianEigen {
            values: vec![],
            vectors: vec![],
        });
    }

    let mut a = h.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = CMatrix::identity(n);
    let target = OFF_DIAG_TOL * scale;

    let mut converged = off_diagonal_norm(&a) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a) <= target;
    }
    if !converged {
        return Err(Error::EigenNotConverged {
            sweeps,
            off_norm: off_diagonal_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[(i, k)]).collect())
        .collect();
    Ok(HermitianEigen { values, vectors })
}

/// Annihilates `a[p][q]` with the unitary `J = diag(1, e^{−iφ})·R(θ)` acting on rows/columns `p, q`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip rotations that cannot change the diagonal in floating point.
    if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / g;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J entries: [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]] where e^{iφ} = phase.
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.dim();
    // A ← A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    // A ← J* A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    // V ← V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}
