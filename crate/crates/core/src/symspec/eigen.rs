use std::ops::Index;

use serde::Serialize;

use super::SymMatrix;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_RTOL: f64 = 1e-12;

/// Eigenvalues sorted descending, indexed 1-based through [`Spectrum::eig`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts `values` descending. Ties keep their input order.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `eig(1)` is the largest eigenvalue, `eig(n)` the smallest.
    ///
    /// Panics unless `1 <= i <= n`.
    #[inline]
    pub fn eig(&self, i: usize) -> f64 {
        assert!(i >= 1 && i <= self.values.len(), "eigenvalue index {i} out of 1..={}", self.values.len());
        self.values[i - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl Index<usize> for Spectrum {
    type Output = f64;

    /// 0-based positional access; prefer [`Spectrum::eig`] for 1-based indexing.
    fn index(&self, k: usize) -> &f64 {
        &self.values[k]
    }
}

/// Full eigendecomposition `A = V diag(spectrum) Vᵀ`.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub spectrum: Spectrum,
    /// Row-major `n × n`; column `k` is the unit eigenvector for `spectrum[k]`.
    vectors: Vec<f64>,
}

impl Eigen {
    pub fn n(&self) -> usize {
        self.spectrum.n()
    }

    /// Unit eigenvector for `eig(i)`, 1-based like [`Spectrum::eig`].
    pub fn eigvec(&self, i: usize) -> Vec<f64> {
        let n = self.n();
        assert!(i >= 1 && i <= n, "eigenvector index {i} out of 1..={n}");
        (0..n).map(|r| self.vectors[r * n + i - 1]).collect()
    }

    /// Row-major eigenvector matrix `V`.
    pub fn vectors(&self) -> &[f64] {
        &self.vectors
    }
}

/// Eigenvalues and orthonormal eigenvectors by cyclic Jacobi rotations.
pub fn eigen_spectrum(a: &SymMatrix) -> Eigen {
    let n = a.n();
    let mut work = a.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    jacobi(&mut work, n, Some(&mut v), a.frobenius());

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| work[q * n + q].total_cmp(&work[p * n + p]));
    let values = order.iter().map(|&k| work[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + dst] = v[r * n + src];
        }
    }
    Eigen { spectrum: Spectrum { values }, vectors }
}

/// Eigenvalues only; skips accumulating rotations.
pub fn eigenvalues(a: &SymMatrix) -> Spectrum {
    let n = a.n();
    let mut work = a.as_slice().to_vec();
    jacobi(&mut work, n, None, a.frobenius());
    Spectrum::from_unsorted((0..n).map(|k| work[k * n + k]).collect())
}

/// Diagonalizes the row-major symmetric `a` in place, accumulating rotations into `v`.
///
/// Stops once the off-diagonal Frobenius norm is at most `1e-12 * (1 + ‖A‖_F)`
/// or after 100 sweeps.
fn jacobi(a: &mut [f64], n: usize, mut v: Option<&mut [f64]>, frobenius: f64) {
    let tol = OFF_DIAGONAL_RTOL * (1.0 + frobenius);
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= tol {
            return;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if let Some(v) = v.as_deref_mut() {
                    for k in 0..n {
                        let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
}
