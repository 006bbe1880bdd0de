use rand::Rng;
use rayon::prelude::*;

use super::with_pool;
use crate::error::{Error, Result};
use crate::rng;
use crate::symspec::{eigen_spectrum, SymMatrix};

/// Eigenvalues within this distance of the target join its cluster.
pub const CLUSTER_GAP: f64 = 1e-8;

const STEP_SCALE: f64 = 0.1;

/// Best matrix found while minimizing `λ_{n−1}` over symmetric matrices with
/// every entry in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DescentRecord {
    pub n: usize,
    pub best_matrix: SymMatrix,
    pub best_lambda: f64,
    /// Steps taken, summed over restarts.
    pub iterations: u64,
    pub seed: u64,
    pub best_restart: u64,
}

/// A subgradient of `λ_k` at a symmetric matrix.
#[derive(Clone, Debug)]
pub struct Subgradient {
    pub value: f64,
    /// `∂λ/∂a_ii` on the diagonal and `∂λ/∂t` off it, where `t = a_ij = a_ji`
    /// moves both entries together. For a simple eigenvalue with unit eigenvector
    /// `v` these are `v_i²` and `2 v_i v_j`.
    pub entry_derivative: SymMatrix,
    /// Size of the eigenvalue cluster that was averaged.
    pub cluster: usize,
}

/// Subgradient of the `k`-th largest eigenvalue (1-based). When several eigenvalues
/// lie within [`CLUSTER_GAP`] of `λ_k`, the rank-one terms of their eigenvectors are
/// averaged.
pub fn lambda_subgradient(m: &SymMatrix, k: usize) -> Subgradient {
    let n = m.n();
    assert!(k >= 1 && k <= n, "eigenvalue index {k} out of 1..={n}");
    let e = eigen_spectrum(m);
    let value = e.spectrum.eig(k);
    let members: Vec<usize> = (1..=n).filter(|&i| (e.spectrum.eig(i) - value).abs() <= CLUSTER_GAP).collect();
    let vectors: Vec<Vec<f64>> = members.iter().map(|&i| e.eigvec(i)).collect();
    let w = 1.0 / vectors.len() as f64;
    let entry_derivative = SymMatrix::from_upper(n, |i, j| {
        let outer: f64 = vectors.iter().map(|v| v[i] * v[j]).sum();
        if i == j {
            w * outer
        } else {
            2.0 * w * outer
        }
    });
    Subgradient { value, entry_derivative, cluster: members.len() }
}

/// Projected subgradient descent on `λ_{n−1}(M)` over the box `[0, 1]^{n×n}` of
/// symmetric matrices, from `restarts` uniform random starts.
///
/// Step `k` moves by `0.1/√(k+1)` times the entry derivative and clips back into
/// the box. Restart `r` draws from seed `seed ^ r`.
pub fn polytope_descent(n: usize, restarts: u64, steps: u64, seed: u64, workers: usize) -> Result<DescentRecord> {
    if n < 2 {
        return Err(Error::OrderTooSmall { op: "polytope_descent", min: 2, got: n });
    }
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be positive".into()));
    }
    let best = with_pool(workers, || {
        (0..restarts)
            .into_par_iter()
            .map(|r| {
                let (m, value) = descend(n, steps, seed ^ r);
                (value, r, m)
            })
            .reduce_with(|a, b| match a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)) {
                std::cmp::Ordering::Greater => b,
                _ => a,
            })
            .expect("at least one restart")
    })?;
    Ok(DescentRecord {
        n,
        best_matrix: best.2,
        best_lambda: best.0,
        iterations: restarts * steps,
        seed,
        best_restart: best.1,
    })
}

fn descend(n: usize, steps: u64, seed: u64) -> (SymMatrix, f64) {
    let mut r = rng::seeded(seed);
    let mut m = SymMatrix::from_upper(n, |_, _| r.gen_range(0.0..=1.0));
    let mut g = lambda_subgradient(&m, n - 1);
    let mut best = (m.clone(), g.value);
    for k in 0..steps {
        let eta = STEP_SCALE / ((k + 1) as f64).sqrt();
        for i in 0..n {
            for j in i..n {
                let v = (m.get(i, j) - eta * g.entry_derivative.get(i, j)).clamp(0.0, 1.0);
                m.set_sym(i, j, v);
            }
        }
        debug_assert!(m.is_box_class());
        g = lambda_subgradient(&m, n - 1);
        if g.value < best.1 {
            best = (m.clone(), g.value);
        }
    }
    best
}
