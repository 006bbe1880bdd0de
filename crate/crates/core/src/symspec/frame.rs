use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use super::{eigen_spectrum, SymMatrix};
use crate::error::{Error, Result};

const RANK_THRESHOLD: f64 = 1e-10;

/// An `n × 2` matrix `R` with orthonormal columns, plus the polar form of its rows:
/// `r_i = c_i (cos θ_i, sin θ_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankTwoFrame {
    rows: Vec<[f64; 2]>,
    c: Vec<f64>,
    theta: Vec<f64>,
}

impl RankTwoFrame {
    /// Orthonormalizes the two columns of `raw` (Gram-Schmidt with one
    /// re-orthogonalization pass) and computes the row polar data.
    ///
    /// Rows with `c_i = 0` get `θ_i = 0`. Angles lie in `(-π, π]`.
    pub fn from_columns(raw: &[[f64; 2]]) -> Result<Self> {
        let n = raw.len();
        if n < 2 {
            return Err(Error::OrderTooSmall { op: "frame_from_columns", min: 2, got: n });
        }
        if let Some(k) = raw.iter().position(|r| !r[0].is_finite() || !r[1].is_finite()) {
            let col = if raw[k][0].is_finite() { 1 } else { 0 };
            return Err(Error::NonFinite { row: k, col, value: raw[k][col] });
        }
        let mut u: Vec<f64> = raw.iter().map(|r| r[0]).collect();
        let mut w: Vec<f64> = raw.iter().map(|r| r[1]).collect();

        let norm_u = norm(&u);
        if norm_u < RANK_THRESHOLD {
            return Err(Error::FrameRankDeficient);
        }
        u.iter_mut().for_each(|x| *x /= norm_u);
        for _ in 0..2 {
            let d = dot(&u, &w);
            w.iter_mut().zip(&u).for_each(|(x, y)| *x -= d * y);
        }
        let norm_w = norm(&w);
        if norm_w < RANK_THRESHOLD {
            return Err(Error::FrameRankDeficient);
        }
        w.iter_mut().for_each(|x| *x /= norm_w);

        let rows: Vec<[f64; 2]> = u.into_iter().zip(w).map(|(a, b)| [a, b]).collect();
        let c = rows.iter().map(|r| r[0].hypot(r[1])).collect::<Vec<_>>();
        let theta = rows
            .iter()
            .zip(&c)
            .map(|(r, &ci)| if ci > 0.0 { normalize_angle(r[1].atan2(r[0])) } else { 0.0 })
            .collect();
        Ok(RankTwoFrame { rows, c, theta })
    }

    /// Uniformly distributed frame: orthonormalized standard-Gaussian columns.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderTooSmall { op: "random frame", min: 2, got: n });
        }
        loop {
            let raw: Vec<[f64; 2]> =
                (0..n).map(|_| [rng.sample(StandardNormal), rng.sample(StandardNormal)]).collect();
            match Self::from_columns(&raw) {
                Err(Error::FrameRankDeficient) => continue,
                other => return other,
            }
        }
    }

    /// Frame spanned by the eigenvectors of the two smallest eigenvalues of `a`.
    /// Its projection minimizes `tr(AQ)` over rank-2 projections.
    pub fn bottom_pair(a: &SymMatrix) -> Result<Self> {
        let n = a.n();
        if n < 2 {
            return Err(Error::OrderTooSmall { op: "bottom_pair", min: 2, got: n });
        }
        let e = eigen_spectrum(a);
        let (x, y) = (e.eigvec(n - 1), e.eigvec(n));
        let raw: Vec<[f64; 2]> = x.into_iter().zip(y).map(|(a, b)| [a, b]).collect();
        Self::from_columns(&raw)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[[f64; 2]] {
        &self.rows
    }

    /// Row norms `c_i`.
    pub fn c(&self) -> &[f64] {
        &self.c
    }

    /// Row angles `θ_i`.
    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// `‖RᵀR − I₂‖_max`.
    pub fn orthonormality_error(&self) -> f64 {
        let g00: f64 = self.rows.iter().map(|r| r[0] * r[0]).sum();
        let g11: f64 = self.rows.iter().map(|r| r[1] * r[1]).sum();
        let g01: f64 = self.rows.iter().map(|r| r[0] * r[1]).sum();
        (g00 - 1.0).abs().max((g11 - 1.0).abs()).max(g01.abs())
    }

    /// The frame identities as `(Σ c_i², Σ c_i² e^{2iθ_i})`, the latter as `(re, im)`.
    pub fn frame_sums(&self) -> (f64, (f64, f64)) {
        let mut sq = 0.0;
        let (mut re, mut im) = (0.0, 0.0);
        for (&ci, &th) in self.c.iter().zip(&self.theta) {
            let w = ci * ci;
            sq += w;
            re += w * (2.0 * th).cos();
            im += w * (2.0 * th).sin();
        }
        (sq, (re, im))
    }
}

/// Maps `atan2` output into `(-π, π]`.
fn normalize_angle(t: f64) -> f64 {
    if t <= -PI {
        t + 2.0 * PI
    } else {
        t
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// A rank-2 orthogonal projection `Q = RRᵀ`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    n: usize,
    q: Vec<f64>,
}

impl Projection {
    pub fn of(frame: &RankTwoFrame) -> Self {
        let n = frame.n();
        let r = frame.rows();
        let mut q = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = r[i][0] * r[j][0] + r[i][1] * r[j][1];
                q[i * n + j] = v;
                q[j * n + i] = v;
            }
        }
        Projection { n, q }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.q[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `1ᵀQ1`.
    pub fn total_sum(&self) -> f64 {
        self.q.iter().sum()
    }

    /// `‖Q² − Q‖_max`.
    pub fn idempotency_error(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let qq: f64 = (0..n).map(|k| self.get(i, k) * self.get(k, j)).sum();
                worst = worst.max((qq - self.get(i, j)).abs());
            }
        }
        worst
    }
}

/// `tr(AQ) = Σ_i a_ii q_ii + 2 Σ_{i<j} a_ij q_ij`.
pub fn trace_product(a: &SymMatrix, q: &Projection) -> Result<f64> {
    if a.n() != q.n() {
        return Err(Error::OrderMismatch { left: a.n(), right: q.n() });
    }
    let n = a.n();
    let mut diag = 0.0;
    let mut off = 0.0;
    for i in 0..n {
        diag += a.get(i, i) * q.get(i, i);
        for j in i + 1..n {
            off += a.get(i, j) * q.get(i, j);
        }
    }
    Ok(diag + 2.0 * off)
}

/// `μ_{n−1} + μ_n`, the sum of the two smallest eigenvalues.
///
/// By Ky Fan's minimum principle this equals the minimum of [`trace_product`]
/// over all rank-2 orthogonal projections.
pub fn kyfan_pair_min(a: &SymMatrix) -> Result<f64> {
    let n = a.n();
    if n < 2 {
        return Err(Error::OrderTooSmall { op: "kyfan_pair_min", min: 2, got: n });
    }
    let s = super::eigenvalues(a);
    Ok(s.eig(n - 1) + s.eig(n))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_2;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn assert_vec(got: &[f64], want: &[f64], tol: f64) {
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn identity_frame() {
        let f = RankTwoFrame::from_columns(&[[1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_vec(f.c(), &[1.0, 1.0], 0.0);
        assert_vec(f.theta(), &[0.0, FRAC_PI_2], 1e-15);
        let q = Projection::of(&f);
        assert_eq!(q.q, vec![1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn degenerate_row_gets_zero_angle() {
        let f = RankTwoFrame::from_columns(&[[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert_vec(f.c(), &[1.0, 1.0, 0.0], 0.0);
        assert_vec(f.theta(), &[0.0, FRAC_PI_2, 0.0], 1e-15);
        let q = Projection::of(&f);
        let want = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0];
        assert_vec(&q.q, &want, 0.0);
    }

    #[test]
    fn angle_range_is_half_open() {
        let f = RankTwoFrame::from_columns(&[[-1.0, -0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(f.theta()[0], PI);
    }

    #[test]
    fn rank_deficiency() {
        assert!(matches!(
            RankTwoFrame::from_columns(&[[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]]),
            Err(Error::FrameRankDeficient)
        ));
        assert!(matches!(RankTwoFrame::from_columns(&[[0.0, 1.0], [0.0, 1.0]]), Err(Error::FrameRankDeficient)));
        assert!(RankTwoFrame::from_columns(&[[1.0, 0.0]]).is_err());
    }

    #[test]
    fn trace_product_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..8 {
            let q = Projection::of(&RankTwoFrame::random(n, &mut rng).unwrap());
            assert!((trace_product(&SymMatrix::identity(n), &q).unwrap() - 2.0).abs() < 1e-12);
            assert_eq!(trace_product(&SymMatrix::zeros(n), &q).unwrap(), 0.0);
        }
        let q = Projection::of(&RankTwoFrame::random(3, &mut rng).unwrap());
        assert!(matches!(trace_product(&SymMatrix::zeros(4), &q), Err(Error::OrderMismatch { left: 4, right: 3 })));
    }

    #[test]
    fn k3_bottom_pair_gives_minus_two() {
        let a = SymMatrix::ones_minus_identity(3);
        let q = Projection::of(&RankTwoFrame::bottom_pair(&a).unwrap());
        assert!((trace_product(&a, &q).unwrap() + 2.0).abs() < 1e-12);
        assert!((kyfan_pair_min(&a).unwrap() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn kyfan_examples() {
        assert!((kyfan_pair_min(&SymMatrix::identity(5)).unwrap() - 2.0).abs() < 1e-12);
        // K_{2,2,2}: spectrum (4, 0, 0, 0, -2, -2).
        let k222 = SymMatrix::from_upper(6, |i, j| if i / 2 != j / 2 { 1.0 } else { 0.0 });
        assert!((kyfan_pair_min(&k222).unwrap() + 4.0).abs() < 1e-12);
        assert!(kyfan_pair_min(&SymMatrix::zeros(1)).is_err());
    }

    fn check_frame(f: &RankTwoFrame) {
        assert!(f.orthonormality_error() <= 1e-10);
        for (r, (&c, &t)) in f.rows().iter().zip(f.c().iter().zip(f.theta())) {
            assert!(c >= 0.0 && t > -PI && t <= PI);
            if c > 0.0 {
                assert!((r[0] - c * t.cos()).abs() <= 1e-12);
                assert!((r[1] - c * t.sin()).abs() <= 1e-12);
            }
        }
        let (sq, (re, im)) = f.frame_sums();
        assert!((sq - 2.0).abs() <= 1e-9);
        assert!(re.hypot(im) <= 1e-9);

        let q = Projection::of(f);
        assert!(q.idempotency_error() <= 1e-9);
        assert!((q.trace() - 2.0).abs() <= 1e-9);
        assert!(q.total_sum() >= -1e-12);
        for i in 0..f.n() {
            assert!(q.get(i, i) >= -1e-12);
            for j in 0..f.n() {
                let polar = f.c()[i] * f.c()[j] * (f.theta()[i] - f.theta()[j]).cos();
                assert!((q.get(i, j) - polar).abs() <= 1e-10);
                assert_eq!(q.get(i, j), q.get(j, i));
            }
        }
    }

    #[test]
    fn random_frames_satisfy_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for n in 2..=12 {
            for _ in 0..1000 {
                check_frame(&RankTwoFrame::random(n, &mut rng).unwrap());
            }
        }
    }

    #[test]
    fn kyfan_sampling_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(2..=10);
            let a = SymMatrix::from_upper(n, |_, _| rng.gen_range(-2.0..2.0));
            let floor = kyfan_pair_min(&a).unwrap();
            for _ in 0..1000 {
                let q = Projection::of(&RankTwoFrame::random(n, &mut rng).unwrap());
                assert!(trace_product(&a, &q).unwrap() >= floor - 1e-9);
            }
            let best = Projection::of(&RankTwoFrame::bottom_pair(&a).unwrap());
            assert!((trace_product(&a, &best).unwrap() - floor).abs() <= 1e-9);
        }
    }
}
