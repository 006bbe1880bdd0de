use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symspec::{trace_product, EntryClass, Projection, RankTwoFrame, SymMatrix};

/// The six inequality steps of the rank-2 projection argument, in proof order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofStep {
    /// `Σ|q_ij| ≤ (2/3)C² + (7/18)|S|² − (1/18)|T|²`.
    TrigMajorant,
    /// `(C² + |S|²)/2 = ‖M*1‖² ≤ n`.
    IsometryBound,
    /// `Σ|q_ij| ≤ 4n/3`.
    L1Total,
    /// `Σ_{i<j}|q_ij| ≤ 2n/3 − 1`.
    OffDiagonalAbs,
    /// `Σ_{i<j} q_ij ≥ −1`.
    OffDiagonalSum,
    /// `Σ_{i<j} min(q_ij, 0) ≥ −n/3`.
    NegativePart,
}

impl ProofStep {
    pub const ALL: [ProofStep; 6] = [
        ProofStep::TrigMajorant,
        ProofStep::IsometryBound,
        ProofStep::L1Total,
        ProofStep::OffDiagonalAbs,
        ProofStep::OffDiagonalSum,
        ProofStep::NegativePart,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProofStep::TrigMajorant => "trig_majorant",
            ProofStep::IsometryBound => "isometry_bound",
            ProofStep::L1Total => "l1_total",
            ProofStep::OffDiagonalAbs => "offdiag_abs",
            ProofStep::OffDiagonalSum => "offdiag_sum",
            ProofStep::NegativePart => "neg_part",
        }
    }
}

/// Complex number as an explicit `(re, im)` pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

/// Every quantity of the rank-2 projection argument evaluated for one `(A, R)` pair.
///
/// Slacks are signed so that a nonnegative value means the inequality holds.
#[derive(Clone, Debug, Serialize)]
pub struct ProofTrace {
    pub n: usize,
    /// `C = Σ c_i`.
    pub c_sum: f64,
    /// `S = Σ c_i e^{2iθ_i}`.
    pub s: Complex,
    /// `T = Σ c_i e^{4iθ_i}`.
    pub t: Complex,
    /// `Σ_{i,j} |q_ij|`.
    pub l1: f64,
    pub offdiag_abs: f64,
    pub offdiag_sum: f64,
    pub neg_part: f64,
    /// `tr(AQ)`.
    pub trace_aq: f64,
    /// `‖M*1‖²` computed from the rows of `M`.
    pub isometry_norm_sq: f64,
    /// `‖M*M − I₂‖_max`; zero up to rounding because of the frame identities.
    pub isometry_error: f64,
    /// Largest `|Im|` of the double sums `Σ c_i c_j e^{2ik(θ_i−θ_j)}`, `k = 1, 2`.
    pub double_sum_imag: f64,
    /// Largest gap between those double sums' real parts and `|S|²`, `|T|²`.
    pub double_sum_gap: f64,
    pub step_slacks: [(ProofStep, f64); 6],
    /// `tr(AQ) + 2n/3`.
    pub final_slack: f64,
}

impl ProofTrace {
    pub fn slack(&self, step: ProofStep) -> f64 {
        self.step_slacks.iter().find(|(s, _)| *s == step).map(|&(_, v)| v).expect("every step is recorded")
    }

    /// Smallest of the six step slacks and the final slack.
    pub fn min_slack(&self) -> f64 {
        self.step_slacks.iter().map(|&(_, v)| v).fold(self.final_slack, f64::min)
    }

    /// The displayed chain `Σ|q_ij| ≤ B₁ ≤ B₂ ≤ (2/3)(C² + |S|²) ≤ 4n/3`, where `B₁`
    /// keeps the `|T|²` term and `B₂` drops it.
    pub fn l1_chain(&self) -> [f64; 5] {
        let (c2, s2, t2) = (self.c_sum * self.c_sum, self.s.norm_sqr(), self.t.norm_sqr());
        [
            self.l1,
            2.0 / 3.0 * c2 + 7.0 / 18.0 * s2 - t2 / 18.0,
            2.0 / 3.0 * c2 + 7.0 / 18.0 * s2,
            2.0 / 3.0 * (c2 + s2),
            4.0 * self.n as f64 / 3.0,
        ]
    }

    /// The double-sum identities hold to within `tol`.
    pub fn identities_hold(&self, tol: f64) -> bool {
        self.double_sum_imag <= tol && self.double_sum_gap <= tol && self.isometry_error <= tol
    }
}

/// Evaluates the full inequality chain for `A` and the projection `Q = RRᵀ`.
///
/// `A` must have off-diagonal entries in `[0, 1]` and a nonnegative diagonal.
pub fn proof_trace(a: &SymMatrix, frame: &RankTwoFrame) -> Result<ProofTrace> {
    if a.n() != frame.n() {
        return Err(Error::OrderMismatch { left: a.n(), right: frame.n() });
    }
    a.require_class(EntryClass::Theorem)?;
    let n = frame.n();
    let nf = n as f64;
    let q = Projection::of(frame);
    let (c, theta) = (frame.c(), frame.theta());

    let mut c_sum = 0.0;
    let mut s = Complex::default();
    let mut t = Complex::default();
    for (&ci, &th) in c.iter().zip(theta) {
        c_sum += ci;
        s.re += ci * (2.0 * th).cos();
        s.im += ci * (2.0 * th).sin();
        t.re += ci * (4.0 * th).cos();
        t.im += ci * (4.0 * th).sin();
    }

    // The double sums are real; check rather than assume it.
    let mut double_sum_imag = 0.0f64;
    let mut double_sum_gap = 0.0f64;
    for (k, target) in [(2.0, s.norm_sqr()), (4.0, t.norm_sqr())] {
        let mut re = 0.0;
        let mut im = 0.0;
        for i in 0..n {
            for j in 0..n {
                let w = c[i] * c[j];
                let d = k * (theta[i] - theta[j]);
                re += w * d.cos();
                im += w * d.sin();
            }
        }
        double_sum_imag = double_sum_imag.max(im.abs());
        double_sum_gap = double_sum_gap.max((re - target).abs());
    }

    // Rows of M are (c_j/√2)(1, e^{2iθ_j}).
    let mut gram = [[Complex::default(); 2]; 2];
    let mut m_star_one = [Complex::default(); 2];
    for (&cj, &th) in c.iter().zip(theta) {
        let row = [
            Complex { re: cj * FRAC_1_SQRT_2, im: 0.0 },
            Complex { re: cj * FRAC_1_SQRT_2 * (2.0 * th).cos(), im: cj * FRAC_1_SQRT_2 * (2.0 * th).sin() },
        ];
        for a in 0..2 {
            // (M*)_{a,j} = conj(M_{j,a})
            m_star_one[a].re += row[a].re;
            m_star_one[a].im -= row[a].im;
            for b in 0..2 {
                gram[a][b].re += row[a].re * row[b].re + row[a].im * row[b].im;
                gram[a][b].im += row[a].re * row[b].im - row[a].im * row[b].re;
            }
        }
    }
    let mut isometry_error = 0.0f64;
    for (a, gram_row) in gram.iter().enumerate() {
        for (b, g) in gram_row.iter().enumerate() {
            let want = if a == b { 1.0 } else { 0.0 };
            isometry_error = isometry_error.max((g.re - want).abs()).max(g.im.abs());
        }
    }
    let isometry_norm_sq = m_star_one[0].norm_sqr() + m_star_one[1].norm_sqr();

    let mut l1 = 0.0;
    let mut offdiag_abs = 0.0;
    let mut offdiag_sum = 0.0;
    let mut neg_part = 0.0;
    for i in 0..n {
        l1 += q.get(i, i).abs();
        for j in i + 1..n {
            let v = q.get(i, j);
            l1 += 2.0 * v.abs();
            offdiag_abs += v.abs();
            offdiag_sum += v;
            neg_part += v.min(0.0);
        }
    }
    let trace_aq = trace_product(a, &q)?;

    let (c2, s2, t2) = (c_sum * c_sum, s.norm_sqr(), t.norm_sqr());
    let step_slacks = [
        (ProofStep::TrigMajorant, 2.0 / 3.0 * c2 + 7.0 / 18.0 * s2 - t2 / 18.0 - l1),
        (ProofStep::IsometryBound, nf - 0.5 * (c2 + s2)),
        (ProofStep::L1Total, 4.0 * nf / 3.0 - l1),
        (ProofStep::OffDiagonalAbs, 2.0 * nf / 3.0 - 1.0 - offdiag_abs),
        (ProofStep::OffDiagonalSum, offdiag_sum + 1.0),
        (ProofStep::NegativePart, neg_part + nf / 3.0),
    ];

    Ok(ProofTrace {
        n,
        c_sum,
        s,
        t,
        l1,
        offdiag_abs,
        offdiag_sum,
        neg_part,
        trace_aq,
        isometry_norm_sq,
        isometry_error,
        double_sum_imag,
        double_sum_gap,
        step_slacks,
        final_slack: trace_aq + 2.0 * nf / 3.0,
    })
}

#[cfg(test)]
mod tests {
    use rand::Rng;

    use super::*;
    use crate::rng;
    use crate::SLACK_TOL;

    #[test]
    fn identity_frame_at_order_two() {
        let f = RankTwoFrame::from_columns(&[[1.0, 0.0], [0.0, 1.0]]).unwrap();
        let tr = proof_trace(&SymMatrix::zeros(2), &f).unwrap();
        assert!((tr.c_sum - 2.0).abs() < 1e-15);
        assert!(tr.s.norm_sqr() < 1e-30);
        assert!((tr.t.norm_sqr().sqrt() - 2.0).abs() < 1e-15);
        assert!((tr.l1 - 2.0).abs() < 1e-15);
        assert!(tr.slack(ProofStep::IsometryBound).abs() < 1e-15);
        assert!((tr.isometry_norm_sq - 2.0).abs() < 1e-15);
        assert_eq!(tr.trace_aq, 0.0);
    }

    #[test]
    fn k3_bottom_frame_is_tight() {
        let a = SymMatrix::ones_minus_identity(3);
        let f = RankTwoFrame::bottom_pair(&a).unwrap();
        let tr = proof_trace(&a, &f).unwrap();
        assert!((tr.trace_aq + 2.0).abs() < 1e-12);
        assert!(tr.final_slack.abs() < 1e-12);
        assert!(tr.slack(ProofStep::NegativePart).abs() < 1e-12);
        assert!(tr.min_slack() >= -SLACK_TOL);
    }

    #[test]
    fn rejects_class_violation_and_mismatch() {
        let mut rng = rng::seeded(0);
        let f = RankTwoFrame::random(3, &mut rng).unwrap();
        let mut a = SymMatrix::zeros(3);
        a.set_sym(1, 2, 1.5);
        assert!(matches!(proof_trace(&a, &f), Err(Error::ClassViolation { row: 1, col: 2, .. })));
        assert!(matches!(proof_trace(&SymMatrix::zeros(4), &f), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn random_pairs_hold_every_step() {
        let mut rng = rng::seeded(42);
        for _ in 0..5000 {
            let n = rng.gen_range(2..=16);
            let a = SymMatrix::from_upper(n, |i, j| if i == j { rng.gen_range(0.0..3.0) } else { rng.gen_range(0.0..=1.0) });
            let f = RankTwoFrame::random(n, &mut rng).unwrap();
            let tr = proof_trace(&a, &f).unwrap();
            assert!(tr.min_slack() >= -SLACK_TOL, "{tr:?}");
            assert!(tr.identities_hold(1e-9), "{tr:?}");
            assert!((tr.isometry_norm_sq - 0.5 * (tr.c_sum.powi(2) + tr.s.norm_sqr())).abs() < 1e-9);
            let chain = tr.l1_chain();
            for w in chain.windows(2) {
                assert!(w[1] - w[0] >= -SLACK_TOL, "{chain:?}");
            }
        }
    }
}
