use std::f64::consts::TAU;
use std::ops::RangeInclusive;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::with_pool;
use crate::certify::{proof_trace, ProofStep, ProofTrace};
use crate::error::{Error, Result};
use crate::rng::{self, Rng64};
use crate::symspec::{Projection, RankTwoFrame, SymMatrix};
use crate::SLACK_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum FuzzMode {
    /// Random theorem-class matrix with a uniformly random frame.
    Random,
    /// Frame rows clustered at three angles `2π/3` apart (plus Gaussian jitter),
    /// paired with the matrix minimizing `tr(AQ)` for that frame.
    ThreeCluster { jitter: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzResult {
    pub trials: u64,
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    #[serde(flatten)]
    pub mode: FuzzMode,
    /// Trials with any slack below `-1e-9` or a failed double-sum identity.
    pub violations: u64,
    pub min_step_slacks: [(ProofStep, f64); 6],
    pub min_final_slack: f64,
}

/// Runs [`proof_trace`] on `trials` random `(A, frame)` pairs and counts failures.
pub fn frame_fuzz(
    trials: u64,
    n_range: RangeInclusive<usize>,
    mode: FuzzMode,
    seed: u64,
    workers: usize,
) -> Result<FuzzResult> {
    if n_range.is_empty() || *n_range.start() < 2 {
        return Err(Error::InvalidArgument(format!("order range {n_range:?} must be nonempty with minimum at least 2")));
    }
    if let FuzzMode::ThreeCluster { jitter } = mode {
        if !(jitter.is_finite() && jitter >= 0.0) {
            return Err(Error::InvalidArgument(format!("jitter must be finite and nonnegative, got {jitter}")));
        }
    }
    let empty = Summary { violations: 0, steps: ProofStep::ALL.map(|s| (s, f64::INFINITY)), final_slack: f64::INFINITY };
    let summary = with_pool(workers, || {
        (0..trials)
            .into_par_iter()
            .map(|k| {
                let mut r = rng::stream(seed, k);
                let n = r.gen_range(n_range.clone());
                let (a, frame) = draw(n, mode, &mut r);
                Summary::of(&proof_trace(&a, &frame).expect("generated pairs are valid"))
            })
            .reduce(|| empty.clone(), Summary::merge)
    })?;
    Ok(FuzzResult {
        trials,
        seed,
        n_min: *n_range.start(),
        n_max: *n_range.end(),
        mode,
        violations: summary.violations,
        min_step_slacks: summary.steps,
        min_final_slack: summary.final_slack,
    })
}

#[derive(Clone)]
struct Summary {
    violations: u64,
    steps: [(ProofStep, f64); 6],
    final_slack: f64,
}

impl Summary {
    fn of(t: &ProofTrace) -> Self {
        let bad = t.min_slack() < -SLACK_TOL || !t.identities_hold(SLACK_TOL);
        Summary { violations: u64::from(bad), steps: t.step_slacks, final_slack: t.final_slack }
    }

    fn merge(mut self, other: Summary) -> Summary {
        self.violations += other.violations;
        for (mine, theirs) in self.steps.iter_mut().zip(other.steps) {
            mine.1 = mine.1.min(theirs.1);
        }
        self.final_slack = self.final_slack.min(other.final_slack);
        self
    }
}

fn draw(n: usize, mode: FuzzMode, r: &mut Rng64) -> (SymMatrix, RankTwoFrame) {
    match mode {
        FuzzMode::Random => {
            // Mix exact 0/1 entries (graph-like) with interior values.
            let a = SymMatrix::from_upper(n, |i, j| {
                if i == j {
                    if r.gen_bool(0.5) { 0.0 } else { r.gen_range(0.0..2.0) }
                } else {
                    match r.gen_range(0..4) {
                        0 => 0.0,
                        1 => 1.0,
                        _ => r.gen_range(0.0..=1.0),
                    }
                }
            });
            (a, RankTwoFrame::random(n, r).expect("n >= 2"))
        }
        FuzzMode::ThreeCluster { jitter } => {
            let frame = loop {
                let raw: Vec<[f64; 2]> = (0..n)
                    .map(|i| {
                        let phi = TAU * (i % 3) as f64 / 3.0;
                        let dx: f64 = r.sample(StandardNormal);
                        let dy: f64 = r.sample(StandardNormal);
                        [phi.cos() + jitter * dx, phi.sin() + jitter * dy]
                    })
                    .collect();
                if let Ok(f) = RankTwoFrame::from_columns(&raw) {
                    break f;
                }
            };
            (worst_matrix(&frame), frame)
        }
    }
}

/// The theorem-class matrix minimizing `tr(AQ)` for this frame: ones where
/// `q_ij < 0`, zeros elsewhere (diagonal included).
fn worst_matrix(frame: &RankTwoFrame) -> SymMatrix {
    let q = Projection::of(frame);
    SymMatrix::from_upper(frame.n(), |i, j| if i != j && q.get(i, j) < 0.0 { 1.0 } else { 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials() {
        let r = frame_fuzz(0, 2..=16, FuzzMode::Random, 0, 2).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.min_final_slack, f64::INFINITY);
    }

    #[test]
    fn random_mode_finds_no_violation() {
        let r = frame_fuzz(3000, 2..=16, FuzzMode::Random, 1, 4).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.min_step_slacks.iter().all(|&(_, v)| v >= -SLACK_TOL));
    }

    #[test]
    fn exact_three_cluster_is_tight_at_order_three() {
        let r = frame_fuzz(1, 3..=3, FuzzMode::ThreeCluster { jitter: 0.0 }, 0, 1).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.min_final_slack.abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn jittered_three_cluster_is_near_tight() {
        let r = frame_fuzz(2000, 3..=3, FuzzMode::ThreeCluster { jitter: 1e-3 }, 2, 2).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.min_final_slack >= -SLACK_TOL && r.min_final_slack <= 1e-6, "{r:?}");
    }

    #[test]
    fn deterministic_across_workers() {
        let a = frame_fuzz(500, 2..=10, FuzzMode::Random, 3, 1).unwrap();
        let b = frame_fuzz(500, 2..=10, FuzzMode::Random, 3, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(frame_fuzz(1, 1..=3, FuzzMode::Random, 0, 1).is_err());
        assert!(frame_fuzz(1, 3..=3, FuzzMode::ThreeCluster { jitter: -1.0 }, 0, 1).is_err());
    }
}
