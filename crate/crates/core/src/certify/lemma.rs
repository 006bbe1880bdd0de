use std::f64::consts::{PI, TAU};

use serde::Serialize;

/// `2/3 + (7/18) cos 2x − (1/18) cos 4x − |cos x|`, nonnegative for every real `x`.
pub fn trig_majorant_gap(x: f64) -> f64 {
    2.0 / 3.0 + 7.0 / 18.0 * (2.0 * x).cos() - (4.0 * x).cos() / 18.0 - x.cos().abs()
}

/// The same gap through its factorization `(1 − t)(t + 2)(2t − 1)² / 9`, `t = |cos x|`.
pub fn trig_majorant_gap_factored(x: f64) -> f64 {
    let t = x.cos().abs();
    (1.0 - t) * (t + 2.0) * (2.0 * t - 1.0).powi(2) / 9.0
}

/// Summary of the gap on a uniform grid over `[−2π, 2π]`.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaGrid {
    pub points: usize,
    pub min_gap: f64,
    pub argmin: f64,
    /// Largest `|direct − factored|` over the grid.
    pub max_factorization_error: f64,
    /// Gap at the equality points `0, π/3, 2π/3, π`.
    pub root_gaps: [f64; 4],
}

pub const ROOTS: [f64; 4] = [0.0, PI / 3.0, 2.0 * PI / 3.0, PI];

/// Evaluates the gap at `points` equally spaced points of `[−2π, 2π]`, endpoints included.
pub fn lemma_grid(points: usize) -> LemmaGrid {
    let step = if points > 1 { 2.0 * TAU / (points - 1) as f64 } else { 0.0 };
    let mut min_gap = f64::INFINITY;
    let mut argmin = -TAU;
    let mut max_err = 0.0f64;
    for k in 0..points {
        let x = -TAU + step * k as f64;
        let g = trig_majorant_gap(x);
        if g < min_gap {
            min_gap = g;
            argmin = x;
        }
        max_err = max_err.max((g - trig_majorant_gap_factored(x)).abs());
    }
    LemmaGrid {
        points,
        min_gap,
        argmin,
        max_factorization_error: max_err,
        root_gaps: ROOTS.map(trig_majorant_gap),
    }
}
