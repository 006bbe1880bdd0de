use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::with_pool;
use crate::error::{Error, Result};
use crate::graphs::{pair_count, EdgeMask, Graph};
use crate::symspec::eigenvalues;
use crate::SLACK_TOL;

/// Masks between checkpoint writes and progress callbacks.
pub const CHECKPOINT_INTERVAL: u64 = 1 << 24;

const MIN_ORDER: usize = 3;
const DEFAULT_MAX_ORDER: usize = 7;
const OPT_IN_ORDER: usize = 8;

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub workers: usize,
    /// Required for `n = 8` (268,435,456 graphs).
    pub allow_n8: bool,
    /// Resume from and periodically write this file.
    pub checkpoint: Option<PathBuf>,
    pub interval: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { workers: super::default_workers(), allow_n8: false, checkpoint: None, interval: CHECKPOINT_INTERVAL }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub n: usize,
    pub graphs_checked: u64,
    pub max_lambda3: f64,
    pub argmax_mask: u64,
    /// `n/3 − 1`.
    pub bound: f64,
    /// Graphs with `λ₃ > bound + 1e-9`.
    pub violations: u64,
}

/// Sweep state persisted between intervals.
///
/// On disk: five little-endian 64-bit fields `n, next_mask, current_max (f64),
/// argmax_mask, violations`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Checkpoint {
    pub n: usize,
    pub next_mask: u64,
    pub current_max: f64,
    pub argmax_mask: u64,
    pub violations: u64,
}

const CHECKPOINT_BYTES: usize = 40;

impl Checkpoint {
    fn to_bytes(self) -> [u8; CHECKPOINT_BYTES] {
        let mut out = [0u8; CHECKPOINT_BYTES];
        out[0..8].copy_from_slice(&(self.n as u64).to_le_bytes());
        out[8..16].copy_from_slice(&self.next_mask.to_le_bytes());
        out[16..24].copy_from_slice(&self.current_max.to_le_bytes());
        out[24..32].copy_from_slice(&self.argmax_mask.to_le_bytes());
        out[32..40].copy_from_slice(&self.violations.to_le_bytes());
        out
    }

    fn from_bytes(b: &[u8]) -> Option<Self> {
        if b.len() != CHECKPOINT_BYTES {
            return None;
        }
        let word = |k: usize| u64::from_le_bytes(b[8 * k..8 * k + 8].try_into().unwrap());
        Some(Checkpoint {
            n: word(0) as usize,
            next_mask: word(1),
            current_max: f64::from_bits(word(2)),
            argmax_mask: word(3),
            violations: word(4),
        })
    }
}

pub fn read_checkpoint(path: &Path) -> Result<Checkpoint> {
    let bytes = fs::read(path)?;
    Checkpoint::from_bytes(&bytes).ok_or_else(|| Error::Checkpoint {
        path: path.to_owned(),
        msg: format!("expected {CHECKPOINT_BYTES} bytes, got {}", bytes.len()),
    })
}

fn write_checkpoint(path: &Path, cp: Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, cp.to_bytes())?;
    fs::rename(&tmp, path)?;
    Ok(())
}

#[derive(Clone, Copy)]
struct Best {
    value: f64,
    mask: u64,
    violations: u64,
}

impl Best {
    const EMPTY: Best = Best { value: f64::NEG_INFINITY, mask: 0, violations: 0 };

    /// Larger value wins; equal values keep the lower mask.
    fn merge(self, other: Best) -> Best {
        let keep_self = match self.value.total_cmp(&other.value) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => self.mask <= other.mask,
        };
        let violations = self.violations + other.violations;
        if keep_self {
            Best { violations, ..self }
        } else {
            Best { violations, ..other }
        }
    }
}

fn lambda3_of_mask(n: usize, mask: u64) -> f64 {
    let g = Graph::from_mask(n, mask).expect("mask within range");
    eigenvalues(&g.adjacency_matrix()).eig(3)
}

/// Computes `λ₃` of every labeled graph on `n` vertices and returns the maximum.
///
/// `progress(done, total)` runs after every checkpoint interval.
pub fn exhaustive_sweep(
    n: usize,
    opts: &SweepOptions,
    progress: Option<&(dyn Fn(u64, u64) + Sync)>,
) -> Result<SweepResult> {
    let max_order = if opts.allow_n8 { OPT_IN_ORDER } else { DEFAULT_MAX_ORDER };
    if !(MIN_ORDER..=max_order).contains(&n) {
        let hint = if n == OPT_IN_ORDER { " (n = 8 requires the explicit opt-in)" } else { "" };
        return Err(Error::InvalidArgument(format!("sweep order {n} outside {MIN_ORDER}..={max_order}{hint}")));
    }
    if opts.interval == 0 {
        return Err(Error::InvalidArgument("checkpoint interval must be positive".into()));
    }
    let total = EdgeMask::count(n)?;
    debug_assert_eq!(total, 1u64 << pair_count(n));
    let bound = n as f64 / 3.0 - 1.0;

    let mut best = Best::EMPTY;
    let mut next = 0u64;
    if let Some(path) = opts.checkpoint.as_deref().filter(|p| p.exists()) {
        let cp = read_checkpoint(path)?;
        if cp.n != n || cp.next_mask > total {
            return Err(Error::Checkpoint {
                path: path.to_owned(),
                msg: format!("checkpoint is for n = {} at mask {}, not n = {n}", cp.n, cp.next_mask),
            });
        }
        best = Best { value: cp.current_max, mask: cp.argmax_mask, violations: cp.violations };
        next = cp.next_mask;
    }

    let best = with_pool(opts.workers, || -> Result<Best> {
        while next < total {
            let end = total.min(next.saturating_add(opts.interval));
            let block = (next..end)
                .into_par_iter()
                .map(|mask| {
                    let value = lambda3_of_mask(n, mask);
                    Best { value, mask, violations: u64::from(value > bound + SLACK_TOL) }
                })
                .reduce(|| Best::EMPTY, Best::merge);
            best = best.merge(block);
            next = end;
            if let Some(path) = &opts.checkpoint {
                let cp = Checkpoint {
                    n,
                    next_mask: next,
                    current_max: best.value,
                    argmax_mask: best.mask,
                    violations: best.violations,
                };
                write_checkpoint(path, cp)?;
            }
            if let Some(report) = progress {
                report(next, total);
            }
        }
        Ok(best)
    })??;

    Ok(SweepResult {
        n,
        graphs_checked: total,
        max_lambda3: best.value,
        argmax_mask: best.mask,
        bound,
        violations: best.violations,
    })
}
