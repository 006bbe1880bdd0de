use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::with_pool;
use crate::certify::{graph_checks, BoundReport};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::rng;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StressResult {
    pub samples: u64,
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub violations: u64,
    /// Smallest slack seen per check.
    pub min_slack: BTreeMap<&'static str, f64>,
}

/// Sample `index` of a stress run: an Erdős–Rényi graph with order uniform in
/// `n_range` and edge probability uniform in `{0.1, …, 0.9}`, with all graph checks.
pub fn stress_sample(n_range: RangeInclusive<usize>, seed: u64, index: u64) -> Result<(Graph, Vec<BoundReport>)> {
    check_range(&n_range)?;
    let mut r = rng::stream(seed, index);
    let n = r.gen_range(n_range);
    let p = r.gen_range(1..=9) as f64 / 10.0;
    let g = Graph::erdos_renyi(n, p, &mut r);
    let reports = graph_checks(&g)?;
    Ok((g, reports))
}

pub fn random_graph_stress(
    n_range: RangeInclusive<usize>,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<StressResult> {
    check_range(&n_range)?;
    let (n_min, n_max) = (*n_range.start(), *n_range.end());
    let folded = with_pool(workers, || {
        (0..samples)
            .into_par_iter()
            .map(|k| {
                let (_, reports) = stress_sample(n_range.clone(), seed, k).expect("range validated");
                let violations = reports.iter().filter(|r| !r.holds()).count() as u64;
                let mins: BTreeMap<_, _> = reports.iter().map(|r| (r.check, r.slack)).collect();
                (violations, mins)
            })
            .reduce(|| (0, BTreeMap::new()), merge)
    })?;
    Ok(StressResult { samples, seed, n_min, n_max, violations: folded.0, min_slack: folded.1 })
}

type Partial = (u64, BTreeMap<&'static str, f64>);

fn merge(mut a: Partial, b: Partial) -> Partial {
    a.0 += b.0;
    for (k, v) in b.1 {
        a.1.entry(k).and_modify(|m: &mut f64| *m = m.min(v)).or_insert(v);
    }
    a
}

fn check_range(r: &RangeInclusive<usize>) -> Result<()> {
    if r.is_empty() || *r.start() < 2 {
        return Err(Error::InvalidArgument(format!("order range {r:?} must be nonempty with minimum at least 2")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_samples() {
        let r = random_graph_stress(3..=10, 0, 1, 2).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.min_slack.is_empty());
    }

    #[test]
    fn samples_are_reproducible() {
        let a = stress_sample(3..=32, 5, 17).unwrap();
        let b = stress_sample(3..=32, 5, 17).unwrap();
        assert_eq!(a, b);
        assert_ne!(stress_sample(3..=32, 5, 18).unwrap().0, a.0);
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let a = random_graph_stress(3..=16, 300, 9, 1).unwrap();
        let b = random_graph_stress(3..=16, 300, 9, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.violations, 0);
        assert_eq!(a.min_slack.len(), 5);
    }

    #[test]
    fn rejects_bad_range() {
        assert!(random_graph_stress(1..=4, 1, 0, 1).is_err());
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 5..=4;
        assert!(random_graph_stress(empty, 1, 0, 1).is_err());
    }
}
