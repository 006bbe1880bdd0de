//! Each lemma, identity, and inequality of the argument as an executable check.
//!
//! Every check returns a [`BoundReport`] whose `slack` is nonnegative exactly when
//! the claimed inequality holds: `bound − quantity` for upper bounds and
//! `quantity − bound` for lower bounds.

mod lemma;
mod trace;

use serde::Serialize;

pub use lemma::{lemma_grid, trig_majorant_gap, trig_majorant_gap_factored, LemmaGrid, ROOTS};
pub use trace::{proof_trace, Complex, ProofStep, ProofTrace};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::symspec::{eigenvalues, EntryClass, Spectrum, SymMatrix};
use crate::{SLACK_TOL, TIGHT_TOL};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub check: &'static str,
    pub n: usize,
    pub quantity: f64,
    pub bound: f64,
    pub slack: f64,
    pub tight: bool,
}

impl BoundReport {
    /// Claim `quantity ≤ bound`.
    pub fn upper(check: &'static str, n: usize, quantity: f64, bound: f64) -> Self {
        Self::new(check, n, quantity, bound, bound - quantity)
    }

    /// Claim `quantity ≥ bound`.
    pub fn lower(check: &'static str, n: usize, quantity: f64, bound: f64) -> Self {
        Self::new(check, n, quantity, bound, quantity - bound)
    }

    fn new(check: &'static str, n: usize, quantity: f64, bound: f64, slack: f64) -> Self {
        BoundReport { check, n, quantity, bound, slack, tight: slack.abs() <= TIGHT_TOL }
    }

    pub fn holds(&self) -> bool {
        self.slack >= -SLACK_TOL
    }
}

/// `μ_{n−1} + μ_n ≥ −2n/3`, and its consequence `μ_{n−1} ≥ −n/3`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightedReport {
    pub pair_sum: BoundReport,
    pub second_smallest: BoundReport,
}

pub fn verify_weighted_theorem(a: &SymMatrix) -> Result<WeightedReport> {
    let n = a.n();
    if n < 2 {
        return Err(Error::OrderTooSmall { op: "verify_weighted_theorem", min: 2, got: n });
    }
    a.require_class(EntryClass::Theorem)?;
    let s = eigenvalues(a);
    let nf = n as f64;
    Ok(WeightedReport {
        pair_sum: BoundReport::lower("weighted_pair_sum", n, s.eig(n - 1) + s.eig(n), -2.0 * nf / 3.0),
        second_smallest: BoundReport::lower("weighted_second_smallest", n, s.eig(n - 1), -nf / 3.0),
    })
}

/// `λ_{n−1}(H) ≥ −n/3` for any graph `H` on `n ≥ 2` vertices.
pub fn verify_corollary_lower(h: &Graph) -> Result<BoundReport> {
    require_order(h, 2, "verify_corollary_lower")?;
    Ok(corollary_from(&graph_spectrum(h)))
}

/// `λ₃(G) ≤ n/3 − 1`, alongside the weaker `λ₃(G) ≤ ⌊n/3⌋`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lambda3Report {
    pub sharp: BoundReport,
    pub floor: BoundReport,
}

pub fn verify_lambda3_bound(g: &Graph) -> Result<Lambda3Report> {
    require_order(g, 3, "verify_lambda3_bound")?;
    Ok(lambda3_from(&graph_spectrum(g)))
}

/// Hong's estimate `λ₂(G) ≤ (n − 2)/2`.
pub fn check_hong_lambda2(g: &Graph) -> Result<BoundReport> {
    require_order(g, 2, "check_hong_lambda2")?;
    Ok(hong_from(&graph_spectrum(g)))
}

/// The complement step: `λ₃(G) + λ_{n−1}(Ḡ) ≤ λ₂(J − I) = −1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylChain {
    pub report: BoundReport,
    pub lambda3: f64,
    /// `λ_{n−1}(Ḡ)`.
    pub complement_second_smallest: f64,
}

impl WeylChain {
    /// The deduction step by step: `λ₃(G) ≤ −1 − λ_{n−1}(Ḡ) ≤ n/3 − 1`, as the
    /// slacks of the two comparisons.
    pub fn step_slacks(&self) -> [f64; 2] {
        let n = self.report.n as f64;
        let middle = -1.0 - self.complement_second_smallest;
        [middle - self.lambda3, n / 3.0 - 1.0 - middle]
    }
}

pub fn weyl_chain(g: &Graph) -> Result<WeylChain> {
    require_order(g, 3, "weyl_chain")?;
    Ok(weyl_from(&graph_spectrum(g), &graph_spectrum(&g.complement())))
}

/// All four graph checks on one graph, sharing the two spectra. Orders below 3
/// skip the checks that need them.
pub fn graph_checks(g: &Graph) -> Result<Vec<BoundReport>> {
    require_order(g, 2, "graph_checks")?;
    let s = graph_spectrum(g);
    let mut out = Vec::with_capacity(5);
    if g.n() >= 3 {
        let l3 = lambda3_from(&s);
        out.push(l3.sharp);
        out.push(l3.floor);
    }
    out.push(corollary_from(&s));
    out.push(hong_from(&s));
    if g.n() >= 3 {
        out.push(weyl_from(&s, &graph_spectrum(&g.complement())).report);
    }
    Ok(out)
}

pub fn graph_spectrum(g: &Graph) -> Spectrum {
    eigenvalues(&g.adjacency_matrix())
}

fn require_order(g: &Graph, min: usize, op: &'static str) -> Result<()> {
    if g.n() < min {
        return Err(Error::OrderTooSmall { op, min, got: g.n() });
    }
    Ok(())
}

fn lambda3_from(s: &Spectrum) -> Lambda3Report {
    let n = s.n();
    Lambda3Report {
        sharp: BoundReport::upper("lambda3_upper", n, s.eig(3), n as f64 / 3.0 - 1.0),
        floor: BoundReport::upper("lambda3_floor", n, s.eig(3), (n / 3) as f64),
    }
}

fn corollary_from(s: &Spectrum) -> BoundReport {
    let n = s.n();
    BoundReport::lower("corollary_lower", n, s.eig(n - 1), -(n as f64) / 3.0)
}

fn hong_from(s: &Spectrum) -> BoundReport {
    let n = s.n();
    BoundReport::upper("hong_lambda2", n, s.eig(2), (n as f64 - 2.0) / 2.0)
}

fn weyl_from(s: &Spectrum, complement: &Spectrum) -> WeylChain {
    let n = s.n();
    let lambda3 = s.eig(3);
    let other = complement.eig(n - 1);
    WeylChain {
        report: BoundReport::upper("weyl_chain", n, lambda3 + other, -1.0),
        lambda3,
        complement_second_smallest: other,
    }
}
