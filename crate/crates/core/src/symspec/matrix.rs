use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Dense real symmetric matrix stored row-major.
///
/// Construction symmetrizes the input as `(a + aᵀ) / 2`, so `get(i, j) == get(j, i)`
/// holds exactly afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

/// A matrix read from text, with the largest `|a_ij - a_ji|` seen before symmetrization.
#[derive(Clone, Debug)]
pub struct LoadedMatrix {
    pub matrix: SymMatrix,
    pub max_asymmetry: f64,
}

/// Entry classes the bounds are stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryClass {
    /// Every entry in `[0, 1]`.
    Box,
    /// Off-diagonal entries in `[0, 1]`, diagonal entries `>= 0`.
    Theorem,
}

impl EntryClass {
    pub fn name(self) -> &'static str {
        match self {
            EntryClass::Box => "box [0,1]",
            EntryClass::Theorem => "theorem (offdiag in [0,1], diag >= 0)",
        }
    }

    fn admits(self, i: usize, j: usize, v: f64) -> bool {
        match self {
            EntryClass::Box => (0.0..=1.0).contains(&v),
            EntryClass::Theorem if i == j => v >= 0.0,
            EntryClass::Theorem => (0.0..=1.0).contains(&v),
        }
    }
}

/// An entry outside a required class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

impl SymMatrix {
    /// Builds a matrix from `n * n` row-major values, symmetrizing them.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        Ok(Self::with_asymmetry(n, data)?.0)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Shape { expected: n, got: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(n, data)
    }

    fn with_asymmetry(n: usize, mut data: Vec<f64>) -> Result<(Self, f64)> {
        if n == 0 {
            return Err(Error::OrderTooSmall { op: "SymMatrix", min: 1, got: 0 });
        }
        if data.len() != n * n {
            return Err(Error::Shape { expected: n * n, got: data.len() });
        }
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: k / n, col: k % n, value: data[k] });
        }
        let mut asym = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (data[i * n + j], data[j * n + i]);
                asym = asym.max((a - b).abs());
                let m = 0.5 * (a + b);
                data[i * n + j] = m;
                data[j * n + i] = m;
            }
        }
        Ok((SymMatrix { n, data }, asym))
    }

    /// Builds a matrix from the upper triangle `f(i, j)` with `i <= j`.
    ///
    /// Panics if `n == 0` or `f` returns a non-finite value.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(n > 0, "order must be positive");
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                assert!(v.is_finite(), "non-finite entry at ({i}, {j})");
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        SymMatrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_upper(n, |_, _| 0.0)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_upper(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// `J - I`, the adjacency matrix of the complete graph.
    pub fn ones_minus_identity(n: usize) -> Self {
        Self::from_upper(n, |i, j| if i == j { 0.0 } else { 1.0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Sets `a_ij` and `a_ji` together. Panics on a non-finite value.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        assert!(v.is_finite(), "non-finite entry at ({i}, {j})");
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.n != other.n {
            return Err(Error::OrderMismatch { left: self.n, right: other.n });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(SymMatrix { n: self.n, data })
    }

    /// Upper-triangle entries violating `class`, in row-major order.
    pub fn violations(&self, class: EntryClass) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                let value = self.get(i, j);
                if !class.admits(i, j, value) {
                    out.push(Violation { row: i, col: j, value });
                }
            }
        }
        out
    }

    /// Membership in the box class `S_n` (zero tolerance).
    pub fn is_box_class(&self) -> bool {
        self.violations(EntryClass::Box).is_empty()
    }

    pub fn is_theorem_class(&self) -> bool {
        self.violations(EntryClass::Theorem).is_empty()
    }

    /// Fails with the first offending entry if the matrix is outside `class`.
    pub fn require_class(&self, class: EntryClass) -> Result<()> {
        match self.violations(class).first() {
            None => Ok(()),
            Some(v) => Err(Error::ClassViolation {
                row: v.row,
                col: v.col,
                value: v.value,
                class: class.name(),
            }),
        }
    }

    /// Parses the plain-text interchange format: a line holding `n`, then `n` rows of
    /// `n` whitespace-separated decimals. Blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str) -> Result<LoadedMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line_no, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing order line".into() })?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Parse { line: line_no, msg: format!("bad order {header:?}") })?;
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            let (line_no, row) = lines
                .next()
                .ok_or(Error::Parse { line: line_no + r + 1, msg: format!("expected {n} rows, got {r}") })?;
            let start = data.len();
            for tok in row.split_whitespace() {
                let v: f64 =
                    tok.parse().map_err(|_| Error::Parse { line: line_no, msg: format!("bad number {tok:?}") })?;
                data.push(v);
            }
            if data.len() - start != n {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {n} values, got {}", data.len() - start),
                });
            }
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse { line: line_no, msg: "trailing data after matrix".into() });
        }
        let (matrix, max_asymmetry) = Self::with_asymmetry(n, data)?;
        Ok(LoadedMatrix { matrix, max_asymmetry })
    }

    /// Inverse of [`SymMatrix::parse_text`]; values use Rust's shortest round-trip formatting.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:?}")).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}
