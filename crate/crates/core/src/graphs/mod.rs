//! Simple undirected labeled graphs, the named constructions used as equality
//! witnesses, and the graph6 / edge-list interchange formats.

mod edgelist;
mod graph6;

use rand::Rng;

use crate::error::{Error, Result};
use crate::symspec::SymMatrix;

pub use edgelist::{edge_list_read, edge_list_write};
pub use graph6::{graph6_read, graph6_read_lines, graph6_write};

/// Number of vertex pairs, `C(n, 2)`.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `i < j` in lexicographic pair order
/// `(0,1), (0,2), …, (0,n−1), (1,2), …`.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Simple undirected graph on vertices `0..n`, stored as a bitmask over the
/// `C(n, 2)` vertex pairs in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    bits: Vec<u64>,
}

/// A labeled graph on at most 11 vertices packed into one integer, bit `k`
/// being the `k`-th pair in lexicographic order. Masks are stable across versions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeMask {
    pub n: usize,
    pub mask: u64,
}

impl EdgeMask {
    /// Largest order whose pairs fit in a `u64`.
    pub const MAX_ORDER: usize = 11;

    /// Number of labeled graphs on `n` vertices, `2^C(n,2)`.
    pub fn count(n: usize) -> Result<u64> {
        if n > Self::MAX_ORDER {
            return Err(Error::InvalidArgument(format!("order {n} exceeds mask capacity")));
        }
        Ok(1u64 << pair_count(n))
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { n, bits: vec![0; pair_count(n).div_ceil(64)] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidArgument(format!("edge ({i}, {j}) out of range for order {n}")));
            }
            if i == j {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {i}")));
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    /// Graph with edge set `{ {i, j} : f(i, j) }` over pairs `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if f(i, j) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn bit(&self, k: usize) -> bool {
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.bit(pair_index(self.n, i, j))
    }

    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        assert!(i != j, "self-loop at vertex {i}");
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let k = pair_index(self.n, i, j);
        if present {
            self.bits[k / 64] |= 1 << (k % 64);
        } else {
            self.bits[k / 64] &= !(1 << (k % 64));
        }
    }

    /// Toggles the `k`-th pair in lexicographic order.
    pub fn flip_pair(&mut self, k: usize) {
        assert!(k < pair_count(self.n));
        self.bits[k / 64] ^= 1 << (k % 64);
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j))).filter(|&(i, j)| self.has_edge(i, j))
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(u, v)).count()
    }

    /// `A(G)`: 0/1 entries, zero diagonal.
    pub fn adjacency_matrix(&self) -> SymMatrix {
        SymMatrix::from_upper(self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    /// `Ḡ`, with `A(G) + A(Ḡ) = J − I`.
    pub fn complement(&self) -> Graph {
        let mut g = Graph { n: self.n, bits: self.bits.iter().map(|w| !w).collect() };
        let used = pair_count(self.n) % 64;
        if used != 0 {
            if let Some(last) = g.bits.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        g
    }

    /// Block-diagonal union; vertices of `graphs[k]` follow those of `graphs[..k]`.
    pub fn disjoint_union(graphs: &[Graph]) -> Graph {
        let n = graphs.iter().map(Graph::n).sum();
        let mut out = Graph::empty(n);
        let mut offset = 0;
        for g in graphs {
            for (i, j) in g.edges() {
                out.set_edge(offset + i, offset + j, true);
            }
            offset += g.n;
        }
        out
    }

    /// `K_k`.
    pub fn clique(k: usize) -> Result<Graph> {
        if k == 0 {
            return Err(Error::InvalidArgument("clique order must be at least 1".into()));
        }
        Ok(Graph::from_fn(k, |_, _| true))
    }

    /// `C_k`.
    pub fn cycle(k: usize) -> Result<Graph> {
        if k < 3 {
            return Err(Error::InvalidArgument(format!("cycle order must be at least 3, got {k}")));
        }
        Ok(Graph::from_fn(k, |i, j| j == i + 1 || (i == 0 && j == k - 1)))
    }

    /// `K_k ∪ K_k ∪ K_k`, where `λ₃ = k − 1 = n/3 − 1`.
    pub fn triple_clique(k: usize) -> Result<Graph> {
        let c = Graph::clique(k)?;
        Ok(Graph::disjoint_union(&[c.clone(), c.clone(), c]))
    }

    /// Replaces vertex `v` by a class of `sizes[v]` vertices. Classes of adjacent
    /// vertices are completely joined; each class is a clique when `closed` and an
    /// independent set otherwise.
    pub fn blow_up(&self, sizes: &[usize], closed: bool) -> Result<Graph> {
        if sizes.len() != self.n {
            return Err(Error::InvalidArgument(format!("{} class sizes for order {}", sizes.len(), self.n)));
        }
        if let Some(v) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidArgument(format!("class size 0 for vertex {v}")));
        }
        let class: Vec<usize> = sizes.iter().enumerate().flat_map(|(v, &s)| std::iter::repeat_n(v, s)).collect();
        Ok(Graph::from_fn(class.len(), |i, j| {
            let (a, b) = (class[i], class[j]);
            if a == b {
                closed
            } else {
                self.has_edge(a, b)
            }
        }))
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Graph> {
        if n > EdgeMask::MAX_ORDER {
            return Err(Error::InvalidArgument(format!("order {n} exceeds mask capacity")));
        }
        let pairs = pair_count(n);
        if pairs < 64 && mask >> pairs != 0 {
            return Err(Error::MaskOutOfRange { n, mask });
        }
        let mut g = Graph::empty(n);
        if let Some(w) = g.bits.first_mut() {
            *w = mask;
        }
        Ok(g)
    }

    pub fn to_mask(&self) -> Result<EdgeMask> {
        if self.n > EdgeMask::MAX_ORDER {
            return Err(Error::InvalidArgument(format!("order {} exceeds mask capacity", self.n)));
        }
        Ok(EdgeMask { n: self.n, mask: self.bits.first().copied().unwrap_or(0) })
    }

    /// `G(n, p)`: each pair independently an edge with probability `p`.
    pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
        Graph::from_fn(n, |_, _| rng.gen_bool(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use crate::symspec::{eigenvalues, Spectrum};

    fn spectrum(g: &Graph) -> Spectrum {
        eigenvalues(&g.adjacency_matrix())
    }

    fn assert_spectrum(g: &Graph, want: &[f64]) {
        let got = spectrum(g);
        for (x, y) in got.values().iter().zip(want) {
            assert!((x - y).abs() < 1e-9, "got {:?} want {want:?}", got.values());
        }
    }

    #[test]
    fn pair_order_is_lexicographic() {
        let mut k = 0;
        for i in 0..7 {
            for j in i + 1..7 {
                assert_eq!(pair_index(7, i, j), k);
                k += 1;
            }
        }
        assert_eq!(k, pair_count(7));
    }

    #[test]
    fn mask_examples() {
        assert_eq!(Graph::from_mask(3, 0).unwrap(), Graph::empty(3));
        assert_eq!(Graph::from_mask(3, 7).unwrap(), Graph::clique(3).unwrap());
        assert!(matches!(Graph::from_mask(3, 8), Err(Error::MaskOutOfRange { n: 3, mask: 8 })));
        for mask in 0..64 {
            let g = Graph::from_mask(4, mask).unwrap();
            assert_eq!(g.to_mask().unwrap(), EdgeMask { n: 4, mask });
        }
        assert!(Graph::from_mask(12, 0).is_err());
        assert_eq!(Graph::from_mask(11, u64::MAX >> 9).unwrap().edge_count(), 55);
    }

    #[test]
    fn edge_mask_count() {
        assert_eq!(EdgeMask::count(0).unwrap(), 1);
        assert_eq!(EdgeMask::count(3).unwrap(), 8);
        assert_eq!(EdgeMask::count(7).unwrap(), 2_097_152);
        assert_eq!(EdgeMask::count(8).unwrap(), 268_435_456);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::clique(5).unwrap().complement(), Graph::empty(5));
        let three_k2 = Graph::disjoint_union(&[Graph::clique(2).unwrap(), Graph::clique(2).unwrap(), Graph::clique(2).unwrap()]);
        let k222 = Graph::from_fn(6, |i, j| i / 2 != j / 2);
        assert_eq!(three_k2.complement(), k222);

        let mut r = rng::seeded(3);
        for _ in 0..100 {
            let n = r.gen_range(1..=20);
            let g = Graph::erdos_renyi(n, 0.5, &mut r);
            assert_eq!(g.complement().complement(), g);
            let sum = g.adjacency_matrix().add(&g.complement().adjacency_matrix()).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(sum.get(i, j) + if i == j { 1.0 } else { 0.0 }, 1.0);
                }
            }
        }
    }

    #[test]
    fn complement_masks_high_word() {
        // 70 vertices span several words; bits past C(n,2) must stay clear.
        let g = Graph::empty(70).complement();
        assert_eq!(g.edge_count(), pair_count(70));
        assert_eq!(g, Graph::clique(70).unwrap());
    }

    #[test]
    fn union_examples() {
        let k1 = Graph::clique(1).unwrap();
        assert_eq!(Graph::disjoint_union(&[k1.clone(), k1.clone(), k1]), Graph::empty(3));
        let k2 = Graph::clique(2).unwrap();
        assert_spectrum(&Graph::disjoint_union(&[k2.clone(), k2.clone(), k2]), &[1.0, 1.0, 1.0, -1.0, -1.0, -1.0]);
        let tc = Graph::triple_clique(3).unwrap();
        assert!((spectrum(&tc).eig(3) - 2.0).abs() < 1e-9);
        assert!((spectrum(&Graph::triple_clique(2).unwrap()).eig(3) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn union_spectrum_is_multiset_union() {
        let mut r = rng::seeded(5);
        for _ in 0..30 {
            let parts: Vec<Graph> = (0..r.gen_range(1..4))
                .map(|_| {
                    let n = r.gen_range(1..6);
                    Graph::erdos_renyi(n, 0.5, &mut r)
                })
                .collect();
            let mut want: Vec<f64> = parts.iter().flat_map(|g| spectrum(g).into_values()).collect();
            want.sort_by(|a, b| b.total_cmp(a));
            assert_spectrum(&Graph::disjoint_union(&parts), &want);
        }
    }

    #[test]
    fn named_constructions() {
        assert_spectrum(&Graph::clique(3).unwrap(), &[2.0, -1.0, -1.0]);
        let c5 = spectrum(&Graph::cycle(5).unwrap());
        assert!((c5.eig(4) - 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
        assert!(c5.eig(4) >= -5.0 / 3.0);
        assert!(Graph::clique(0).is_err());
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::triple_clique(0).is_err());
        assert_eq!(Graph::triple_clique(4).unwrap().n(), 12);
    }

    #[test]
    fn regular_graphs_have_degree_as_top_eigenvalue() {
        for g in [Graph::cycle(7).unwrap(), Graph::clique(6).unwrap(), Graph::triple_clique(3).unwrap()] {
            let d = g.degree(0) as f64;
            assert!((spectrum(&g).eig(1) - d).abs() < 1e-9);
        }
    }

    #[test]
    fn blow_up_examples() {
        let k1 = Graph::clique(1).unwrap();
        assert_eq!(k1.blow_up(&[4], true).unwrap(), Graph::clique(4).unwrap());
        let k3 = Graph::clique(3).unwrap();
        for t in 1..=3 {
            let g = k3.blow_up(&[t, t, t], false).unwrap();
            let n = 3 * t;
            assert_eq!(g, Graph::from_fn(n, |i, j| i / t != j / t));
            assert!((spectrum(&g).eig(n - 1) + t as f64).abs() < 1e-9);
        }
        let mut r = rng::seeded(9);
        let g = Graph::erdos_renyi(6, 0.5, &mut r);
        assert_eq!(g.blow_up(&[1; 6], true).unwrap(), g);
        assert_eq!(g.blow_up(&[1; 6], false).unwrap(), g);
        assert!(g.blow_up(&[1, 1, 0, 1, 1, 1], false).is_err());
        assert!(g.blow_up(&[1, 1], false).is_err());
    }

    #[test]
    fn blow_up_class_rule() {
        let mut r = rng::seeded(10);
        for _ in 0..50 {
            let n = r.gen_range(1..6);
            let g = Graph::erdos_renyi(n, 0.5, &mut r);
            let sizes: Vec<usize> = (0..n).map(|_| r.gen_range(1..4)).collect();
            let closed = r.gen_bool(0.5);
            let b = g.blow_up(&sizes, closed).unwrap();
            let class: Vec<usize> = sizes.iter().enumerate().flat_map(|(v, &s)| vec![v; s]).collect();
            for i in 0..b.n() {
                for j in 0..b.n() {
                    let want = i != j && if class[i] == class[j] { closed } else { g.has_edge(class[i], class[j]) };
                    assert_eq!(b.has_edge(i, j), want);
                }
            }
        }
    }

    #[test]
    fn from_edges_validates() {
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        let g = Graph::from_edges(3, &[(2, 0), (0, 2)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2)]);
        assert!(!g.has_edge(1, 1));
    }
}
