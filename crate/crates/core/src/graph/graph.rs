use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Finite simple undirected graph on the vertices `0..n`.
///
/// Adjacency is kept as one bitset row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

/// Position of the pair `(i, j)`, `i < j`, in the column-wise upper-triangle order
/// `(0,1), (0,2), (1,2), (0,3), ...` shared by graph6 and the canonical keys.
#[inline]
pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; words * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            for u in 0..v {
                g.set_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.set_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.set_edge(0, n - 1);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.set_edge(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Adjacency row of `v` as a bitmask; only meaningful for `n <= 64`.
    #[inline]
    pub(crate) fn row_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.bits[v * self.words]
    }

    /// Edges as pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// True iff no vertex is isolated. The empty graph is pure.
    pub fn is_pure(&self) -> bool {
        (0..self.n).all(|v| self.row(v).iter().any(|&w| w != 0))
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced by `subset`, relabeled order-preservingly to `0..|subset|`.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Graph> {
        let mut verts = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        for &v in &verts {
            self.check(v)?;
        }
        Ok(self.induced_sorted(&verts))
    }

    pub(crate) fn induced_sorted(&self, verts: &[usize]) -> Graph {
        let mut g = Graph::new(verts.len());
        for (j, &v) in verts.iter().enumerate() {
            for (i, &u) in verts[..j].iter().enumerate() {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    /// Induced subgraph on the vertices whose bits are set in `mask`.
    pub(crate) fn induced_mask(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        self.induced_sorted(&verts)
    }

    /// Vertex-disjoint union; the blocks are placed in list order.
    pub fn disjoint_union(gs: &[Graph]) -> Graph {
        let total = gs.iter().map(Graph::n).sum();
        let mut g = Graph::new(total);
        let mut offset = 0;
        for h in gs {
            for (u, v) in h.edges() {
                g.set_edge(offset + u, offset + v);
            }
            offset += h.n;
        }
        g
    }

    /// Upper-triangle adjacency bits, most significant bit first, in
    /// [`pair_index`] order. Requires `n <= 16`.
    pub(crate) fn code(&self) -> u128 {
        debug_assert!(self.n <= crate::caps::MAX_KEY_VERTICES);
        let mut code = 0u128;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    code |= 1u128 << (127 - pair_index(i, j));
                }
            }
        }
        code
    }

    pub(crate) fn from_code(n: usize, code: u128) -> Graph {
        let mut g = Graph::new(n);
        for j in 1..n {
            for i in 0..j {
                if code >> (127 - pair_index(i, j)) & 1 == 1 {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A graph whose vertex labels are its order positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedGraph(Graph);

impl OrderedGraph {
    pub fn new(graph: Graph) -> Self {
        OrderedGraph(graph)
    }

    pub fn as_graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<OrderedGraph> {
        self.0.induced_subgraph(subset).map(OrderedGraph)
    }

    /// Concatenation in list order.
    pub fn disjoint_union(gs: &[OrderedGraph]) -> OrderedGraph {
        let plain: Vec<Graph> = gs.iter().map(|g| g.0.clone()).collect();
        OrderedGraph(Graph::disjoint_union(&plain))
    }
}

impl Deref for OrderedGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl fmt::Debug for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderedGraph(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// A graph with one color index in `0..palette` per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    graph: Graph,
    colors: Vec<u8>,
    palette: u8,
}

impl ColoredGraph {
    pub fn new(graph: Graph, colors: Vec<u8>, palette: u8) -> Result<Self> {
        if colors.len() != graph.n() {
            return Err(Error::Precondition(format!(
                "{} colors for {} vertices",
                colors.len(),
                graph.n()
            )));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= palette) {
            return Err(Error::Precondition(format!(
                "color {c} outside palette of size {palette}"
            )));
        }
        Ok(ColoredGraph {
            graph,
            colors,
            palette,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u8 {
        self.colors[v]
    }

    pub fn palette(&self) -> u8 {
        self.palette
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn relabel(&self, perm: &[usize]) -> ColoredGraph {
        let mut colors = vec![0; self.n()];
        for (v, &c) in self.colors.iter().enumerate() {
            colors[perm[v]] = c;
        }
        ColoredGraph {
            graph: self.graph.relabel(perm),
            colors,
            palette: self.palette,
        }
    }

    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<ColoredGraph> {
        let mut verts = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        let graph = self.graph.induced_subgraph(&verts)?;
        let colors = verts.iter().map(|&v| self.colors[v]).collect();
        Ok(ColoredGraph {
            graph,
            colors,
            palette: self.palette,
        })
    }

    pub(crate) fn induced_mask(&self, mask: u64) -> ColoredGraph {
        let verts: Vec<usize> = (0..self.n()).filter(|&v| mask >> v & 1 == 1).collect();
        ColoredGraph {
            graph: self.graph.induced_sorted(&verts),
            colors: verts.iter().map(|&v| self.colors[v]).collect(),
            palette: self.palette,
        }
    }

    /// Color 0 plays the role of the padding color: a colored graph is pure
    /// iff no vertex carries it.
    pub fn is_pure(&self) -> bool {
        self.colors.iter().all(|&c| c != 0)
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ColoredGraph(n={}, edges={:?}, colors={:?})",
            self.n(),
            self.graph.edges(),
            self.colors
        )
    }
}
