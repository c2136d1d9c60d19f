//! Canonical keys by exhaustive permutation minimization.
//!
//! The key of an unordered graph is the lexicographically smallest
//! upper-triangle adjacency code over all vertex permutations. The search
//! builds permutations position by position, cuts every branch whose code
//! prefix already exceeds the best complete code, and expands only one vertex
//! out of each class of mutual twins (swapping two twins is an automorphism
//! fixing everything placed so far, so both branches produce the same codes).

use std::cmp::Ordering;

use crate::caps::{Caps, MAX_KEY_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph, OrderedGraph};

/// Total-order key identifying a graph up to isomorphism (or exactly, for
/// ordered graphs). Ordered by vertex count, then adjacency code, then colors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    n: u8,
    code: u128,
    colors: Vec<u8>,
}

impl CanonicalKey {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// The representative graph: relabeled so its literal code is the key.
    pub fn graph(&self) -> Graph {
        Graph::from_code(self.n(), self.code)
    }

    pub fn ordered_graph(&self) -> OrderedGraph {
        OrderedGraph::new(self.graph())
    }

    pub fn colored_graph(&self, palette: u8) -> Result<ColoredGraph> {
        ColoredGraph::new(self.graph(), self.colors.clone(), palette)
    }

    /// Key of the graph exactly as labeled; this is the canonical key of an
    /// ordered graph.
    pub fn literal(g: &Graph) -> Result<Self> {
        if g.n() > MAX_KEY_VERTICES {
            return Err(Error::cap("canonical key", g.n(), MAX_KEY_VERTICES));
        }
        Ok(CanonicalKey {
            n: g.n() as u8,
            code: g.code(),
            colors: Vec::new(),
        })
    }
}

pub fn canonical_form(g: &Graph, caps: &Caps) -> Result<CanonicalKey> {
    canonical_labeling(g, None, caps).map(|(key, _)| key)
}

pub fn canonical_form_ordered(g: &OrderedGraph) -> Result<CanonicalKey> {
    CanonicalKey::literal(g.as_graph())
}

pub fn canonical_form_colored(g: &ColoredGraph, caps: &Caps) -> Result<CanonicalKey> {
    canonical_labeling(g.graph(), Some(g.colors()), caps).map(|(key, _)| key)
}

/// Returns the key together with a permutation `perm` (vertex `v` goes to
/// position `perm[v]`) realizing it.
pub fn canonical_labeling(
    g: &Graph,
    colors: Option<&[u8]>,
    caps: &Caps,
) -> Result<(CanonicalKey, Vec<usize>)> {
    let n = g.n();
    let cap = caps.canon.min(MAX_KEY_VERTICES);
    if n > cap {
        return Err(Error::cap("canonical form", n, cap));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.row_mask(v) as u32).collect();
    let mut search = Search {
        n,
        adj,
        colors,
        placed: Vec::with_capacity(n),
        best: None,
    };
    search.run(0, 0, 0);
    let (code, order, best_colors) = search.best.expect("search visits at least one leaf");
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok((
        CanonicalKey {
            n: n as u8,
            code,
            colors: best_colors,
        },
        perm,
    ))
}

struct Search<'a> {
    n: usize,
    adj: Vec<u32>,
    colors: Option<&'a [u8]>,
    placed: Vec<usize>,
    best: Option<(u128, Vec<usize>, Vec<u8>)>,
}

impl Search<'_> {
    #[inline]
    fn twins(&self, u: usize, v: usize) -> bool {
        let same_color = self.colors.is_none_or(|c| c[u] == c[v]);
        same_color && (self.adj[u] & !(1 << v)) == (self.adj[v] & !(1 << u))
    }

    fn column(&self, v: usize) -> u128 {
        let mut col = 0u128;
        for &u in &self.placed {
            col = col << 1 | (self.adj[u] >> v & 1) as u128;
        }
        col
    }

    /// Compares the first `len` code bits against the best complete code.
    fn cmp_prefix(&self, code: u128, len: usize) -> Ordering {
        match &self.best {
            None => Ordering::Less,
            Some(_) if len == 0 => Ordering::Equal,
            Some((best, _, _)) => (code >> (128 - len)).cmp(&(best >> (128 - len))),
        }
    }

    fn run(&mut self, pos: usize, used: u32, code: u128) {
        if pos == self.n {
            let colors: Vec<u8> = match self.colors {
                Some(c) => self.placed.iter().map(|&v| c[v]).collect(),
                None => Vec::new(),
            };
            let better = match &self.best {
                None => true,
                Some((best, _, best_colors)) => (code, &colors) < (*best, best_colors),
            };
            if better {
                self.best = Some((code, self.placed.clone(), colors));
            }
            return;
        }
        let start = pos * pos.saturating_sub(1) / 2;
        let len = start + pos;
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..self.n {
            if used >> v & 1 == 1 || tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let col = self.column(v);
            let next = if pos == 0 { code } else { code | col << (128 - len) };
            if self.cmp_prefix(next, len) == Ordering::Greater {
                continue;
            }
            self.placed.push(v);
            self.run(pos + 1, used | 1 << v, next);
            self.placed.pop();
        }
    }
}

/// Isomorphism test through canonical keys.
pub fn is_isomorphic(a: &Graph, b: &Graph, caps: &Caps) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a, caps)? == canonical_form(b, caps)?)
}
