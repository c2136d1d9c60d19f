//! Homomorphism, embedding and induced-subgraph counts by backtracking.

use std::collections::BTreeSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, canonical_form_colored, canonical_form_ordered, CanonicalKey, ColoredGraph,
    Graph, OrderedGraph,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapMode {
    /// Edges go to edges.
    Hom,
    /// Injective homomorphisms.
    Embed,
    /// Injective maps preserving edges and non-edges.
    StrongEmbed,
}

struct Backtrack<'a, F> {
    h: &'a Graph,
    g: &'a Graph,
    mode: MapMode,
    monotone: bool,
    compatible: F,
    image: Vec<usize>,
    used: Vec<bool>,
    h_deg: Vec<usize>,
    g_deg: Vec<usize>,
}

impl<F: Fn(usize, usize) -> bool> Backtrack<'_, F> {
    fn count(&mut self, i: usize) -> u64 {
        if i == self.h.n() {
            return 1;
        }
        let injective = self.mode != MapMode::Hom;
        let lo = match (self.monotone, self.image.last()) {
            (true, Some(&prev)) if injective => prev + 1,
            (true, Some(&prev)) => prev,
            _ => 0,
        };
        let mut total = 0;
        for x in lo..self.g.n() {
            if injective && (self.used[x] || self.g_deg[x] < self.h_deg[i]) {
                continue;
            }
            if !(self.compatible)(i, x) {
                continue;
            }
            let ok = self.image.iter().enumerate().all(|(j, &y)| {
                let pattern_edge = self.h.has_edge(j, i);
                let target_edge = self.g.has_edge(y, x);
                match self.mode {
                    MapMode::StrongEmbed => pattern_edge == target_edge,
                    _ => !pattern_edge || target_edge,
                }
            });
            if !ok {
                continue;
            }
            self.image.push(x);
            self.used[x] = true;
            total += self.count(i + 1);
            self.used[x] = false;
            self.image.pop();
        }
        total
    }
}

fn backtrack(
    h: &Graph,
    g: &Graph,
    mode: MapMode,
    monotone: bool,
    compatible: impl Fn(usize, usize) -> bool,
) -> u64 {
    let mut bt = Backtrack {
        h,
        g,
        mode,
        monotone,
        compatible,
        image: Vec::with_capacity(h.n()),
        used: vec![false; g.n()],
        h_deg: (0..h.n()).map(|v| h.degree(v)).collect(),
        g_deg: (0..g.n()).map(|v| g.degree(v)).collect(),
    };
    bt.count(0)
}

pub fn count_maps(h: &Graph, g: &Graph, mode: MapMode) -> u64 {
    backtrack(h, g, mode, false, |_, _| true)
}

/// Order-preserving maps only (weakly monotone for `Hom`).
pub fn count_maps_ordered(h: &OrderedGraph, g: &OrderedGraph, mode: MapMode) -> u64 {
    backtrack(h.as_graph(), g.as_graph(), mode, true, |_, _| true)
}

/// Color-preserving maps.
pub fn count_maps_colored(h: &ColoredGraph, g: &ColoredGraph, mode: MapMode) -> u64 {
    backtrack(h.graph(), g.graph(), mode, false, |i, x| {
        h.color(i) == g.color(x)
    })
}

pub fn aut(h: &Graph) -> u64 {
    count_maps(h, h, MapMode::StrongEmbed)
}

pub fn aut_colored(h: &ColoredGraph) -> u64 {
    count_maps_colored(h, h, MapMode::StrongEmbed)
}

/// Always 1: the only order-preserving bijection is the identity.
pub fn aut_ordered(h: &OrderedGraph) -> u64 {
    count_maps_ordered(h, h, MapMode::StrongEmbed)
}

fn exact_div(num: u64, den: u64) -> Result<u64> {
    if den == 0 || !num.is_multiple_of(den) {
        return Err(Error::DivisionInexact { num, den });
    }
    Ok(num / den)
}

/// Number of vertex subsets of `g` inducing a copy of `h`.
pub fn indsub(h: &Graph, g: &Graph) -> Result<u64> {
    if h.n() > g.n() {
        return Ok(0);
    }
    exact_div(count_maps(h, g, MapMode::StrongEmbed), aut(h))
}

/// Number of (not necessarily induced) copies of `h` in `g`.
pub fn sub(h: &Graph, g: &Graph) -> Result<u64> {
    if h.n() > g.n() {
        return Ok(0);
    }
    exact_div(count_maps(h, g, MapMode::Embed), aut(h))
}

pub fn indsub_ordered(h: &OrderedGraph, g: &OrderedGraph) -> u64 {
    count_maps_ordered(h, g, MapMode::StrongEmbed)
}

pub fn indsub_colored(h: &ColoredGraph, g: &ColoredGraph) -> Result<u64> {
    if h.n() > g.n() {
        return Ok(0);
    }
    exact_div(count_maps_colored(h, g, MapMode::StrongEmbed), aut_colored(h))
}

/// The classes of induced subgraphs of a root graph, ordered by `⊑`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedPoset {
    elements: Vec<CanonicalKey>,
    below: Vec<Vec<bool>>,
    root: CanonicalKey,
}

impl InducedPoset {
    /// Builds the poset on the given keys, sorted; `le(a, b)` decides `a ⊑ b`.
    pub(crate) fn from_keys(
        keys: BTreeSet<CanonicalKey>,
        root: CanonicalKey,
        le: impl Fn(&CanonicalKey, &CanonicalKey) -> Result<bool>,
    ) -> Result<Self> {
        let elements: Vec<CanonicalKey> = keys.into_iter().collect();
        let mut below = vec![vec![false; elements.len()]; elements.len()];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                below[i][j] = i == j || (a.n() < b.n() && le(a, b)?);
            }
        }
        Ok(InducedPoset {
            elements,
            below,
            root,
        })
    }

    /// Elements in key order.
    pub fn elements(&self) -> &[CanonicalKey] {
        &self.elements
    }

    pub fn root(&self) -> &CanonicalKey {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, key: &CanonicalKey) -> Option<usize> {
        self.elements.binary_search(key).ok()
    }

    /// `elements[i] ⊑ elements[j]`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.index_of(key).is_some()
    }
}

fn check_poset_cap(n: usize, caps: &Caps) -> Result<()> {
    if n > caps.poset || n > 63 {
        return Err(Error::cap("induced poset", n, caps.poset.min(63)));
    }
    Ok(())
}

pub fn induced_poset(g: &Graph, caps: &Caps) -> Result<InducedPoset> {
    check_poset_cap(g.n(), caps)?;
    let keys = (0u64..1 << g.n())
        .map(|mask| canonical_form(&g.induced_mask(mask), caps))
        .collect::<Result<BTreeSet<_>>>()?;
    InducedPoset::from_keys(keys, canonical_form(g, caps)?, |a, b| {
        Ok(indsub(&a.graph(), &b.graph())? > 0)
    })
}

pub fn induced_poset_ordered(g: &OrderedGraph, caps: &Caps) -> Result<InducedPoset> {
    check_poset_cap(g.n(), caps)?;
    let keys = (0u64..1 << g.n())
        .map(|mask| CanonicalKey::literal(&g.induced_mask(mask)))
        .collect::<Result<BTreeSet<_>>>()?;
    InducedPoset::from_keys(keys, canonical_form_ordered(g)?, |a, b| {
        Ok(indsub_ordered(&a.ordered_graph(), &b.ordered_graph()) > 0)
    })
}

pub fn induced_poset_colored(g: &ColoredGraph, caps: &Caps) -> Result<InducedPoset> {
    check_poset_cap(g.n(), caps)?;
    let keys = (0u64..1 << g.n())
        .map(|mask| canonical_form_colored(&g.induced_mask(mask), caps))
        .collect::<Result<BTreeSet<_>>>()?;
    let palette = g.palette();
    InducedPoset::from_keys(keys, canonical_form_colored(g, caps)?, |a, b| {
        Ok(indsub_colored(&a.colored_graph(palette)?, &b.colored_graph(palette)?)? > 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    fn k(n: usize) -> Graph {
        Graph::complete(n)
    }

    /// Direct count of vertex subsets inducing a copy of `h`.
    fn indsub_by_subsets(h: &Graph, g: &Graph) -> u64 {
        let caps = Caps::default();
        (0u64..1 << g.n())
            .filter(|m| m.count_ones() as usize == h.n())
            .filter(|&m| is_isomorphic(h, &g.induced_mask(m), &caps).unwrap())
            .count() as u64
    }

    /// All maps V(h) -> V(g), filtered by the mode's conditions.
    fn brute_maps(h: &Graph, g: &Graph, mode: MapMode) -> u64 {
        let (a, b) = (h.n(), g.n());
        let total = (b as u64).pow(a as u32);
        let mut count = 0;
        for mut idx in 0..total {
            let mut f = Vec::with_capacity(a);
            for _ in 0..a {
                f.push((idx % b as u64) as usize);
                idx /= b as u64;
            }
            let injective = {
                let mut s = f.clone();
                s.sort();
                s.dedup();
                s.len() == a
            };
            if mode != MapMode::Hom && !injective {
                continue;
            }
            let ok = (0..a).all(|u| {
                (0..a).all(|v| {
                    if u == v {
                        return true;
                    }
                    let he = h.has_edge(u, v);
                    let ge = g.has_edge(f[u], f[v]);
                    match mode {
                        MapMode::StrongEmbed => he == ge,
                        _ => !he || ge,
                    }
                })
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn map_count_examples() {
        assert_eq!(count_maps(&k(2), &k(3), MapMode::StrongEmbed), 6);
        assert_eq!(count_maps(&k(2), &k(3), MapMode::Hom), 6);
        let g = Graph::path(5);
        assert_eq!(count_maps(&Graph::new(1), &g, MapMode::Hom), 5);
        assert_eq!(brute_maps(&k(2), &k(3), MapMode::Hom), 6);
    }

    #[test]
    fn backtracking_matches_brute_force() {
        let targets = [
            Graph::cycle(5),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap(),
            Graph::path(4),
        ];
        let patterns = [Graph::new(2), k(2), Graph::path(3), k(3), Graph::new(3)];
        for g in &targets {
            for h in &patterns {
                for mode in [MapMode::Hom, MapMode::Embed, MapMode::StrongEmbed] {
                    assert_eq!(count_maps(h, g, mode), brute_maps(h, g, mode), "{h:?} {g:?}");
                }
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(aut(&k(3)), 6);
        assert_eq!(aut(&Graph::path(3)), 2);
        assert_eq!(aut(&Graph::new(0)), 1);
        let o = OrderedGraph::new(Graph::cycle(5));
        assert_eq!(aut_ordered(&o), 1);
    }

    #[test]
    fn induced_counts() {
        assert_eq!(indsub(&k(2), &k(3)).unwrap(), 3);
        assert_eq!(indsub(&k(3), &k(3)).unwrap(), 1);
        let g = Graph::cycle(5);
        assert_eq!(indsub(&Graph::new(0), &g).unwrap(), 1);
        assert_eq!(indsub(&Graph::new(1), &g).unwrap(), 5);
        assert_eq!(indsub(&k(3), &k(2)).unwrap(), 0);
        assert_eq!(sub(&Graph::path(3), &k(3)).unwrap(), 3);
        assert_eq!(indsub(&Graph::path(3), &k(3)).unwrap(), 0);
    }

    #[test]
    fn induced_count_matches_subset_count() {
        let caps = Caps::default();
        let patterns = crate::graph::enumerate_graphs(4, crate::graph::GraphKind::Unordered, &caps)
            .unwrap();
        let targets = [
            Graph::cycle(6),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (4, 5)]).unwrap(),
            Graph::complete(5),
        ];
        for g in &targets {
            for key in &patterns {
                let h = key.graph();
                assert_eq!(indsub(&h, g).unwrap(), indsub_by_subsets(&h, g));
            }
        }
    }

    #[test]
    fn ordered_counts() {
        let edge = OrderedGraph::new(k(2));
        let g = OrderedGraph::new(Graph::path(3));
        assert_eq!(indsub_ordered(&edge, &g), 2);
        // 0-1 and 1-2 are edges; the ordered pattern with the edge on (1,2)
        let pat = OrderedGraph::new(Graph::from_edges(3, &[(1, 2)]).unwrap());
        let target = OrderedGraph::new(Graph::from_edges(4, &[(1, 3)]).unwrap());
        assert_eq!(indsub_ordered(&pat, &target), 1);
    }

    #[test]
    fn colored_counts() {
        let h = ColoredGraph::new(k(2), vec![1, 2], 3).unwrap();
        let g = ColoredGraph::new(k(3), vec![1, 2, 2], 3).unwrap();
        assert_eq!(indsub_colored(&h, &g).unwrap(), 2);
        let mono = ColoredGraph::new(k(2), vec![2, 2], 3).unwrap();
        assert_eq!(indsub_colored(&mono, &g).unwrap(), 1);
        assert_eq!(aut_colored(&mono), 2);
    }

    #[test]
    fn poset_examples() {
        let caps = Caps::default();
        let names = |p: &InducedPoset| -> Vec<usize> {
            p.elements().iter().map(|k| k.graph().edge_count()).collect()
        };
        let p = induced_poset(&k(2), &caps).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.le(0, 1) && p.le(1, 2) && p.le(0, 2));
        let p = induced_poset(&k(3), &caps).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(names(&p), vec![0, 0, 1, 3]);
        let p = induced_poset(&Graph::path(3), &caps).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.root(), &canonical_form(&Graph::path(3), &caps).unwrap());
        assert!(induced_poset(&Graph::new(9), &caps).is_err());
    }

    #[test]
    fn poset_is_partial_order_with_top_root() {
        let caps = Caps::default();
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (3, 4), (2, 3)]).unwrap();
        let p = induced_poset(&g, &caps).unwrap();
        let r = p.index_of(p.root()).unwrap();
        for i in 0..p.len() {
            assert!(p.le(i, i));
            assert!(p.le(i, r));
            for j in 0..p.len() {
                if i != j {
                    assert!(!(p.le(i, j) && p.le(j, i)));
                }
                for l in 0..p.len() {
                    if p.le(i, j) && p.le(j, l) {
                        assert!(p.le(i, l));
                    }
                }
            }
        }
    }
}
