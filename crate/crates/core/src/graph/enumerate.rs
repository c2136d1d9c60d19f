use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::canon::{canonical_form, canonical_labeling, CanonicalKey};
use crate::graph::{pair_index, Graph, OrderedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Unordered,
    Ordered,
    /// Vertex colors drawn from `0..palette`.
    Colored(u8),
}

/// One representative key per isomorphism class with at most `n_max`
/// vertices, sorted by key.
pub fn enumerate_graphs(n_max: usize, kind: GraphKind, caps: &Caps) -> Result<Vec<CanonicalKey>> {
    Ok(layers(n_max, kind, caps)?.into_iter().flatten().collect())
}

/// Classes with exactly `n` vertices, sorted.
pub fn enumerate_exact(n: usize, kind: GraphKind, caps: &Caps) -> Result<Vec<CanonicalKey>> {
    Ok(layers(n, kind, caps)?.pop().unwrap_or_default())
}

fn layers(n_max: usize, kind: GraphKind, caps: &Caps) -> Result<Vec<Vec<CanonicalKey>>> {
    match kind {
        GraphKind::Ordered => {
            if n_max > caps.enum_ordered {
                return Err(Error::cap("ordered enumeration", n_max, caps.enum_ordered));
            }
            (0..=n_max)
                .map(|n| {
                    let pairs = n * n.saturating_sub(1) / 2;
                    (0u64..1 << pairs)
                        .map(|bits| CanonicalKey::literal(&graph_from_pair_bits(n, bits)))
                        .collect::<Result<Vec<_>>>()
                        .map(|mut keys| {
                            keys.sort();
                            keys
                        })
                })
                .collect()
        }
        GraphKind::Unordered | GraphKind::Colored(_) => {
            if n_max > caps.enum_unordered {
                return Err(Error::cap("graph enumeration", n_max, caps.enum_unordered));
            }
            let palette = match kind {
                GraphKind::Colored(c) => Some(c),
                _ => None,
            };
            let mut layer: BTreeSet<CanonicalKey> = BTreeSet::new();
            layer.insert(CanonicalKey::literal(&Graph::new(0))?);
            let mut out = vec![layer.iter().cloned().collect()];
            for size in 1..=n_max {
                layer = extend_layer(&layer, size, palette, caps)?;
                out.push(layer.iter().cloned().collect());
            }
            Ok(out)
        }
    }
}

/// Every class on `size` vertices arises from a class on `size - 1`
/// vertices by attaching one more vertex.
fn extend_layer(
    prev: &BTreeSet<CanonicalKey>,
    size: usize,
    palette: Option<u8>,
    caps: &Caps,
) -> Result<BTreeSet<CanonicalKey>> {
    let colors: Vec<u8> = match palette {
        Some(c) => (0..c).collect(),
        None => vec![0],
    };
    let keys: Vec<Vec<CanonicalKey>> = prev
        .par_iter()
        .map(|base| -> Result<Vec<CanonicalKey>> {
            let g = base.graph();
            let mut local = Vec::new();
            for nbrs in 0u64..1 << (size - 1) {
                let mut h = Graph::new(size);
                for (u, v) in g.edges() {
                    h.set_edge(u, v);
                }
                for u in 0..size - 1 {
                    if nbrs >> u & 1 == 1 {
                        h.set_edge(u, size - 1);
                    }
                }
                match palette {
                    None => local.push(canonical_form(&h, caps)?),
                    Some(_) => {
                        for &c in &colors {
                            let mut cs = base.colors().to_vec();
                            cs.push(c);
                            local.push(canonical_labeling(&h, Some(&cs), caps)?.0);
                        }
                    }
                }
            }
            Ok(local)
        })
        .collect::<Result<_>>()?;
    Ok(keys.into_iter().flatten().collect())
}

/// One ordered representative per isomorphism class of vertex orders of `h`,
/// sorted by key.
pub fn orderings(h: &Graph, caps: &Caps) -> Result<Vec<OrderedGraph>> {
    if h.n() > caps.canon {
        return Err(Error::cap("orderings", h.n(), caps.canon));
    }
    let mut seen = BTreeSet::new();
    let mut perm: Vec<usize> = (0..h.n()).collect();
    loop {
        seen.insert(CanonicalKey::literal(&h.relabel(&perm))?);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(seen.into_iter().map(|k| k.ordered_graph()).collect())
}

/// Advances to the lexicographically next permutation; false when wrapped.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Labeled graph whose pair `(i, j)` is an edge iff bit `pair_index(i, j)`
/// of `bits` is set.
pub(crate) fn graph_from_pair_bits(n: usize, bits: u64) -> Graph {
    let mut g = Graph::new(n);
    for j in 1..n {
        for i in 0..j {
            if bits >> pair_index(i, j) & 1 == 1 {
                g.set_edge(i, j);
            }
        }
    }
    g
}
