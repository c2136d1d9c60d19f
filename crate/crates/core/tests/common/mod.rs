//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use motifalg::graph::Graph;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (aa, bb) = (adjacency(a), adjacency(b));
    permutations(n)
        .iter()
        .any(|p| (0..n).all(|u| (0..n).all(|v| aa[u][v] == bb[p[u]][p[v]])))
}

fn subset(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Vertex subsets of `g` inducing a graph isomorphic to `h`.
pub fn indsub(h: &Graph, g: &Graph) -> u64 {
    (0u64..1 << g.n())
        .filter(|m| m.count_ones() as usize == h.n())
        .filter(|&m| isomorphic(h, &g.induced_subgraph(&subset(m, g.n())).unwrap()))
        .count() as u64
}

/// As `indsub`, but the copy must keep the vertex order: the induced
/// subgraph on the sorted subset must equal `h` literally.
pub fn indsub_ordered(h: &Graph, g: &Graph) -> u64 {
    (0u64..1 << g.n())
        .filter(|m| m.count_ones() as usize == h.n())
        .filter(|&m| &g.induced_subgraph(&subset(m, g.n())).unwrap() == h)
        .count() as u64
}

/// Graph on `n` vertices whose edges follow `bits` in (0,1), (0,2), ... order.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits.get(i).copied().unwrap_or(false) {
                g.add_edge(u, v).unwrap();
            }
            i += 1;
        }
    }
    g
}

/// All labeled graphs on `n` vertices.
pub fn all_labeled(n: usize) -> Vec<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs)
        .map(|m| graph_from_bits(n, &(0..pairs).map(|i| m >> i & 1 == 1).collect::<Vec<_>>()))
        .collect()
}

/// One representative per isomorphism class among labeled graphs on `n`
/// vertices.
pub fn classes(n: usize) -> Vec<Graph> {
    let mut reps: Vec<Graph> = Vec::new();
    for g in all_labeled(n) {
        if !reps.iter().any(|r| isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}
