//! Size guards for the exhaustive routines.

/// Upper bounds on the vertex counts the brute-force routines accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest graph that may be canonicalized by permutation search.
    pub canon: usize,
    /// Largest vertex count for enumerating unordered (and colored) graphs.
    pub enum_unordered: usize,
    /// Largest vertex count for enumerating ordered graphs.
    pub enum_ordered: usize,
    /// Largest root graph for building an induced-subgraph poset.
    pub poset: usize,
}

/// Hard ceiling imposed by the 128-bit adjacency code of canonical keys.
pub const MAX_KEY_VERTICES: usize = 16;

impl Default for Caps {
    fn default() -> Self {
        Caps {
            canon: 10,
            enum_unordered: 8,
            enum_ordered: 6,
            poset: 8,
        }
    }
}

impl Caps {
    /// Raises (or lowers) every cap to `n`, clamped to what keys can hold.
    pub fn uniform(n: usize) -> Self {
        let n = n.min(MAX_KEY_VERTICES);
        Caps {
            canon: n,
            enum_unordered: n,
            enum_ordered: n,
            poset: n,
        }
    }
}
