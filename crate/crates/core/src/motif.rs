//! Motif parameters: finite rational combinations of induced counts.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::caps::Caps;
use crate::counting::{self, InducedPoset};
use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, canonical_form_colored, enumerate_exact, orderings, CanonicalKey,
    ColoredGraph, Graph, GraphKind, OrderedGraph,
};

/// A class of finite structures with induced-substructure counts.
pub trait Motif: Clone + Debug + Send + Sync + Sized {
    /// Ambient data every pattern and target must share (palette, type).
    type Universe: Clone + PartialEq + Debug + Send + Sync;
    /// Canonical key; equal iff isomorphic. Sorted by vertex count first.
    type Key: Clone + Ord + Debug + Send + Sync;

    const KIND: &'static str;

    fn universe(&self) -> Self::Universe;
    fn key(&self, caps: &Caps) -> Result<Self::Key>;
    fn from_key(key: &Self::Key, universe: &Self::Universe) -> Self;
    fn key_vertex_count(key: &Self::Key) -> usize;
    fn vertex_count(&self) -> usize;
    /// Number of vertex subsets of `target` inducing a copy of `pattern`.
    fn indsub(pattern: &Self, target: &Self) -> Result<u64>;
    fn is_pure(&self) -> bool;
    /// Substructure induced by the vertices set in `mask` (order kept).
    fn induced_mask(&self, mask: u64) -> Self;
    /// Vertex-disjoint union in list order.
    fn disjoint_union(universe: &Self::Universe, parts: &[Self]) -> Self;
}

/// Motif classes whose isomorphism classes can be listed exhaustively.
pub trait Enumerable: Motif {
    /// Keys of all classes with exactly `n` vertices, sorted.
    fn enumerate_exact(universe: &Self::Universe, n: usize, caps: &Caps) -> Result<Vec<Self::Key>>;

    fn enumerate_upto(universe: &Self::Universe, n_max: usize, caps: &Caps) -> Result<Vec<Self::Key>> {
        let mut out = Vec::new();
        for n in 0..=n_max {
            out.extend(Self::enumerate_exact(universe, n, caps)?);
        }
        Ok(out)
    }
}

impl Motif for Graph {
    type Universe = ();
    type Key = CanonicalKey;
    const KIND: &'static str = "unordered";

    fn universe(&self) {}
    fn key(&self, caps: &Caps) -> Result<CanonicalKey> {
        canonical_form(self, caps)
    }
    fn from_key(key: &CanonicalKey, _: &()) -> Self {
        key.graph()
    }
    fn key_vertex_count(key: &CanonicalKey) -> usize {
        key.n()
    }
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn indsub(pattern: &Self, target: &Self) -> Result<u64> {
        counting::indsub(pattern, target)
    }
    fn is_pure(&self) -> bool {
        Graph::is_pure(self)
    }
    fn induced_mask(&self, mask: u64) -> Self {
        Graph::induced_mask(self, mask)
    }
    fn disjoint_union(_: &(), parts: &[Self]) -> Self {
        Graph::disjoint_union(parts)
    }
}

impl Enumerable for Graph {
    fn enumerate_exact(_: &(), n: usize, caps: &Caps) -> Result<Vec<CanonicalKey>> {
        enumerate_exact(n, GraphKind::Unordered, caps)
    }
    fn enumerate_upto(_: &(), n_max: usize, caps: &Caps) -> Result<Vec<CanonicalKey>> {
        crate::graph::enumerate_graphs(n_max, GraphKind::Unordered, caps)
    }
}

impl Motif for OrderedGraph {
    type Universe = ();
    type Key = CanonicalKey;
    const KIND: &'static str = "ordered";

    fn universe(&self) {}
    fn key(&self, _: &Caps) -> Result<CanonicalKey> {
        CanonicalKey::literal(self.as_graph())
    }
    fn from_key(key: &CanonicalKey, _: &()) -> Self {
        key.ordered_graph()
    }
    fn key_vertex_count(key: &CanonicalKey) -> usize {
        key.n()
    }
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn indsub(pattern: &Self, target: &Self) -> Result<u64> {
        Ok(counting::indsub_ordered(pattern, target))
    }
    fn is_pure(&self) -> bool {
        self.as_graph().is_pure()
    }
    fn induced_mask(&self, mask: u64) -> Self {
        OrderedGraph::new(self.as_graph().induced_mask(mask))
    }
    fn disjoint_union(_: &(), parts: &[Self]) -> Self {
        OrderedGraph::disjoint_union(parts)
    }
}

impl Enumerable for OrderedGraph {
    fn enumerate_exact(_: &(), n: usize, caps: &Caps) -> Result<Vec<CanonicalKey>> {
        enumerate_exact(n, GraphKind::Ordered, caps)
    }
    fn enumerate_upto(_: &(), n_max: usize, caps: &Caps) -> Result<Vec<CanonicalKey>> {
        crate::graph::enumerate_graphs(n_max, GraphKind::Ordered, caps)
    }
}

impl Motif for ColoredGraph {
    /// Palette size.
    type Universe = u8;
    type Key = CanonicalKey;
    const KIND: &'static str = "colored";

    fn universe(&self) -> u8 {
        self.palette()
    }
    fn key(&self, caps: &Caps) -> Result<CanonicalKey> {
        canonical_form_colored(self, caps)
    }
    fn from_key(key: &CanonicalKey, palette: &u8) -> Self {
        key.colored_graph(*palette)
            .expect("colored keys carry one in-palette color per vertex")
    }
    fn key_vertex_count(key: &CanonicalKey) -> usize {
        key.n()
    }
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn indsub(pattern: &Self, target: &Self) -> Result<u64> {
        counting::indsub_colored(pattern, target)
    }
    fn is_pure(&self) -> bool {
        ColoredGraph::is_pure(self)
    }
    fn induced_mask(&self, mask: u64) -> Self {
        ColoredGraph::induced_mask(self, mask)
    }
    fn disjoint_union(palette: &u8, parts: &[Self]) -> Self {
        let graphs: Vec<Graph> = parts.iter().map(|p| p.graph().clone()).collect();
        let colors = parts.iter().flat_map(|p| p.colors().iter().copied()).collect();
        ColoredGraph::new(Graph::disjoint_union(&graphs), colors, *palette)
            .expect("parts share the palette")
    }
}

impl Enumerable for ColoredGraph {
    fn enumerate_exact(palette: &u8, n: usize, caps: &Caps) -> Result<Vec<CanonicalKey>> {
        enumerate_exact(n, GraphKind::Colored(*palette), caps)
    }
    fn enumerate_upto(palette: &u8, n_max: usize, caps: &Caps) -> Result<Vec<CanonicalKey>> {
        crate::graph::enumerate_graphs(n_max, GraphKind::Colored(*palette), caps)
    }
}

/// `Σ α_H · #H`, stored as a map from canonical pattern key to a nonzero
/// rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotifParameter<M: Motif> {
    universe: M::Universe,
    terms: BTreeMap<M::Key, BigRational>,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl<M: Motif> MotifParameter<M> {
    pub fn new(universe: M::Universe) -> Self {
        MotifParameter {
            universe,
            terms: BTreeMap::new(),
        }
    }

    /// Collects terms by key, summing repeated keys and dropping zeros.
    pub fn from_terms(
        universe: M::Universe,
        terms: impl IntoIterator<Item = (M::Key, BigRational)>,
    ) -> Self {
        let mut p = MotifParameter::new(universe);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Canonicalizes each pattern before adding it.
    pub fn from_patterns(
        universe: M::Universe,
        terms: impl IntoIterator<Item = (M, BigRational)>,
        caps: &Caps,
    ) -> Result<Self> {
        let mut p = MotifParameter::new(universe);
        for (pattern, c) in terms {
            if pattern.universe() != p.universe {
                return Err(Error::KindMismatch(format!(
                    "pattern universe {:?} differs from {:?}",
                    pattern.universe(),
                    p.universe
                )));
            }
            p.add_term(pattern.key(caps)?, c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, key: M::Key, coeff: BigRational) {
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn universe(&self) -> &M::Universe {
        &self.universe
    }

    pub fn terms(&self) -> &BTreeMap<M::Key, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, key: &M::Key) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &M::Key> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest vertex count in the support (0 for the empty parameter).
    pub fn max_pattern_size(&self) -> usize {
        self.terms.keys().map(M::key_vertex_count).max().unwrap_or(0)
    }

    pub fn patterns(&self) -> Vec<M> {
        self.terms
            .keys()
            .map(|k| M::from_key(k, &self.universe))
            .collect()
    }

    pub fn evaluate(&self, target: &M) -> Result<BigRational> {
        if target.universe() != self.universe {
            return Err(Error::KindMismatch(format!(
                "{} target with universe {:?}, parameter has {:?}",
                M::KIND,
                target.universe(),
                self.universe
            )));
        }
        let mut total = BigRational::zero();
        for (key, coeff) in &self.terms {
            if M::key_vertex_count(key) > target.vertex_count() {
                continue;
            }
            let count = M::indsub(&M::from_key(key, &self.universe), target)?;
            if count > 0 {
                total += coeff * BigRational::from_integer(BigInt::from(count));
            }
        }
        Ok(total)
    }

    /// True iff every pattern in the support is pure.
    pub fn is_pure(&self) -> bool {
        self.terms
            .keys()
            .all(|k| M::from_key(k, &self.universe).is_pure())
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        MotifParameter::from_terms(
            self.universe.clone(),
            self.terms.iter().map(|(k, c)| (k.clone(), c * factor)),
        )
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.universe != other.universe {
            return Err(Error::KindMismatch("adding parameters over different universes".into()));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scale(&integer(-1)))
    }

    /// Dichotomy verdict for the counting interpretation of this parameter.
    pub fn classify(&self) -> Classification<M> {
        let impure_patterns: Vec<M::Key> = self
            .terms
            .keys()
            .filter(|k| !M::from_key(k, &self.universe).is_pure())
            .cloned()
            .collect();
        let witness_for = |key: &M::Key, coeff: &BigRational| Witness {
            key: key.clone(),
            coefficient: coeff.clone(),
            graph: M::from_key(key, &self.universe),
        };
        // terms iterate smallest patterns first, so the first non-integer
        // coefficient sits on a pattern all of whose proper induced
        // subpatterns carry integer coefficients
        if let Some((k, c)) = self.terms.iter().find(|(_, c)| !c.is_integer()) {
            return Classification {
                verdict: Verdict::NonIntegerCoefficient,
                witness: Some(witness_for(k, c)),
                impure_patterns,
            };
        }
        if let Some((k, c)) = self.terms.iter().find(|(_, c)| c.is_negative()) {
            let verdict = if impure_patterns.is_empty() {
                Verdict::NegativeCoefficient
            } else {
                Verdict::ImpureSupport
            };
            return Classification {
                verdict,
                witness: Some(witness_for(k, c)),
                impure_patterns,
            };
        }
        Classification {
            verdict: Verdict::Good,
            witness: None,
            impure_patterns,
        }
    }
}

impl<M: Enumerable> MotifParameter<M> {
    /// Evaluates on every class with at most `n_max` vertices and reports the
    /// first negative value in key order.
    pub fn check_nonnegative_upto(&self, n_max: usize, caps: &Caps) -> Result<NonnegScan<M>> {
        let keys = M::enumerate_upto(&self.universe, n_max, caps)?;
        let values: Vec<BigRational> = keys
            .par_iter()
            .map(|k| self.evaluate(&M::from_key(k, &self.universe)))
            .collect::<Result<_>>()?;
        for (key, value) in keys.iter().zip(&values) {
            if value.is_negative() {
                return Ok(NonnegScan::Counterexample {
                    key: key.clone(),
                    graph: M::from_key(key, &self.universe),
                    value: value.clone(),
                });
            }
        }
        Ok(NonnegScan::AllNonnegative {
            checked: keys.len(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every coefficient is a nonnegative integer.
    Good,
    NonIntegerCoefficient,
    /// A pure parameter with a negative coefficient.
    NegativeCoefficient,
    /// Negative coefficient but some pattern has a padding vertex, so the
    /// dichotomy gives no verdict.
    ImpureSupport,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Good => "Good",
            Verdict::NonIntegerCoefficient => "NonIntegerCoefficient",
            Verdict::NegativeCoefficient => "NegativeCoefficient",
            Verdict::ImpureSupport => "ImpureSupport",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Witness<M: Motif> {
    pub key: M::Key,
    pub coefficient: BigRational,
    /// For non-integer coefficients, the parameter takes a non-integer
    /// value on this graph.
    pub graph: M,
}

#[derive(Debug, Clone)]
pub struct Classification<M: Motif> {
    pub verdict: Verdict,
    pub witness: Option<Witness<M>>,
    pub impure_patterns: Vec<M::Key>,
}

#[derive(Debug, Clone)]
pub enum NonnegScan<M: Motif> {
    AllNonnegative { checked: usize },
    Counterexample {
        key: M::Key,
        graph: M,
        value: BigRational,
    },
}

/// Rewrites `Σ α_H #H` over ordered graphs using
/// `#H(G) = Σ_{orders of H} #(H, ≤)(G, ≤_G)` for any order of `G`.
pub fn symmetrize(phi: &MotifParameter<Graph>, caps: &Caps) -> Result<MotifParameter<OrderedGraph>> {
    let mut out = MotifParameter::new(());
    for (key, coeff) in phi.terms() {
        for ordered in orderings(&key.graph(), caps)? {
            out.add_term(CanonicalKey::literal(ordered.as_graph())?, coeff.clone());
        }
    }
    Ok(out)
}

/// Inserts `k` isolated vertices between every pair of order-consecutive
/// vertices.
pub fn blowup_pad(g: &OrderedGraph, k: usize) -> OrderedGraph {
    let n = g.n();
    let position = |v: usize| v * (k + 1);
    let total = if n == 0 { 0 } else { position(n - 1) + 1 };
    let mut out = Graph::new(total);
    for (u, v) in g.edges() {
        out.set_edge(position(u), position(v));
    }
    OrderedGraph::new(out)
}

/// `1 + max φ(F)` over the pure elements `F` of `poset`, rounded up; enough
/// isolated vertices per gap to lift every impure count above any value of
/// `φ` on the pure part.
pub fn padding_bound(phi: &MotifParameter<OrderedGraph>, poset: &InducedPoset) -> Result<BigInt> {
    let mut best = BigInt::zero();
    for key in poset.elements() {
        let g = key.ordered_graph();
        if g.is_pure() {
            let v = phi.evaluate(&g)?;
            let ceil = v.ceil().to_integer();
            if ceil > best {
                best = ceil;
            }
        }
    }
    Ok(best + 1)
}

/// The parameter of the introductory example,
/// `#K2 − #K3 + #paw + 2 #diamond + 4 #K4`, which is nonnegative on all graphs.
pub fn example_f(caps: &Caps) -> MotifParameter<Graph> {
    use crate::graph::named::named_graph;
    let terms = [("K2", 1), ("K3", -1), ("paw", 1), ("diamond", 2), ("K4", 4)]
        .map(|(name, c)| (named_graph(name).expect("known name"), integer(c)));
    MotifParameter::from_patterns((), terms, caps).expect("small patterns canonicalize")
}

/// `(n/d)` reduced, with `d > 0`; helper for callers handling raw fractions.
pub fn reduced(num: &BigInt, den: &BigInt) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    let g = num.gcd(den);
    let (mut n, mut d) = (num / &g, den / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    Ok(BigRational::new_raw(n, d))
}
