//! The oracle counting game at desk scale.
//!
//! A graph on `j` vertices is hidden behind an edge oracle over binary labels
//! of `⌈log2 j⌉` bits. A query strategy reads a nondeterministic witness
//! string and adaptively asks the oracle about label pairs; its accepting
//! witness strings are the accepting computation paths. Nondeterminism is
//! simulated by running every witness string.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{CanonicalKey, Graph, OrderedGraph};
use crate::motif::{Motif, MotifParameter};

/// Witness strings longer than this are not enumerated.
pub const MAX_WITNESS_BITS: usize = 20;

/// Bits per vertex label.
pub fn label_bits(j: usize) -> usize {
    if j <= 1 {
        0
    } else {
        (usize::BITS - (j - 1).leading_zeros()) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleGraph {
    graph: Graph,
}

impl OracleGraph {
    pub fn new(graph: Graph) -> Self {
        OracleGraph { graph }
    }

    pub fn j(&self) -> usize {
        self.graph.n()
    }

    /// Edge query; symmetric, and 0 for equal or out-of-range labels.
    pub fn query(&self, u: usize, v: usize) -> bool {
        u != v && u < self.j() && v < self.j() && self.graph.has_edge(u, v)
    }

    pub fn decode(&self) -> &Graph {
        &self.graph
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Query(usize, usize),
    Accept,
    Reject,
}

/// A deterministic program given its witness string and the answers so far.
pub trait QueryStrategy: Sync {
    fn witness_length(&self, j: usize) -> usize;
    fn query_budget(&self, j: usize) -> usize;
    fn step(&self, j: usize, witness: &[bool], answers: &[(usize, usize, bool)]) -> Step;
}

/// One computation path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub witness: Vec<bool>,
    pub queries: Vec<(usize, usize, bool)>,
    pub accepted: bool,
}

impl Trace {
    /// Labels touched by some query.
    pub fn queried(&self) -> BTreeSet<usize> {
        self.queries.iter().flat_map(|&(u, v, _)| [u, v]).collect()
    }

    pub fn witness_string(&self) -> String {
        self.witness.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// `witness  u-v:a ...  -> perceived`
    pub fn log_line(&self, perceived: Option<&[usize]>) -> String {
        let mut s = self.witness_string();
        if s.is_empty() {
            s.push('-');
        }
        for &(u, v, a) in &self.queries {
            let _ = write!(s, " {u}-{v}:{}", u8::from(a));
        }
        match perceived {
            Some(p) => {
                let _ = write!(s, " -> {p:?}");
            }
            None => s.push_str(" -> top"),
        }
        s
    }
}

fn run(s: &dyn QueryStrategy, o: &OracleGraph, witness: Vec<bool>) -> Result<Trace> {
    let j = o.j();
    let budget = s.query_budget(j);
    let mut queries = Vec::new();
    loop {
        match s.step(j, &witness, &queries) {
            Step::Accept => {
                return Ok(Trace {
                    witness,
                    queries,
                    accepted: true,
                })
            }
            Step::Reject => {
                return Ok(Trace {
                    witness,
                    queries,
                    accepted: false,
                })
            }
            Step::Query(u, v) => {
                if queries.len() == budget {
                    let t = Trace {
                        witness,
                        queries,
                        accepted: false,
                    };
                    return Err(Error::BudgetExceeded {
                        budget,
                        witness: t.witness_string(),
                    });
                }
                queries.push((u, v, o.query(u, v)));
            }
        }
    }
}

/// Runs every witness string; returns the accepting traces in witness order.
pub fn count_accepting(s: &dyn QueryStrategy, o: &OracleGraph) -> Result<Vec<Trace>> {
    let len = s.witness_length(o.j());
    if len > MAX_WITNESS_BITS {
        return Err(Error::cap("witness length", len, MAX_WITNESS_BITS));
    }
    let traces: Vec<Option<Trace>> = (0u64..1 << len)
        .into_par_iter()
        .map(|code| {
            let witness = (0..len).map(|i| code >> (len - 1 - i) & 1 == 1).collect();
            run(s, o, witness).map(|t| t.accepted.then_some(t))
        })
        .collect::<Result<_>>()?;
    Ok(traces.into_iter().flatten().collect())
}

/// Guesses `k` strictly increasing labels, queries every pair, and accepts
/// iff the observed graph matches the pattern (as an ordered graph when
/// `ordered`). Accepting paths correspond to induced copies.
#[derive(Debug, Clone)]
pub struct NaiveIndsub {
    pattern: Graph,
    key: CanonicalKey,
    ordered: bool,
    caps: Caps,
}

pub fn naive_indsub_strategy(pattern: &Graph, caps: &Caps) -> Result<NaiveIndsub> {
    Ok(NaiveIndsub {
        pattern: pattern.clone(),
        key: pattern.key(caps)?,
        ordered: false,
        caps: *caps,
    })
}

pub fn naive_indsub_strategy_ordered(pattern: &OrderedGraph) -> Result<NaiveIndsub> {
    Ok(NaiveIndsub {
        pattern: pattern.as_graph().clone(),
        key: CanonicalKey::literal(pattern.as_graph())?,
        ordered: true,
        caps: Caps::default(),
    })
}

impl NaiveIndsub {
    fn pairs(&self) -> Vec<(usize, usize)> {
        let k = self.pattern.n();
        (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect()
    }
}

impl QueryStrategy for NaiveIndsub {
    fn witness_length(&self, j: usize) -> usize {
        self.pattern.n() * label_bits(j)
    }

    fn query_budget(&self, _: usize) -> usize {
        let k = self.pattern.n();
        k * k.saturating_sub(1) / 2
    }

    fn step(&self, j: usize, witness: &[bool], answers: &[(usize, usize, bool)]) -> Step {
        let b = label_bits(j);
        let labels: Vec<usize> = witness
            .chunks(b.max(1))
            .take(self.pattern.n())
            .map(|c| c.iter().fold(0, |acc, &bit| acc << 1 | usize::from(bit)))
            .collect();
        let labels = if b == 0 { vec![0; self.pattern.n()] } else { labels };
        if labels.iter().any(|&x| x >= j) || labels.windows(2).any(|w| w[0] >= w[1]) {
            return Step::Reject;
        }
        let pairs = self.pairs();
        if let Some(&(a, c)) = pairs.get(answers.len()) {
            return Step::Query(labels[a], labels[c]);
        }
        let mut seen = Graph::new(self.pattern.n());
        for (&(a, c), &(_, _, edge)) in pairs.iter().zip(answers) {
            if edge {
                seen.set_edge(a, c);
            }
        }
        let matches = if self.ordered {
            seen == self.pattern
        } else {
            seen.key(&self.caps).is_ok_and(|k| k == self.key)
        };
        if matches {
            Step::Accept
        } else {
            Step::Reject
        }
    }
}

/// Queries one fixed label pair and accepts regardless of the answer.
#[derive(Debug, Clone, Copy)]
pub struct FixedPairProbe {
    pub u: usize,
    pub v: usize,
}

impl QueryStrategy for FixedPairProbe {
    fn witness_length(&self, _: usize) -> usize {
        0
    }

    fn query_budget(&self, _: usize) -> usize {
        1
    }

    fn step(&self, _: usize, _: &[bool], answers: &[(usize, usize, bool)]) -> Step {
        if answers.is_empty() {
            Step::Query(self.u, self.v)
        } else {
            Step::Accept
        }
    }
}

/// One induced subgraph `G[H]` of the root together with its instance.
#[derive(Debug, Clone)]
pub struct Instance {
    /// Vertices of the root kept in `H`, as a bitmask.
    pub subset: u64,
    pub oracle: OracleGraph,
    pub accepting: Vec<Trace>,
}

impl Instance {
    pub fn vertices(&self) -> Vec<usize> {
        (0..64).filter(|&v| self.subset >> v & 1 == 1).collect()
    }
}

/// The instantiation of every `H ⊑ G` (as a concrete vertex subset) inside
/// `j = |V(G)| · n` labels through the spreading map `xi`.
#[derive(Debug, Clone)]
pub struct SetInstantiator {
    pub root: OrderedGraph,
    pub n: usize,
    pub j: usize,
    pub xi: Vec<usize>,
    /// Indexed by subset mask.
    pub instances: Vec<Instance>,
    /// Attempts used by the builder (1 for a directly constructed instance).
    pub attempts: usize,
}

impl SetInstantiator {
    /// Instantiates every subset for a given spreading map.
    pub fn with_spreading(
        s: &dyn QueryStrategy,
        root: &OrderedGraph,
        n: usize,
        xi: Vec<usize>,
    ) -> Result<Self> {
        let k = root.n();
        if k > 16 {
            return Err(Error::cap("instantiated root", k, 16));
        }
        let j = k * n;
        if let Some(&bad) = xi.iter().find(|&&x| x >= j) {
            return Err(Error::InvalidVertex { vertex: bad, n: j });
        }
        if xi.len() != k || xi.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("spreading map must be strictly increasing".into()));
        }
        let instances = (0u64..1 << k)
            .map(|subset| {
                let oracle = OracleGraph::new(instance_graph(root, &xi, j, subset));
                let accepting = count_accepting(s, &oracle)?;
                Ok(Instance {
                    subset,
                    oracle,
                    accepting,
                })
            })
            .collect::<Result<_>>()?;
        Ok(SetInstantiator {
            root: root.clone(),
            n,
            j,
            xi,
            instances,
            attempts: 1,
        })
    }

    pub fn inst(&self, subset: u64) -> &Instance {
        &self.instances[subset as usize]
    }

    fn full(&self) -> u64 {
        (1u64 << self.root.n()) - 1
    }

    /// `ξ^{-1}(S_τ)` for a trace accepting on `inst(G)`, else `None` (top).
    pub fn perc(&self, t: &Trace) -> Option<u64> {
        let full = self.inst(self.full());
        if !full.accepting.iter().any(|a| a.witness == t.witness) {
            return None;
        }
        Some(self.preimage(t))
    }

    fn preimage(&self, t: &Trace) -> u64 {
        let queried = t.queried();
        self.xi
            .iter()
            .enumerate()
            .filter(|(_, x)| queried.contains(x))
            .fold(0, |acc, (v, _)| acc | 1 << v)
    }

    /// Checks both defining properties for every subset of the root.
    pub fn verify(&self, phi: &MotifParameter<OrderedGraph>) -> Result<VerifyReport> {
        let mut violations = Vec::new();
        let full = self.inst(self.full());
        for inst in &self.instances {
            let h = inst.subset;
            let here: BTreeSet<&Vec<bool>> = inst.accepting.iter().map(|t| &t.witness).collect();
            let predicted: BTreeSet<&Vec<bool>> = full
                .accepting
                .iter()
                .filter(|t| self.preimage(t) & !h == 0)
                .map(|t| &t.witness)
                .collect();
            for t in &inst.accepting {
                if !predicted.contains(&t.witness) {
                    violations.push(Violation::AcceptMismatch {
                        subset: inst.vertices(),
                        trace: t.clone(),
                        accepts_here: true,
                        perceived: self.perc(t).map(mask_vertices),
                    });
                }
            }
            for t in &full.accepting {
                if predicted.contains(&t.witness) && !here.contains(&t.witness) {
                    violations.push(Violation::AcceptMismatch {
                        subset: inst.vertices(),
                        trace: t.clone(),
                        accepts_here: false,
                        perceived: Some(mask_vertices(self.preimage(t))),
                    });
                }
            }
            let instantiated = phi.evaluate(&OrderedGraph::new(inst.oracle.decode().clone()))?;
            let direct = phi.evaluate(&Motif::induced_mask(&self.root, h))?;
            if instantiated != direct {
                violations.push(Violation::ValueMismatch {
                    subset: inst.vertices(),
                    instantiated: instantiated.to_string(),
                    direct: direct.to_string(),
                });
            }
        }
        Ok(VerifyReport { violations })
    }

    /// One line per accepting path on `inst(G)`.
    pub fn trace_log(&self) -> Vec<String> {
        self.inst(self.full())
            .accepting
            .iter()
            .map(|t| t.log_line(self.perc(t).map(mask_vertices).as_deref()))
            .collect()
    }
}

fn mask_vertices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

fn instance_graph(root: &OrderedGraph, xi: &[usize], j: usize, subset: u64) -> Graph {
    let mut g = Graph::new(j);
    for (u, v) in root.edges() {
        if subset >> u & 1 == 1 && subset >> v & 1 == 1 {
            g.set_edge(xi[u], xi[v]);
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Acceptance on `inst(H)` disagrees with `perc(τ) ⊆ H`.
    AcceptMismatch {
        subset: Vec<usize>,
        trace: Trace,
        accepts_here: bool,
        perceived: Option<Vec<usize>>,
    },
    ValueMismatch {
        subset: Vec<usize>,
        instantiated: String,
        direct: String,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::AcceptMismatch {
                subset,
                trace,
                accepts_here,
                perceived,
            } => write!(
                f,
                "H = {subset:?}: path {} {} but perceives {}",
                trace.log_line(None),
                if *accepts_here { "accepts" } else { "rejects" },
                perceived
                    .as_ref()
                    .map_or("top".to_string(), |p| format!("{p:?}"))
            ),
            Violation::ValueMismatch {
                subset,
                instantiated,
                direct,
            } => write!(f, "H = {subset:?}: value {instantiated} on the instance, {direct} directly"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples `ξ̂ : V(G) → {0..n-1}`, spreads the `i`-th vertex to `i·n + ξ̂(v)`
/// and verifies; on failure doubles `n` and resamples, at most
/// `max_attempts` times.
pub fn build_set_instantiator(
    s: &dyn QueryStrategy,
    root: &OrderedGraph,
    phi: &MotifParameter<OrderedGraph>,
    seed: u64,
    n_start: usize,
    max_attempts: usize,
) -> Result<SetInstantiator> {
    if !phi.is_pure() {
        return Err(Error::Precondition("parameter has an impure pattern".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = n_start.max(1);
    let mut last = String::from("no attempt made");
    for attempt in 1..=max_attempts {
        let xi: Vec<usize> = (0..root.n()).map(|i| i * n + rng.gen_range(0..n)).collect();
        let mut si = SetInstantiator::with_spreading(s, root, n, xi)?;
        let report = si.verify(phi)?;
        if report.ok() {
            si.attempts = attempt;
            return Ok(si);
        }
        last = report.violations[0].to_string();
        n *= 2;
    }
    Err(Error::RetriesExhausted {
        attempts: max_attempts,
        reason: last,
    })
}
