//! Evaluation matrices, coefficient recovery and witness graphs.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::motif::{Motif, MotifParameter, Verdict};

/// `A[i][j] = #index[i](index[j])` over a sorted key list. Since a pattern
/// only occurs in targets at least as large, `A` is unitriangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationMatrix<K> {
    pub index: Vec<K>,
    pub entries: Vec<Vec<u64>>,
}

impl<K> EvaluationMatrix<K> {
    pub fn is_unitriangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &a)| if i == j { a == 1 } else { i < j || a == 0 })
        })
    }
}

pub fn evaluation_matrix<M: Motif>(
    universe: &M::Universe,
    keys: &[M::Key],
) -> Result<EvaluationMatrix<M::Key>> {
    let index = sorted_unique(keys)?;
    let graphs: Vec<M> = index.iter().map(|k| M::from_key(k, universe)).collect();
    let entries = graphs
        .par_iter()
        .map(|row| graphs.iter().map(|col| M::indsub(row, col)).collect())
        .collect::<Result<_>>()?;
    Ok(EvaluationMatrix { index, entries })
}

fn sorted_unique<K: Ord + Clone>(keys: &[K]) -> Result<Vec<K>> {
    let mut index = keys.to_vec();
    index.sort();
    if index.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateKey);
    }
    Ok(index)
}

/// The unique parameter supported on `support` taking the given values there.
/// `support` must contain every induced substructure of its members.
pub fn recover_coefficients<M: Motif>(
    universe: &M::Universe,
    values: &BTreeMap<M::Key, BigRational>,
    support: &[M::Key],
    caps: &Caps,
) -> Result<MotifParameter<M>> {
    let index = sorted_unique(support)?;
    let members: BTreeSet<&M::Key> = index.iter().collect();
    for (i, key) in index.iter().enumerate() {
        let g = M::from_key(key, universe);
        let n = g.vertex_count();
        let full = (1u64 << n) - 1;
        for v in 0..n {
            if !members.contains(&g.induced_mask(full & !(1 << v)).key(caps)?) {
                return Err(Error::SupportNotDownwardClosed(i));
            }
        }
    }
    let vals = index
        .iter()
        .enumerate()
        .map(|(i, k)| values.get(k).cloned().ok_or(Error::MissingValue(i)))
        .collect::<Result<Vec<_>>>()?;
    let matrix = evaluation_matrix::<M>(universe, &index)?;
    // v_j = Σ_{i ≤ j} α_i A[i][j], solved in increasing j
    let mut alpha: Vec<BigRational> = Vec::with_capacity(index.len());
    for j in 0..index.len() {
        let mut a = vals[j].clone();
        for (i, ai) in alpha.iter().enumerate() {
            let entry = matrix.entries[i][j];
            if entry != 0 {
                a -= ai * BigRational::from_integer(BigInt::from(entry));
            }
        }
        alpha.push(a);
    }
    Ok(MotifParameter::from_terms(
        universe.clone(),
        index.into_iter().zip(alpha),
    ))
}

/// Classes of induced substructures of the disjoint union of `patterns`
/// having at most `max_vertices` vertices, sorted. Each such class is a
/// disjoint union of one induced substructure per pattern.
pub fn union_poset<M: Motif>(
    universe: &M::Universe,
    patterns: &[M],
    max_vertices: usize,
    caps: &Caps,
) -> Result<Vec<M::Key>> {
    let empty = M::disjoint_union(universe, &[]);
    let mut current: BTreeMap<M::Key, M> = BTreeMap::new();
    current.insert(empty.key(caps)?, empty);
    for p in patterns {
        let n = p.vertex_count();
        if n > 63 {
            return Err(Error::cap("union poset pattern", n, 63));
        }
        let mut subs: BTreeMap<M::Key, M> = BTreeMap::new();
        for mask in 0u64..1 << n {
            if mask.count_ones() as usize <= max_vertices {
                let s = p.induced_mask(mask);
                subs.entry(s.key(caps)?).or_insert(s);
            }
        }
        let mut next = BTreeMap::new();
        for u in current.values() {
            for s in subs.values() {
                if u.vertex_count() + s.vertex_count() <= max_vertices {
                    let joined = M::disjoint_union(universe, &[u.clone(), s.clone()]);
                    next.entry(joined.key(caps)?).or_insert(joined);
                }
            }
        }
        current = next;
    }
    Ok(current.into_keys().collect())
}

#[derive(Debug, Clone)]
pub struct WitnessGraph<M: Motif> {
    pub key: M::Key,
    pub graph: M,
    pub phi_value: BigRational,
    pub psi_value: BigRational,
}

/// Scans the pure classes of the union poset of `supp(phi)` up to the largest
/// pattern size, in key order, for the first `W` with `psi(W) ≠ phi(W)`.
///
/// If `psi` agrees with a good parameter supported on pure classes, one
/// exists: at the smallest class where the two coefficient maps differ (at
/// the latest the offending pattern of `phi`), the values differ too.
pub fn find_witness<M: Motif>(
    phi: &MotifParameter<M>,
    psi: impl Fn(&M) -> Result<BigRational>,
    caps: &Caps,
) -> Result<WitnessGraph<M>> {
    if !phi.is_pure() {
        return Err(Error::Precondition("parameter has an impure pattern".into()));
    }
    if phi.classify().verdict == Verdict::Good {
        return Err(Error::Precondition(
            "parameter has only nonnegative integer coefficients".into(),
        ));
    }
    let universe = phi.universe();
    let keys = union_poset(universe, &phi.patterns(), phi.max_pattern_size(), caps)?;
    for key in keys {
        let graph = M::from_key(&key, universe);
        if !graph.is_pure() {
            continue;
        }
        let phi_value = phi.evaluate(&graph)?;
        let psi_value = psi(&graph)?;
        if phi_value != psi_value {
            return Ok(WitnessGraph {
                key,
                graph,
                phi_value,
                psi_value,
            });
        }
    }
    Err(Error::NoWitnessFound)
}
