//! Two universes whose subobject counts have closed forms: subspaces of
//! finite vector spaces and parameter subsets of parameter sets.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Brute-force routines refuse ambient sets larger than this.
pub const BRUTE_FORCE_POINTS: u64 = 4096;

fn check_prime(p: u32) -> Result<()> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::InvalidRange(format!("{p} is not prime")));
    }
    Ok(())
}

/// `[n choose k]_p` by the product formula.
pub fn gaussian_binomial(n: usize, k: usize, p: u32) -> Result<BigUint> {
    if k > n {
        return Err(Error::InvalidRange(format!("k = {k} exceeds n = {n}")));
    }
    if p < 2 {
        return Err(Error::InvalidRange(format!("base {p} below 2")));
    }
    let q = BigUint::from(p);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    Ok(num / den)
}

/// A subspace of `F_p^d` held by its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VecSpace {
    p: u32,
    d: usize,
    basis: Vec<Vec<u32>>,
}

impl VecSpace {
    /// The span of `vectors` inside `F_p^d`.
    pub fn span(p: u32, d: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        check_prime(p)?;
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != d {
                return Err(Error::InvalidRange(format!(
                    "vector of length {} in dimension {d}",
                    v.len()
                )));
            }
            rows.push(v.iter().map(|x| x % p).collect());
        }
        Ok(VecSpace {
            p,
            d,
            basis: rref(rows, p),
        })
    }

    /// `F_p^d` itself.
    pub fn full(p: u32, d: usize) -> Result<Self> {
        let unit = (0..d)
            .map(|i| (0..d).map(|j| u32::from(i == j)).collect())
            .collect::<Vec<_>>();
        VecSpace::span(p, d, &unit)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Number of `k`-dimensional subspaces.
    pub fn count_subspaces(&self, k: usize) -> BigUint {
        gaussian_binomial(self.dim(), k, self.p).unwrap_or_default()
    }
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Reduced row-echelon form, zero rows dropped.
fn rref(mut rows: Vec<Vec<u32>>, p: u32) -> Vec<Vec<u32>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inverse_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u64 * inv as u64 % p as u64) as u32;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] as u64;
                for j in 0..cols {
                    let sub = f * rows[rank][j] as u64 % p as u64;
                    rows[r][j] = ((rows[r][j] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Enumerates every `k`-dimensional subspace of `F_p^d` as a distinct
/// reduced row-echelon matrix: choose pivot columns, fill the free entries.
pub fn enumerate_subspaces(d: usize, k: usize, p: u32) -> Result<Vec<VecSpace>> {
    check_prime(p)?;
    if k > d {
        return Err(Error::InvalidRange(format!("k = {k} exceeds d = {d}")));
    }
    let points = (p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    if points > BRUTE_FORCE_POINTS {
        return Err(Error::cap("subspace enumeration points", points as usize, BRUTE_FORCE_POINTS as usize));
    }
    let mut out = BTreeSet::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..d)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let combos = (p as u64).pow(free.len() as u32);
        for mut fill in 0..combos {
            let mut basis = vec![vec![0u32; d]; k];
            for (r, &c) in pivots.iter().enumerate() {
                basis[r][c] = 1;
            }
            for &(r, c) in &free {
                basis[r][c] = (fill % p as u64) as u32;
                fill /= p as u64;
            }
            out.insert(VecSpace { p, d, basis });
        }
        if !advance_combination(&mut pivots, d) {
            break;
        }
    }
    Ok(out.into_iter().collect())
}

pub fn count_subspaces_bruteforce(d: usize, k: usize, p: u32) -> Result<u64> {
    Ok(enumerate_subspaces(d, k, p)?.len() as u64)
}

fn advance_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `{n brace m}_r`: partitions of `{1..n}` into `m` blocks with `1..r` in
/// distinct blocks. Zero when `n < r` or `m < r`.
pub fn r_stirling(n: usize, m: usize, r: usize) -> BigUint {
    if n < r || m < r || m > n {
        return BigUint::zero();
    }
    // row[j] holds {i brace j}_r for the current i, starting at i = r
    let mut row = vec![BigUint::zero(); m + 1];
    row[r] = BigUint::one();
    for _ in r..n {
        let mut next = vec![BigUint::zero(); m + 1];
        for j in r..=m {
            next[j] = &row[j] * j;
            if j > r {
                next[j] += &row[j - 1];
            }
        }
        row = next;
    }
    row.swap_remove(m)
}

/// An `n`-parameter set in `A^N`: the points agreeing with `base` outside the
/// classes and constant on each class. Coordinates are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSet {
    alphabet: u32,
    base: Vec<u32>,
    classes: Vec<Vec<usize>>,
}

impl ParamSet {
    pub fn new(alphabet: u32, base: Vec<u32>, classes: Vec<Vec<usize>>) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidRange("empty alphabet".into()));
        }
        if let Some(&x) = base.iter().find(|&&x| x >= alphabet) {
            return Err(Error::InvalidRange(format!("letter {x} outside alphabet of size {alphabet}")));
        }
        let mut seen = BTreeSet::new();
        for class in &classes {
            if class.is_empty() {
                return Err(Error::InvalidRange("empty parameter class".into()));
            }
            for &i in class {
                if i >= base.len() {
                    return Err(Error::InvalidRange(format!("coordinate {i} outside 0..{}", base.len())));
                }
                if !seen.insert(i) {
                    return Err(Error::InvalidRange(format!("coordinate {i} in two classes")));
                }
            }
        }
        Ok(ParamSet {
            alphabet,
            base,
            classes,
        })
    }

    /// `A^n` with one coordinate per parameter.
    pub fn canonical(alphabet: u32, n: usize) -> Result<Self> {
        ParamSet::new(alphabet, vec![0; n], (0..n).map(|i| vec![i]).collect())
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn ambient_len(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn params(&self) -> usize {
        self.classes.len()
    }

    pub fn contains(&self, point: &[u32]) -> bool {
        if point.len() != self.base.len() {
            return false;
        }
        let mut in_class = vec![false; point.len()];
        for class in &self.classes {
            let first = point[class[0]];
            if class.iter().any(|&i| point[i] != first) {
                return false;
            }
            for &i in class {
                in_class[i] = true;
            }
        }
        (0..point.len()).all(|i| in_class[i] || point[i] == self.base[i])
    }

    /// The underlying point set, each point encoded in base `alphabet`.
    pub fn points(&self) -> BTreeSet<u64> {
        let a = self.alphabet as u64;
        let mut out = BTreeSet::new();
        let n = self.params();
        for mut choice in 0..a.pow(n as u32) {
            let mut point = self.base.clone();
            for class in &self.classes {
                let letter = (choice % a) as u32;
                choice /= a;
                for &i in class {
                    point[i] = letter;
                }
            }
            out.insert(encode_point(&point, self.alphabet));
        }
        out
    }

    /// Number of `m`-parameter subsets.
    pub fn count_subsets(&self, m: usize) -> BigUint {
        let a = self.alphabet as usize;
        r_stirling(a + self.params(), a + m, a)
    }
}

fn encode_point(point: &[u32], alphabet: u32) -> u64 {
    point.iter().rev().fold(0, |acc, &x| acc * alphabet as u64 + x as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Formula,
    BruteForce,
}

/// Number of `m`-parameter sets contained in `x`.
pub fn count_param_subsets(x: &ParamSet, m: usize, mode: CountMode) -> Result<BigUint> {
    match mode {
        CountMode::Formula => Ok(x.count_subsets(m)),
        CountMode::BruteForce => Ok(BigUint::from(enumerate_param_subsets(x, m)?.len())),
    }
}

/// Every `m`-parameter subset of `x`, as distinct point sets.
pub fn enumerate_param_subsets(x: &ParamSet, m: usize) -> Result<Vec<BTreeSet<u64>>> {
    let a = x.alphabet as u64;
    let big_n = x.ambient_len();
    let points = a.checked_pow(big_n as u32).unwrap_or(u64::MAX);
    let labelings = (m as u64 + 1).checked_pow(big_n as u32).unwrap_or(u64::MAX);
    if points > BRUTE_FORCE_POINTS || labelings.saturating_mul(points) > 1 << 24 {
        return Err(Error::cap("parameter set enumeration points", points as usize, BRUTE_FORCE_POINTS as usize));
    }
    let host = x.points();
    let mut found = BTreeSet::new();
    // label each coordinate with a class 1..=m or 0 for fixed
    for mut code in 0..labelings {
        let mut classes = vec![Vec::new(); m];
        let mut fixed = Vec::new();
        for i in 0..big_n {
            let label = (code % (m as u64 + 1)) as usize;
            code /= m as u64 + 1;
            if label == 0 {
                fixed.push(i);
            } else {
                classes[label - 1].push(i);
            }
        }
        if classes.iter().any(|c| c.is_empty()) {
            continue;
        }
        // only the fixed coordinates of the base point matter
        for mut b in 0..a.pow(fixed.len() as u32) {
            let mut base = vec![0u32; big_n];
            for &i in &fixed {
                base[i] = (b % a) as u32;
                b /= a;
            }
            let y = ParamSet {
                alphabet: x.alphabet,
                base,
                classes: classes.clone(),
            };
            let pts = y.points();
            if pts.is_subset(&host) {
                found.insert(pts);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// A target object for a dimension-indexed motif parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniverseObject {
    VecSpace(VecSpace),
    ParamSet(ParamSet),
}

/// `Σ_k α_k · #(k-dimensional subobjects of target)`; all subobjects of
/// equal dimension are isomorphic, so a parameter is a map `k ↦ α_k`.
pub fn evaluate_universe_motif(
    phi: &BTreeMap<usize, BigRational>,
    target: &UniverseObject,
) -> BigRational {
    phi.iter()
        .map(|(&k, coeff)| {
            let count = match target {
                UniverseObject::VecSpace(v) => v.count_subspaces(k),
                UniverseObject::ParamSet(x) => x.count_subsets(k),
            };
            coeff * BigRational::from_integer(count.into())
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::integer;

    /// Distinct spans of all k-tuples of vectors with exactly p^k points.
    fn span_oracle(d: usize, k: usize, p: u32) -> usize {
        let vectors: Vec<Vec<u32>> = (0..p.pow(d as u32))
            .map(|mut c| {
                (0..d)
                    .map(|_| {
                        let x = c % p;
                        c /= p;
                        x
                    })
                    .collect()
            })
            .collect();
        let mut spans: BTreeSet<BTreeSet<Vec<u32>>> = BTreeSet::new();
        let mut idx = vec![0usize; k];
        loop {
            // closure of the chosen generators under addition and scaling
            let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
            set.insert(vec![0; d]);
            let mut frontier: Vec<Vec<u32>> = vec![vec![0; d]];
            while let Some(v) = frontier.pop() {
                for &g in &idx {
                    for s in 1..p {
                        let w: Vec<u32> =
                            v.iter().zip(&vectors[g]).map(|(a, b)| (a + s * b) % p).collect();
                        if set.insert(w.clone()) {
                            frontier.push(w);
                        }
                    }
                }
            }
            if set.len() == p.pow(k as u32) as usize {
                spans.insert(set);
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return spans.len();
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < vectors.len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    /// Set partitions of 0..n into m blocks with 0..r in distinct blocks,
    /// by restricted growth strings.
    fn brute_r_stirling(n: usize, m: usize, r: usize) -> u64 {
        fn rec(i: usize, n: usize, r: usize, blocks: usize, m: usize, a: &mut Vec<usize>) -> u64 {
            if i == n {
                return u64::from(blocks == m);
            }
            let mut total = 0;
            for b in 0..=blocks.min(m.saturating_sub(1)) {
                if i < r && b != i {
                    continue;
                }
                a.push(b);
                total += rec(i + 1, n, r, blocks.max(b + 1), m, a);
                a.pop();
            }
            total
        }
        rec(0, n, r, 0, m, &mut Vec::new())
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_binomial(5, 0, 3).unwrap(), BigUint::one());
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(3, 1, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn subspace_counts_agree() {
        for p in [2, 3] {
            for d in 0..=4 {
                for k in 0..=d {
                    let formula = gaussian_binomial(d, k, p).unwrap();
                    let enumerated = count_subspaces_bruteforce(d, k, p).unwrap();
                    assert_eq!(formula, BigUint::from(enumerated), "p={p} d={d} k={k}");
                    assert_eq!(formula, gaussian_binomial(d, d - k, p).unwrap());
                }
            }
        }
        assert_eq!(count_subspaces_bruteforce(4, 2, 2).unwrap(), 35);
        assert_eq!(count_subspaces_bruteforce(3, 3, 3).unwrap(), 1);
        assert!(count_subspaces_bruteforce(13, 1, 2).is_err());
    }

    #[test]
    fn enumeration_matches_span_oracle() {
        for (d, k, p) in [(2, 1, 2), (3, 1, 2), (3, 2, 2), (4, 2, 2), (2, 1, 3), (3, 2, 3)] {
            assert_eq!(
                span_oracle(d, k, p),
                count_subspaces_bruteforce(d, k, p).unwrap() as usize,
                "d={d} k={k} p={p}"
            );
        }
    }

    #[test]
    fn echelon_spans() {
        let v = VecSpace::span(3, 3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 2]]).unwrap();
        assert_eq!(v.dim(), 2);
        assert_eq!(v.basis(), &[vec![1, 2, 0], vec![0, 0, 1]]);
        assert!(VecSpace::span(4, 2, &[]).is_err());
    }

    #[test]
    fn unitriangular_subspace_matrix() {
        for p in [2, 3] {
            for k in 0..=4 {
                for n in 0..=4 {
                    let entry = gaussian_binomial(n, k, p).unwrap_or_default();
                    if k == n {
                        assert_eq!(entry, BigUint::one());
                    } else if k > n {
                        assert!(entry.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn r_stirling_values() {
        assert_eq!(r_stirling(2, 2, 2), BigUint::one());
        assert_eq!(r_stirling(3, 2, 2), BigUint::from(2u32));
        assert_eq!(r_stirling(4, 3, 2), BigUint::from(5u32));
        assert_eq!(r_stirling(6, 6, 3), BigUint::one());
        assert!(r_stirling(1, 2, 2).is_zero());
        assert!(r_stirling(3, 1, 2).is_zero());
        for r in 0..=3 {
            for n in 0..=7 {
                for m in 0..=7 {
                    assert_eq!(
                        r_stirling(n, m, r),
                        BigUint::from(if n < r || m < r { 0 } else { brute_r_stirling(n, m, r) }),
                        "n={n} m={m} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn param_subset_counts_agree() {
        for n in 0..=3 {
            let x = ParamSet::canonical(2, n).unwrap();
            for m in 0..=n {
                let formula = count_param_subsets(&x, m, CountMode::Formula).unwrap();
                let brute = count_param_subsets(&x, m, CountMode::BruteForce).unwrap();
                assert_eq!(formula, brute, "n={n} m={m}");
            }
            assert_eq!(count_param_subsets(&x, n, CountMode::BruteForce).unwrap(), BigUint::one());
        }
        let x = ParamSet::canonical(2, 1).unwrap();
        assert_eq!(count_param_subsets(&x, 0, CountMode::BruteForce).unwrap(), BigUint::from(2u32));
        let x = ParamSet::canonical(2, 2).unwrap();
        assert_eq!(count_param_subsets(&x, 1, CountMode::Formula).unwrap(), BigUint::from(5u32));
    }

    #[test]
    fn embedded_param_sets() {
        // a 1-parameter set inside {0,1,2}^3 using two coordinates
        let x = ParamSet::new(3, vec![2, 0, 1], vec![vec![0, 2]]).unwrap();
        assert_eq!(x.points().len(), 3);
        assert!(x.contains(&[1, 0, 1]));
        assert!(!x.contains(&[1, 1, 1]));
        assert_eq!(
            count_param_subsets(&x, 0, CountMode::BruteForce).unwrap(),
            count_param_subsets(&x, 0, CountMode::Formula).unwrap()
        );
        assert!(ParamSet::new(2, vec![0, 0], vec![vec![0], vec![0, 1]]).is_err());
        assert!(ParamSet::new(2, vec![0, 0], vec![vec![]]).is_err());
    }

    #[test]
    fn universe_motifs() {
        let plane = UniverseObject::VecSpace(VecSpace::full(2, 2).unwrap());
        let phi = |terms: &[(usize, i64)]| -> BTreeMap<usize, BigRational> {
            terms.iter().map(|&(k, c)| (k, integer(c))).collect()
        };
        assert_eq!(evaluate_universe_motif(&phi(&[(1, 1)]), &plane), integer(3));
        assert_eq!(evaluate_universe_motif(&phi(&[(0, 1)]), &plane), integer(1));
        assert_eq!(evaluate_universe_motif(&phi(&[(1, 1), (2, -1)]), &plane), integer(2));
        assert_eq!(evaluate_universe_motif(&phi(&[(3, 1)]), &plane), integer(0));
        let x = UniverseObject::ParamSet(ParamSet::canonical(2, 2).unwrap());
        assert_eq!(evaluate_universe_motif(&phi(&[(0, 1), (1, 1)]), &x), integer(4 + 5));
    }
}
