//! Products and polynomials of induced counts rewritten as motif parameters.
//!
//! For factors `g_i(#a_i)` with `g_i(x) = x^e` or `binom(x, k)`, the
//! coefficient of `b` counts the ways to pick, for each factor, occurrences of
//! `a_i` in `b` (tuples for powers, sets for binomials) that jointly cover
//! `V(b)`. By inclusion-exclusion over the covered set `T ⊆ V(b)` this is
//! `Σ_T (-1)^{|V(b) \ T|} Π_i g_i(occ_i(T))`, where `occ_i(T)` counts the
//! occurrences of `a_i` inside `T`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::motif::{Enumerable, Motif, MotifParameter};
use crate::witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Terms are products `Π #a_i^{e_i}`.
    Monomial,
    /// Terms are products `Π binom(#a_i, k_i)`.
    Binomial,
}

impl Basis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Basis::Monomial => "monomial",
            Basis::Binomial => "binomial",
        }
    }

    fn apply(&self, x: &BigInt, e: u32) -> BigInt {
        match self {
            Basis::Monomial => num_traits::pow(x.clone(), e as usize),
            Basis::Binomial => binomial(x, e),
        }
    }
}

fn binomial(x: &BigInt, k: u32) -> BigInt {
    if *x < BigInt::from(k) {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (x - i) / (i + 1);
    }
    acc
}

/// A polynomial in the counts `#variables[i]`, keyed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountPolynomial<M: Motif> {
    pub universe: M::Universe,
    pub basis: Basis,
    pub variables: Vec<M::Key>,
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

impl<M: Motif> CountPolynomial<M> {
    pub fn new(universe: M::Universe, basis: Basis, variables: Vec<M::Key>) -> Self {
        CountPolynomial {
            universe,
            basis,
            variables,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `coeff` to the term with the given exponents (padded with zeros).
    pub fn add_term(&mut self, mut exponents: Vec<u32>, coeff: BigRational) -> Result<()> {
        if exponents.len() > self.variables.len() {
            return Err(Error::Precondition(format!(
                "{} exponents for {} variables",
                exponents.len(),
                self.variables.len()
            )));
        }
        exponents.resize(self.variables.len(), 0);
        let entry = self.terms.entry(exponents.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
        Ok(())
    }

    pub fn evaluate(&self, target: &M) -> Result<BigRational> {
        let counts = self
            .variables
            .iter()
            .map(|k| Ok(BigInt::from(M::indsub(&M::from_key(k, &self.universe), target)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut total = BigRational::zero();
        for (exps, coeff) in &self.terms {
            let mut prod = BigInt::one();
            for (x, &e) in counts.iter().zip(exps) {
                prod *= self.basis.apply(x, e);
            }
            total += coeff * BigRational::from_integer(prod);
        }
        Ok(total)
    }

    /// Largest `Σ e_i |a_i|` over the terms: no class beyond it can appear.
    pub fn degree_in_vertices(&self) -> usize {
        self.terms
            .keys()
            .map(|exps| {
                exps.iter()
                    .zip(&self.variables)
                    .map(|(&e, k)| e as usize * M::key_vertex_count(k))
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }
}

/// `Π_i #a_i` as a motif parameter.
pub fn linearize_product<M: Enumerable>(
    universe: &M::Universe,
    patterns: &[M::Key],
    caps: &Caps,
) -> Result<MotifParameter<M>> {
    let factors: Vec<(M::Key, u32)> = patterns.iter().map(|k| (k.clone(), 1)).collect();
    covering_combination(universe, Basis::Monomial, &factors, caps)
}

/// `binom(#a, k)` as a motif parameter.
pub fn linearize_binomial<M: Enumerable>(
    universe: &M::Universe,
    pattern: &M::Key,
    k: u32,
    caps: &Caps,
) -> Result<MotifParameter<M>> {
    covering_combination(universe, Basis::Binomial, &[(pattern.clone(), k)], caps)
}

pub fn linearize_polynomial<M: Enumerable>(
    p: &CountPolynomial<M>,
    caps: &Caps,
) -> Result<MotifParameter<M>> {
    let mut out = MotifParameter::new(p.universe.clone());
    for (exps, coeff) in &p.terms {
        let factors: Vec<(M::Key, u32)> = p
            .variables
            .iter()
            .zip(exps)
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| (k.clone(), e))
            .collect();
        let part = covering_combination(&p.universe, p.basis, &factors, caps)?;
        out = out.plus(&part.scale(coeff))?;
    }
    Ok(out)
}

/// Independent route: evaluate `p` on every class up to its vertex degree
/// and solve the triangular system for the coefficients.
pub fn linearize_by_interpolation<M: Enumerable>(
    p: &CountPolynomial<M>,
    caps: &Caps,
) -> Result<MotifParameter<M>> {
    let support = M::enumerate_upto(&p.universe, p.degree_in_vertices(), caps)?;
    let values = support
        .par_iter()
        .map(|k| Ok((k.clone(), p.evaluate(&M::from_key(k, &p.universe))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    witness::recover_coefficients(&p.universe, &values, &support, caps)
}

/// Bitmasks of the vertex sets of `target` inducing a copy of `pattern`.
pub fn occurrences<M: Motif>(pattern: &M::Key, target: &M, caps: &Caps) -> Result<Vec<u64>> {
    let n = target.vertex_count();
    let k = M::key_vertex_count(pattern);
    if n > 63 {
        return Err(Error::cap("occurrence masks", n, 63));
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize == k && target.induced_mask(mask).key(caps)? == *pattern {
            out.push(mask);
        }
    }
    Ok(out)
}

fn covering_combination<M: Enumerable>(
    universe: &M::Universe,
    basis: Basis,
    factors: &[(M::Key, u32)],
    caps: &Caps,
) -> Result<MotifParameter<M>> {
    let max_n: usize = factors
        .iter()
        .map(|(k, e)| *e as usize * M::key_vertex_count(k))
        .sum();
    let candidates = M::enumerate_upto(universe, max_n, caps)?;
    let coeffs: Vec<BigInt> = candidates
        .par_iter()
        .map(|key| covering_count::<M>(universe, basis, factors, key, caps))
        .collect::<Result<_>>()?;
    Ok(MotifParameter::from_terms(
        universe.clone(),
        candidates
            .into_iter()
            .zip(coeffs)
            .map(|(k, c)| (k, BigRational::from_integer(c))),
    ))
}

fn covering_count<M: Motif>(
    universe: &M::Universe,
    basis: Basis,
    factors: &[(M::Key, u32)],
    key: &M::Key,
    caps: &Caps,
) -> Result<BigInt> {
    let b = M::from_key(key, universe);
    let n = b.vertex_count();
    let full: u64 = (1u64 << n) - 1;
    let occ = factors
        .iter()
        .map(|(a, _)| occurrences::<M>(a, &b, caps))
        .collect::<Result<Vec<_>>>()?;
    let reachable = occ.iter().flatten().fold(0u64, |acc, m| acc | m);
    if reachable != full {
        return Ok(BigInt::zero());
    }
    let mut total = BigInt::zero();
    for t in 0u64..=full {
        let mut prod = BigInt::one();
        for (masks, (_, e)) in occ.iter().zip(factors) {
            let inside = masks.iter().filter(|&&m| m & !t == 0).count();
            prod *= basis.apply(&BigInt::from(inside), *e);
            if prod.is_zero() {
                break;
            }
        }
        if (n - t.count_ones() as usize).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}
