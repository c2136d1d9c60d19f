//! Relational structures over mixed types and their conversion to ordered
//! set-relational structures.
//!
//! Entries are stored normalized: set and multiset entries sorted (multisets
//! keep repeats), list entries as given.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{next_permutation, ColoredGraph, Graph};
use crate::motif::Motif;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Set,
    Multiset,
    /// Tuples with pairwise distinct entries.
    ListNoRep,
    /// Arbitrary tuples.
    ListRep,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Set => "set",
            Variant::Multiset => "multiset",
            Variant::ListNoRep => "list_norep",
            Variant::ListRep => "list_rep",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "set" => Ok(Variant::Set),
            "multiset" => Ok(Variant::Multiset),
            "list_norep" => Ok(Variant::ListNoRep),
            "list_rep" => Ok(Variant::ListRep),
            _ => Err(Error::Parse(format!("unknown relation variant {s:?}"))),
        }
    }

    fn is_list(&self) -> bool {
        matches!(self, Variant::ListNoRep | Variant::ListRep)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub arity: usize,
    pub variant: Variant,
}

impl Slot {
    pub fn new(arity: usize, variant: Variant) -> Result<Self> {
        if arity == 0 {
            return Err(Error::TypeMismatch("relation arity must be positive".into()));
        }
        Ok(Slot { arity, variant })
    }

    pub fn set(arity: usize) -> Self {
        Slot::new(arity, Variant::Set).expect("positive arity")
    }

    fn normalize(&self, entry: &[usize]) -> Vec<usize> {
        let mut e = entry.to_vec();
        if !self.variant.is_list() {
            e.sort_unstable();
        }
        e
    }

    /// Every entry this slot admits over `0..n`, normalized and sorted.
    pub fn all_entries(&self, n: usize) -> Vec<Vec<usize>> {
        let k = self.arity;
        let mut out = Vec::new();
        let mut cur = vec![0; k];
        fn rec(slot: &Slot, n: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            let lo = match slot.variant {
                Variant::Set if i > 0 => cur[i - 1] + 1,
                Variant::Multiset if i > 0 => cur[i - 1],
                _ => 0,
            };
            for v in lo..n {
                if slot.variant == Variant::ListNoRep && cur[..i].contains(&v) {
                    continue;
                }
                cur[i] = v;
                rec(slot, n, i + 1, cur, out);
            }
        }
        rec(self, n, 0, &mut cur, &mut out);
        out
    }

    fn validate(&self, entry: &[usize], n: usize) -> Result<()> {
        if entry.len() != self.arity {
            return Err(Error::TypeMismatch(format!(
                "entry {entry:?} has length {}, slot arity is {}",
                entry.len(),
                self.arity
            )));
        }
        if let Some(&v) = entry.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidVertex { vertex: v, n });
        }
        if matches!(self.variant, Variant::Set | Variant::ListNoRep) {
            let distinct: BTreeSet<_> = entry.iter().collect();
            if distinct.len() != entry.len() {
                return Err(Error::TypeMismatch(format!(
                    "{} entry {entry:?} repeats a vertex",
                    self.variant.as_str()
                )));
            }
        }
        Ok(())
    }
}

/// The list of relation slots with their arities and variants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedType(pub Vec<Slot>);

impl MixedType {
    pub fn new(slots: Vec<Slot>) -> Self {
        MixedType(slots)
    }

    /// A plain type: every slot a set relation.
    pub fn sets(arities: &[usize]) -> Self {
        MixedType(arities.iter().map(|&k| Slot::set(k)).collect())
    }

    pub fn slots(&self) -> &[Slot] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A structure on vertices `0..n`, optionally ordered by vertex index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RelStructure {
    ty: MixedType,
    n: usize,
    relations: Vec<BTreeSet<Vec<usize>>>,
    ordered: bool,
}

impl fmt::Debug for RelStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RelStructure(n={}, ordered={}, {:?})", self.n, self.ordered, self.relations)
    }
}

impl RelStructure {
    pub fn new(ty: MixedType, n: usize, ordered: bool) -> Self {
        let relations = vec![BTreeSet::new(); ty.len()];
        RelStructure {
            ty,
            n,
            relations,
            ordered,
        }
    }

    pub fn from_entries(
        ty: MixedType,
        n: usize,
        ordered: bool,
        relations: &[Vec<Vec<usize>>],
    ) -> Result<Self> {
        if relations.len() != ty.len() {
            return Err(Error::TypeMismatch(format!(
                "{} relations given for a type with {} slots",
                relations.len(),
                ty.len()
            )));
        }
        let mut s = RelStructure::new(ty, n, ordered);
        for (i, entries) in relations.iter().enumerate() {
            for e in entries {
                s.insert(i, e)?;
            }
        }
        Ok(s)
    }

    pub fn insert(&mut self, slot: usize, entry: &[usize]) -> Result<()> {
        let s = *self
            .ty
            .0
            .get(slot)
            .ok_or_else(|| Error::TypeMismatch(format!("no relation slot {slot}")))?;
        s.validate(entry, self.n)?;
        self.relations[slot].insert(s.normalize(entry));
        Ok(())
    }

    pub fn contains(&self, slot: usize, entry: &[usize]) -> bool {
        self.relations[slot].contains(&self.ty.0[slot].normalize(entry))
    }

    pub fn mixed_type(&self) -> &MixedType {
        &self.ty
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn relations(&self) -> &[BTreeSet<Vec<usize>>] {
        &self.relations
    }

    pub fn with_order(&self, ordered: bool) -> Self {
        RelStructure {
            ordered,
            ..self.clone()
        }
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let relations = self
            .ty
            .0
            .iter()
            .zip(&self.relations)
            .map(|(slot, entries)| {
                entries
                    .iter()
                    .map(|e| slot.normalize(&e.iter().map(|&v| perm[v]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        RelStructure {
            relations,
            ..self.clone()
        }
    }

    /// Substructure on the given vertices, relabeled by rank.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut rank = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            rank[v] = i;
        }
        let relations = self
            .ty
            .0
            .iter()
            .zip(&self.relations)
            .map(|(slot, entries)| {
                entries
                    .iter()
                    .filter(|e| e.iter().all(|&v| rank[v] != usize::MAX))
                    .map(|e| slot.normalize(&e.iter().map(|&v| rank[v]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        RelStructure {
            ty: self.ty.clone(),
            n: vs.len(),
            relations,
            ordered: self.ordered,
        }
    }

    /// Appends `k` vertices that are padding for `p`.
    pub fn add_padding_vertices(&self, p: &[bool], k: usize) -> Result<Self> {
        self.check_profile(p)?;
        let mut out = RelStructure {
            n: self.n + k,
            ..self.clone()
        };
        for (i, slot) in self.ty.0.iter().enumerate() {
            if p[i] {
                for e in slot.all_entries(self.n + k) {
                    if e.iter().any(|&v| v >= self.n) {
                        out.relations[i].insert(e);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_profile(&self, p: &[bool]) -> Result<()> {
        if p.len() != self.ty.len() {
            return Err(Error::TypeMismatch(format!(
                "padding profile of length {} for {} slots",
                p.len(),
                self.ty.len()
            )));
        }
        Ok(())
    }

    /// `v` lies in no entry of the slots with `p_i = 0` and in every possible
    /// entry of the slots with `p_i = 1`.
    pub fn is_padding(&self, v: usize, p: &[bool]) -> Result<bool> {
        if v >= self.n {
            return Err(Error::InvalidVertex { vertex: v, n: self.n });
        }
        self.check_profile(p)?;
        Ok(self.ty.0.iter().enumerate().all(|(i, slot)| {
            let present = self.relations[i].iter().filter(|e| e.contains(&v)).count();
            if p[i] {
                present == possible_entries_with(slot, self.n)
            } else {
                present == 0
            }
        }))
    }

    pub fn is_pure(&self, p: &[bool]) -> Result<bool> {
        for v in 0..self.n {
            if self.is_padding(v, p)? {
                return Ok(false);
            }
        }
        self.check_profile(p)?;
        Ok(true)
    }

    /// Every two distinct vertices appear together in some entry.
    pub fn is_irreducible(&self) -> bool {
        let mut together = vec![vec![false; self.n]; self.n];
        for entries in &self.relations {
            for e in entries {
                for &u in e {
                    for &v in e {
                        together[u][v] = true;
                    }
                }
            }
        }
        (0..self.n).all(|u| (0..u).all(|v| together[u][v]))
    }

    /// Canonical key: the literal structure when ordered, otherwise the
    /// smallest relabeling.
    pub fn key(&self, caps: &Caps) -> Result<RelKey> {
        if self.ordered {
            return Ok(RelKey::literal(self));
        }
        let cap = caps.enum_unordered;
        if self.n > cap {
            return Err(Error::cap("relational canonical form", self.n, cap));
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best = RelKey::literal(self);
        loop {
            let k = RelKey::literal(&self.relabel(&perm));
            if k < best {
                best = k;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(best)
    }

    pub fn disjoint_union(ty: &MixedType, ordered: bool, parts: &[RelStructure]) -> Self {
        let mut out = RelStructure::new(ty.clone(), parts.iter().map(|p| p.n).sum(), ordered);
        let mut offset = 0;
        for p in parts {
            for (i, entries) in p.relations.iter().enumerate() {
                for e in entries {
                    out.relations[i].insert(e.iter().map(|&v| v + offset).collect());
                }
            }
            offset += p.n;
        }
        out
    }

    /// Samples each admissible entry independently with probability `density`.
    pub fn random(ty: &MixedType, n: usize, ordered: bool, density: f64, rng: &mut impl Rng) -> Self {
        let mut s = RelStructure::new(ty.clone(), n, ordered);
        for (i, slot) in ty.0.iter().enumerate() {
            for e in slot.all_entries(n) {
                if rng.gen_bool(density) {
                    s.relations[i].insert(e);
                }
            }
        }
        s
    }
}

/// Number of admissible entries over `n` vertices that contain a fixed vertex.
fn possible_entries_with(slot: &Slot, n: usize) -> usize {
    let total = |m: usize| -> usize {
        let k = slot.arity;
        match slot.variant {
            Variant::Set => binom(m, k),
            Variant::Multiset => binom(m + k - 1, k),
            Variant::ListNoRep => (0..k).map(|i| m.saturating_sub(i)).product(),
            Variant::ListRep => m.pow(k as u32),
        }
    };
    if n == 0 {
        return 0;
    }
    total(n) - total(n - 1)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sorted relation lists under a fixed labeling; ordered by vertex count
/// first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelKey {
    n: usize,
    relations: Vec<Vec<Vec<usize>>>,
}

impl RelKey {
    fn literal(s: &RelStructure) -> Self {
        RelKey {
            n: s.n,
            relations: s
                .relations
                .iter()
                .map(|r| r.iter().cloned().collect())
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn structure(&self, ty: &MixedType, ordered: bool) -> RelStructure {
        RelStructure {
            ty: ty.clone(),
            n: self.n,
            relations: self
                .relations
                .iter()
                .map(|r| r.iter().cloned().collect())
                .collect(),
            ordered,
        }
    }
}

fn check_same_kind(a: &RelStructure, b: &RelStructure) -> Result<()> {
    if a.ty != b.ty {
        return Err(Error::TypeMismatch(format!("{:?} vs {:?}", a.ty, b.ty)));
    }
    if a.ordered != b.ordered {
        return Err(Error::TypeMismatch("ordered and unordered structures mixed".into()));
    }
    Ok(())
}

/// Number of vertex subsets `S` of `target` with `target[S] ≅ pattern`.
pub fn indsub_struct(pattern: &RelStructure, target: &RelStructure, caps: &Caps) -> Result<u64> {
    check_same_kind(pattern, target)?;
    let k = pattern.n;
    let n = target.n;
    if k > n {
        return Ok(0);
    }
    if n > 63 {
        return Err(Error::cap("induced substructure count", n, 63));
    }
    let key = pattern.key(caps)?;
    let mut count = 0;
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        if target.induced(&subset).key(caps)? == key {
            count += 1;
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    Ok(count)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
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

/// Injective (order-preserving, when ordered) maps sending every entry of
/// `pattern` to an entry of `target`.
pub fn has_embedding(pattern: &RelStructure, target: &RelStructure) -> Result<bool> {
    check_same_kind(pattern, target)?;
    let k = pattern.n;
    // entries checked as soon as their largest vertex is placed
    let mut due: Vec<Vec<(usize, &Vec<usize>)>> = vec![Vec::new(); k];
    for (i, entries) in pattern.relations.iter().enumerate() {
        for e in entries {
            if let Some(&m) = e.iter().max() {
                due[m].push((i, e));
            }
        }
    }
    fn rec(
        i: usize,
        image: &mut Vec<usize>,
        used: &mut [bool],
        due: &[Vec<(usize, &Vec<usize>)>],
        target: &RelStructure,
    ) -> bool {
        if i == due.len() {
            return true;
        }
        let lo = if target.ordered {
            image.last().map_or(0, |&x| x + 1)
        } else {
            0
        };
        for x in lo..target.n {
            if used[x] {
                continue;
            }
            image.push(x);
            let ok = due[i].iter().all(|(slot, e)| {
                let mapped: Vec<usize> = e.iter().map(|&v| image[v]).collect();
                target.contains(*slot, &mapped)
            });
            if ok {
                used[x] = true;
                let found = rec(i + 1, image, used, due, target);
                used[x] = false;
                if found {
                    return true;
                }
            }
            image.pop();
        }
        false
    }
    Ok(rec(0, &mut Vec::new(), &mut vec![false; target.n], &due, target))
}

/// True iff `a` contains no (not necessarily induced) copy of a member of
/// `forbidden`.
pub fn forb_check(a: &RelStructure, forbidden: &[RelStructure]) -> Result<bool> {
    for f in forbidden {
        if has_embedding(f, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that adding any single entry to a member of `family` yields a
/// structure isomorphic to a member; by induction this is upwards closure.
/// Returns the first violating extension.
pub fn upward_closure_violation(
    family: &[RelStructure],
    caps: &Caps,
) -> Result<Option<RelStructure>> {
    let keys: BTreeSet<RelKey> = family.iter().map(|f| f.key(caps)).collect::<Result<_>>()?;
    for f in family {
        for (i, slot) in f.ty.0.iter().enumerate() {
            for e in slot.all_entries(f.n) {
                if f.relations[i].contains(&e) {
                    continue;
                }
                let mut bigger = f.clone();
                bigger.relations[i].insert(e);
                if !keys.contains(&bigger.key(caps)?) {
                    return Ok(Some(bigger));
                }
            }
        }
    }
    Ok(None)
}

/// How a converted set slot relates to its source slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlotTag {
    Plain,
    /// Multiplicities of the distinct vertices in increasing vertex order.
    Composition(Vec<usize>),
    /// `ranks[i]` is the rank of the `i`-th tuple entry among the distinct
    /// entries (a total order for tuples without repeats, a total preorder
    /// otherwise).
    Ranks(Vec<usize>),
}

/// The set-relational type produced by `conv`, with one `(source slot, tag)`
/// per produced slot, in a fixed order.
pub fn conv_type(ty: &MixedType) -> (MixedType, Vec<(usize, SlotTag)>) {
    let mut slots = Vec::new();
    let mut tags = Vec::new();
    for (i, slot) in ty.0.iter().enumerate() {
        let k = slot.arity;
        match slot.variant {
            Variant::Set => {
                slots.push(Slot::set(k));
                tags.push((i, SlotTag::Plain));
            }
            Variant::Multiset => {
                for c in compositions(k) {
                    slots.push(Slot::set(c.len()));
                    tags.push((i, SlotTag::Composition(c)));
                }
            }
            Variant::ListNoRep => {
                let mut p: Vec<usize> = (0..k).collect();
                loop {
                    slots.push(Slot::set(k));
                    tags.push((i, SlotTag::Ranks(p.clone())));
                    if !next_permutation(&mut p) {
                        break;
                    }
                }
            }
            Variant::ListRep => {
                for r in preorders(k) {
                    let m = r.iter().max().map_or(0, |&x| x + 1);
                    slots.push(Slot::set(m));
                    tags.push((i, SlotTag::Ranks(r)));
                }
            }
        }
    }
    (MixedType(slots), tags)
}

/// Compositions of `k` in lexicographic order.
fn compositions(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=k {
        for mut rest in compositions(k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Dense rank vectors of length `k` (surjective onto `0..m`), lexicographic.
fn preorders(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut v = vec![0; k];
    loop {
        let m = v.iter().max().map_or(0, |&x| x + 1);
        if (0..m).all(|r| v.contains(&r)) {
            out.push(v.clone());
        }
        // odometer over {0..k-1}^k
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] + 1 < k {
                v[i] += 1;
                for x in &mut v[i + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

fn dense_ranks(entry: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let distinct: Vec<usize> = entry.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let ranks = entry
        .iter()
        .map(|v| distinct.binary_search(v).expect("present"))
        .collect();
    (ranks, distinct)
}

/// Rewrites an ordered mixed structure as an ordered set-relational one.
pub fn conv(a: &RelStructure) -> Result<RelStructure> {
    if !a.ordered {
        return Err(Error::NotOrdered);
    }
    let (ty, tags) = conv_type(&a.ty);
    let mut out = RelStructure::new(ty, a.n, true);
    for (target, (src, tag)) in tags.iter().enumerate() {
        for e in &a.relations[*src] {
            let (ranks, distinct) = dense_ranks(e);
            let matches = match tag {
                SlotTag::Plain => true,
                SlotTag::Composition(c) => {
                    let mult: Vec<usize> = distinct
                        .iter()
                        .map(|v| e.iter().filter(|&&x| x == *v).count())
                        .collect();
                    mult == *c
                }
                SlotTag::Ranks(r) => ranks == *r,
            };
            if matches {
                out.relations[target].insert(distinct);
            }
        }
    }
    Ok(out)
}

/// Inverse of `conv` for structures of the converted type of `source`.
pub fn conv_inverse(c: &RelStructure, source: &MixedType) -> Result<RelStructure> {
    if !c.ordered {
        return Err(Error::NotOrdered);
    }
    let (ty, tags) = conv_type(source);
    if c.ty != ty {
        return Err(Error::TypeMismatch(
            "structure is not of the converted type".into(),
        ));
    }
    let mut out = RelStructure::new(source.clone(), c.n, true);
    for (slot, (src, tag)) in tags.iter().enumerate() {
        for set in &c.relations[slot] {
            let entry: Vec<usize> = match tag {
                SlotTag::Plain => set.clone(),
                SlotTag::Composition(comp) => set
                    .iter()
                    .zip(comp)
                    .flat_map(|(&v, &m)| std::iter::repeat_n(v, m))
                    .collect(),
                SlotTag::Ranks(r) => r.iter().map(|&i| set[i]).collect(),
            };
            out.relations[*src].insert(entry);
        }
    }
    Ok(out)
}

/// The type `(2, 1, …, 1)` encoding graphs colored from `0..palette`: one
/// unary slot per color except color 0.
pub fn colored_type(palette: u8) -> MixedType {
    let mut arities = vec![2];
    arities.extend(std::iter::repeat_n(1, palette.saturating_sub(1) as usize));
    MixedType::sets(&arities)
}

pub fn encode_colored(g: &ColoredGraph) -> RelStructure {
    let mut s = RelStructure::new(colored_type(g.palette()), g.n(), false);
    for (u, v) in g.graph().edges() {
        s.relations[0].insert(vec![u, v]);
    }
    for (v, &c) in g.colors().iter().enumerate() {
        if c > 0 {
            s.relations[c as usize].insert(vec![v]);
        }
    }
    s
}

/// Decodes a structure of `colored_type(palette)`; vertices in more than
/// one unary relation are rejected.
pub fn decode_colored(s: &RelStructure, palette: u8) -> Result<ColoredGraph> {
    if s.ty != colored_type(palette) {
        return Err(Error::TypeMismatch("not a colored-graph encoding".into()));
    }
    let mut g = Graph::new(s.n);
    for e in &s.relations[0] {
        g.add_edge(e[0], e[1])?;
    }
    let mut colors = vec![0u8; s.n];
    for c in 1..palette as usize {
        for e in &s.relations[c] {
            if colors[e[0]] != 0 {
                return Err(Error::Precondition(format!("vertex {} has two colors", e[0])));
            }
            colors[e[0]] = c as u8;
        }
    }
    ColoredGraph::new(g, colors, palette)
}

/// Single-vertex structures carrying two or more colors; excluding them
/// leaves exactly the colored graphs.
pub fn colored_forbidden(palette: u8) -> Vec<RelStructure> {
    let ty = colored_type(palette);
    let unary = palette.saturating_sub(1) as usize;
    (0u32..1 << unary)
        .filter(|m| m.count_ones() >= 2)
        .map(|m| {
            let mut s = RelStructure::new(ty.clone(), 1, false);
            for c in 0..unary {
                if m >> c & 1 == 1 {
                    s.relations[c + 1].insert(vec![0]);
                }
            }
            s
        })
        .collect()
}

impl Motif for RelStructure {
    type Universe = (MixedType, bool);
    type Key = RelKey;
    const KIND: &'static str = "relational";

    fn universe(&self) -> (MixedType, bool) {
        (self.ty.clone(), self.ordered)
    }
    fn key(&self, caps: &Caps) -> Result<RelKey> {
        RelStructure::key(self, caps)
    }
    fn from_key(key: &RelKey, (ty, ordered): &(MixedType, bool)) -> Self {
        key.structure(ty, *ordered)
    }
    fn key_vertex_count(key: &RelKey) -> usize {
        key.n
    }
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn indsub(pattern: &Self, target: &Self) -> Result<u64> {
        indsub_struct(pattern, target, &Caps::default())
    }
    /// Purity for the all-zero profile: no vertex outside every relation.
    fn is_pure(&self) -> bool {
        RelStructure::is_pure(self, &vec![false; self.ty.len()]).expect("profile matches type")
    }
    fn induced_mask(&self, mask: u64) -> Self {
        let vs: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        self.induced(&vs)
    }
    fn disjoint_union((ty, ordered): &(MixedType, bool), parts: &[Self]) -> Self {
        RelStructure::disjoint_union(ty, *ordered, parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting;
    use crate::graph::named::named_graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn caps() -> Caps {
        Caps::default()
    }

    fn graph_struct(g: &Graph) -> RelStructure {
        let edges: Vec<Vec<usize>> = g.edges().into_iter().map(|(u, v)| vec![u, v]).collect();
        RelStructure::from_entries(MixedType::sets(&[2]), g.n(), false, &[edges]).unwrap()
    }

    fn digraph(n: usize, arcs: &[(usize, usize)], ordered: bool) -> RelStructure {
        let arcs: Vec<Vec<usize>> = arcs.iter().map(|&(u, v)| vec![u, v]).collect();
        RelStructure::from_entries(
            MixedType::new(vec![Slot::new(2, Variant::ListNoRep).unwrap()]),
            n,
            ordered,
            &[arcs],
        )
        .unwrap()
    }

    #[test]
    fn edge_in_triangle() {
        let k2 = graph_struct(&named_graph("K2").unwrap());
        let k3 = graph_struct(&named_graph("K3").unwrap());
        assert_eq!(indsub_struct(&k2, &k3, &caps()).unwrap(), 3);
    }

    #[test]
    fn arcs_in_two_cycle() {
        let arc = digraph(2, &[(1, 0)], false);
        let two_cycle = digraph(2, &[(0, 1), (1, 0)], false);
        assert_eq!(indsub_struct(&arc, &two_cycle, &caps()).unwrap(), 0);
        // every arc is a (non-induced) copy
        assert!(has_embedding(&arc, &two_cycle).unwrap());
        let path = digraph(3, &[(0, 1), (1, 2)], false);
        assert_eq!(indsub_struct(&arc, &path, &caps()).unwrap(), 2);
        let ordered_back = digraph(2, &[(1, 0)], true);
        let ordered_path = digraph(3, &[(0, 1), (2, 1)], true);
        assert_eq!(indsub_struct(&ordered_back, &ordered_path, &caps()).unwrap(), 1);
    }

    #[test]
    fn empty_pattern_counts_once() {
        let empty = RelStructure::new(MixedType::sets(&[2]), 0, false);
        let k3 = graph_struct(&named_graph("K3").unwrap());
        assert_eq!(indsub_struct(&empty, &k3, &caps()).unwrap(), 1);
        assert_eq!(indsub_struct(&empty, &empty, &caps()).unwrap(), 1);
    }

    #[test]
    fn counts_match_graph_counts() {
        let graphs = ["K1", "K2", "I2", "P3", "K3", "paw", "C4", "diamond"];
        for a in graphs {
            for b in graphs {
                let (ga, gb) = (named_graph(a).unwrap(), named_graph(b).unwrap());
                assert_eq!(
                    indsub_struct(&graph_struct(&ga), &graph_struct(&gb), &caps()).unwrap(),
                    counting::indsub(&ga, &gb).unwrap(),
                    "{a} in {b}"
                );
            }
        }
    }

    #[test]
    fn type_mismatch() {
        let a = graph_struct(&named_graph("K2").unwrap());
        let b = digraph(2, &[(0, 1)], false);
        assert!(matches!(indsub_struct(&a, &b, &caps()), Err(Error::TypeMismatch(_))));
        assert!(matches!(
            indsub_struct(&a, &a.with_order(true), &caps()),
            Err(Error::TypeMismatch(_))
        ));
    }

    #[test]
    fn padding_examples() {
        let g = graph_struct(&Graph::disjoint_union(&[
            named_graph("K2").unwrap(),
            named_graph("K1").unwrap(),
        ]));
        assert!(g.is_padding(2, &[false]).unwrap());
        assert!(!g.is_padding(0, &[false]).unwrap());
        assert!(!g.is_pure(&[false]).unwrap());
        let star = graph_struct(&Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap());
        assert!(star.is_padding(0, &[true]).unwrap());
        assert!(!star.is_padding(1, &[true]).unwrap());
        assert!(matches!(star.is_padding(3, &[true]), Err(Error::InvalidVertex { .. })));

        let colored =
            ColoredGraph::new(Graph::from_edges(3, &[(0, 1)]).unwrap(), vec![1, 2, 0], 3).unwrap();
        let enc = encode_colored(&colored);
        assert!(enc.is_padding(2, &[false; 3]).unwrap());
        assert!(!enc.is_padding(0, &[false; 3]).unwrap());
    }

    #[test]
    fn padding_entry_counts() {
        for variant in [Variant::Set, Variant::Multiset, Variant::ListNoRep, Variant::ListRep] {
            for k in 1..=3 {
                let slot = Slot::new(k, variant).unwrap();
                for n in 1..=4 {
                    let with_zero =
                        slot.all_entries(n).iter().filter(|e| e.contains(&0)).count();
                    assert_eq!(possible_entries_with(&slot, n), with_zero, "{variant:?} {k} {n}");
                }
            }
        }
    }

    #[test]
    fn padding_vertices_leave_pure_counts_alone() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ty = MixedType::new(vec![
            Slot::new(2, Variant::Set).unwrap(),
            Slot::new(2, Variant::ListRep).unwrap(),
        ]);
        for p in [[false, false], [true, false], [false, true], [true, true]] {
            for _ in 0..10 {
                let a = RelStructure::random(&ty, 3, true, 0.5, &mut rng);
                let b = RelStructure::random(&ty, 2, true, 0.5, &mut rng);
                if !b.is_pure(&p).unwrap() {
                    continue;
                }
                let padded = a.add_padding_vertices(&p, 1).unwrap();
                assert!(padded.is_padding(3, &p).unwrap());
                assert_eq!(
                    indsub_struct(&b, &a, &caps()).unwrap(),
                    indsub_struct(&b, &padded, &caps()).unwrap()
                );
            }
        }
    }

    #[test]
    fn irreducibility() {
        assert!(graph_struct(&named_graph("K3").unwrap()).is_irreducible());
        assert!(!graph_struct(&named_graph("I2").unwrap()).is_irreducible());
        assert!(RelStructure::new(MixedType::sets(&[2]), 1, false).is_irreducible());
    }

    #[test]
    fn forbidden_triangles() {
        let k3 = graph_struct(&named_graph("K3").unwrap());
        assert!(forb_check(&graph_struct(&named_graph("C5").unwrap()), std::slice::from_ref(&k3)).unwrap());
        assert!(!forb_check(&graph_struct(&named_graph("K4").unwrap()), std::slice::from_ref(&k3)).unwrap());
        assert!(forb_check(&graph_struct(&named_graph("K4").unwrap()), &[]).unwrap());
        // a diamond contains K3 as a plain subgraph too
        assert!(!forb_check(&graph_struct(&named_graph("diamond").unwrap()), &[k3]).unwrap());
    }

    #[test]
    fn upward_closure_validator() {
        assert_eq!(upward_closure_violation(&colored_forbidden(4), &caps()).unwrap(), None);
        let p3 = graph_struct(&named_graph("P3").unwrap());
        let violation = upward_closure_violation(&[p3], &caps()).unwrap().unwrap();
        assert_eq!(violation.key(&caps()).unwrap(), graph_struct(&named_graph("K3").unwrap()).key(&caps()).unwrap());
    }

    #[test]
    fn colored_encoding_round_trip_and_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(0..5);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let colors = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let target = ColoredGraph::new(g, colors, 3).unwrap();
            let enc = encode_colored(&target);
            assert_eq!(decode_colored(&enc, 3).unwrap(), target);
            assert!(forb_check(&enc, &colored_forbidden(3)).unwrap());
            for mask in 0u64..1 << n.min(3) {
                let pattern = target.induced_mask(mask);
                assert_eq!(
                    indsub_struct(&encode_colored(&pattern), &enc, &caps()).unwrap(),
                    counting::indsub_colored(&pattern, &target).unwrap()
                );
            }
        }
    }

    #[test]
    fn conv_entries() {
        let ms = MixedType::new(vec![Slot::new(2, Variant::Multiset).unwrap()]);
        let (ty, tags) = conv_type(&ms);
        assert_eq!(tags, vec![(0, SlotTag::Composition(vec![1, 1])), (0, SlotTag::Composition(vec![2]))]);
        assert_eq!(ty, MixedType::sets(&[2, 1]));
        let loop_ = RelStructure::from_entries(ms.clone(), 2, true, &[vec![vec![1, 1]]]).unwrap();
        let c = conv(&loop_).unwrap();
        assert!(c.relations()[0].is_empty());
        assert!(c.contains(1, &[1]));

        let arc = digraph(2, &[(1, 0)], true);
        let (_, tags) = conv_type(arc.mixed_type());
        let c = conv(&arc).unwrap();
        let slot = tags.iter().position(|(_, t)| *t == SlotTag::Ranks(vec![1, 0])).unwrap();
        assert!(c.contains(slot, &[0, 1]));
        assert_eq!(c.relations().iter().map(|r| r.len()).sum::<usize>(), 1);
        assert_eq!(conv(&arc.with_order(false)), Err(Error::NotOrdered));
    }

    #[test]
    fn tag_counts() {
        assert_eq!(compositions(3).len(), 4);
        // ordered Bell numbers
        assert_eq!(preorders(1).len(), 1);
        assert_eq!(preorders(2).len(), 3);
        assert_eq!(preorders(3).len(), 13);
    }

    #[test]
    fn conv_round_trip_and_counts() {
        let ty = MixedType::new(vec![
            Slot::new(2, Variant::Multiset).unwrap(),
            Slot::new(2, Variant::ListNoRep).unwrap(),
            Slot::new(3, Variant::ListRep).unwrap(),
            Slot::new(1, Variant::Set).unwrap(),
        ]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = RelStructure::random(&ty, rng.gen_range(0..5), true, 0.3, &mut rng);
            let c = conv(&a).unwrap();
            assert_eq!(conv_inverse(&c, &ty).unwrap(), a);
            let evens: Vec<usize> = (0..a.n()).step_by(2).collect();
            let b = a.induced(&evens);
            assert_eq!(
                indsub_struct(&b, &a, &caps()).unwrap(),
                indsub_struct(&conv(&b).unwrap(), &c, &caps()).unwrap()
            );
        }
    }

    #[test]
    fn invalid_entries() {
        let mut s = RelStructure::new(MixedType::sets(&[2]), 3, false);
        assert!(matches!(s.insert(0, &[1, 1]), Err(Error::TypeMismatch(_))));
        assert!(matches!(s.insert(0, &[0, 3]), Err(Error::InvalidVertex { .. })));
        assert!(matches!(s.insert(0, &[0]), Err(Error::TypeMismatch(_))));
        assert!(Slot::new(0, Variant::Set).is_err());
    }
}
