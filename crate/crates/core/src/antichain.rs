//! Maximal intersecting families on a `k`-element ground set and their
//! generating antichains.
//!
//! A maximal intersecting family picks exactly one set out of every
//! complement pair `{S, S^c}` and is pairwise intersecting; its minimal
//! elements form an antichain that is pairwise intersecting and covers every
//! non-empty set in the sense that each one is either disjoint from some
//! member or contains one. Every partial choice that is pairwise intersecting
//! extends to a full family, so the depth-first search below never dead-ends.
//!
//! Families are stored as a `u128` bitset over the `2^k` subsets, which caps
//! the ground set at [`MAX_GROUND`] elements.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::Mask;
use crate::Limits;

pub const MAX_GROUND: usize = 7;

/// Condition of the antichain characterization that a candidate fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TCondition {
    /// Two members are disjoint.
    Intersecting,
    /// One member contains another.
    Antichain,
    /// Some non-empty set is neither disjoint from a member nor above one.
    Cover,
}

impl TCondition {
    pub fn tag(self) -> &'static str {
        match self {
            TCondition::Intersecting => "a",
            TCondition::Antichain => "b",
            TCondition::Cover => "c",
        }
    }
}

/// Checks the three antichain conditions; `None` when all hold.
pub fn t_conditions(k: usize, sets: &[Mask]) -> Result<Option<TCondition>> {
    if k == 0 || k > 31 {
        return Err(Error::invalid(format!("ground set size {k} out of range")));
    }
    let full = Mask::full(k);
    if let Some(m) = sets.iter().find(|m| m.is_empty() || !m.is_subset_of(full)) {
        return Err(Error::invalid(format!(
            "mask {} is empty or outside a {k}-element ground set",
            m.0
        )));
    }
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if !a.intersects(*b) {
                return Ok(Some(TCondition::Intersecting));
            }
        }
    }
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if i != j && a.is_subset_of(*b) {
                return Ok(Some(TCondition::Antichain));
            }
        }
    }
    for x in 1..=full.0 {
        let x = Mask(x);
        if !sets.iter().any(|&t| !t.intersects(x) || t.is_subset_of(x)) {
            return Ok(Some(TCondition::Cover));
        }
    }
    Ok(None)
}

/// Pairwise-intersecting antichain satisfying the cover condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectingAntichain {
    k: usize,
    bits: u128,
}

impl IntersectingAntichain {
    /// Validates `sets` against all three conditions.
    pub fn from_sets(k: usize, sets: &[Mask]) -> Result<IntersectingAntichain> {
        if k == 0 || k > MAX_GROUND {
            return Err(Error::invalid(format!(
                "ground set size {k} outside 1..={MAX_GROUND}"
            )));
        }
        if let Some(c) = t_conditions(k, sets)? {
            return Err(Error::invalid(format!("sets fail condition ({})", c.tag())));
        }
        let bits = sets.iter().fold(0u128, |acc, m| acc | 1u128 << m.0);
        Ok(IntersectingAntichain { k, bits })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn sets(&self) -> Vec<Mask> {
        bit_indices(self.bits).map(|i| Mask(i as u32)).collect()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn upward_closure(&self) -> MaximalIntersectingFamily {
        let t = Tables::new(self.k);
        let chosen = bit_indices(self.bits).fold(0u128, |acc, m| acc | t.supersets[m]);
        MaximalIntersectingFamily { k: self.k, chosen }
    }

    /// Image under the ground-set relabeling `i -> perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> IntersectingAntichain {
        IntersectingAntichain {
            k: self.k,
            bits: relabel_bits(self.bits, perm),
        }
    }
}

impl Ord for IntersectingAntichain {
    /// By cardinality, then lexicographically on the ascending mask lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.k
            .cmp(&other.k)
            .then_with(|| canonical_cmp(self.bits, other.bits))
    }
}

impl PartialOrd for IntersectingAntichain {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One set chosen from each complement pair, pairwise intersecting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MaximalIntersectingFamily {
    k: usize,
    chosen: u128,
}

impl MaximalIntersectingFamily {
    pub fn from_bits(k: usize, chosen: u128) -> MaximalIntersectingFamily {
        MaximalIntersectingFamily { k, chosen }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bits(&self) -> u128 {
        self.chosen
    }

    pub fn masks(&self) -> Vec<Mask> {
        bit_indices(self.chosen).map(|i| Mask(i as u32)).collect()
    }

    pub fn contains(&self, m: Mask) -> bool {
        self.chosen >> m.0 & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.chosen.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.chosen == 0
    }

    pub fn minimal_elements(&self) -> IntersectingAntichain {
        let t = Tables::new(self.k);
        IntersectingAntichain {
            k: self.k,
            bits: t.minimal(self.chosen),
        }
    }

    pub fn relabel(&self, perm: &[usize]) -> MaximalIntersectingFamily {
        MaximalIntersectingFamily {
            k: self.k,
            chosen: relabel_bits(self.chosen, perm),
        }
    }
}

/// All maximal intersecting families on `[k]`, ordered like their antichains.
pub fn enumerate_families(k: usize, limits: &Limits) -> Result<Vec<MaximalIntersectingFamily>> {
    let tables = checked_tables(k, limits)?;
    let mut bits = limits.install(|| search(&tables));
    bits.sort_unstable_by(|&a, &b| canonical_cmp(tables.minimal(a), tables.minimal(b)));
    Ok(bits
        .into_iter()
        .map(|chosen| MaximalIntersectingFamily { k, chosen })
        .collect())
}

/// All intersecting antichains on `[k]` satisfying the cover condition, canonically sorted.
pub fn enumerate_antichains(k: usize, limits: &Limits) -> Result<Vec<IntersectingAntichain>> {
    let tables = checked_tables(k, limits)?;
    let mut bits: Vec<u128> = limits
        .install(|| search(&tables))
        .into_iter()
        .map(|c| tables.minimal(c))
        .collect();
    bits.sort_unstable_by(|&a, &b| canonical_cmp(a, b));
    Ok(bits
        .into_iter()
        .map(|bits| IntersectingAntichain { k, bits })
        .collect())
}

/// Number of maximal intersecting families on `[k]`, without materializing them.
pub fn count_families(k: usize, limits: &Limits) -> Result<u64> {
    let tables = checked_tables(k, limits)?;
    Ok(limits.install(|| {
        prefixes(&tables)
            .into_par_iter()
            .map(|(depth, chosen)| {
                let mut count = 0u64;
                dfs(&tables, depth, chosen, &mut |_| count += 1);
                count
            })
            .sum()
    }))
}

fn checked_tables(k: usize, limits: &Limits) -> Result<Tables> {
    if k == 0 {
        return Err(Error::invalid("ground set must be non-empty"));
    }
    if k > MAX_GROUND {
        return Err(Error::invalid(format!(
            "ground sets above {MAX_GROUND} elements are not supported (got {k})"
        )));
    }
    if k > limits.antichain_k {
        return Err(Error::limit(
            format!("ground set of {k} elements"),
            limits.antichain_k as u64,
            "--max-k",
        ));
    }
    Ok(Tables::new(k))
}

/// Precomputed subset relations on `[k]`.
struct Tables {
    k: usize,
    /// Complement pairs as (smaller, larger) representatives, most constraining first.
    pairs: Vec<(u32, u32)>,
    disjoint: Vec<u128>,
    proper_subsets: Vec<u128>,
    supersets: Vec<u128>,
}

impl Tables {
    fn new(k: usize) -> Tables {
        assert!((1..=MAX_GROUND).contains(&k));
        let size = 1usize << k;
        let full = (size - 1) as u32;
        let mut disjoint = vec![0u128; size];
        let mut proper_subsets = vec![0u128; size];
        let mut supersets = vec![0u128; size];
        for s in 0..size as u32 {
            for t in 0..size as u32 {
                if s & t == 0 {
                    disjoint[s as usize] |= 1 << t;
                }
                if t & !s == 0 && t != s {
                    proper_subsets[s as usize] |= 1 << t;
                }
                if s & !t == 0 {
                    supersets[s as usize] |= 1 << t;
                }
            }
        }
        let mut pairs: Vec<(u32, u32)> = (1..full)
            .filter_map(|s| {
                let c = full & !s;
                let (a, b) = if (s.count_ones(), s) < (c.count_ones(), c) {
                    (s, c)
                } else {
                    (c, s)
                };
                (a == s).then_some((a, b))
            })
            .collect();
        pairs.sort_by_key(|&(a, _)| (a.count_ones(), a));
        Tables {
            k,
            pairs,
            disjoint,
            proper_subsets,
            supersets,
        }
    }

    fn full(&self) -> u32 {
        (1u32 << self.k) - 1
    }

    fn minimal(&self, chosen: u128) -> u128 {
        bit_indices(chosen)
            .filter(|&m| chosen & self.proper_subsets[m] == 0)
            .fold(0u128, |acc, m| acc | 1 << m)
    }
}

const SPLIT_DEPTH: usize = 10;

/// Partial assignments of the first few pairs, the units of parallel work.
fn prefixes(t: &Tables) -> Vec<(usize, u128)> {
    let depth = SPLIT_DEPTH.min(t.pairs.len());
    let mut frontier = vec![1u128 << t.full()];
    for &(a, b) in &t.pairs[..depth] {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for chosen in frontier {
            for s in [a, b] {
                if chosen & t.disjoint[s as usize] == 0 {
                    next.push(chosen | 1 << s);
                }
            }
        }
        frontier = next;
    }
    frontier.into_iter().map(|c| (depth, c)).collect()
}

fn dfs(t: &Tables, depth: usize, chosen: u128, emit: &mut impl FnMut(u128)) {
    match t.pairs.get(depth) {
        None => emit(chosen),
        Some(&(a, b)) => {
            for s in [a, b] {
                if chosen & t.disjoint[s as usize] == 0 {
                    dfs(t, depth + 1, chosen | 1 << s, emit);
                }
            }
        }
    }
}

fn search(t: &Tables) -> Vec<u128> {
    let chunks: Vec<Vec<u128>> = prefixes(t)
        .into_par_iter()
        .map(|(depth, chosen)| {
            let mut out = Vec::new();
            dfs(t, depth, chosen, &mut |c| out.push(c));
            out
        })
        .collect();
    chunks.concat()
}

/// Cardinality first; for equal size the set holding the lowest differing
/// element comes first, which is lexicographic order on sorted lists.
fn canonical_cmp(a: u128, b: u128) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        let x = a ^ b;
        if x == 0 {
            Ordering::Equal
        } else if a & x & x.wrapping_neg() != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

fn bit_indices(mut bits: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

fn relabel_bits(bits: u128, perm: &[usize]) -> u128 {
    bit_indices(bits).fold(0u128, |acc, s| {
        let image = Mask(s as u32).indices().fold(0u32, |m, i| m | 1 << perm[i]);
        acc | 1 << image
    })
}
