//! N-sets: predicates, completion, divisible minimal elements and upward closure.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{Divisor, Mask, Signature};
use crate::Limits;

/// A canonical set of divisors of `N`, each greater than 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorFamily {
    n: usize,
    members: Vec<Divisor>,
    radicals: Vec<Mask>,
}

/// Certificates for the N-set predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSetReport {
    pub is_nset: bool,
    pub is_maximal: bool,
    pub coprime_witness: Option<(Divisor, Divisor)>,
    pub extension_witness: Option<Divisor>,
}

impl DivisorFamily {
    pub fn empty(n: usize) -> DivisorFamily {
        DivisorFamily {
            n,
            members: Vec::new(),
            radicals: Vec::new(),
        }
    }

    /// Sorts and deduplicates; rejects the divisor 1 and mismatched lengths.
    pub fn new(n: usize, divisors: impl IntoIterator<Item = Divisor>) -> Result<DivisorFamily> {
        let set: BTreeSet<Divisor> = divisors.into_iter().collect();
        for d in &set {
            if d.n() != n {
                return Err(Error::invalid(format!(
                    "divisor {:?} has {} exponents, expected {n}",
                    d.exps(),
                    d.n()
                )));
            }
            if d.is_one() {
                return Err(Error::invalid("the divisor 1 cannot belong to a family"));
            }
        }
        Ok(DivisorFamily::from_sorted(n, set.into_iter().collect()))
    }

    /// Family of squarefree divisors with the given supports.
    pub fn from_masks(n: usize, masks: impl IntoIterator<Item = Mask>) -> Result<DivisorFamily> {
        DivisorFamily::new(n, masks.into_iter().map(|m| Divisor::squarefree(n, m)))
    }

    fn from_sorted(n: usize, members: Vec<Divisor>) -> DivisorFamily {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let radicals = members.iter().map(Divisor::radical).collect();
        DivisorFamily {
            n,
            members,
            radicals,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Divisor] {
        &self.members
    }

    pub fn radicals(&self) -> &[Mask] {
        &self.radicals
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, d: &Divisor) -> bool {
        self.members.binary_search(d).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Divisor> {
        self.members.iter()
    }

    /// `A`: the supports of the squarefree members.
    pub fn squarefree_part(&self) -> Vec<Mask> {
        let mut out: Vec<Mask> = self
            .members
            .iter()
            .zip(&self.radicals)
            .filter(|(d, _)| d.is_squarefree())
            .map(|(_, &r)| r)
            .collect();
        out.sort_unstable();
        out
    }

    /// Pairwise non-coprimality, with the first violating pair in canonical order.
    pub fn is_nset(&self) -> NSetReport {
        let index = RadicalIndex::new(self.n, &self.radicals);
        let witness = self
            .radicals
            .iter()
            .position(|&r| index.has_disjoint(r))
            .map(|i| {
                let r = self.radicals[i];
                let j = (i + 1..self.members.len())
                    .find(|&j| !self.radicals[j].intersects(r))
                    .expect("the first member with a coprime partner precedes it");
                (self.members[i].clone(), self.members[j].clone())
            });
        NSetReport {
            is_nset: witness.is_none(),
            is_maximal: false,
            coprime_witness: witness,
            extension_witness: None,
        }
    }

    /// Whether no divisor `l > 1` of `N` outside the family can be added.
    ///
    /// Addability only depends on the radical of `l`, so the test is run
    /// against the distinct member radicals.
    pub fn is_maximal(&self, sig: &Signature, limits: &Limits) -> Result<NSetReport> {
        self.check_signature(sig)?;
        let mut report = self.is_nset();
        if !report.is_nset {
            return Ok(report);
        }
        let index = RadicalIndex::new(self.n, &self.radicals);
        for l in sig.divisors(limits)?.into_iter().skip(1) {
            if !index.has_disjoint(l.radical()) && !self.contains(&l) {
                report.extension_witness = Some(l);
                return Ok(report);
            }
        }
        report.is_maximal = true;
        Ok(report)
    }

    /// Greedy completion: scans divisors in canonical order and keeps every
    /// one compatible with the members collected so far. One of possibly many
    /// maximal supersets.
    pub fn maximalize(&self, sig: &Signature, limits: &Limits) -> Result<DivisorFamily> {
        self.check_signature(sig)?;
        let report = self.is_nset();
        if let Some((a, b)) = report.coprime_witness {
            return Err(Error::Precondition(format!(
                "family is not an N-set: {} and {} are coprime",
                sig.show(&a),
                sig.show(&b)
            )));
        }
        let mut radicals: Vec<Mask> = self.radicals.clone();
        radicals.sort_unstable();
        radicals.dedup();
        let mut out = Vec::with_capacity(self.len());
        for l in sig.divisors(limits)?.into_iter().skip(1) {
            if self.contains(&l) {
                out.push(l);
                continue;
            }
            let r = l.radical();
            if radicals.iter().all(|&m| m.intersects(r)) {
                if let Err(at) = radicals.binary_search(&r) {
                    radicals.insert(at, r);
                }
                out.push(l);
            }
        }
        Ok(DivisorFamily::from_sorted(self.n, out))
    }

    /// `d(F)`: members not properly divisible by another member.
    pub fn minimal_elements(&self) -> DivisorFamily {
        let keep: Vec<Divisor> = self
            .members
            .iter()
            .enumerate()
            .filter(|&(i, d)| {
                !self.members.iter().enumerate().any(|(j, e)| {
                    j != i && self.radicals[j].is_subset_of(self.radicals[i]) && e.divides(d)
                })
            })
            .map(|(_, d)| d.clone())
            .collect();
        DivisorFamily::from_sorted(self.n, keep)
    }

    /// `R(T, N)`: divisors of `N` divisible by at least one member.
    pub fn upward_closure(&self, sig: &Signature, limits: &Limits) -> Result<DivisorFamily> {
        self.check_signature(sig)?;
        if let Some(d) = self.members.iter().find(|d| !sig.contains(d)) {
            return Err(Error::Precondition(format!(
                "{:?} does not divide N {}",
                d.exps(),
                sig
            )));
        }
        let members = sig
            .divisors(limits)?
            .into_iter()
            .skip(1)
            .filter(|l| self.members.iter().any(|t| t.divides(l)))
            .collect();
        Ok(DivisorFamily::from_sorted(self.n, members))
    }

    /// Every divisor of `N > 1` whose radical is in `radicals`.
    pub fn lift(sig: &Signature, radicals: &[Mask], limits: &Limits) -> Result<DivisorFamily> {
        let mut table = vec![false; 1usize << sig.n()];
        for r in radicals {
            table[r.0 as usize] = true;
        }
        let members = sig
            .divisors(limits)?
            .into_iter()
            .skip(1)
            .filter(|l| table[l.radical().0 as usize])
            .collect();
        Ok(DivisorFamily::from_sorted(sig.n(), members))
    }

    fn check_signature(&self, sig: &Signature) -> Result<()> {
        if sig.n() != self.n {
            return Err(Error::invalid(format!(
                "family over {} primes used with signature {}",
                self.n, sig
            )));
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a DivisorFamily {
    type Item = &'a Divisor;
    type IntoIter = std::slice::Iter<'a, Divisor>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Answers "is some stored radical disjoint from `r`?".
///
/// Small sets are scanned directly; larger ones get a subset-sum table over
/// all `2^n` masks so each query is a lookup.
struct RadicalIndex {
    n: usize,
    list: Vec<Mask>,
    has_subset: Option<Vec<bool>>,
}

impl RadicalIndex {
    fn new(n: usize, radicals: &[Mask]) -> RadicalIndex {
        let mut list = radicals.to_vec();
        list.sort_unstable();
        list.dedup();
        let table_cost = (n as u64 + 1) << n;
        let has_subset = if (list.len() as u64).pow(2) > table_cost {
            let mut t = vec![false; 1usize << n];
            for r in &list {
                t[r.0 as usize] = true;
            }
            for bit in 0..n {
                for x in 0..t.len() {
                    if x >> bit & 1 == 1 && t[x ^ (1 << bit)] {
                        t[x] = true;
                    }
                }
            }
            Some(t)
        } else {
            None
        };
        RadicalIndex {
            n,
            list,
            has_subset,
        }
    }

    fn has_disjoint(&self, r: Mask) -> bool {
        match &self.has_subset {
            Some(t) => t[r.complement(self.n).0 as usize],
            None => self.list.iter().any(|m| !m.intersects(r)),
        }
    }
}
