//! Exhaustive ground truth: every maximal N-set of a signature.
//!
//! Two independent engines. `RadicalLift` enumerates maximal intersecting
//! families on the `n` primes and lifts each to the lattice (a divisor belongs
//! iff its radical does). `DirectClique` runs Bron-Kerbosch on the
//! non-coprimality graph of all divisors `> 1`, knowing nothing about radicals.

use std::collections::BTreeMap;

use crate::antichain;
use crate::clique::{self, Graph, VertexOrder};
use crate::error::{Error, Result};
use crate::family::DivisorFamily;
use crate::lattice::{Mask, Signature};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    RadicalLift,
    DirectClique,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::RadicalLift => "radical-lift",
            Method::DirectClique => "direct-clique",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub signature: Signature,
    pub method: Method,
    pub total_maximal: u64,
    pub min_size: u64,
    pub min_count: u64,
    /// Family size -> number of maximal N-sets of that size.
    pub sizes: BTreeMap<u64, u64>,
    /// All maximal N-sets in canonical order, when under the materialization cap.
    pub families: Option<Vec<DivisorFamily>>,
}

impl OracleReport {
    /// The minimum-size families, when materialized.
    pub fn minimum_families(&self) -> Option<Vec<&DivisorFamily>> {
        self.families.as_ref().map(|fs| {
            fs.iter()
                .filter(|f| f.len() as u64 == self.min_size)
                .collect()
        })
    }
}

pub fn enumerate_maximal_nsets(
    sig: &Signature,
    method: Method,
    limits: &Limits,
) -> Result<OracleReport> {
    let (sizes_list, families) = match method {
        Method::RadicalLift => radical_lift(sig, limits)?,
        Method::DirectClique => direct_clique(sig, limits)?,
    };
    let mut sizes = BTreeMap::new();
    for &s in &sizes_list {
        *sizes.entry(s).or_insert(0u64) += 1;
    }
    let (&min_size, &min_count) = sizes
        .iter()
        .next()
        .ok_or_else(|| Error::TheoremViolation(format!("no maximal N-set found for {sig}")))?;
    Ok(OracleReport {
        signature: sig.clone(),
        method,
        total_maximal: sizes_list.len() as u64,
        min_size,
        min_count,
        sizes,
        families,
    })
}

/// `(min_size, min_count)`, asserting the minimum equals the closed-form bound.
pub fn min_maximal_nset_size(sig: &Signature, limits: &Limits) -> Result<(u64, u64)> {
    let report = enumerate_maximal_nsets(sig, Method::RadicalLift, limits)?;
    let bound = sig.min_size_bound()?;
    if report.min_size != bound {
        return Err(Error::TheoremViolation(format!(
            "least maximal N-set for {sig} has size {}, bound is {bound}",
            report.min_size
        )));
    }
    Ok((report.min_size, report.min_count))
}

type Enumerated = (Vec<u64>, Option<Vec<DivisorFamily>>);

fn radical_lift(sig: &Signature, limits: &Limits) -> Result<Enumerated> {
    if sig.n() > antichain::MAX_GROUND {
        return Err(Error::Invalid(format!(
            "radical-lift supports at most {} primes (got {})",
            antichain::MAX_GROUND,
            sig.n()
        )));
    }
    let cap = limits.radical_n;
    if sig.n() > cap {
        return Err(Error::limit(
            format!("radical-lift over {} primes", sig.n()),
            cap as u64,
            "--max-radical-n",
        ));
    }
    let inner = Limits {
        antichain_k: cap,
        ..*limits
    };
    let families = antichain::enumerate_families(sig.n(), &inner)?;
    let sizes: Vec<u64> = families
        .iter()
        .map(|f| f.masks().into_iter().map(|m| sig.alpha_weight(m)).sum())
        .collect();
    let total: u64 = sizes.iter().sum();
    let materialized = if total < limits.materialize && sig.divisor_count() <= limits.max_divisors {
        let mut lifted = families
            .iter()
            .map(|f| DivisorFamily::lift(sig, &f.masks(), limits))
            .collect::<Result<Vec<_>>>()?;
        lifted.sort();
        Some(lifted)
    } else {
        None
    };
    Ok((sizes, materialized))
}

fn direct_clique(sig: &Signature, limits: &Limits) -> Result<Enumerated> {
    if sig.divisor_count() > limits.direct_divisors {
        return Err(Error::limit(
            format!("direct clique search over {} divisors", sig.divisor_count()),
            limits.direct_divisors,
            "--max-direct",
        ));
    }
    let vertices: Vec<_> = sig.divisors(limits)?.into_iter().skip(1).collect();
    let radicals: Vec<Mask> = vertices.iter().map(|d| d.radical()).collect();
    let g = Graph::from_fn(vertices.len(), |i, j| radicals[i].intersects(radicals[j]));
    let mut sizes = Vec::new();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut total = 0u64;
    clique::maximal_cliques(&g, VertexOrder::Degeneracy, |c| {
        sizes.push(c.len() as u64);
        total += c.len() as u64;
        if total < limits.materialize {
            cliques.push(c.to_vec());
        }
    });
    let materialized = if total < limits.materialize {
        let mut fams = cliques
            .into_iter()
            .map(|c| DivisorFamily::new(sig.n(), c.into_iter().map(|i| vertices[i].clone())))
            .collect::<Result<Vec<_>>>()?;
        fams.sort();
        Some(fams)
    } else {
        None
    };
    Ok((sizes, materialized))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(e: &[u32]) -> Signature {
        Signature::new(e).unwrap()
    }

    #[test]
    fn two_primes() {
        let l = Limits::default();
        for method in [Method::RadicalLift, Method::DirectClique] {
            let r = enumerate_maximal_nsets(&sig(&[1, 1]), method, &l).unwrap();
            assert_eq!((r.total_maximal, r.min_size, r.min_count), (2, 2, 2));

            let r = enumerate_maximal_nsets(&sig(&[2, 1]), method, &l).unwrap();
            assert_eq!(r.total_maximal, 2);
            assert_eq!(r.sizes, BTreeMap::from([(3, 1), (4, 1)]));
            assert_eq!((r.min_size, r.min_count), (3, 1));
        }
    }

    #[test]
    fn four_twenty() {
        let l = Limits::default();
        let r = enumerate_maximal_nsets(&sig(&[2, 1, 1, 1]), Method::RadicalLift, &l).unwrap();
        assert_eq!((r.min_size, r.min_count), (12, 4));
        assert_eq!(r.total_maximal, 12);
    }

    #[test]
    fn minimum_projection() {
        let l = Limits::default();
        assert_eq!(min_maximal_nset_size(&sig(&[1, 1, 1]), &l).unwrap(), (4, 4));
        assert_eq!(min_maximal_nset_size(&sig(&[3]), &l).unwrap(), (3, 1));
        assert_eq!(min_maximal_nset_size(&sig(&[2, 2]), &l).unwrap(), (6, 2));
    }

    #[test]
    fn methods_agree() {
        let l = Limits::default();
        let a = enumerate_maximal_nsets(&sig(&[2, 2, 1]), Method::RadicalLift, &l).unwrap();
        let b = enumerate_maximal_nsets(&sig(&[2, 2, 1]), Method::DirectClique, &l).unwrap();
        assert_eq!(a.families, b.families);
        assert!(a.families.is_some());
    }

    #[test]
    fn caps() {
        let l = Limits::default();
        assert!(matches!(
            enumerate_maximal_nsets(&sig(&[1; 7]), Method::RadicalLift, &l),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            enumerate_maximal_nsets(&sig(&[4, 4, 4, 4]), Method::DirectClique, &l),
            Err(Error::ResourceLimit { .. })
        ));
        let tight = Limits {
            materialize: 5,
            ..l
        };
        let r = enumerate_maximal_nsets(&sig(&[2, 1, 1]), Method::RadicalLift, &tight).unwrap();
        assert!(r.families.is_none());
        assert_eq!(r.total_maximal, 4);
    }
}
