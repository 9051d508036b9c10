//! Complement pairings on upward-closed families of squarefree divisors.
//!
//! For an upward-closed family `F` of subsets of a ground set `M` there is a
//! permutation `sigma` with `M \ F[sigma(j)] ⊆ F[j]` for every `j`. It is found
//! here as a perfect matching in the bipartite graph `j -- i` whenever the
//! complement of `F[i]` lies inside `F[j]`; a deficient matching is reported
//! with its Hall violator.

use crate::error::{Error, Result};
use crate::family::DivisorFamily;
use crate::lattice::{Mask, Signature};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpwardClosedFamily {
    ground: Mask,
    members: Vec<Mask>,
}

impl UpwardClosedFamily {
    /// Validates that every member lies in `ground` and that the family is
    /// closed under taking supersets inside `ground`.
    pub fn new(
        ground: Mask,
        members: impl IntoIterator<Item = Mask>,
    ) -> Result<UpwardClosedFamily> {
        let mut members: Vec<Mask> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(m) = members.iter().find(|m| !m.is_subset_of(ground)) {
            return Err(Error::Precondition(format!(
                "mask {:#b} is not inside the ground {:#b}",
                m.0, ground.0
            )));
        }
        for &d in &members {
            for i in ground.minus(d).indices() {
                let q = d.with(i);
                if members.binary_search(&q).is_err() {
                    return Err(Error::Precondition(format!(
                        "not upward closed: {:#b} is a member but its superset {:#b} is not",
                        d.0, q.0
                    )));
                }
            }
        }
        Ok(UpwardClosedFamily { ground, members })
    }

    pub fn ground(&self) -> Mask {
        self.ground
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn complement(&self, m: Mask) -> Mask {
        self.ground.minus(m)
    }
}

/// `sigma[j] = i` pairs member `j` with member `i`, whose complement it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationWitness {
    pub sigma: Vec<usize>,
}

impl PermutationWitness {
    /// Re-checks bijectivity and every containment from scratch.
    pub fn verify(&self, f: &UpwardClosedFamily) -> bool {
        let s = f.len();
        if self.sigma.len() != s {
            return false;
        }
        let mut seen = vec![false; s];
        for &i in &self.sigma {
            if i >= s || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        self.sigma
            .iter()
            .enumerate()
            .all(|(j, &i)| f.complement(f.members[i]).is_subset_of(f.members[j]))
    }
}

pub fn complement_permutation(f: &UpwardClosedFamily) -> Result<PermutationWitness> {
    let s = f.len();
    let adj: Vec<Vec<usize>> = f
        .members
        .iter()
        .map(|&dj| {
            (0..s)
                .filter(|&i| f.complement(f.members[i]).is_subset_of(dj))
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; s];
    for j in 0..s {
        let mut visited = vec![false; s];
        if !augment(j, &adj, &mut owner, &mut visited) {
            let violator = hall_violator(j, &adj, &owner);
            let shown: Vec<String> = violator
                .iter()
                .map(|&v| format!("{:#b}", f.members[v].0))
                .collect();
            return Err(Error::TheoremViolation(format!(
                "no complement pairing for ground {:#b}: members {{{}}} have fewer than {} partners",
                f.ground.0,
                shown.join(", "),
                violator.len()
            )));
        }
    }
    let mut sigma = vec![0; s];
    for (i, o) in owner.iter().enumerate() {
        sigma[o.expect("perfect matching")] = i;
    }
    Ok(PermutationWitness { sigma })
}

fn augment(
    j: usize,
    adj: &[Vec<usize>],
    owner: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &i in &adj[j] {
        if !std::mem::replace(&mut visited[i], true) {
            let free = match owner[i] {
                Some(k) => augment(k, adj, owner, visited),
                None => true,
            };
            if free {
                owner[i] = Some(j);
                return true;
            }
        }
    }
    false
}

/// Left vertices reachable from the free vertex `start` by alternating paths.
fn hall_violator(start: usize, adj: &[Vec<usize>], owner: &[Option<usize>]) -> Vec<usize> {
    let mut left = vec![start];
    let mut seen_right = vec![false; owner.len()];
    let mut k = 0;
    while k < left.len() {
        for &i in &adj[left[k]] {
            if !std::mem::replace(&mut seen_right[i], true) {
                if let Some(o) = owner[i] {
                    if !left.contains(&o) {
                        left.push(o);
                    }
                }
            }
        }
        k += 1;
    }
    left.sort_unstable();
    left
}

/// Complement pairing of the squarefree members of a minimum-size maximal N-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorPairing {
    /// `A_n'`: squarefree members not divisible by `p_n`.
    pub members: Vec<Mask>,
    pub sigma: Vec<usize>,
    /// `N' / d_{sigma(j)}`, which divides `d_j p_n`.
    pub partners: Vec<Mask>,
    /// `e_j = d_j p_n / partner_j`.
    pub cofactors: Vec<Mask>,
    /// `alpha(e_j)`; always equal to `a_n`.
    pub cofactor_weights: Vec<u64>,
}

pub fn cofactor_pairing(
    d: &DivisorFamily,
    sig: &Signature,
    limits: &Limits,
) -> Result<CofactorPairing> {
    let report = d.is_maximal(sig, limits)?;
    if !report.is_maximal {
        return Err(Error::Precondition("family is not a maximal N-set".into()));
    }
    let bound = sig.min_size_bound()?;
    if d.len() as u64 != bound {
        return Err(Error::Precondition(format!(
            "family has size {}, the minimum is {bound}",
            d.len()
        )));
    }
    let n = sig.n();
    let last = Mask::single(n - 1);
    let members: Vec<Mask> = d
        .squarefree_part()
        .into_iter()
        .filter(|m| !m.intersects(last))
        .collect();
    let family = UpwardClosedFamily::new(Mask::full(n - 1), members)?;
    let witness = complement_permutation(&family)?;
    if !witness.verify(&family) {
        return Err(Error::TheoremViolation(
            "complement pairing failed re-verification".into(),
        ));
    }
    let members = family.members;
    let mut partners = Vec::with_capacity(members.len());
    let mut cofactors = Vec::with_capacity(members.len());
    let mut cofactor_weights = Vec::with_capacity(members.len());
    for (j, &dj) in members.iter().enumerate() {
        let partner = sig.complement(members[witness.sigma[j]]);
        let lifted = dj.union(last);
        if !partner.is_subset_of(lifted) {
            return Err(Error::TheoremViolation(format!(
                "{:#b} does not divide {:#b}",
                partner.0, lifted.0
            )));
        }
        if sig.alpha_weight(dj) != sig.alpha_weight(partner) {
            return Err(Error::TheoremViolation(format!(
                "alpha({:#b}) = {} but alpha({:#b}) = {}",
                dj.0,
                sig.alpha_weight(dj),
                partner.0,
                sig.alpha_weight(partner)
            )));
        }
        let e = lifted.minus(partner);
        let w = sig.alpha_weight(e);
        if w != sig.last_alpha() as u64 {
            return Err(Error::TheoremViolation(format!(
                "alpha(e) = {w} for e = {:#b}, expected {}",
                e.0,
                sig.last_alpha()
            )));
        }
        partners.push(partner);
        cofactors.push(e);
        cofactor_weights.push(w);
    }
    Ok(CofactorPairing {
        members,
        sigma: witness.sigma,
        partners,
        cofactors,
        cofactor_weights,
    })
}

/// Every upward-closed family on `ground_size` elements other than the empty
/// family and the full power set.
pub fn nontrivial_up_sets(ground_size: usize) -> Vec<UpwardClosedFamily> {
    assert!(ground_size <= 5, "up-set enumeration is exponential in 2^k");
    let size = 1usize << ground_size;
    let ground = Mask::full(ground_size);
    let mut out = Vec::new();
    // up-sets as bitsets over subsets; extend downward from the top
    fn grow(level: &[u32], pos: usize, current: u64, ground: u32, out: &mut Vec<u64>) {
        if pos == level.len() {
            out.push(current);
            return;
        }
        let s = level[pos];
        grow(level, pos + 1, current, ground, out);
        let closed = (0..32)
            .filter(|&i| ground >> i & 1 == 1 && s >> i & 1 == 0)
            .all(|i| current >> (s | 1 << i) & 1 == 1);
        if closed {
            grow(level, pos + 1, current | 1 << s, ground, out);
        }
    }
    // subsets ordered by decreasing size so supersets are decided first
    let mut order: Vec<u32> = (0..size as u32).collect();
    order.sort_by_key(|s| (std::cmp::Reverse(s.count_ones()), *s));
    let mut sets = Vec::new();
    grow(&order, 0, 0, ground.0, &mut sets);
    let everything = if size == 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    };
    sets.sort_unstable();
    for bits in sets {
        if bits == 0 || bits == everything {
            continue;
        }
        let members = (0..size as u32).filter(|&s| bits >> s & 1 == 1).map(Mask);
        out.push(UpwardClosedFamily::new(ground, members).expect("constructed upward closed"));
    }
    out
}
