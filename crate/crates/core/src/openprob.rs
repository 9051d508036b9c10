//! Least maximal non-coprime families inside the divisors with a fixed number
//! of prime factors: `m(N, t)` counts distinct primes (omega), `M(N, t)`
//! counts with multiplicity (big omega).
//!
//! No radical compression applies once multiplicities matter, so every cell
//! is a direct Bron-Kerbosch search over the restricted universe, run twice in
//! opposite vertex orders as a self-check.

use rayon::prelude::*;

use crate::clique::{self, Graph, VertexOrder};
use crate::error::{Error, Result};
use crate::family::DivisorFamily;
use crate::lattice::{Divisor, Signature};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Exactly `t` distinct prime factors.
    Omega,
    /// Exactly `t` prime factors counted with multiplicity.
    BigOmega,
}

impl Mode {
    pub fn tag(self) -> &'static str {
        match self {
            Mode::Omega => "omega",
            Mode::BigOmega => "bigomega",
        }
    }
}

/// What a family must be maximal against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Maximality {
    /// No divisor of the same universe can be added.
    Restricted,
    /// No divisor of `N` at all can be added.
    Global,
}

impl Maximality {
    pub fn tag(self) -> &'static str {
        match self {
            Maximality::Restricted => "restricted",
            Maximality::Global => "global",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Problem {
    pub mode: Mode,
    pub t: u32,
    pub maximality: Maximality,
    /// Accept `t = 1`, which lies outside the posed problems.
    pub allow_t1: bool,
}

impl Problem {
    pub fn new(mode: Mode, t: u32) -> Problem {
        Problem {
            mode,
            t,
            maximality: Maximality::Restricted,
            allow_t1: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedUniverse {
    pub mode: Mode,
    pub t: u32,
    pub universe: Vec<Divisor>,
}

pub fn build_universe(
    sig: &Signature,
    problem: &Problem,
    limits: &Limits,
) -> Result<RestrictedUniverse> {
    let t = problem.t;
    if t == 0 || (t == 1 && !problem.allow_t1) {
        return Err(Error::invalid(format!(
            "t must be at least 2 (got {t}; --allow-t1 admits t = 1)"
        )));
    }
    let universe = sig
        .divisors(limits)?
        .into_iter()
        .filter(|d| match problem.mode {
            Mode::Omega => d.omega() == t,
            Mode::BigOmega => d.big_omega() == t as u64,
        })
        .collect();
    Ok(RestrictedUniverse {
        mode: problem.mode,
        t,
        universe,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenProblemResult {
    /// Least size of a maximal family; 0 when none exists.
    pub value: u64,
    pub attaining_count: u64,
    pub total_maximal: u64,
    pub universe_size: u64,
    /// Minimum-size families, when under the materialization cap.
    pub witnesses: Option<Vec<DivisorFamily>>,
}

impl OpenProblemResult {
    pub fn is_empty_universe(&self) -> bool {
        self.universe_size == 0
    }
}

pub fn solve_restricted(
    sig: &Signature,
    problem: &Problem,
    limits: &Limits,
) -> Result<OpenProblemResult> {
    let universe = build_universe(sig, problem, limits)?.universe;
    if universe.len() as u64 > limits.universe {
        return Err(Error::limit(
            format!("restricted universe of {} divisors", universe.len()),
            limits.universe,
            "--max-universe",
        ));
    }
    let radicals: Vec<_> = universe.iter().map(Divisor::radical).collect();
    let g = Graph::from_fn(universe.len(), |i, j| radicals[i].intersects(radicals[j]));
    let run = |order| {
        let mut cliques: Vec<Vec<usize>> = Vec::new();
        clique::maximal_cliques(&g, order, |c| cliques.push(c.to_vec()));
        cliques.sort();
        cliques
    };
    let ascending = run(VertexOrder::Ascending);
    let descending = run(VertexOrder::Descending);
    if ascending != descending {
        return Err(Error::TheoremViolation(format!(
            "clique search disagrees across vertex orders for {sig}, {} t={}",
            problem.mode.tag(),
            problem.t
        )));
    }

    let mut families = Vec::new();
    for c in ascending {
        let f = DivisorFamily::new(sig.n(), c.into_iter().map(|i| universe[i].clone()))?;
        if !is_universe_maximal(&f, &universe) {
            return Err(Error::TheoremViolation(format!(
                "clique {:?} failed the independent maximality re-check",
                f.iter().map(|d| sig.show(d)).collect::<Vec<_>>()
            )));
        }
        if problem.maximality == Maximality::Global && !f.is_maximal(sig, limits)?.is_maximal {
            continue;
        }
        families.push(f);
    }

    let total_maximal = families.len() as u64;
    let value = families.iter().map(|f| f.len() as u64).min().unwrap_or(0);
    let mut attaining: Vec<DivisorFamily> = families
        .into_iter()
        .filter(|f| f.len() as u64 == value)
        .collect();
    attaining.sort();
    let attaining_count = attaining.len() as u64;
    let witnesses = (attaining_count * value < limits.materialize).then_some(attaining);
    Ok(OpenProblemResult {
        value,
        attaining_count,
        total_maximal,
        universe_size: universe.len() as u64,
        witnesses,
    })
}

/// Pairwise non-coprime and no universe element outside it is compatible with every member.
fn is_universe_maximal(f: &DivisorFamily, universe: &[Divisor]) -> bool {
    let members = f.members();
    let pairwise = members
        .iter()
        .enumerate()
        .all(|(i, a)| members[i + 1..].iter().all(|b| !a.is_coprime(b)));
    pairwise
        && universe
            .iter()
            .filter(|d| !f.contains(d))
            .all(|d| members.iter().any(|m| m.is_coprime(d)))
}

/// One cell of a sweep table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub signature: Vec<u32>,
    pub mode: Mode,
    pub t: u32,
    pub maximality: Maximality,
    pub outcome: std::result::Result<OpenProblemResult, Error>,
}

impl TableRow {
    pub fn status(&self) -> String {
        match &self.outcome {
            Ok(r) if r.is_empty_universe() => "empty-universe".into(),
            Ok(r) if r.total_maximal == 0 => "no-maximal-family".into(),
            Ok(_) => "ok".into(),
            Err(e) => format!("error: {e}"),
        }
    }
}

/// Runs every `(signature, t)` cell; a failing cell is recorded, not fatal.
pub fn sweep_tables(
    sigs: &[Signature],
    ts: &[u32],
    mode: Mode,
    maximality: Maximality,
    allow_t1: bool,
    limits: &Limits,
) -> Vec<TableRow> {
    let cells: Vec<(&Signature, u32)> = sigs
        .iter()
        .flat_map(|s| ts.iter().map(move |&t| (s, t)))
        .collect();
    limits.install(|| {
        cells
            .into_par_iter()
            .map(|(sig, t)| {
                let problem = Problem {
                    mode,
                    t,
                    maximality,
                    allow_t1,
                };
                TableRow {
                    signature: sig.alphas().to_vec(),
                    mode,
                    t,
                    maximality,
                    outcome: solve_restricted(sig, &problem, limits),
                }
            })
            .collect()
    })
}
