//! Sweep harness: re-checks every structural claim across a grid of
//! signatures against the brute-force oracle and reports one row per
//! `(claim, subject)`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::antichain;
use crate::error::Result;
use crate::extremal::{self, Regime};
use crate::family::DivisorFamily;
use crate::lattice::{Mask, Signature};
use crate::matching;
use crate::oracle::{self, Method};
use crate::Limits;

/// Largest lattice on which the two oracle engines are compared.
pub const METHOD_AGREEMENT_DIVISORS: u64 = 200;

/// Deliberate breakage for exercising the harness itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fault {
    /// Compare oracle minima against the bound plus one.
    LeastSize,
    /// Drop the largest squarefree member before the dichotomy check.
    Dichotomy,
    /// Drop the last member before the closure check.
    Closure,
}

impl Fault {
    pub fn parse(name: &str) -> Option<Fault> {
        match name {
            "least-size-equality" => Some(Fault::LeastSize),
            "complement-dichotomy" => Some(Fault::Dichotomy),
            "minimal-closure" => Some(Fault::Closure),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub claim: &'static str,
    pub subject: String,
    pub passed: bool,
    /// Number of items the claim was checked on.
    pub checked: u64,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConformanceReport {
    pub rows: Vec<ClaimResult>,
}

impl ConformanceReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimResult> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

/// Distinct normalized signatures with `n <= max_n` and exponents `<= max_exp`.
pub fn signature_grid(max_n: usize, max_exp: u32) -> Vec<Signature> {
    fn rec(prefix: &mut Vec<u32>, len: usize, cap: u32, out: &mut Vec<Signature>) {
        if prefix.len() == len {
            out.push(Signature::new(prefix).expect("grid signature"));
            return;
        }
        for a in (1..=cap).rev() {
            prefix.push(a);
            rec(prefix, len, a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        rec(&mut Vec::new(), n, max_exp, &mut out);
    }
    out
}

/// Runs the whole sweep. Signatures are processed in parallel and rows are
/// emitted in grid order, so output does not depend on the thread count.
pub fn run(
    grid: &[Signature],
    ground_sizes: &[usize],
    limits: &Limits,
    fault: Option<Fault>,
) -> Result<ConformanceReport> {
    let per_sig: Vec<Result<Vec<ClaimResult>>> = limits.install(|| {
        grid.par_iter()
            .map(|s| check_signature(s, limits, fault))
            .collect()
    });
    let mut rows = Vec::new();
    for r in per_sig {
        rows.extend(r?);
    }
    for &k in ground_sizes {
        rows.push(check_up_set_matching(k));
    }
    Ok(ConformanceReport { rows })
}

struct Tally {
    claim: &'static str,
    subject: String,
    checked: u64,
    counterexample: Option<String>,
}

impl Tally {
    fn new(claim: &'static str, sig: &Signature) -> Tally {
        Tally {
            claim,
            subject: sig.to_string(),
            checked: 0,
            counterexample: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn finish(self) -> ClaimResult {
        ClaimResult {
            claim: self.claim,
            passed: self.counterexample.is_none(),
            subject: self.subject,
            checked: self.checked,
            counterexample: self.counterexample,
        }
    }
}

fn render(sig: &Signature, f: &DivisorFamily) -> String {
    let parts: Vec<String> = f.iter().map(|d| sig.show(d)).collect();
    format!("{{{}}}", parts.join(","))
}

fn render_masks(n: usize, masks: &BTreeSet<Mask>) -> String {
    let parts: Vec<String> = masks.iter().map(|m| format!("{:0n$b}", m.0)).collect();
    format!("{{{}}}", parts.join(","))
}

fn check_signature(
    sig: &Signature,
    limits: &Limits,
    fault: Option<Fault>,
) -> Result<Vec<ClaimResult>> {
    let n = sig.n();
    let bound = sig.min_size_bound()?;
    let report = oracle::enumerate_maximal_nsets(sig, Method::RadicalLift, limits)?;
    let families = report.families.clone().unwrap_or_default();
    let mut rows = Vec::new();

    let mut t = Tally::new("least-size-equality", sig);
    let target = if fault == Some(Fault::LeastSize) {
        bound + 1
    } else {
        bound
    };
    t.check(report.min_size == target, || {
        format!("oracle minimum {} but bound {target}", report.min_size)
    });
    let smallest = report.sizes.keys().next().copied().unwrap_or(0);
    t.check(smallest >= bound, || {
        format!("maximal N-set of size {smallest} below {bound}")
    });
    rows.push(t.finish());

    if sig.is_squarefree() {
        let mut t = Tally::new("squarefree-size-law", sig);
        for &size in report.sizes.keys() {
            t.check(size == 1 << (n - 1), || {
                format!("maximal N-set of size {size}")
            });
        }
        rows.push(t.finish());
    }

    if sig.divisor_count() <= METHOD_AGREEMENT_DIVISORS.min(limits.direct_divisors) {
        let mut t = Tally::new("method-agreement", sig);
        let direct = oracle::enumerate_maximal_nsets(sig, Method::DirectClique, limits)?;
        t.check(direct.families == report.families, || {
            format!(
                "radical-lift found {} families, direct clique {}",
                report.total_maximal, direct.total_maximal
            )
        });
        rows.push(t.finish());
    }

    let mut maximal = Tally::new("maximality", sig);
    let mut dichotomy = Tally::new("complement-dichotomy", sig);
    let mut partition = Tally::new("last-prime-partition", sig);
    let mut closure_check = Tally::new("minimal-closure", sig);
    let mut radical = Tally::new("radical-determination", sig);
    let mut weight = Tally::new("weight-identity", sig);
    let full = sig.full_mask();
    let last = Mask::single(n - 1);
    let lattice = sig.divisors(limits)?;
    for f in &families {
        maximal.check(f.is_maximal(sig, limits)?.is_maximal, || render(sig, f));

        let mut a: BTreeSet<Mask> = f.squarefree_part().into_iter().collect();
        if fault == Some(Fault::Dichotomy) {
            a.pop_last();
        }
        let ok = (0..=full.0).all(|d| a.contains(&Mask(d)) ^ a.contains(&Mask(d).complement(n)));
        dichotomy.check(ok, || render_masks(n, &a));

        let a: BTreeSet<Mask> = f.squarefree_part().into_iter().collect();
        let mut covered: BTreeSet<Mask> =
            a.iter().copied().filter(|m| m.intersects(last)).collect();
        covered.extend(
            a.iter()
                .filter(|m| !m.intersects(last))
                .map(|m| m.complement(n)),
        );
        let expected: BTreeSet<Mask> = (0..1u32 << (n - 1)).map(|l| Mask(l).union(last)).collect();
        partition.check(covered == expected, || render_masks(n, &covered));

        let probe = if fault == Some(Fault::Closure) {
            DivisorFamily::new(n, f.members()[..f.len() - 1].iter().cloned())?
        } else {
            f.clone()
        };
        let closure = probe.minimal_elements().upward_closure(sig, limits)?;
        closure_check.check(closure == *f, || render(sig, f));

        let ok = lattice[1..]
            .iter()
            .all(|d| f.contains(d) == a.contains(&d.radical()));
        radical.check(ok, || render(sig, f));

        let total: u64 = a.iter().map(|&m| sig.alpha_weight(m)).sum();
        weight.check(total == f.len() as u64, || {
            format!("|D| = {} but weight sum {total}", f.len())
        });
    }
    rows.extend(
        [
            maximal,
            dichotomy,
            partition,
            closure_check,
            radical,
            weight,
        ]
        .map(Tally::finish),
    );

    let ext = extremal::extremal_families(sig, limits)?;
    let mut equivalence = Tally::new("classification-equivalence", sig);
    for f in &families {
        let v = extremal::classify_with(f, sig, &ext.generators, limits)?;
        let expected = f.len() as u64 == bound;
        equivalence.check(
            (v.matched.all() && expected) || (v.matched.none() && !expected),
            || format!("{} matched {:?}", render(sig, f), v.matched.tags()),
        );
    }
    rows.push(equivalence.finish());

    let mut agreement = Tally::new("extremal-agreement", sig);
    let mut closures = ext
        .generators
        .iter()
        .map(|g| g.upward_closure(sig, limits))
        .collect::<Result<Vec<_>>>()?;
    closures.sort();
    let minimum: Vec<DivisorFamily> = families
        .iter()
        .filter(|f| f.len() as u64 == report.min_size)
        .cloned()
        .collect();
    agreement.check(closures == minimum, || {
        format!(
            "{} generator closures vs {} oracle minima",
            closures.len(),
            minimum.len()
        )
    });
    for c in &closures {
        agreement.check(c.len() as u64 == bound, || render(sig, c));
    }
    if ext.regime == Regime::Flat {
        let law = (1u64 << (sig.tail_len() - 1))
            * sig.alphas()[..sig.u()]
                .iter()
                .map(|&a| a as u64 + 1)
                .product::<u64>();
        agreement.check(law == bound, || {
            format!("flat product {law} vs bound {bound}")
        });
    }
    rows.push(agreement.finish());

    let mut h = Tally::new("extremal-count-law", sig);
    let counted = extremal::count_h(sig, limits)?;
    h.check(counted == report.min_count, || {
        format!("H = {counted} but oracle finds {}", report.min_count)
    });
    let expected = match ext.regime {
        Regime::Deep => sig.tail_len() as u64,
        Regime::Flat => antichain::enumerate_antichains(sig.tail_len(), limits)?.len() as u64,
    };
    h.check(counted == expected, || {
        format!("H = {counted}, law gives {expected}")
    });
    rows.push(h.finish());

    let mut pairing = Tally::new("cofactor-pairing", sig);
    let mut half = Tally::new("half-split", sig);
    for f in &minimum {
        match matching::cofactor_pairing(f, sig, limits) {
            Ok(p) => {
                pairing.check(
                    p.cofactor_weights
                        .iter()
                        .all(|&w| w == sig.last_alpha() as u64),
                    || render(sig, f),
                );
                if ext.regime == Regime::Flat {
                    for v in 0..sig.u() {
                        let with = p.members.iter().filter(|m| m.contains(v)).count();
                        half.check(2 * with == p.members.len(), || {
                            format!(
                                "prime {} divides {with} of {} in {}",
                                v + 1,
                                p.members.len(),
                                render(sig, f)
                            )
                        });
                    }
                }
            }
            Err(e) => pairing.check(false, || format!("{}: {e}", render(sig, f))),
        }
    }
    rows.push(pairing.finish());
    if ext.regime == Regime::Flat && sig.u() > 0 {
        rows.push(half.finish());
    }
    Ok(rows)
}

fn check_up_set_matching(k: usize) -> ClaimResult {
    let mut t = Tally {
        claim: "up-set-matching",
        subject: format!("ground={k}"),
        checked: 0,
        counterexample: None,
    };
    for f in matching::nontrivial_up_sets(k) {
        let outcome = matching::complement_permutation(&f);
        let ok = matches!(&outcome, Ok(w) if w.verify(&f));
        t.check(ok, || {
            let shown: BTreeSet<Mask> = f.members().iter().copied().collect();
            render_masks(k, &shown)
        });
    }
    t.finish()
}
