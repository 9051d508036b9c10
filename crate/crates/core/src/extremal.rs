//! Minimum-size maximal N-sets, read off the signature.
//!
//! With `a_1 >= ... >= a_u > a_{u+1} = ... = a_n`:
//!
//! * deep regime (`a_n >= 2`): the extremal sets are exactly the multiples of a
//!   single prime `p_v`, `v > u`, so there are `n - u` of them;
//! * flat regime (`a_n = 1`): they are the upward closures of the intersecting
//!   cover antichains on the primes `p_{u+1} ... p_n`.

use crate::antichain::{self, IntersectingAntichain};
use crate::error::Result;
use crate::family::DivisorFamily;
use crate::lattice::{Divisor, Mask, Signature};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Deep,
    Flat,
}

impl Regime {
    pub fn of(sig: &Signature) -> Regime {
        if sig.is_flat() {
            Regime::Flat
        } else {
            Regime::Deep
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Regime::Deep => "deep",
            Regime::Flat => "flat",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExtremalReport {
    pub signature: Signature,
    pub regime: Regime,
    pub min_size: u64,
    pub h_count: u64,
    /// Generating sets `T`, each with `|R(T, N)| = min_size`.
    pub generators: Vec<DivisorFamily>,
}

pub fn extremal_families(sig: &Signature, limits: &Limits) -> Result<ExtremalReport> {
    let min_size = sig.min_size_bound()?;
    let regime = Regime::of(sig);
    let generators = match regime {
        Regime::Deep => (sig.u()..sig.n())
            .map(|v| DivisorFamily::new(sig.n(), [Divisor::prime(sig.n(), v)]))
            .collect::<Result<Vec<_>>>()?,
        Regime::Flat => antichain::enumerate_antichains(sig.tail_len(), limits)?
            .iter()
            .map(|a| embed_antichain(sig, a))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(ExtremalReport {
        signature: sig.clone(),
        regime,
        min_size,
        h_count: generators.len() as u64,
        generators,
    })
}

/// Number of minimum-size maximal N-sets.
pub fn count_h(sig: &Signature, limits: &Limits) -> Result<u64> {
    match Regime::of(sig) {
        Regime::Deep => Ok(sig.tail_len() as u64),
        Regime::Flat => antichain::count_families(sig.tail_len(), limits),
    }
}

/// Places ground element `j` of the antichain on prime `u + j`.
pub fn embed_antichain(sig: &Signature, a: &IntersectingAntichain) -> Result<DivisorFamily> {
    let u = sig.u();
    DivisorFamily::from_masks(sig.n(), a.sets().into_iter().map(|m| Mask(m.0 << u)))
}

/// Which of the three equivalent characterizations a family meets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Characterizations {
    /// Maximal with the least possible size.
    pub a: bool,
    /// Maximal with divisible minimal elements of the prescribed shape.
    pub b: bool,
    /// Equal to the closure of one of the generators.
    pub c: bool,
}

impl Characterizations {
    pub fn all(self) -> bool {
        self.a && self.b && self.c
    }

    pub fn none(self) -> bool {
        !(self.a || self.b || self.c)
    }

    pub fn tags(self) -> Vec<&'static str> {
        [(self.a, "a"), (self.b, "b"), (self.c, "c")]
            .into_iter()
            .filter_map(|(on, t)| on.then_some(t))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub is_maximal: bool,
    pub is_extremal: bool,
    pub matched: Characterizations,
    pub failure_witness: Option<String>,
}

/// Evaluates each characterization on its own terms.
pub fn classify(
    f: &DivisorFamily,
    sig: &Signature,
    limits: &Limits,
) -> Result<ClassificationVerdict> {
    let generators = extremal_families(sig, limits)?.generators;
    classify_with(f, sig, &generators, limits)
}

/// [`classify`] against a precomputed generator list.
pub fn classify_with(
    f: &DivisorFamily,
    sig: &Signature,
    generators: &[DivisorFamily],
    limits: &Limits,
) -> Result<ClassificationVerdict> {
    let report = f.is_maximal(sig, limits)?;
    if !report.is_maximal {
        let witness = match (report.coprime_witness, report.extension_witness) {
            (Some((x, y)), _) => format!("{} and {} are coprime", sig.show(&x), sig.show(&y)),
            (None, Some(l)) => format!("{} can be added", sig.show(&l)),
            (None, None) => String::from("not maximal"),
        };
        return Ok(ClassificationVerdict {
            is_maximal: false,
            is_extremal: false,
            matched: Characterizations::default(),
            failure_witness: Some(witness),
        });
    }
    let bound = sig.min_size_bound()?;
    let a = f.len() as u64 == bound;

    let minimal = f.minimal_elements();
    let b = match Regime::of(sig) {
        Regime::Deep => {
            minimal.len() == 1 && {
                let d = &minimal.members()[0];
                d.is_squarefree()
                    && d.omega() == 1
                    && d.radical().0.trailing_zeros() as usize >= sig.u()
            }
        }
        Regime::Flat => {
            let tail = sig.tail_mask();
            minimal
                .iter()
                .all(|d| d.is_squarefree() && d.radical().is_subset_of(tail))
        }
    };

    let c = generators.contains(&minimal) && minimal.upward_closure(sig, limits)? == *f;

    let matched = Characterizations { a, b, c };
    let failure_witness = (!a).then(|| format!("size {} exceeds the bound {bound}", f.len()));
    Ok(ClassificationVerdict {
        is_maximal: true,
        is_extremal: a,
        matched,
        failure_witness,
    })
}
