//! Maximal pairwise non-coprime families of divisors.
//!
//! A family of divisors of `N` is an *N-set* when no two members are coprime,
//! and *maximal* when no further divisor of `N` can join it. This crate
//! computes the least size of a maximal N-set, enumerates every family that
//! attains it, classifies arbitrary families, and ships exhaustive brute-force
//! referees for all of those claims.
//!
//! ```
//! use divint::{extremal, Limits, Signature};
//!
//! let sig = Signature::from_integer(420).unwrap();
//! let report = extremal::extremal_families(&sig, &Limits::default()).unwrap();
//! assert_eq!(report.min_size, 12);
//! assert_eq!(report.h_count, 4);
//! ```

pub mod antichain;
pub mod clique;
pub mod conformance;
mod error;
pub mod extremal;
pub mod family;
pub mod lattice;
pub mod matching;
pub mod openprob;
pub mod oracle;

pub use error::{Error, Result};
pub use family::DivisorFamily;
pub use lattice::{Divisor, Mask, Signature};

/// Resource caps shared by every exhaustive routine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest lattice `prod (a_i + 1)` that may be materialized.
    pub max_divisors: u64,
    pub max_primes: usize,
    /// Largest ground set for intersecting-antichain enumeration.
    pub antichain_k: usize,
    /// Largest `n` for the radical-lift oracle.
    pub radical_n: usize,
    /// Largest lattice for the direct clique oracle.
    pub direct_divisors: u64,
    /// Families are kept in reports only while their total member count stays below this.
    pub materialize: u64,
    /// Largest restricted universe for the open-problem solvers.
    pub universe: u64,
    /// Worker threads for parallel enumeration; 0 means the rayon default.
    pub threads: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_divisors: 100_000,
            max_primes: 16,
            antichain_k: 6,
            radical_n: 6,
            direct_divisors: 500,
            materialize: 10_000,
            universe: 300,
            threads: 0,
        }
    }
}

impl Limits {
    pub fn check_lattice(&self, sig: &Signature) -> Result<()> {
        if sig.n() > self.max_primes {
            return Err(Error::limit(
                format!("{} distinct primes", sig.n()),
                self.max_primes as u64,
                "--max-primes",
            ));
        }
        if sig.divisor_count() > self.max_divisors {
            return Err(Error::limit(
                format!("lattice of {} divisors", sig.divisor_count()),
                self.max_divisors,
                "--max-divisors",
            ));
        }
        Ok(())
    }

    /// Runs `f` on a pool with the configured thread count.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.threads == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}
