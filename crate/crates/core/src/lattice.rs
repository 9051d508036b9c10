//! The divisor lattice of `N = p_1^a_1 ... p_n^a_n`.
//!
//! Primes are abstract indices `0..n`; only the exponent vector matters. A
//! decimal rendering through a label table (2, 3, 5, 7, ... by default) exists
//! purely for display.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Limits;

/// Hard ceiling on the number of distinct primes, set by the `u32` mask width
/// and the `2^n` tables used by maximality checks.
pub const MAX_PRIMES: usize = 24;

/// A squarefree divisor of `N' = p_1 ... p_n`, bit `i` set iff `p_{i+1}` divides it.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Mask(pub u32);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    pub fn full(n: usize) -> Mask {
        debug_assert!(n <= 32);
        if n >= 32 {
            Mask(u32::MAX)
        } else {
            Mask((1u32 << n) - 1)
        }
    }

    pub fn single(i: usize) -> Mask {
        Mask(1 << i)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Mask {
        Mask(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Mask {
        Mask(self.0 & !(1 << i))
    }

    #[inline]
    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: Mask) -> bool {
        self.0 & other.0 != 0
    }

    /// `N'/d` on the low `n` bits.
    #[inline]
    pub fn complement(self, n: usize) -> Mask {
        Mask(!self.0 & Mask::full(n).0)
    }

    #[inline]
    pub fn union(self, other: Mask) -> Mask {
        Mask(self.0 | other.0)
    }

    #[inline]
    pub fn minus(self, other: Mask) -> Mask {
        Mask(self.0 & !other.0)
    }

    /// Indices of set bits, ascending.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

/// A divisor as an exponent vector.
///
/// Ordering is colexicographic: the exponent of `p_n` is most significant and
/// `p_1` least, so `1 < p_1 < p_1^2 < ... < p_2 < p_1 p_2 < ...` and squarefree
/// divisors sort like their mask integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Divisor {
    exps: Vec<u32>,
}

impl Ord for Divisor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps
            .len()
            .cmp(&other.exps.len())
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for Divisor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Divisor {
    pub fn from_exps(exps: Vec<u32>) -> Divisor {
        Divisor { exps }
    }

    pub fn one(n: usize) -> Divisor {
        Divisor { exps: vec![0; n] }
    }

    pub fn prime(n: usize, i: usize) -> Divisor {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Divisor { exps }
    }

    /// The squarefree divisor with the given support.
    pub fn squarefree(n: usize, mask: Mask) -> Divisor {
        Divisor {
            exps: (0..n).map(|i| mask.contains(i) as u32).collect(),
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Set of primes dividing `self`.
    pub fn radical(&self) -> Mask {
        let mut m = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << i;
            }
        }
        Mask(m)
    }

    pub fn is_coprime(&self, other: &Divisor) -> bool {
        !self.radical().intersects(other.radical())
    }

    pub fn divides(&self, other: &Divisor) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.radical().count()
    }

    /// Number of prime factors with multiplicity.
    pub fn big_omega(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }
}

/// Exponent signature `a_1 >= ... >= a_n >= 1` of `N`, with the split index `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    alphas: Vec<u32>,
    u: usize,
    /// `input_order[i]` is the position in the caller's list of normalized prime `i`.
    input_order: Vec<usize>,
    labels: Vec<u64>,
}

impl Signature {
    /// Builds a signature from exponents in any order; they are sorted
    /// descending (stable) and display labels follow the original positions.
    pub fn new(exps: &[u32]) -> Result<Signature> {
        let labels = first_primes(exps.len());
        Signature::build(exps, &labels)
    }

    /// Builds a signature from `(prime, exponent)` pairs, keeping the primes as labels.
    pub fn from_factorization(factors: &[(u64, u32)]) -> Result<Signature> {
        let exps: Vec<u32> = factors.iter().map(|&(_, e)| e).collect();
        let labels: Vec<u64> = factors.iter().map(|&(p, _)| p).collect();
        if labels.iter().any(|&p| p < 2) {
            return Err(Error::invalid("prime labels must be at least 2"));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("prime labels must be distinct"));
        }
        Signature::build(&exps, &labels)
    }

    /// Signature of the integer `n >= 2`, factored by trial division.
    pub fn from_integer(n: u64) -> Result<Signature> {
        if n < 2 {
            return Err(Error::invalid(format!("N must be at least 2, got {n}")));
        }
        Signature::from_factorization(&factorize(n))
    }

    /// Parses a comma-separated exponent list such as `2,1,1,1`.
    pub fn parse(text: &str) -> Result<Signature> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::invalid("empty signature"));
        }
        let mut exps = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let e: u32 = part
                .parse()
                .map_err(|_| Error::invalid(format!("bad exponent {part:?} in signature")))?;
            exps.push(e);
            if exps.len() > MAX_PRIMES {
                return Err(Error::invalid(format!(
                    "signature has more than {MAX_PRIMES} exponents"
                )));
            }
        }
        Signature::new(&exps)
    }

    fn build(exps: &[u32], labels: &[u64]) -> Result<Signature> {
        if exps.is_empty() {
            return Err(Error::invalid("signature needs at least one exponent"));
        }
        if exps.len() > MAX_PRIMES {
            return Err(Error::invalid(format!(
                "signature has {} exponents, at most {MAX_PRIMES} are supported",
                exps.len()
            )));
        }
        if let Some(pos) = exps.iter().position(|&e| e == 0) {
            return Err(Error::invalid(format!(
                "exponent at position {} is zero",
                pos + 1
            )));
        }
        let mut order: Vec<usize> = (0..exps.len()).collect();
        order.sort_by(|&a, &b| exps[b].cmp(&exps[a]));
        let alphas: Vec<u32> = order.iter().map(|&i| exps[i]).collect();
        let mut count: u64 = 1;
        for &a in &alphas {
            count = count
                .checked_mul(a as u64 + 1)
                .ok_or(Error::Overflow("the divisor count of the signature"))?;
        }
        let last = *alphas.last().unwrap();
        let u = alphas.iter().filter(|&&a| a > last).count();
        Ok(Signature {
            u,
            labels: order.iter().map(|&i| labels[i]).collect(),
            input_order: order,
            alphas,
        })
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    pub fn alpha(&self, i: usize) -> u32 {
        self.alphas[i]
    }

    /// Number of exponents strictly larger than the last one.
    pub fn u(&self) -> usize {
        self.u
    }

    /// Width `n - u` of the block of smallest exponents.
    pub fn tail_len(&self) -> usize {
        self.n() - self.u
    }

    pub fn last_alpha(&self) -> u32 {
        *self.alphas.last().unwrap()
    }

    /// `a_n = 1`.
    pub fn is_flat(&self) -> bool {
        self.last_alpha() == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.alphas.iter().all(|&a| a == 1)
    }

    pub fn input_order(&self) -> &[usize] {
        &self.input_order
    }

    /// True when normalization changed the order of the caller's exponents.
    pub fn was_reordered(&self) -> bool {
        self.input_order.iter().enumerate().any(|(i, &j)| i != j)
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn full_mask(&self) -> Mask {
        Mask::full(self.n())
    }

    /// Mask of the primes `p_{u+1} ... p_n`.
    pub fn tail_mask(&self) -> Mask {
        Mask(self.full_mask().0 & !Mask::full(self.u).0)
    }

    /// `prod (a_i + 1)`; fits by construction.
    pub fn divisor_count(&self) -> u64 {
        self.alphas.iter().map(|&a| a as u64 + 1).product()
    }

    pub fn contains(&self, d: &Divisor) -> bool {
        d.n() == self.n() && d.exps.iter().zip(&self.alphas).all(|(e, a)| e <= a)
    }

    /// `N'/d`.
    pub fn complement(&self, d: Mask) -> Mask {
        d.complement(self.n())
    }

    /// Product of `a_i` over the primes in `d`; 1 for the empty mask.
    pub fn alpha_weight(&self, d: Mask) -> u64 {
        d.indices().map(|i| self.alphas[i] as u64).product()
    }

    /// `a_n * prod_{i<n} (a_i + 1)`, the least size of a maximal N-set.
    pub fn min_size_bound(&self) -> Result<u64> {
        let (last, rest) = self.alphas.split_last().unwrap();
        rest.iter()
            .try_fold(*last as u64, |acc, &a| acc.checked_mul(a as u64 + 1))
            .ok_or(Error::Overflow("the minimum-size bound"))
    }

    /// All divisors of `N` in canonical order, including 1.
    pub fn divisors(&self, limits: &Limits) -> Result<Vec<Divisor>> {
        limits.check_lattice(self)?;
        let n = self.n();
        let mut out = Vec::with_capacity(self.divisor_count() as usize);
        let mut exps = vec![0u32; n];
        loop {
            out.push(Divisor { exps: exps.clone() });
            let mut i = 0;
            while i < n && exps[i] == self.alphas[i] {
                exps[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            exps[i] += 1;
        }
        Ok(out)
    }

    /// Decimal value under the label table, if it fits.
    pub fn value(&self, d: &Divisor) -> Option<u128> {
        let mut acc: u128 = 1;
        for (i, &e) in d.exps.iter().enumerate() {
            let p = *self.labels.get(i)? as u128;
            for _ in 0..e {
                acc = acc.checked_mul(p)?;
            }
        }
        Some(acc)
    }

    /// Human-readable divisor: decimal when it fits, `p^e*q` otherwise.
    pub fn show(&self, d: &Divisor) -> String {
        if let Some(v) = self.value(d) {
            return v.to_string();
        }
        let parts: Vec<String> = d
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| match e {
                1 => self.labels[i].to_string(),
                _ => format!("{}^{}", self.labels[i], e),
            })
            .collect();
        parts.join("*")
    }

    /// Inverse of [`Signature::value`]: factors `v` over the label primes.
    pub fn divisor_of_value(&self, mut v: u128) -> Result<Divisor> {
        if v == 0 {
            return Err(Error::invalid("0 is not a divisor"));
        }
        let mut exps = vec![0u32; self.n()];
        for (i, &p) in self.labels.iter().enumerate() {
            let p = p as u128;
            while v.is_multiple_of(p) {
                v /= p;
                exps[i] += 1;
            }
        }
        let d = Divisor { exps };
        if v != 1 || !self.contains(&d) {
            return Err(Error::invalid(format!(
                "{} does not divide N",
                self.value(&d)
                    .map_or(String::from("value"), |x| (x * v).to_string())
            )));
        }
        Ok(d)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alphas.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(k);
    let mut c = 2u64;
    while primes.len() < k {
        if primes
            .iter()
            .take_while(|&&p| p * p <= c)
            .all(|&p| !c.is_multiple_of(p))
        {
            primes.push(c);
        }
        c += 1;
    }
    primes
}

/// Trial-division factorization, primes ascending. Empty for 0 and 1.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while n.is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p.checked_mul(p).is_some_and(|sq| sq <= n) {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(e: &[u32]) -> Signature {
        Signature::new(e).unwrap()
    }

    fn m(s: &str) -> Mask {
        // bit strings are written p_1 first
        Mask(
            s.chars()
                .enumerate()
                .map(|(i, c)| ((c == '1') as u32) << i)
                .sum(),
        )
    }

    #[test]
    fn divisor_counts() {
        let l = Limits::default();
        let one = sig(&[1]).divisors(&l).unwrap();
        assert_eq!(one, vec![Divisor::one(1), Divisor::prime(1, 0)]);
        assert_eq!(sig(&[2, 1]).divisors(&l).unwrap().len(), 6);
        assert_eq!(sig(&[2, 1, 1, 1]).divisors(&l).unwrap().len(), 24);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let d = sig(&[3, 2, 1]).divisors(&Limits::default()).unwrap();
        assert!(d.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(d.len(), 24);
    }

    #[test]
    fn lattice_cap() {
        let l = Limits {
            max_divisors: 10,
            ..Limits::default()
        };
        let err = sig(&[2, 2, 2]).divisors(&l).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn coprimality() {
        let d = |e: &[u32]| Divisor::from_exps(e.to_vec());
        assert!(d(&[1, 0]).is_coprime(&d(&[0, 1])));
        assert!(!d(&[2, 1]).is_coprime(&d(&[1, 0])));
        assert!(d(&[0, 0]).is_coprime(&d(&[1, 1])));
    }

    #[test]
    fn radicals() {
        let d = |e: &[u32]| Divisor::from_exps(e.to_vec());
        assert_eq!(d(&[2, 0, 1]).radical(), m("101"));
        assert_eq!(d(&[0, 0, 0]).radical(), m("000"));
        assert_eq!(d(&[1, 1, 1]).radical(), m("111"));
    }

    #[test]
    fn complements() {
        assert_eq!(m("100").complement(3), m("011"));
        assert_eq!(m("111").complement(3), m("000"));
        assert_eq!(m("0101").complement(4), m("1010"));
    }

    #[test]
    fn alpha_weights() {
        let s = sig(&[3, 2, 1]);
        assert_eq!(s.alpha_weight(m("110")), 6);
        assert_eq!(s.alpha_weight(m("000")), 1);
        assert_eq!(sig(&[2, 1, 1, 1]).alpha_weight(m("1000")), 2);
    }

    #[test]
    fn bounds() {
        assert_eq!(sig(&[3]).min_size_bound().unwrap(), 3);
        assert_eq!(sig(&[1, 1, 1]).min_size_bound().unwrap(), 4);
        assert_eq!(sig(&[2, 1, 1, 1]).min_size_bound().unwrap(), 12);
        // normalized (2,1): 1 * 3
        assert_eq!(sig(&[1, 2]).min_size_bound().unwrap(), 3);
    }

    #[test]
    fn overflow_is_detected() {
        let err = Signature::new(&[u32::MAX, u32::MAX, u32::MAX]).unwrap_err();
        assert_eq!(err, Error::Overflow("the divisor count of the signature"));
    }

    #[test]
    fn split_index() {
        assert_eq!(sig(&[2, 2]).u(), 0);
        assert_eq!(sig(&[3, 2, 2]).u(), 1);
        assert_eq!(sig(&[2, 1, 1, 1]).u(), 1);
        assert_eq!(sig(&[1, 3, 2]).u(), 2);
    }

    #[test]
    fn normalization_keeps_labels() {
        let s = sig(&[1, 2]);
        assert_eq!(s.alphas(), &[2, 1]);
        assert_eq!(s.input_order(), &[1, 0]);
        assert_eq!(s.labels(), &[3, 2]);
        assert!(s.was_reordered());
        // N = 2 * 3^2
        let top = Divisor::from_exps(vec![2, 1]);
        assert_eq!(s.value(&top), Some(18));
    }

    #[test]
    fn parse_and_factor() {
        assert_eq!(
            Signature::parse(" 2, 1,1 ,1").unwrap().alphas(),
            &[2, 1, 1, 1]
        );
        assert!(Signature::parse("").is_err());
        assert!(Signature::parse("2,,1").is_err());
        assert!(Signature::parse("0,1").is_err());
        assert!(Signature::parse("-1").is_err());
        let s = Signature::from_integer(420).unwrap();
        assert_eq!(s.alphas(), &[2, 1, 1, 1]);
        assert_eq!(s.labels(), &[2, 3, 5, 7]);
        assert_eq!(factorize(1 << 62), vec![(2, 62)]);
        assert_eq!(factorize(97 * 97 * 101), vec![(97, 2), (101, 1)]);
        assert!(factorize(0).is_empty() && factorize(1).is_empty());
        assert!(Signature::from_integer(1).is_err());
    }

    #[test]
    fn display_round_trip() {
        let s = Signature::from_integer(420).unwrap();
        for d in s.divisors(&Limits::default()).unwrap() {
            let v = s.value(&d).unwrap();
            assert_eq!(s.divisor_of_value(v).unwrap(), d);
        }
        assert!(s.divisor_of_value(11).is_err());
        assert!(s.divisor_of_value(8).is_err());
        assert!(s.divisor_of_value(0).is_err());
    }

    #[test]
    fn first_primes_table() {
        assert_eq!(first_primes(6), vec![2, 3, 5, 7, 11, 13]);
    }
}
