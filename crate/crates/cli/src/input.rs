//! Signature and family arguments.

use divint::{DivisorFamily, Error, Result, Signature};
use serde_json::{json, Value};

use crate::config::{OptSigArgs, SigArgs};

/// Largest integer accepted by `--n`.
pub const MAX_N: u64 = 1 << 63;

pub fn signature_of(sig: Option<&str>, n: Option<u64>) -> Result<Option<Signature>> {
    match (sig, n) {
        (Some(text), _) => Signature::parse(text).map(Some),
        (None, Some(v)) if v > MAX_N => Err(Error::Invalid(format!("{v} exceeds 2^63"))),
        (None, Some(v)) => Signature::from_integer(v).map(Some),
        (None, None) => Ok(None),
    }
}

impl SigArgs {
    pub fn resolve(&self) -> Result<Signature> {
        signature_of(self.sig.as_deref(), self.n)?
            .ok_or_else(|| Error::Invalid("one of --sig or --n is required".into()))
    }

    pub fn params(&self) -> Value {
        params(self.sig.as_deref(), self.n)
    }
}

impl OptSigArgs {
    pub fn resolve(&self) -> Result<Option<Signature>> {
        signature_of(self.sig.as_deref(), self.n)
    }

    pub fn params(&self) -> Value {
        params(self.sig.as_deref(), self.n)
    }
}

fn params(sig: Option<&str>, n: Option<u64>) -> Value {
    match (sig, n) {
        (Some(s), _) => json!({ "sig": s }),
        (None, Some(v)) => json!({ "n": v }),
        (None, None) => json!({}),
    }
}

/// Parses `15,21,35` (optionally braced, commas or spaces) into divisors of `N`
/// under the signature's display primes.
pub fn parse_family(sig: &Signature, text: &str) -> Result<DivisorFamily> {
    let body = text.trim();
    let body = match body.strip_prefix('{') {
        Some(rest) => rest
            .strip_suffix('}')
            .ok_or_else(|| Error::Invalid("unbalanced brace".into()))?,
        None => body,
    };
    let mut divisors = Vec::new();
    for token in body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let v: u128 = token
            .parse()
            .map_err(|_| Error::Invalid(format!("{token:?} is not a positive integer")))?;
        divisors.push(sig.divisor_of_value(v)?);
    }
    DivisorFamily::new(sig.n(), divisors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_under_display_primes() {
        let s = Signature::from_integer(420).unwrap();
        let f = parse_family(&s, "{15, 21,35}").unwrap();
        let shown: Vec<String> = f.iter().map(|d| s.show(d)).collect();
        assert_eq!(shown, ["15", "21", "35"]);
        assert_eq!(parse_family(&s, "").unwrap().len(), 0);
        for bad in ["1", "11", "x", "{3", "840", "-3"] {
            assert!(parse_family(&s, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn reordered_input_keeps_labels() {
        let s = signature_of(Some("1,2"), None).unwrap().unwrap();
        assert_eq!(s.alphas(), &[2, 1]);
        let f = parse_family(&s, "9,6").unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn n_range() {
        assert!(signature_of(None, Some(u64::MAX)).is_err());
        assert!(signature_of(None, Some(1)).is_err());
        assert_eq!(
            signature_of(None, Some(420)).unwrap().unwrap().alphas(),
            &[2, 1, 1, 1]
        );
    }
}
