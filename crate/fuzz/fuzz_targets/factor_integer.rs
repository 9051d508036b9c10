#![no_main]

use divint::lattice::factorize;
use divint::Signature;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|raw: u64| {
    // trial division; keep each run short
    let n = raw & ((1 << 40) - 1);
    let factors = factorize(n);
    if n >= 1 {
        let product: u64 = factors.iter().map(|&(p, e)| p.pow(e)).product();
        assert_eq!(product, n);
    }
    assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
    if let Ok(sig) = Signature::from_integer(n) {
        assert_eq!(sig.n(), factors.len());
    }
});
