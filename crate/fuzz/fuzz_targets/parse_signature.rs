#![no_main]

use divint::Signature;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(sig) = Signature::parse(text) else {
        return;
    };
    assert!(sig.alphas().windows(2).all(|w| w[0] >= w[1]));
    let again: Vec<String> = sig.alphas().iter().map(u32::to_string).collect();
    let back = Signature::parse(&again.join(",")).unwrap();
    assert_eq!(back.alphas(), sig.alphas());
    assert!(!back.was_reordered());
});
