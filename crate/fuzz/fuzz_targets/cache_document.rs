#![no_main]

use divint_cli::cache::CacheDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = CacheDocument::parse(text) else {
        return;
    };
    if let Ok(list) = doc.decode(doc.k) {
        assert_eq!(CacheDocument::new(doc.k, &list).antichains, doc.antichains);
    }
});
