#![no_main]

use divint_cli::ReportDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = ReportDocument::parse(text) {
        let once = doc.to_json();
        let twice = ReportDocument::parse(&once).unwrap().to_json();
        assert_eq!(once, twice);
    }
});
