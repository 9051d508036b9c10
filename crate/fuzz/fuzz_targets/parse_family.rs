#![no_main]

use divint::Signature;
use divint_cli::input::parse_family;
use libfuzzer_sys::fuzz_target;

const SIGNATURES: [&str; 4] = ["2,1,1,1", "1,2", "3,3", "1,1,1,1,1"];

fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let sig = Signature::parse(SIGNATURES[pick as usize % SIGNATURES.len()]).unwrap();
    if let Ok(f) = parse_family(&sig, text) {
        let shown: Vec<String> = f.iter().map(|d| sig.show(d)).collect();
        assert_eq!(parse_family(&sig, &shown.join(" ")).unwrap(), f);
    }
});
