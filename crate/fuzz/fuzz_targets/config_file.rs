#![no_main]

use divint_cli::config::{FileConfig, GlobalArgs};
use divint_cli::RunConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = FileConfig::parse(text) {
        let _ = RunConfig::merge(&GlobalArgs::default(), &file);
    }
});
