#![no_main]

use clap::Parser;
use divint_cli::Cli;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let args = std::iter::once("divint").chain(text.split('\0'));
    let _ = Cli::try_parse_from(args);
});
