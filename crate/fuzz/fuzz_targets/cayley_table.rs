#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| sumcore_cli::fuzz::cayley_table(data));
