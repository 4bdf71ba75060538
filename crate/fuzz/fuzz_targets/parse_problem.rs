#![no_main]

use libfuzzer_sys::fuzz_target;

// The problem-file parser must be total on arbitrary input: malformed
// files yield a ParseError, never a panic.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = wittvec::parse::parse_problem(s);
    }
});
