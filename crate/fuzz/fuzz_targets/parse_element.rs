#![no_main]

use libfuzzer_sys::fuzz_target;

// The element parser must be total: any input yields Ok or a ParseError,
// never a panic. Parsed expressions must survive a re-render round trip
// of their structure (debug formatting exercises the full tree).
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(expr) = wittvec::parse::parse_element(s) {
            let _ = format!("{expr:?}");
        }
    }
});
