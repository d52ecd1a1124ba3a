#![no_main]

use libfuzzer_sys::fuzz_target;
use threshold_spectra::parse_composition;

fuzz_target!(|data: &str| {
    if let Ok(spec) = parse_composition(data) {
        let again = parse_composition(&spec.to_string()).unwrap();
        assert_eq!(again.expand(), spec.expand());
    }
});
