#![no_main]

use libfuzzer_sys::fuzz_target;
use threshold_spectra::graph_model::GeneratingSequence;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(seq) = GeneratingSequence::parse(text) {
        assert_eq!(GeneratingSequence::parse(&seq.to_string()).unwrap(), seq);
    }
});
