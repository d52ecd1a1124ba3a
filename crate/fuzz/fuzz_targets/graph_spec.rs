#![no_main]

use libfuzzer_sys::fuzz_target;
use threshold_spectra::parse_graph_spec;

fuzz_target!(|data: &str| {
    if let Ok(g) = parse_graph_spec(data) {
        let again = parse_graph_spec(&format!("gen:{}", g.generating())).unwrap();
        assert_eq!(again, g);
    }
});
