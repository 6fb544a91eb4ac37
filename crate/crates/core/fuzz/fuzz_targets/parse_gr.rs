#![no_main]
use libfuzzer_sys::fuzz_target;

use kneser_tw::formats;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = formats::parse_graph_bytes(data) {
        let text = formats::graph_to_string(&g);
        assert_eq!(formats::parse_graph(&text).unwrap(), g);
    }
});
