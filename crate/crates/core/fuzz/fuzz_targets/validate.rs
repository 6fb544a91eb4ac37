#![no_main]
use libfuzzer_sys::fuzz_target;

use kneser_tw::{formats, treedec};

// Graph and decomposition separated by a NUL byte.
fuzz_target!(|data: &[u8]| {
    let Some(cut) = data.iter().position(|&b| b == 0) else { return };
    let (Ok(g), Ok(td)) = (formats::parse_graph_bytes(&data[..cut]), formats::parse_td_bytes(&data[cut + 1..])) else {
        return;
    };
    if g.order() > 4096 {
        return;
    }
    if let treedec::Verdict::Valid { width } = treedec::validate(&g, &td) {
        let norm = treedec::normalize(&g, &td).unwrap();
        assert_eq!(treedec::validate(&g, &norm), treedec::Verdict::Valid { width });
    }
});
