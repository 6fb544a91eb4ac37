#![no_main]
use libfuzzer_sys::fuzz_target;

use kneser_tw::formats;

fuzz_target!(|data: &[u8]| {
    if let Ok(td) = formats::parse_td_bytes(data) {
        let text = formats::td_to_string(&td);
        assert_eq!(formats::parse_td(&text).unwrap(), td);
    }
});
