#![no_main]
use libfuzzer_sys::fuzz_target;

use kneser_tw::formats;

// First byte picks the ground set size, the rest is witness text.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let ground = u32::from(n % 70);
    if let Ok(classes) = formats::parse_witness(text, ground) {
        let again = formats::parse_witness(&formats::witness_to_string(&classes), ground).unwrap();
        assert_eq!(again, classes);
    }
});
