#![no_main]
use libfuzzer_sys::fuzz_target;

use kneser_tw::balance::Balance;
use kneser_tw::setsys::KSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = text.parse::<Balance>() {
        assert_eq!(p.to_string().parse::<Balance>().unwrap(), p);
    }
    let _ = text.parse::<KSet>();
    let _ = kneser_tw::setsys::parse_elements(text);
});
