#![no_main]

use libfuzzer_sys::fuzz_target;
use weiljet_cli::codec::{decode_element_json, element_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = decode_element_json(s) {
        let _ = element_json(&x);
    }
});
