#![no_main]

use libfuzzer_sys::fuzz_target;
use weiljet_cli::codec::{algebra_json, decode_algebra_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(alg) = decode_algebra_json(s) {
        let _ = algebra_json(&alg);
    }
});
