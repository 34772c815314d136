#![no_main]

use libfuzzer_sys::fuzz_target;
use weiljet_cli::parse_space;

fuzz_target!(|data: &[u8]| {
    let s = String::from_utf8_lossy(data);
    if let Ok(space) = parse_space(&s) {
        assert_eq!(parse_space(&space.to_string()).expect("reparses"), space);
    }
});
