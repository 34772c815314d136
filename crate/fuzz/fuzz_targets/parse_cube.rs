#![no_main]

use libfuzzer_sys::fuzz_target;
use weiljet_cli::parse_cube;

fuzz_target!(|data: &[u8]| {
    let s = String::from_utf8_lossy(data);
    if let Ok(cube) = parse_cube(&s) {
        assert_eq!(parse_cube(&cube.to_string()).expect("reparses"), cube);
    }
});
