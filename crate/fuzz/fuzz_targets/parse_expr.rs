#![no_main]

use libfuzzer_sys::fuzz_target;
use weiljet_cli::parse_expr;

fuzz_target!(|data: &[u8]| {
    let s = String::from_utf8_lossy(data);
    match parse_expr(&s) {
        Ok(e) => assert_eq!(parse_expr(&e.to_string()).expect("reparses"), e),
        Err(err) => assert!(err.offset <= s.len()),
    }
});
