#![no_main]

use libfuzzer_sys::fuzz_target;
use weiljet_cli::parse_command;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cmd) = parse_command(s) {
        // Printing is the inverse of parsing.
        let again = parse_command(&cmd.to_string()).expect("printed command reparses");
        assert_eq!(again, cmd);
    }
});
