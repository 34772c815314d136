//! The fuzz corpus seeds stay valid inputs as the grammar and codecs move.
//! Seeds named `seed_bad` are expected to be rejected.

use std::fs;
use std::path::Path;

use weiljet_cli::codec::{decode_algebra_json, decode_element_json};
use weiljet_cli::{parse_command, parse_cube, parse_expr, parse_space};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .filter(|(name, _)| name.starts_with("seed_"))
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn check<T, E: std::fmt::Debug>(target: &str, f: impl Fn(&str) -> Result<T, E>) {
    for (name, text) in seeds(target) {
        let result = f(&text);
        if name == "seed_bad" {
            assert!(result.is_err(), "{target}/{name} was accepted");
        } else if let Err(e) = result {
            panic!("{target}/{name}: {e:?}");
        }
    }
}

#[test]
fn command_seeds() {
    check("parse_command", parse_command);
}

#[test]
fn expression_seeds() {
    check("parse_expr", parse_expr);
}

#[test]
fn space_seeds() {
    check("parse_space", parse_space);
}

#[test]
fn cube_seeds() {
    check("parse_cube", parse_cube);
}

#[test]
fn algebra_seeds() {
    check("decode_algebra_json", decode_algebra_json);
}

#[test]
fn element_seeds() {
    check("decode_element_json", decode_element_json);
}
