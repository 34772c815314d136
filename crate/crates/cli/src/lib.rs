//! A small command language over the `weiljet` library: Weil algebras of
//! infinitesimal spaces, simple-polynomial dimensions, microcube arithmetic,
//! and the named verification suites, with JSON reports.

pub mod ast;
pub mod codec;
pub mod eval;
pub mod lex;
pub mod parse;
pub mod report;
pub mod run;

pub use parse::{parse_command, parse_cube, parse_expr, parse_space, ParseError};
pub use report::{Report, Verdict};
pub use run::run;

/// What a command line produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    /// 0 when every record passes, 1 when one fails, 2 on a parse error.
    pub code: i32,
}

/// Renders a parse error with a caret under the offending byte.
pub fn render_parse_error(input: &str, e: &ParseError) -> String {
    let line_start = input[..e.offset.min(input.len())]
        .rfind('\n')
        .map_or(0, |i| i + 1);
    let line_end = input[line_start..]
        .find('\n')
        .map_or(input.len(), |i| line_start + i);
    let column = input[line_start..e.offset.min(input.len())].chars().count();
    format!(
        "{e}\n  {}\n  {}^\n",
        &input[line_start..line_end],
        " ".repeat(column)
    )
}

/// Parses and runs one command.
pub fn execute(input: &str) -> Outcome {
    match parse_command(input) {
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: render_parse_error(input, &e),
            code: 2,
        },
        Ok(cmd) => {
            let report = run(&cmd);
            let stdout = if cmd.options.json {
                serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
            } else {
                report.render_text()
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code: report.exit_code(),
            }
        }
    }
}
