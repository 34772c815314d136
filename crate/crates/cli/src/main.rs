use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

const LANGUAGE: &str = "\
Commands:
  algebra <space>                           the Weil algebra of a space
  dim simple <expr> in D_n(k) [with e in D_n(l)]
  dim space <space>                         degree and dimension
  dim forms --p P --q Q --n N [--variant line|cube]
  eval <expr> in <space>                    normal form of a polynomial
  eval <cube>                               microcube arithmetic
  check <suite> [--p P] [--q Q] [--n N] [--name DIAGRAM] [--seed S]
  report [--seed S]                         every suite

Spaces: point, D, D_n(3), D^3, D(4)_2, D(3; [1,2],[1,3]), oplus(S, T), prod(S, T)
Cubes:  cube D_n(2) base [0] coeffs [[a1], [a2]], diff(C, C), add(C, C), scale(x, C)
Flags:  --json prints the report as JSON.

Exit status: 0 if every check passes, 1 if one fails, 2 on a usage or parse error.";

/// Exact computations with Weil algebras, microcubes and jets.
#[derive(Parser, Debug)]
#[command(name = "weiljet", version, after_help = LANGUAGE)]
struct Cli {
    /// Read the command from a file (`-` for standard input).
    #[arg(short, long, value_name = "PATH")]
    file: Option<PathBuf>,

    /// The command, e.g. `check quasicolim --name lemma_diff --n 3`.
    #[arg(
        trailing_var_arg = true,
        allow_hyphen_values = true,
        value_name = "COMMAND"
    )]
    words: Vec<String>,
}

fn read_input(cli: &Cli) -> Result<String, String> {
    let from_stdin = || {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map(|_| s)
            .map_err(|e| e.to_string())
    };
    match (&cli.file, cli.words.as_slice()) {
        (Some(p), []) if p.as_os_str() == "-" => from_stdin(),
        (Some(p), []) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        (Some(_), _) => Err("give either --file or a command, not both".into()),
        (None, [dash]) if dash == "-" => from_stdin(),
        (None, []) => Err("no command given; see --help".into()),
        (None, words) => Ok(words.join(" ")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match read_input(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("weiljet: {e}");
            return ExitCode::from(2);
        }
    };
    let out = weiljet_cli::execute(&input);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
