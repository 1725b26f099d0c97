use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let out = tstab_cli::run(&argv, &mut std::io::stdin().lock());
    let written = if out.code == 0 {
        std::io::stdout().write_all(out.output.as_bytes())
    } else {
        std::io::stderr().write_all(out.output.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(out.code as u8)
}
