use std::io::Write;

fn main() {
    let stdin = std::io::stdin();
    let out = ccsym_cli::run(std::env::args_os(), &mut stdin.lock());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
