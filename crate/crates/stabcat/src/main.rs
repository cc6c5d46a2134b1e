use std::io::Write;

fn main() {
    let (out, err, code) = stabcat::cli::main_with(std::env::args());
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
