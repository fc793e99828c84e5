use std::process::exit;

fn main() {
    let mut out = std::io::stdout().lock();
    let code = matstrata::cli::run(std::env::args_os(), &mut out);
    exit(code);
}
