use std::io;

fn main() {
    let code =
        spindlekit::cli::run_command(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
