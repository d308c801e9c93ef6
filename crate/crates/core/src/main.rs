fn main() {
    let code = coverkit::cli::run_command(std::env::args_os());
    std::process::exit(code);
}
