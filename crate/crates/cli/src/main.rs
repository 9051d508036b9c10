fn main() {
    std::process::exit(divint_cli::run_from(std::env::args_os()));
}
