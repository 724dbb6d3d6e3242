fn main() {
    std::process::exit(extrema_cli::run_from(std::env::args_os()));
}
