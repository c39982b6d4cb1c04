fn main() {
    std::process::exit(orlicz_lab::cli::run_from(std::env::args_os()));
}
