fn main() {
    std::process::exit(synthsqueeze::cli::run(std::env::args_os()));
}
