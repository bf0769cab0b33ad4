fn main() {
    std::process::exit(srgcheck::cli::run(std::env::args_os()));
}
