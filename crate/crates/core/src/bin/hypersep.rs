fn main() {
    std::process::exit(hypersep::cli::run(std::env::args_os()));
}
