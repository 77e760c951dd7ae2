fn main() {
    std::process::exit(canonaut::cli::run(std::env::args()));
}
