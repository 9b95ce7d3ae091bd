fn main() {
    std::process::exit(folim::cli::run(std::env::args_os()));
}
