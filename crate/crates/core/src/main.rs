fn main() {
    std::process::exit(plie::cli::run(std::env::args_os()));
}
