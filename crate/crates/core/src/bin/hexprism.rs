fn main() {
    std::process::exit(hexprism::cli::run(std::env::args_os()));
}
