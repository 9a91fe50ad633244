fn main() {
    std::process::exit(contrafix::cli::run(std::env::args_os()));
}
