fn main() {
    std::process::exit(mixcirc::cli::run(std::env::args_os()));
}
