fn main() {
    std::process::exit(evohist::cli::main_with_args(std::env::args_os()));
}
