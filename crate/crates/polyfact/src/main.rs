fn main() {
    std::process::exit(polyfact::cli::main_with_args(std::env::args_os()));
}
