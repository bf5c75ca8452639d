fn main() {
    std::process::exit(expozeros::cli::main_with_args(std::env::args_os()));
}
