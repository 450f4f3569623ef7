fn main() {
    std::process::exit(cqg::cli::main_with_args(std::env::args_os()));
}
