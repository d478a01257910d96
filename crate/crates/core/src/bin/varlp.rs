fn main() {
    std::process::exit(varlp::cli::main_with_args(std::env::args_os()));
}
