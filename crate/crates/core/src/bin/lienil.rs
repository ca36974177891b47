fn main() {
    std::process::exit(lienil::cli::main_with_args(std::env::args_os()));
}
