fn main() {
    std::process::exit(fockpair::cli::main_with_args(std::env::args_os()));
}
