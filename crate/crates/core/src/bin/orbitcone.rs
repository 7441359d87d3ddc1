fn main() {
    std::process::exit(orbitcone::cli::main_with_args(std::env::args_os()));
}
