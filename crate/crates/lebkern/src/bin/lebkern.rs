fn main() {
    std::process::exit(lebkern::cli::main_with_args(std::env::args_os()));
}
