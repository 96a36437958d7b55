fn main() {
    std::process::exit(tamagawa::report::cli::main_with_args(std::env::args_os()));
}
