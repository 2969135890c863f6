fn main() {
    std::process::exit(perceptron_kpa::cli::main_with_args(std::env::args_os()));
}
