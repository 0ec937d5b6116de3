fn main() {
    std::process::exit(impact_series::cli::main_with_args(std::env::args_os()));
}
