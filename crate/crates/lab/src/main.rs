fn main() {
    std::process::exit(threshold_lab::cli::run(std::env::args_os()));
}
