fn main() {
    std::process::exit(toric_core::cli::run(std::env::args_os()));
}
