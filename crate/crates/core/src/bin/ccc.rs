fn main() {
    std::process::exit(toric_ccc::cli::run(std::env::args_os()));
}
