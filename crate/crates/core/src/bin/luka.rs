fn main() {
    std::process::exit(luka_core::cli::run(std::env::args_os()));
}
