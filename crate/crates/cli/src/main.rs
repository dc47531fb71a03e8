fn main() {
    std::process::exit(gencoh_cli::run(std::env::args_os()));
}
