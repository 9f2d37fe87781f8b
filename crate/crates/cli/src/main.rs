fn main() {
    std::process::exit(qfoundry_cli::run(std::env::args_os()));
}
