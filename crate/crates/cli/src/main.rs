fn main() {
    std::process::exit(iwcontract_cli::run_cli(std::env::args_os()));
}
