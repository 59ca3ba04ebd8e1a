fn main() {
    std::process::exit(wsn_lifetime::cli::run_cli(std::env::args_os()));
}
