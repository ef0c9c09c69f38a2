fn main() {
    std::process::exit(clusterflag::cli::run_cli(std::env::args_os()));
}
