fn main() {
    std::process::exit(gaborfeat_cli::run(std::env::args_os()));
}
