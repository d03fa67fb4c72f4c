fn main() {
    std::process::exit(extalg::cli::run(std::env::args_os()));
}
