fn main() {
    std::process::exit(ggbraids::cli::run(std::env::args_os()));
}
