fn main() {
    std::process::exit(relhydrogen::cli::run(std::env::args_os()));
}
