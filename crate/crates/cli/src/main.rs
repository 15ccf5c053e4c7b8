fn main() {
    std::process::exit(widthone_cli::run(std::env::args_os()));
}
