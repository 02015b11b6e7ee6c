fn main() {
    std::process::exit(qlambda_cli::run(std::env::args_os()));
}
