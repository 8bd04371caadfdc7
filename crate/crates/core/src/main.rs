fn main() {
    std::process::exit(bigpic::cli::run(std::env::args_os()));
}
