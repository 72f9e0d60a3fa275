fn main() {
    std::process::exit(domvote::cli::run(std::env::args_os()));
}
