fn main() {
    std::process::exit(ebubble::cli::run());
}
