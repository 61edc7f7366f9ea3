fn main() {
    std::process::exit(rieszwalk::cli::run());
}
