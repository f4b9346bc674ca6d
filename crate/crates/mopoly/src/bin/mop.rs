fn main() {
    std::process::exit(mopoly::cli::run());
}
