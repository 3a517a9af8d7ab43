fn main() {
    std::process::exit(essmin_cli::run());
}
