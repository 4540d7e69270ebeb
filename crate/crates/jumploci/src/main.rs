fn main() {
    std::process::exit(jumploci::cli::run());
}
