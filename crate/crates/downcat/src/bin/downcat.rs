fn main() {
    std::process::exit(downcat::cli::main());
}
