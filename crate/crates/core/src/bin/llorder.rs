fn main() {
    std::process::exit(llorder::cli::main());
}
