fn main() {
    std::process::exit(alltoplab::cli::main());
}
