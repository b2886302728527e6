fn main() {
    std::process::exit(cartierlab::cli::main_entry(std::env::args_os()));
}
