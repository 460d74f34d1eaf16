fn main() {
    std::process::exit(tdlc::cli::main_entry());
}
