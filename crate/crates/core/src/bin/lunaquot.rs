fn main() {
    std::process::exit(lunaquot::cli::main_entry());
}
