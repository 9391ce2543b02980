fn main() {
    std::process::exit(classprod::cli::main_exit_code());
}
