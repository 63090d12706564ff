fn main() {
    std::process::exit(qswitch::cli::main_from_env());
}
