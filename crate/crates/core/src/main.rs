fn main() -> std::process::ExitCode {
    tcgx::cli::main()
}
