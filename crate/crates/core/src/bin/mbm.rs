fn main() -> std::process::ExitCode {
    mbm::cli::main()
}
