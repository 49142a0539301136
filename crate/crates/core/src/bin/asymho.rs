fn main() -> std::process::ExitCode {
    asymho::cli::main()
}
