fn main() -> std::process::ExitCode {
    hq_core::cli::run()
}
