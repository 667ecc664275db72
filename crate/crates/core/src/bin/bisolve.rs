fn main() {
    let code = bisolve::cli::main_with_args(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
