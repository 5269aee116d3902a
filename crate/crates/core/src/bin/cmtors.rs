fn main() {
    std::process::exit(cm_torsion::cli::main_with_args(std::env::args_os()));
}
