fn main() {
    std::process::exit(arithfn::cli::run());
}
