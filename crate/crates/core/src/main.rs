fn main() {
    std::process::exit(spherical_convex::cli::run(std::env::args_os()));
}
