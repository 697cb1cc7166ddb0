//! Drive the whole pipeline through the command-line entry point, exactly as
//! `evohist pipeline` would.
//!
//! cargo run --release --example full_pipeline -- [output-dir]

fn main() {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("evohist-pipeline").display().to_string());
    let code = evohist::cli::main_with_args([
        "evohist", "pipeline", "--problem", "dtlz2", "--objectives", "3", "--seed", "42",
        "--evaluations", "10000", "--out-dir", &out,
    ]);
    std::process::exit(code);
}
