// Drive the command-line runner from code and read back its artifacts.

use varlp::cli::{run, RunConfig};
use clap::Parser;

pub fn run_example() {
    let out = std::env::temp_dir().join(format!("varlp-cli-example-{}", std::process::id()));
    let cfg = RunConfig::try_parse_from([
        "varlp",
        "example",
        "HM_COUNTER",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    let result = run(&cfg).unwrap();
    print!("{}", result.summary);
    for f in &result.files {
        println!("wrote {}", f.display());
        assert!(f.exists());
    }
    std::fs::remove_dir_all(&out).unwrap();
}

#[allow(dead_code)]
fn main() {
    run_example();
}
