//! Load a problem file (text or JSON) and print the full report as JSON.
//!
//! cargo run --example problem_file_report -- crates/core/examples/data/banana.json

use monograph::problem::parse_spec;
use monograph::report::{run, Command};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/triangle.txt").to_string());
    let text = std::fs::read_to_string(&path).expect("readable problem file");
    let spec = parse_spec(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
    println!("{}", spec.render());
    let doc = run(Some(&spec), &Command::Defect).expect("report");
    eprint!("{}", doc.to_human());
    println!("{}", doc.to_json_string());
}
