//! Parse and validate a graph document. Pass a path, or run without one to
//! check a small broken document.

use singraph::gammac::{parse, validate};

const BROKEN: &str = r#"{
  "vertices": [{"id": "a", "m": 2, "n": 0, "nu": 1}, {"id": "b", "m": 6, "n": 0, "nu": 1}],
  "arrowheads": [],
  "edges": [{"ends": ["a", "b"], "weight": 1}]
}"#;

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => BROKEN.to_string(),
    };
    let g = match parse(&text) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let report = validate(&g);
    for v in &report.violations {
        println!("[{}] {}: {}", v.clause, v.element, v.message);
    }
    println!("valid: {}", report.is_valid());
}
