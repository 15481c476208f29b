//! x^2 + y^2 + z^k gives the A_{k-1} chain.

use singraph::fixtures;
use singraph::pipeline::{series, ResolveOptions};

fn main() {
    let report = series(&fixtures::node(), 2..=8, ResolveOptions::default());
    for row in &report.rows {
        println!(
            "k={} |V|={} |det|={}",
            row.k,
            row.vertices.unwrap_or(0),
            row.det_abs.as_deref().unwrap_or("-")
        );
    }
}
