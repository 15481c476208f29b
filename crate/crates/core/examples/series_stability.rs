//! The part of the graph over the m = 1 locus does not move with k.

use singraph::fixtures;
use singraph::pipeline::{series, ResolveOptions};

fn main() {
    let g = fixtures::pencil(3);
    let report = series(&g, 4..=9, ResolveOptions::default());
    for row in &report.rows {
        println!("k={} |V|={:?} stable={}", row.k, row.vertices, row.stable_hash.as_deref().unwrap_or("-"));
    }
    println!("constant: {}", report.stable_part_constant);
}
