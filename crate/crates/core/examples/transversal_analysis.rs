//! Singular locus of the pencil of d lines times a line: its transversal type
//! and the Euler characteristic correction.

use singraph::analysis::analyze;
use singraph::fixtures;

fn main() -> singraph::Result<()> {
    let d = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let an = analyze(&fixtures::pencil(d))?;
    println!("normalization components: {}", an.g1.components.len());
    for (i, b) in an.branches.iter().enumerate() {
        println!(
            "branch {i}: d = {}, branches of the transversal type = {}, milnor = {}",
            b.d, b.branch_count, b.milnor
        );
    }
    println!("chi correction coefficient: {}", an.chi_coefficient());
    Ok(())
}
