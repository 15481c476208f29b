//! Hirzebruch-Jung strings from a toric model, next to the plain fraction expansion.

use singraph::hj::{compute_string, hj_fraction, StringSpec};

fn main() -> singraph::Result<()> {
    println!("7/3 = {:?}", hj_fraction(7, 3));
    for spec in [
        StringSpec::new(2, 6, 5, 0, 0, 1),
        StringSpec::new(3, 5, 7, 0, 0, 1),
        StringSpec::new(4, 1, 9, 1, 1, 0),
    ] {
        let chain = compute_string(&spec)?;
        println!(
            "{spec}: multiplicities {:?}, self-intersections {:?}",
            chain.multiplicities(),
            chain.self_intersections()
        );
    }
    Ok(())
}
