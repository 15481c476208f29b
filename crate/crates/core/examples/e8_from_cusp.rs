//! The cusp crossed with z^5: resolve and print the minimal graph.

use singraph::fixtures;
use singraph::pipeline::{resolve, ResolveOptions};
use singraph::resgraph::{export, ExportFormat};

fn main() -> singraph::Result<()> {
    let res = resolve(&fixtures::cusp(), 5, ResolveOptions::default())?;
    let lattice = res.minimal.intersection_matrix();
    println!("k = {} (bound {}), {}", res.k, res.k_min, res.regime.label());
    println!("vertices {}, |det| = {}", res.minimal.vertex_count(), lattice.det_abs());
    println!("self-intersections {:?}", res.minimal.self_intersections());
    print!("{}", export(&res.minimal, ExportFormat::Dot));
    Ok(())
}
