//! Cyclic covering of a path a - b - c with data n_a = 2, n_b = 4, n_c = 2.

use std::collections::BTreeMap;

use singraph::covering::{component_count, standard_covering, verify_local_degrees, CoveringData};
use singraph::graph::MultiGraph;

fn main() -> singraph::Result<()> {
    let mut base: MultiGraph<&str, ()> = MultiGraph::new();
    let a = base.add_node("a");
    let b = base.add_node("b");
    let c = base.add_node("c");
    let ab = base.add_edge(a, b, ())?;
    let bc = base.add_edge(b, c, ())?;
    let data = CoveringData {
        vertex: BTreeMap::from([(a, 2), (b, 4), (c, 2)]),
        edge: BTreeMap::from([(ab, 4), (bc, 4)]),
    };
    let cover = standard_covering(&base, &data)?;
    verify_local_degrees(&base, &data, &cover).expect("local degrees match the data");
    println!(
        "{} vertices, {} edges, {} components (predicted {})",
        cover.graph.node_count(),
        cover.graph.edge_count(),
        cover.component_count(),
        component_count(&base, &data)?
    );
    Ok(())
}
