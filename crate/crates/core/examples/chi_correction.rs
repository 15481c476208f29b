use singraph::analysis::{chi_correction, from_plane_curve_graph};
use singraph::fixtures;
use singraph::resgraph::milnor_from_plane_graph;

fn main() -> singraph::Result<()> {
    for name in fixtures::PLANE_CURVES {
        let plane = fixtures::plane_curve(name).unwrap();
        let g = from_plane_curve_graph(&plane)?;
        let mu = milnor_from_plane_graph(&plane)?;
        let corrections: Vec<i64> = (2..=5).map(|k| chi_correction(&g, k)).collect::<Result<_, _>>()?;
        println!("{name:12} mu={mu} corrections for k=2..5: {corrections:?}");
    }
    Ok(())
}
