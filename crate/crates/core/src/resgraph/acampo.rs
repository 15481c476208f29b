use super::ResGraph;
use crate::error::{Error, Result};

/// Euler characteristic of the Milnor fiber of a plane curve germ read off an
/// embedded resolution graph: `sum m_w (2 - valence_w)` over the curves.
pub fn acampo_chi(g: &ResGraph) -> Result<i64> {
    let graph = g.graph();
    if !graph.is_tree() {
        return Err(Error::NotPlaneCurveGraph("graph is not a tree".into()));
    }
    if let Some((id, _)) = g.curves().find(|(_, c)| c.genus > 0) {
        return Err(Error::NotPlaneCurveGraph(format!("{id} has positive genus")));
    }
    if let Some((id, _)) = g.arrows().find(|(_, a)| a.multiplicity != 1) {
        return Err(Error::NotPlaneCurveGraph(format!("arrowhead {id} has multiplicity != 1")));
    }
    g.check_structure().map_err(Error::NotPlaneCurveGraph)?;
    Ok(g
        .curves()
        .map(|(id, c)| c.multiplicity * (2 - graph.degree(id) as i64))
        .sum())
}

pub fn milnor_from_plane_graph(g: &ResGraph) -> Result<i64> {
    Ok(1 - acampo_chi(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_node_smooth() {
        let mut cusp = ResGraph::new();
        let a = cusp.add_curve(2, 0, Some(-3));
        let b = cusp.add_curve(3, 0, Some(-2));
        let c = cusp.add_curve(6, 0, Some(-1));
        cusp.connect(a, c).unwrap();
        cusp.connect(b, c).unwrap();
        cusp.add_arrow(c, 1).unwrap();
        assert_eq!(acampo_chi(&cusp).unwrap(), -1);
        assert_eq!(milnor_from_plane_graph(&cusp).unwrap(), 2);

        let mut node = ResGraph::new();
        let v = node.add_curve(2, 0, Some(-1));
        node.add_arrow(v, 1).unwrap();
        node.add_arrow(v, 1).unwrap();
        assert_eq!(acampo_chi(&node).unwrap(), 0);
        assert_eq!(milnor_from_plane_graph(&node).unwrap(), 1);

        for e in [-3, -1, 0, 5] {
            let mut smooth = ResGraph::new();
            let v = smooth.add_curve(1, 0, Some(e));
            smooth.add_arrow(v, 1).unwrap();
            assert_eq!(acampo_chi(&smooth).unwrap(), 1);
        }
    }

    #[test]
    fn rejects_genus_and_cycles() {
        let mut g = ResGraph::new();
        let v = g.add_curve(1, 1, Some(-1));
        g.add_arrow(v, 1).unwrap();
        assert!(matches!(acampo_chi(&g), Err(Error::NotPlaneCurveGraph(_))));

        let mut h = ResGraph::new();
        let v = h.add_curve(1, 0, Some(-1));
        h.connect(v, v).unwrap();
        assert!(matches!(acampo_chi(&h), Err(Error::NotPlaneCurveGraph(_))));
    }
}
