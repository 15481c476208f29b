//! Built-in inputs.
//!
//! Plane-curve germs are stored as explicit embedded resolution graphs and
//! converted with [`from_plane_curve_graph`]. `pencil:d` is a family that
//! does not come from a plane curve.

use crate::analysis::from_plane_curve_graph;
use crate::gammac::{GammaC, Triple, Weight};
use crate::resgraph::ResGraph;

/// Names accepted by [`fixture`]; `lines:D` and `pencil:D` take a degree.
pub const NAMES: &[&str] = &["smooth", "node", "cusp", "three-lines", "tacnode", "lines:D", "pencil:D"];

fn parse_degree(name: &str, prefix: &str, min: i64) -> Option<i64> {
    let d: i64 = name.strip_prefix(prefix)?.parse().ok()?;
    (min..=64).contains(&d).then_some(d)
}

/// `d` lines through the origin: one `(-1)`-curve of multiplicity `d`
/// carrying `d` arrows. `d = 1` is a smooth germ.
pub fn lines_graph(d: i64) -> ResGraph {
    let mut g = ResGraph::new();
    let c = g.add_curve(d, 0, Some(-1));
    for _ in 0..d {
        g.add_arrow(c, 1).expect("curve exists");
    }
    g
}

/// Embedded resolution graph of a named plane curve.
pub fn plane_curve(name: &str) -> Option<ResGraph> {
    let g = match name {
        "smooth" => lines_graph(1),
        "node" => lines_graph(2),
        "three-lines" | "d4" => lines_graph(3),
        "cusp" => {
            let mut g = ResGraph::new();
            let a = g.add_curve(2, 0, Some(-3));
            let b = g.add_curve(3, 0, Some(-2));
            let c = g.add_curve(6, 0, Some(-1));
            g.connect(a, c).unwrap();
            g.connect(b, c).unwrap();
            g.add_arrow(c, 1).unwrap();
            g
        }
        "tacnode" => {
            let mut g = ResGraph::new();
            let a = g.add_curve(2, 0, Some(-2));
            let b = g.add_curve(4, 0, Some(-1));
            g.connect(a, b).unwrap();
            g.add_arrow(b, 1).unwrap();
            g.add_arrow(b, 1).unwrap();
            g
        }
        _ => lines_graph(parse_degree(name, "lines:", 1)?),
    };
    Some(g)
}

/// Names of the plane-curve germs with a fixed graph.
pub const PLANE_CURVES: &[&str] = &["smooth", "node", "cusp", "three-lines", "tacnode"];

fn converted(name: &str) -> GammaC {
    from_plane_curve_graph(&plane_curve(name).expect("built-in")).expect("built-in graphs are plane-curve graphs")
}

pub fn smooth() -> GammaC {
    converted("smooth")
}

pub fn node() -> GammaC {
    converted("node")
}

pub fn cusp() -> GammaC {
    converted("cusp")
}

pub fn three_lines() -> GammaC {
    converted("three-lines")
}

pub fn tacnode() -> GammaC {
    converted("tacnode")
}

pub fn lines(d: i64) -> GammaC {
    from_plane_curve_graph(&lines_graph(d)).expect("built-in")
}

/// A centre `(d; d, 1)` joined by weight-2 edges to `d` vertices `(1; d, 1)`,
/// each carrying an arrowhead. The singular locus is one branch whose
/// transversal type is an ordinary `d`-fold point. Needs `d >= 2`.
pub fn pencil(d: i64) -> GammaC {
    assert!(d >= 2, "pencil needs d >= 2");
    let mut g = GammaC::new();
    let c = g.add_vertex(Triple::new(d, d, 1), 0);
    g.set_name(c, "c");
    for i in 0..d {
        let v = g.add_vertex(Triple::new(1, d, 1), 0);
        g.set_name(v, format!("s{i}"));
        let a = g.add_arrowhead();
        g.set_name(a, format!("a{i}"));
        g.add_edge(c, v, Weight::Two).unwrap();
        g.add_edge(v, a, Weight::One).unwrap();
    }
    g
}

/// Looks up a built-in input by name.
pub fn fixture(name: &str) -> Option<GammaC> {
    if let Some(d) = parse_degree(name, "pencil:", 2) {
        return Some(pencil(d));
    }
    let name = if name == "d4" { "three-lines" } else { name };
    plane_curve(name).map(|g| from_plane_curve_graph(&g).expect("built-in"))
}
