//! Embedded resolution graphs and plumbing graphs.
//!
//! A [`ResGraph`] is the dual graph of an embedded resolution of a function
//! germ on a surface: every non-arrowhead vertex is an exceptional curve with
//! a multiplicity (vanishing order of the function), a genus and a
//! self-intersection; every arrowhead is a component of the strict transform
//! with its own multiplicity and exactly one edge to the curve it meets.
//!
//! The multiplicities determine the self-intersections through the Euler
//! relation
//!
//! ```text
//! e_w * m_w + sum(m_u over non-loop edges w-u) + 2 * m_w * loops(w) + sum(m_a over arrows at w) = 0
//! ```
//!
//! which [`euler_check`] evaluates and [`solve_selfints`] inverts.

mod acampo;
mod blowdown;
mod canon;
mod export;
mod lattice;

pub use acampo::{acampo_chi, milnor_from_plane_graph};
pub use blowdown::{blow_down, blow_down_step, BlowDownMode, PlumbNode, PlumbingGraph};
pub use canon::{canonical_tree_form, isomorphic_trees};
pub use export::{export, ExportArrow, ExportDocument, ExportEdge, ExportFormat, ExportVertex, GraphExport};
pub use lattice::IntersectionMatrix;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, NodeId};

/// Where a vertex of a constructed graph came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    #[default]
    Free,
    /// Sheet `sheet` above vertex `base` of a covered graph.
    Lift { base: NodeId, sheet: u32 },
    /// Vertex `position` of the string inserted over sheet `sheet` of edge `edge`.
    Chain {
        edge: EdgeId,
        sheet: u32,
        position: u32,
    },
}

impl Origin {
    pub fn label(&self) -> String {
        match *self {
            Origin::Free => String::new(),
            Origin::Lift { base, sheet } => format!("L{}.{}", base.0, sheet),
            Origin::Chain {
                edge,
                sheet,
                position,
            } => format!("S{}.{}.{}", edge.0, sheet, position),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub multiplicity: i64,
    pub genus: u32,
    pub self_intersection: Option<i64>,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub multiplicity: i64,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResNode {
    Curve(Curve),
    Arrow(Arrow),
}

impl ResNode {
    pub fn multiplicity(&self) -> i64 {
        match self {
            ResNode::Curve(c) => c.multiplicity,
            ResNode::Arrow(a) => a.multiplicity,
        }
    }

    pub fn origin(&self) -> Origin {
        match self {
            ResNode::Curve(c) => c.origin,
            ResNode::Arrow(a) => a.origin,
        }
    }

    pub fn as_curve(&self) -> Option<&Curve> {
        match self {
            ResNode::Curve(c) => Some(c),
            ResNode::Arrow(_) => None,
        }
    }

    pub fn is_arrow(&self) -> bool {
        matches!(self, ResNode::Arrow(_))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResGraph {
    graph: MultiGraph<ResNode, ()>,
}

impl ResGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_graph(graph: MultiGraph<ResNode, ()>) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &MultiGraph<ResNode, ()> {
        &self.graph
    }

    pub fn add_curve(&mut self, multiplicity: i64, genus: u32, self_intersection: Option<i64>) -> NodeId {
        self.add_curve_with(Curve {
            multiplicity,
            genus,
            self_intersection,
            origin: Origin::Free,
        })
    }

    pub fn add_curve_with(&mut self, curve: Curve) -> NodeId {
        self.graph.add_node(ResNode::Curve(curve))
    }

    /// Adds an arrowhead of multiplicity `multiplicity` supported by `support`.
    pub fn add_arrow(&mut self, support: NodeId, multiplicity: i64) -> Result<NodeId> {
        self.add_arrow_with(
            support,
            Arrow {
                multiplicity,
                origin: Origin::Free,
            },
        )
    }

    pub fn add_arrow_with(&mut self, support: NodeId, arrow: Arrow) -> Result<NodeId> {
        if !self.graph.contains_node(support) {
            return Err(Error::UnknownNode(support));
        }
        let id = self.graph.add_node(ResNode::Arrow(arrow));
        self.graph.add_edge(id, support, ())?;
        Ok(id)
    }

    /// Adds a detached node; the caller connects it with [`ResGraph::connect`].
    pub fn add_node(&mut self, node: ResNode) -> NodeId {
        self.graph.add_node(node)
    }

    pub fn connect(&mut self, a: NodeId, b: NodeId) -> Result<EdgeId> {
        self.graph.add_edge(a, b, ())
    }

    pub fn node(&self, id: NodeId) -> Option<&ResNode> {
        self.graph.node(id)
    }

    pub fn curve(&self, id: NodeId) -> Option<&Curve> {
        self.graph.node(id).and_then(ResNode::as_curve)
    }

    pub fn curve_mut(&mut self, id: NodeId) -> Option<&mut Curve> {
        match self.graph.node_mut(id) {
            Some(ResNode::Curve(c)) => Some(c),
            _ => None,
        }
    }

    pub fn curves(&self) -> impl Iterator<Item = (NodeId, &Curve)> {
        self.graph.nodes().filter_map(|(id, n)| n.as_curve().map(|c| (id, c)))
    }

    pub fn arrows(&self) -> impl Iterator<Item = (NodeId, &Arrow)> {
        self.graph.nodes().filter_map(|(id, n)| match n {
            ResNode::Arrow(a) => Some((id, a)),
            ResNode::Curve(_) => None,
        })
    }

    pub fn curve_count(&self) -> usize {
        self.curves().count()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows().count()
    }

    /// Edges between two curves (arrow edges excluded).
    pub fn curve_edge_count(&self) -> usize {
        self.graph
            .edges()
            .filter(|(_, rec)| rec.ends.iter().all(|v| !self.graph.node(*v).unwrap().is_arrow()))
            .count()
    }

    /// The curve an arrowhead is attached to.
    pub fn support(&self, arrow: NodeId) -> Option<NodeId> {
        self.graph.incident(arrow).next().map(|e| self.graph.edge(e).unwrap().other(arrow))
    }

    /// Checks multiplicities, genera and arrowhead attachment.
    pub fn check_structure(&self) -> std::result::Result<(), String> {
        for (id, node) in self.graph.nodes() {
            if node.multiplicity() < 1 {
                return Err(format!("{id} has multiplicity {}", node.multiplicity()));
            }
            if node.is_arrow() {
                let ok = self.graph.degree(id) == 1
                    && self
                        .support(id)
                        .and_then(|s| self.graph.node(s))
                        .is_some_and(|s| !s.is_arrow());
                if !ok {
                    return Err(format!("arrowhead {id} must have exactly one edge to a curve"));
                }
            }
        }
        Ok(())
    }

    /// Sum of the multiplicities adjacent to `w` in the Euler relation:
    /// neighbours across non-loop edges (arrows included) plus `2 m_w` per loop.
    pub fn adjacent_multiplicity(&self, w: NodeId) -> i64 {
        let own = self.graph.node(w).map(ResNode::multiplicity).unwrap_or(0);
        self.graph
            .incident(w)
            .map(|e| {
                let rec = self.graph.edge(e).unwrap();
                if rec.is_loop() {
                    2 * own
                } else {
                    self.graph.node(rec.other(w)).unwrap().multiplicity()
                }
            })
            .sum()
    }

    pub fn intersection_matrix(&self) -> Result<IntersectionMatrix> {
        let curves: Vec<(NodeId, i64)> = self
            .curves()
            .map(|(id, c)| {
                c.self_intersection
                    .map(|e| (id, e))
                    .ok_or(Error::MissingSelfIntersection { vertex: id })
            })
            .collect::<Result<_>>()?;
        Ok(IntersectionMatrix::from_graph(&self.graph, &curves))
    }

    /// Canonical form of the decorated tree (multiplicities, genera,
    /// self-intersections, arrow multiplicities); `None` if not a tree.
    pub fn tree_form(&self) -> Option<String> {
        canonical_tree_form(&self.graph, |_, n| match n {
            ResNode::Curve(c) => format!(
                "c{}g{}e{}",
                c.multiplicity,
                c.genus,
                c.self_intersection.map_or_else(|| "?".into(), |e| e.to_string())
            ),
            ResNode::Arrow(a) => format!("a{}", a.multiplicity),
        })
    }

    /// Forgets arrowheads and multiplicities. Requires every self-intersection.
    pub fn strip(&self) -> Result<PlumbingGraph> {
        let mut out = MultiGraph::new();
        for (id, c) in self.curves() {
            let e = c
                .self_intersection
                .ok_or(Error::MissingSelfIntersection { vertex: id })?;
            out.insert_node(
                id,
                PlumbNode {
                    genus: c.genus,
                    self_intersection: e,
                    origin: c.origin,
                },
            );
        }
        for (eid, rec) in self.graph.edges() {
            if out.contains_node(rec.ends[0]) && out.contains_node(rec.ends[1]) {
                out.insert_edge(eid, rec.ends[0], rec.ends[1], ())?;
            }
        }
        Ok(PlumbingGraph::from_graph(out))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerViolation {
    pub vertex: NodeId,
    pub residual: i64,
}

/// Residual of the Euler relation at every curve; returns only the nonzero ones.
pub fn euler_check(g: &ResGraph) -> Result<Vec<EulerViolation>> {
    let mut out = Vec::new();
    for (id, c) in g.curves() {
        let e = c
            .self_intersection
            .ok_or(Error::MissingSelfIntersection { vertex: id })?;
        let residual = e * c.multiplicity + g.adjacent_multiplicity(id);
        if residual != 0 {
            out.push(EulerViolation {
                vertex: id,
                residual,
            });
        }
    }
    Ok(out)
}

/// Fills in every missing self-intersection from the Euler relation.
pub fn solve_selfints(g: &ResGraph) -> Result<ResGraph> {
    let mut out = g.clone();
    let missing: Vec<NodeId> = g
        .curves()
        .filter(|(_, c)| c.self_intersection.is_none())
        .map(|(id, _)| id)
        .collect();
    for w in missing {
        let m = g.curve(w).unwrap().multiplicity;
        let adjacent = g.adjacent_multiplicity(w);
        if adjacent % m != 0 {
            return Err(Error::InconsistentMultiplicities {
                vertex: w,
                adjacent,
                multiplicity: m,
            });
        }
        out.curve_mut(w).unwrap().self_intersection = Some(-adjacent / m);
    }
    Ok(out)
}
