use std::collections::BTreeSet;

use super::{IntersectionMatrix, Origin};
use crate::error::Result;
use crate::graph::{EdgeId, MultiGraph, NodeId};

/// A vertex of a plumbing graph: genus and self-intersection only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlumbNode {
    pub genus: u32,
    pub self_intersection: i64,
    pub origin: Origin,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlumbingGraph {
    graph: MultiGraph<PlumbNode, ()>,
}

impl PlumbingGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_graph(graph: MultiGraph<PlumbNode, ()>) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &MultiGraph<PlumbNode, ()> {
        &self.graph
    }

    pub fn add_vertex(&mut self, genus: u32, self_intersection: i64) -> NodeId {
        self.graph.add_node(PlumbNode {
            genus,
            self_intersection,
            origin: Origin::Free,
        })
    }

    pub fn connect(&mut self, a: NodeId, b: NodeId) -> Result<EdgeId> {
        self.graph.add_edge(a, b, ())
    }

    pub fn vertex(&self, id: NodeId) -> Option<&PlumbNode> {
        self.graph.node(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        let vs: Vec<(NodeId, i64)> = self
            .graph
            .nodes()
            .map(|(id, n)| (id, n.self_intersection))
            .collect();
        IntersectionMatrix::from_graph(&self.graph, &vs)
    }

    /// Self-intersections in increasing order.
    pub fn self_intersections(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.graph.nodes().map(|(_, n)| n.self_intersection).collect();
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BlowDownMode {
    /// Only curves meeting at most two other curve ends.
    #[default]
    Default,
    /// Any valence.
    Aggressive,
}

fn contractible(g: &MultiGraph<PlumbNode, ()>, v: NodeId, mode: BlowDownMode) -> bool {
    let Some(n) = g.node(v) else { return false };
    n.genus == 0
        && n.self_intersection == -1
        && g.loop_count(v) == 0
        && (mode == BlowDownMode::Aggressive || g.degree(v) <= 2)
}

fn contract(graph: &mut MultiGraph<PlumbNode, ()>, v: NodeId) -> Vec<NodeId> {
    let ends = graph.neighbors(v);
    graph.remove_node(v);
    for &u in &ends {
        graph.node_mut(u).expect("neighbour exists").self_intersection += 1;
    }
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            graph.add_edge(ends[i], ends[j], ()).expect("ends exist");
        }
    }
    ends
}

/// Contracts the lowest-id qualifying (-1)-curve, if any.
pub fn blow_down_step(g: &PlumbingGraph, mode: BlowDownMode) -> Option<PlumbingGraph> {
    let v = g.graph.node_ids().find(|&v| contractible(&g.graph, v, mode))?;
    let mut graph = g.graph.clone();
    contract(&mut graph, v);
    Some(PlumbingGraph { graph })
}

/// Contracts rational (-1)-curves until none qualifies, lowest id first.
///
/// Every edge end at the removed curve raises that neighbour's
/// self-intersection by one, and every pair of ends is joined by a new edge
/// (a loop when both ends sit on the same neighbour). This keeps the
/// intersection lattice's determinant.
pub fn blow_down(g: &PlumbingGraph, mode: BlowDownMode) -> PlumbingGraph {
    let mut graph = g.graph.clone();
    let mut work: BTreeSet<NodeId> = graph
        .node_ids()
        .filter(|&v| contractible(&graph, v, mode))
        .collect();
    while let Some(v) = work.pop_first() {
        if !contractible(&graph, v, mode) {
            continue;
        }
        for u in contract(&mut graph, v) {
            if contractible(&graph, u, mode) {
                work.insert(u);
            }
        }
    }
    PlumbingGraph { graph }
}
