//! Undirected multigraph with stable ids, parallel edges and loops.
//!
//! Every decorated graph in the crate (the curve-arrangement graph, embedded
//! resolution graphs, plumbing graphs, covering bases) is a `MultiGraph` with
//! its own node and edge payloads. Ids are never reused, so removing a node
//! keeps every other id valid, and iteration is always in increasing id order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord<E> {
    pub ends: [NodeId; 2],
    pub data: E,
}

impl<E> EdgeRecord<E> {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    /// The end opposite to `v`. For a loop this is `v` itself.
    pub fn other(&self, v: NodeId) -> NodeId {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph<N, E> {
    nodes: BTreeMap<NodeId, N>,
    edges: BTreeMap<EdgeId, EdgeRecord<E>>,
    adjacency: BTreeMap<NodeId, BTreeSet<EdgeId>>,
    next_node: u32,
    next_edge: u32,
}

impl<N, E> Default for MultiGraph<N, E> {
    fn default() -> Self {
        Self {
            nodes: BTreeMap::new(),
            edges: BTreeMap::new(),
            adjacency: BTreeMap::new(),
            next_node: 0,
            next_edge: 0,
        }
    }
}

impl<N, E> MultiGraph<N, E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, data: N) -> NodeId {
        let id = NodeId(self.next_node);
        self.next_node += 1;
        self.nodes.insert(id, data);
        self.adjacency.insert(id, BTreeSet::new());
        id
    }

    /// Inserts a node under a caller-chosen id. Used when a subgraph must keep
    /// the ids of the graph it was cut from.
    pub fn insert_node(&mut self, id: NodeId, data: N) {
        self.next_node = self.next_node.max(id.0 + 1);
        self.nodes.insert(id, data);
        self.adjacency.entry(id).or_default();
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId, data: E) -> Result<EdgeId> {
        let id = EdgeId(self.next_edge);
        self.insert_edge(id, a, b, data)?;
        Ok(id)
    }

    pub fn insert_edge(&mut self, id: EdgeId, a: NodeId, b: NodeId, data: E) -> Result<()> {
        for v in [a, b] {
            if !self.nodes.contains_key(&v) {
                return Err(Error::UnknownNode(v));
            }
        }
        self.next_edge = self.next_edge.max(id.0 + 1);
        self.edges.insert(id, EdgeRecord { ends: [a, b], data });
        self.adjacency.entry(a).or_default().insert(id);
        self.adjacency.entry(b).or_default().insert(id);
        Ok(())
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Option<EdgeRecord<E>> {
        let rec = self.edges.remove(&id)?;
        for v in rec.ends {
            if let Some(adj) = self.adjacency.get_mut(&v) {
                adj.remove(&id);
            }
        }
        Some(rec)
    }

    /// Removes a node together with all incident edges.
    pub fn remove_node(&mut self, id: NodeId) -> Option<N> {
        let incident: Vec<EdgeId> = self
            .adjacency
            .get(&id)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        for e in incident {
            self.remove_edge(e);
        }
        self.adjacency.remove(&id);
        self.nodes.remove(&id)
    }

    pub fn contains_node(&self, id: NodeId) -> bool {
        self.nodes.contains_key(&id)
    }

    pub fn node(&self, id: NodeId) -> Option<&N> {
        self.nodes.get(&id)
    }

    pub fn node_mut(&mut self, id: NodeId) -> Option<&mut N> {
        self.nodes.get_mut(&id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&EdgeRecord<E>> {
        self.edges.get(&id)
    }

    pub fn edge_mut(&mut self, id: EdgeId) -> Option<&mut EdgeRecord<E>> {
        self.edges.get_mut(&id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &N)> {
        self.nodes.iter().map(|(k, v)| (*k, v))
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &EdgeRecord<E>)> {
        self.edges.iter().map(|(k, v)| (*k, v))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Incident edges of `v`, each listed once (loops included once).
    pub fn incident(&self, v: NodeId) -> impl Iterator<Item = EdgeId> + '_ {
        self.adjacency.get(&v).into_iter().flatten().copied()
    }

    /// Number of edge ends at `v`; a loop counts twice.
    pub fn degree(&self, v: NodeId) -> usize {
        self.incident(v)
            .map(|e| if self.edges[&e].is_loop() { 2 } else { 1 })
            .sum()
    }

    pub fn loop_count(&self, v: NodeId) -> usize {
        self.incident(v).filter(|e| self.edges[e].is_loop()).count()
    }

    /// Neighbours of `v` across non-loop edges, one entry per edge.
    pub fn neighbors(&self, v: NodeId) -> Vec<NodeId> {
        self.incident(v)
            .filter_map(|e| {
                let rec = &self.edges[&e];
                (!rec.is_loop()).then(|| rec.other(v))
            })
            .collect()
    }

    /// Connected components, each sorted, listed in order of their smallest id.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.node_ids() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for e in self.incident(v) {
                    let w = self.edges[&e].other(v);
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected, loop-free and `|E| = |V| - 1`. The empty graph is not a tree.
    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.edge_count() + 1 == self.node_count() && self.is_connected()
    }

    /// Every component is a tree.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.node_count()
    }

    /// Subgraph on the nodes accepted by `keep`, with every edge whose both
    /// ends survive. Ids are preserved.
    pub fn induced<F>(&self, keep: F) -> Self
    where
        F: Fn(NodeId, &N) -> bool,
        N: Clone,
        E: Clone,
    {
        self.filtered(keep, |_, _| true)
    }

    /// Like [`MultiGraph::induced`] with an additional edge filter.
    pub fn filtered<F, G>(&self, keep_node: F, keep_edge: G) -> Self
    where
        F: Fn(NodeId, &N) -> bool,
        G: Fn(EdgeId, &EdgeRecord<E>) -> bool,
        N: Clone,
        E: Clone,
    {
        let mut out = Self::new();
        for (id, n) in self.nodes() {
            if keep_node(id, n) {
                out.insert_node(id, n.clone());
            }
        }
        for (id, rec) in self.edges() {
            if out.contains_node(rec.ends[0]) && out.contains_node(rec.ends[1]) && keep_edge(id, rec)
            {
                out.insert_edge(id, rec.ends[0], rec.ends[1], rec.data.clone())
                    .expect("ends checked above");
            }
        }
        out.next_node = self.next_node;
        out.next_edge = self.next_edge;
        out
    }

    /// Same shape and ids with transformed payloads.
    pub fn map<N2, E2>(
        &self,
        mut node_fn: impl FnMut(NodeId, &N) -> N2,
        mut edge_fn: impl FnMut(EdgeId, &EdgeRecord<E>) -> E2,
    ) -> MultiGraph<N2, E2> {
        MultiGraph {
            nodes: self.nodes.iter().map(|(k, v)| (*k, node_fn(*k, v))).collect(),
            edges: self
                .edges
                .iter()
                .map(|(k, rec)| {
                    (
                        *k,
                        EdgeRecord {
                            ends: rec.ends,
                            data: edge_fn(*k, rec),
                        },
                    )
                })
                .collect(),
            adjacency: self.adjacency.clone(),
            next_node: self.next_node,
            next_edge: self.next_edge,
        }
    }
}
