//! Cyclic coverings of decorated graphs.
//!
//! Covering data assigns `n_v >= 1` to every vertex and `n_e >= 1` to every
//! edge with `lcm(n_{v1}, n_{v2}) | n_e`. The standard model has vertices
//! `(v, i)` for `i` in `Z/n_v` and edges `(e, j)` for `j` in `Z/n_e`, the
//! edge `(e, j)` joining `(v1, j mod n_{v1})` to `(v2, j mod n_{v2})`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, NodeId};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoveringData {
    pub vertex: BTreeMap<NodeId, i64>,
    pub edge: BTreeMap<EdgeId, i64>,
}

impl CoveringData {
    /// Every vertex and edge of `base` gets `n`.
    pub fn constant<N, E>(base: &MultiGraph<N, E>, n: i64) -> Self {
        Self {
            vertex: base.node_ids().map(|v| (v, n)).collect(),
            edge: base.edges().map(|(e, _)| (e, n)).collect(),
        }
    }

    pub fn n_v(&self, v: NodeId) -> i64 {
        self.vertex.get(&v).copied().unwrap_or(0)
    }

    pub fn n_e(&self, e: EdgeId) -> i64 {
        self.edge.get(&e).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub violations: Vec<String>,
    /// `n_e / lcm(n_{v1}, n_{v2})` for every edge that passed the axiom.
    pub edge_degrees: BTreeMap<EdgeId, i64>,
    /// Every vertex flagged by the caller has `n_v = 1`.
    pub uniqueness_precondition: bool,
}

impl CoveringReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the lcm axiom edge by edge. `flagged` lists the vertices whose data
/// must be 1 for the covering to be unique.
pub fn check_data<N, E>(base: &MultiGraph<N, E>, data: &CoveringData, flagged: &[NodeId]) -> CoveringReport {
    let mut report = CoveringReport::default();
    for v in base.node_ids() {
        match data.vertex.get(&v) {
            None => report.violations.push(format!("no data for vertex {v}")),
            Some(&n) if n < 1 => report.violations.push(format!("vertex {v} has n = {n} < 1")),
            _ => {}
        }
    }
    for (e, rec) in base.edges() {
        let Some(&ne) = data.edge.get(&e) else {
            report.violations.push(format!("no data for edge {e}"));
            continue;
        };
        if ne < 1 {
            report.violations.push(format!("edge {e} has n = {ne} < 1"));
            continue;
        }
        let (a, b) = (data.n_v(rec.ends[0]), data.n_v(rec.ends[1]));
        if a < 1 || b < 1 {
            continue;
        }
        if rec.is_loop() && a > 1 {
            report
                .violations
                .push(format!("loop {e} at {} with n = {a} > 1 is not supported", rec.ends[0]));
            continue;
        }
        let l = a.lcm(&b);
        if ne % l != 0 {
            report
                .violations
                .push(format!("edge {e}: lcm({a}, {b}) = {l} does not divide {ne}"));
        } else {
            report.edge_degrees.insert(e, ne / l);
        }
    }
    report.uniqueness_precondition = flagged.iter().all(|v| data.n_v(*v) == 1);
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexLift {
    pub base: NodeId,
    pub sheet: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeLift {
    pub base: EdgeId,
    pub sheet: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveredGraph {
    pub graph: MultiGraph<VertexLift, EdgeLift>,
    lifts: BTreeMap<(NodeId, i64), NodeId>,
}

impl CoveredGraph {
    /// Id of the lift `(v, sheet)` in the covering graph.
    pub fn lift(&self, v: NodeId, sheet: i64) -> Option<NodeId> {
        self.lifts.get(&(v, sheet)).copied()
    }

    pub fn lifts_of(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.lifts.range((v, i64::MIN)..=(v, i64::MAX)).map(|(_, id)| *id)
    }

    pub fn component_count(&self) -> usize {
        self.graph.components().len()
    }
}

/// The standard model of the covering. Vertices are created in base-id
/// order, sheets ascending; edges likewise.
pub fn standard_covering<N, E>(base: &MultiGraph<N, E>, data: &CoveringData) -> Result<CoveredGraph> {
    let report = check_data(base, data, &[]);
    if !report.is_valid() {
        return Err(Error::InvalidCoveringData(report.violations.join("; ")));
    }
    let mut graph = MultiGraph::new();
    let mut lifts = BTreeMap::new();
    for v in base.node_ids() {
        for sheet in 0..data.n_v(v) {
            let id = graph.add_node(VertexLift { base: v, sheet });
            lifts.insert((v, sheet), id);
        }
    }
    for (e, rec) in base.edges() {
        let [v1, v2] = rec.ends;
        for sheet in 0..data.n_e(e) {
            let a = lifts[&(v1, sheet % data.n_v(v1))];
            let b = lifts[&(v2, sheet % data.n_v(v2))];
            graph.add_edge(a, b, EdgeLift { base: e, sheet })?;
        }
    }
    Ok(CoveredGraph { graph, lifts })
}

/// Checks that every lift of `v` meets `n_e / n_v` lifts of each base edge
/// `e` at `v` (twice that many ends for loops) and nothing else.
pub fn verify_local_degrees<N, E>(
    base: &MultiGraph<N, E>,
    data: &CoveringData,
    cover: &CoveredGraph,
) -> std::result::Result<(), String> {
    for v in base.node_ids() {
        if cover.lifts_of(v).count() as i64 != data.n_v(v) {
            return Err(format!("{v} has the wrong number of lifts"));
        }
        for lift in cover.lifts_of(v) {
            let mut seen: BTreeMap<EdgeId, i64> = BTreeMap::new();
            for le in cover.graph.incident(lift) {
                let rec = cover.graph.edge(le).unwrap();
                *seen.entry(rec.data.base).or_default() += if rec.is_loop() { 2 } else { 1 };
            }
            for e in base.incident(v) {
                let ends = if base.edge(e).unwrap().is_loop() { 2 } else { 1 };
                let expected = ends * data.n_e(e) / data.n_v(v);
                let got = seen.remove(&e).unwrap_or(0);
                if got != expected {
                    return Err(format!(
                        "lift {lift} of {v} meets {got} ends over {e}, expected {expected}"
                    ));
                }
            }
            if let Some(e) = seen.keys().next() {
                return Err(format!("lift {lift} of {v} meets a lift of {e}, which is not at {v}"));
            }
        }
    }
    Ok(())
}

/// Number of connected components of the covering of a tree: the gcd of the
/// vertex data.
pub fn component_count<N, E>(base: &MultiGraph<N, E>, data: &CoveringData) -> Result<i64> {
    if !base.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(base.node_ids().fold(0, |acc, v| acc.gcd(&data.n_v(v))))
}
