//! The curve-arrangement graph of a pair `(f, g)`.
//!
//! Non-arrowhead vertices carry a triple `(m; n, ν)` and a genus; arrowheads
//! implicitly carry `(1; 0, 1)`. Every edge has weight 1 or 2: a weight-1
//! edge joins two vertices with the same `m`, a weight-2 edge two vertices
//! with the same pair `(n, ν)`.
//!
//! Documents are JSON:
//!
//! ```json
//! {
//!   "vertices": [{"id": "a", "m": 6, "n": 0, "nu": 1, "genus": 0}],
//!   "arrowheads": [{"id": "x"}],
//!   "edges": [{"ends": ["a", "x"], "weight": 2}]
//! }
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub m: i64,
    pub n: i64,
    pub nu: i64,
}

impl Triple {
    pub const ARROW: Triple = Triple { m: 1, n: 0, nu: 1 };

    pub const fn new(m: i64, n: i64, nu: i64) -> Self {
        Self { m, n, nu }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{},{})", self.m, self.n, self.nu)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Weight {
    One,
    Two,
}

impl Weight {
    pub fn value(self) -> u8 {
        match self {
            Weight::One => 1,
            Weight::Two => 2,
        }
    }

    pub fn from_value(x: u8) -> Option<Self> {
        match x {
            1 => Some(Weight::One),
            2 => Some(Weight::Two),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcNode {
    Vertex { triple: Triple, genus: u32 },
    /// `declared` is whatever triple the input spelled out, if any; the
    /// validator insists it is `(1; 0, 1)`.
    Arrowhead { declared: Option<Triple> },
}

impl GcNode {
    pub fn triple(&self) -> Triple {
        match self {
            GcNode::Vertex { triple, .. } => *triple,
            GcNode::Arrowhead { .. } => Triple::ARROW,
        }
    }

    pub fn is_arrowhead(&self) -> bool {
        matches!(self, GcNode::Arrowhead { .. })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaC {
    graph: MultiGraph<GcNode, Weight>,
    names: BTreeMap<NodeId, String>,
}

impl GammaC {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn graph(&self) -> &MultiGraph<GcNode, Weight> {
        &self.graph
    }

    fn fresh_name(&self, prefix: &str, id: NodeId) -> String {
        let taken: BTreeSet<&str> = self.names.values().map(String::as_str).collect();
        let mut name = format!("{prefix}{}", id.0);
        while taken.contains(name.as_str()) {
            name.push('\'');
        }
        name
    }

    pub fn add_vertex(&mut self, triple: Triple, genus: u32) -> NodeId {
        let id = self.graph.add_node(GcNode::Vertex { triple, genus });
        let name = self.fresh_name("v", id);
        self.names.insert(id, name);
        id
    }

    pub fn add_arrowhead(&mut self) -> NodeId {
        let id = self.graph.add_node(GcNode::Arrowhead { declared: None });
        let name = self.fresh_name("a", id);
        self.names.insert(id, name);
        id
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId, weight: Weight) -> Result<EdgeId> {
        self.graph.add_edge(a, b, weight)
    }

    pub fn name(&self, v: NodeId) -> &str {
        self.names.get(&v).map(String::as_str).unwrap_or("?")
    }

    pub fn set_name(&mut self, v: NodeId, name: impl Into<String>) {
        self.names.insert(v, name.into());
    }

    pub fn find(&self, name: &str) -> Option<NodeId> {
        self.names.iter().find(|(_, n)| n.as_str() == name).map(|(id, _)| *id)
    }

    pub fn node(&self, v: NodeId) -> Option<&GcNode> {
        self.graph.node(v)
    }

    /// Triple of `v`; arrowheads read `(1; 0, 1)`.
    pub fn triple(&self, v: NodeId) -> Triple {
        self.graph.node(v).map(GcNode::triple).unwrap_or(Triple::ARROW)
    }

    pub fn genus(&self, v: NodeId) -> u32 {
        match self.graph.node(v) {
            Some(GcNode::Vertex { genus, .. }) => *genus,
            _ => 0,
        }
    }

    pub fn is_arrowhead(&self, v: NodeId) -> bool {
        self.graph.node(v).is_some_and(GcNode::is_arrowhead)
    }

    pub fn vertices(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.graph.nodes().filter(|(_, n)| !n.is_arrowhead()).map(|(id, _)| id)
    }

    pub fn arrowheads(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.graph.nodes().filter(|(_, n)| n.is_arrowhead()).map(|(id, _)| id)
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, [NodeId; 2], Weight)> + '_ {
        self.graph.edges().map(|(id, rec)| (id, rec.ends, rec.data))
    }

    pub fn weight(&self, e: EdgeId) -> Option<Weight> {
        self.graph.edge(e).map(|r| r.data)
    }

    pub fn ends(&self, e: EdgeId) -> Option<[NodeId; 2]> {
        self.graph.edge(e).map(|r| r.ends)
    }
}

// ---------------------------------------------------------------- documents

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: String,
    m: i64,
    n: i64,
    nu: i64,
    #[serde(default)]
    genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nu: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    ends: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    vertices: Vec<VertexDoc>,
    #[serde(default)]
    arrowheads: Vec<ArrowDoc>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaIssue {
    pub location: String,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("schema errors:{}", .0.iter().map(|i| format!("\n  {}: {}", i.location, i.message)).collect::<String>())]
    Schema(Vec<SchemaIssue>),
}

impl ParseError {
    pub fn issues(&self) -> Vec<SchemaIssue> {
        match self {
            ParseError::Syntax(e) => vec![SchemaIssue {
                location: format!("line {} column {}", e.line(), e.column()),
                message: e.to_string(),
            }],
            ParseError::Schema(v) => v.clone(),
        }
    }
}

/// Reads a document. Ids are assigned in document order: vertices first,
/// then arrowheads, then edges.
pub fn parse(text: &str) -> std::result::Result<GammaC, ParseError> {
    let doc: Document = serde_json::from_str(text)?;
    let mut issues = Vec::new();
    let mut issue = |location: String, message: String| issues.push(SchemaIssue { location, message });
    if doc.vertices.is_empty() && doc.arrowheads.is_empty() {
        issue("vertices".into(), "empty graph".into());
    }
    let mut g = GammaC::new();
    let mut by_name: BTreeMap<String, NodeId> = BTreeMap::new();
    for (i, v) in doc.vertices.iter().enumerate() {
        if by_name.contains_key(&v.id) {
            issue(format!("vertices[{i}].id"), format!("duplicate id `{}`", v.id));
            continue;
        }
        let id = g.graph.add_node(GcNode::Vertex {
            triple: Triple::new(v.m, v.n, v.nu),
            genus: v.genus,
        });
        g.names.insert(id, v.id.clone());
        by_name.insert(v.id.clone(), id);
    }
    for (i, a) in doc.arrowheads.iter().enumerate() {
        if by_name.contains_key(&a.id) {
            issue(format!("arrowheads[{i}].id"), format!("duplicate id `{}`", a.id));
            continue;
        }
        let declared = match (a.m, a.n, a.nu) {
            (None, None, None) => None,
            (m, n, nu) => Some(Triple::new(m.unwrap_or(1), n.unwrap_or(0), nu.unwrap_or(1))),
        };
        let id = g.graph.add_node(GcNode::Arrowhead { declared });
        g.names.insert(id, a.id.clone());
        by_name.insert(a.id.clone(), id);
    }
    for (i, e) in doc.edges.iter().enumerate() {
        let mut ends = Vec::with_capacity(2);
        for (j, name) in e.ends.iter().enumerate() {
            match by_name.get(name) {
                Some(id) => ends.push(*id),
                None => issue(format!("edges[{i}].ends[{j}]"), format!("unknown id `{name}`")),
            }
        }
        let weight = match e.weight {
            None => {
                issue(format!("edges[{i}].weight"), "missing weight".into());
                None
            }
            Some(x) => {
                let w = Weight::from_value(x);
                if w.is_none() {
                    issue(format!("edges[{i}].weight"), format!("weight must be 1 or 2, got {x}"));
                }
                w
            }
        };
        if let (2, Some(w)) = (ends.len(), weight) {
            g.graph.add_edge(ends[0], ends[1], w).expect("ends resolved");
        }
    }
    if issues.is_empty() {
        Ok(g)
    } else {
        Err(ParseError::Schema(issues))
    }
}

/// Canonical document: pretty JSON, ids in graph order, trailing newline.
pub fn serialize(g: &GammaC) -> String {
    let doc = Document {
        vertices: g
            .graph
            .nodes()
            .filter_map(|(id, n)| match n {
                GcNode::Vertex { triple, genus } => Some(VertexDoc {
                    id: g.name(id).to_string(),
                    m: triple.m,
                    n: triple.n,
                    nu: triple.nu,
                    genus: *genus,
                }),
                GcNode::Arrowhead { .. } => None,
            })
            .collect(),
        arrowheads: g
            .graph
            .nodes()
            .filter_map(|(id, n)| match n {
                GcNode::Arrowhead { declared } => Some(ArrowDoc {
                    id: g.name(id).to_string(),
                    m: declared.map(|t| t.m),
                    n: declared.map(|t| t.n),
                    nu: declared.map(|t| t.nu),
                }),
                GcNode::Vertex { .. } => None,
            })
            .collect(),
        edges: g
            .graph
            .edges()
            .map(|(_, rec)| EdgeDoc {
                ends: rec.ends.map(|v| g.name(v).to_string()),
                weight: Some(rec.data.value()),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

// --------------------------------------------------------------- validation

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: &'static str,
    pub element: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// Broken invariants; the graph is rejected if this is non-empty.
    pub violations: Vec<Violation>,
    /// Legal but noteworthy, e.g. weight-2 edges that normalization will subdivide.
    pub advisories: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn clauses(&self) -> Vec<&'static str> {
        self.violations.iter().map(|v| v.clause).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("[{}] {}: {}", v.clause, v.element, v.message))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate(g: &GammaC) -> ValidationReport {
    let mut r = ValidationReport::default();
    let mut bad = |clause: &'static str, element: String, message: String| {
        r.violations.push(Violation {
            clause,
            element,
            message,
        })
    };
    let graph = &g.graph;
    if graph.is_empty() {
        bad("nonempty", "graph".into(), "empty graph".into());
    }
    for (id, node) in graph.nodes() {
        let name = g.name(id).to_string();
        match node {
            GcNode::Vertex { triple, .. } => {
                if triple.m < 1 || triple.nu < 1 || triple.n < 0 {
                    bad(
                        "positivity",
                        name,
                        format!("triple {triple} needs m >= 1, n >= 0, nu >= 1"),
                    );
                }
            }
            GcNode::Arrowhead { declared } => {
                if let Some(t) = declared.filter(|t| *t != Triple::ARROW) {
                    bad(
                        "arrowhead-triple",
                        name.clone(),
                        format!("arrowheads carry (1;0,1), declared {t}"),
                    );
                }
                if graph.loop_count(id) > 0 {
                    bad("arrowhead-loop", name.clone(), "loops are not allowed at arrowheads".into());
                } else if graph.degree(id) != 1 {
                    bad(
                        "arrowhead-degree",
                        name,
                        format!("arrowheads have exactly one edge, found {}", graph.degree(id)),
                    );
                }
            }
        }
    }
    for (eid, rec) in graph.edges() {
        let [a, b] = rec.ends;
        let (ta, tb) = (g.triple(a), g.triple(b));
        let element = format!("edge {} {}-{}", eid, g.name(a), g.name(b));
        match rec.data {
            Weight::One if g.is_arrowhead(a) && g.is_arrowhead(b) => bad(
                "arrowhead-pair",
                element,
                "weight-1 edge joins two arrowheads".into(),
            ),
            Weight::One if ta.m != tb.m => bad(
                "weight-1-compatibility",
                element,
                format!("weight-1 edge joins {ta} and {tb} with unequal m"),
            ),
            Weight::Two if (ta.n, ta.nu) != (tb.n, tb.nu) => bad(
                "weight-2-compatibility",
                element,
                format!("weight-2 edge joins {ta} and {tb} with unequal (n, nu)"),
            ),
            Weight::Two if ta.m == 1 && tb.m == 1 => r.advisories.push(Violation {
                clause: "extra-blowup",
                element,
                message: "weight-2 edge between two m = 1 ends; normalization subdivides it".into(),
            }),
            _ => {}
        }
    }
    if !graph.is_empty() && !graph.is_connected() {
        r.violations.push(Violation {
            clause: "connected",
            element: "graph".into(),
            message: format!("graph has {} components", graph.components().len()),
        });
    }
    r
}

/// Parses and validates.
pub fn load(text: &str) -> Result<GammaC> {
    let g = parse(text)?;
    let report = validate(&g);
    if report.is_valid() {
        Ok(g)
    } else {
        Err(Error::Invalid(report))
    }
}

// -------------------------------------------------------------------- stars

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Leg {
    pub weight: Weight,
    /// Triple at the far end of the leg.
    pub other: Triple,
    pub edge: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Star {
    pub center: NodeId,
    pub triple: Triple,
    pub genus: u32,
    pub legs: Vec<Leg>,
    /// Number of weight-1 legs.
    pub s: usize,
    /// Number of weight-2 legs.
    pub t: usize,
}

impl Star {
    pub fn legs_of(&self, weight: Weight) -> impl Iterator<Item = &Leg> {
        self.legs.iter().filter(move |l| l.weight == weight)
    }
}

/// Legs at `v`: one per edge end, so a loop gives two identical legs.
pub fn star_of(g: &GammaC, v: NodeId) -> Result<Star> {
    let (triple, genus) = match g.graph.node(v) {
        None => return Err(Error::UnknownNode(v)),
        Some(GcNode::Arrowhead { .. }) => return Err(Error::ArrowheadStar(v)),
        Some(GcNode::Vertex { triple, genus }) => (*triple, *genus),
    };
    let mut legs = Vec::new();
    for e in g.graph.incident(v) {
        let rec = g.graph.edge(e).unwrap();
        let leg = Leg {
            weight: rec.data,
            other: g.triple(rec.other(v)),
            edge: e,
        };
        legs.push(leg);
        if rec.is_loop() {
            legs.push(leg);
        }
    }
    let s = legs.iter().filter(|l| l.weight == Weight::One).count();
    Ok(Star {
        center: v,
        triple,
        genus,
        t: legs.len() - s,
        s,
        legs,
    })
}

/// Subdivides every weight-2 edge whose two ends both have `m = 1`
/// (arrowheads included) by a rational vertex `(2; n, ν)` carrying the
/// shared pair, joined to both ends by weight-2 edges.
pub fn normalize_extrablowup(g: &GammaC) -> GammaC {
    let mut out = g.clone();
    let targets: Vec<(EdgeId, [NodeId; 2])> = g
        .edges()
        .filter(|(_, [a, b], w)| *w == Weight::Two && g.triple(*a).m == 1 && g.triple(*b).m == 1)
        .map(|(e, ends, _)| (e, ends))
        .collect();
    for (e, [a, b]) in targets {
        let t = g.triple(a);
        out.graph.remove_edge(e);
        let mid = out.graph.add_node(GcNode::Vertex {
            triple: Triple::new(2, t.n, t.nu),
            genus: 0,
        });
        let name = out.fresh_name("x", mid);
        out.names.insert(mid, name);
        out.graph.add_edge(a, mid, Weight::Two).expect("ends exist");
        out.graph.add_edge(mid, b, Weight::Two).expect("ends exist");
    }
    out
}
