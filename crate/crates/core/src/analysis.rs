//! Structure of the curve-arrangement graph: the split into the `m = 1` part
//! (normalization of `{f = 0}`) and the `m >= 2` part (one component per
//! branch of the singular locus), the transversal type of every branch and
//! the resulting Euler characteristic correction.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use crate::covering::{component_count, standard_covering, verify_local_degrees, CoveringData};
use crate::error::{Error, Result};
use crate::gammac::{normalize_extrablowup, validate, GammaC, GcNode, Triple, Weight};
use crate::graph::{EdgeId, MultiGraph, NodeId};
use crate::resgraph::{
    acampo_chi, milnor_from_plane_graph, solve_selfints, Arrow, Curve, ExportDocument, GraphExport,
    IntersectionMatrix, Origin, ResGraph, ResNode,
};

// ------------------------------------------------------------- partition

/// Node of a branch component: a vertex of the input, or an arrowhead
/// standing for a weight-2 edge that leaves the component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchNode {
    Vertex { triple: Triple, genus: u32, source: NodeId },
    /// Carries the triple of the `m = 1` end of the edge `edge`.
    Arrowhead { triple: Triple, source: NodeId, edge: EdgeId },
}

impl BranchNode {
    pub fn triple(&self) -> Triple {
        match self {
            BranchNode::Vertex { triple, .. } | BranchNode::Arrowhead { triple, .. } => *triple,
        }
    }

    pub fn is_arrowhead(&self) -> bool {
        matches!(self, BranchNode::Arrowhead { .. })
    }
}

pub type BranchGraph = MultiGraph<BranchNode, Weight>;

#[derive(Clone, Debug)]
pub struct Partition {
    /// The input after subdividing weight-2 edges between `m = 1` ends.
    pub normalized: GammaC,
    /// Non-arrowhead vertices with `m = 1`.
    pub v1: Vec<NodeId>,
    /// Vertices with `m >= 2`.
    pub v2: Vec<NodeId>,
    /// `m = 1` vertices and arrowheads with the weight-1 edges among them.
    pub gamma1: MultiGraph<GcNode, Weight>,
    /// One graph per branch of the singular locus.
    pub gamma2: Vec<BranchGraph>,
}

pub fn partition(g: &GammaC) -> Partition {
    let normalized = normalize_extrablowup(g);
    let n = &normalized;
    let graph = n.graph();
    let v1: Vec<NodeId> = n.vertices().filter(|v| n.triple(*v).m == 1).collect();
    let v2: Vec<NodeId> = n.vertices().filter(|v| n.triple(*v).m >= 2).collect();
    let gamma1 = graph.filtered(|_, node| node.triple().m == 1, |_, rec| rec.data == Weight::One);
    let high = graph.induced(|_, node| node.triple().m >= 2);
    let mut gamma2 = Vec::new();
    for comp in high.components() {
        let members: BTreeSet<NodeId> = comp.iter().copied().collect();
        let mut bg = BranchGraph::new();
        let mut ids = BTreeMap::new();
        for &v in &comp {
            let id = bg.add_node(BranchNode::Vertex {
                triple: n.triple(v),
                genus: n.genus(v),
                source: v,
            });
            ids.insert(v, id);
        }
        for (e, rec) in graph.edges() {
            let [a, b] = rec.ends;
            match (members.contains(&a), members.contains(&b)) {
                (true, true) => {
                    bg.add_edge(ids[&a], ids[&b], rec.data).expect("members exist");
                }
                (true, false) | (false, true) => {
                    let (inner, outer) = if members.contains(&a) { (a, b) } else { (b, a) };
                    let arrow = bg.add_node(BranchNode::Arrowhead {
                        triple: n.triple(outer),
                        source: outer,
                        edge: e,
                    });
                    bg.add_edge(ids[&inner], arrow, rec.data).expect("ends exist");
                }
                (false, false) => {}
            }
        }
        gamma2.push(bg);
    }
    Partition {
        normalized,
        v1,
        v2,
        gamma1,
        gamma2,
    }
}

// -------------------------------------------------------------------- G1

#[derive(Clone, Debug)]
pub struct G1 {
    /// One embedded resolution graph per irreducible component of `{f = 0}`.
    pub components: Vec<ResGraph>,
    /// Per component, the curves that would support the strict transform of
    /// the singular locus: one entry per weight-2 edge end at an `m = 1`
    /// vertex. Informational only.
    pub strict_transform_supports: Vec<Vec<NodeId>>,
}

pub fn build_g1(p: &Partition) -> Result<G1> {
    let n = &p.normalized;
    let mut components = Vec::new();
    let mut supports = Vec::new();
    for comp in p.gamma1.components() {
        let mut rg = ResGraph::new();
        let mut ids = BTreeMap::new();
        let mut sup = Vec::new();
        if let [only] = comp[..] {
            if n.is_arrowhead(only) {
                // a smooth germ that was never blown up
                rg.add_curve_with(Curve {
                    multiplicity: 1,
                    genus: 0,
                    self_intersection: None,
                    origin: Origin::Lift { base: only, sheet: 0 },
                });
                components.push(solve_selfints(&rg)?);
                supports.push(sup);
                continue;
            }
        }
        for &v in &comp {
            let origin = Origin::Lift { base: v, sheet: 0 };
            let node = if n.is_arrowhead(v) {
                ResNode::Arrow(Arrow {
                    multiplicity: 1,
                    origin,
                })
            } else {
                ResNode::Curve(Curve {
                    multiplicity: n.triple(v).nu,
                    genus: n.genus(v),
                    self_intersection: None,
                    origin,
                })
            };
            ids.insert(v, rg.add_node(node));
        }
        for (_, rec) in p.gamma1.edges() {
            if let (Some(&a), Some(&b)) = (ids.get(&rec.ends[0]), ids.get(&rec.ends[1])) {
                if rg.node(a).unwrap().is_arrow() && rg.node(b).unwrap().is_arrow() {
                    return Err(Error::NotPlaneCurveGraph(
                        "weight-1 edge between two arrowheads".into(),
                    ));
                }
                rg.connect(a, b)?;
            }
        }
        for (_, [a, b], w) in n.edges() {
            if w != Weight::Two {
                continue;
            }
            for v in [a, b] {
                if let Some(&id) = ids.get(&v) {
                    if !n.is_arrowhead(v) {
                        sup.push(id);
                    }
                }
            }
        }
        components.push(solve_selfints(&rg)?);
        supports.push(sup);
    }
    Ok(G1 {
        components,
        strict_transform_supports: supports,
    })
}

// -------------------------------------------------------------- K classes

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KlClass {
    /// Vertex ids in the branch graph.
    pub members: Vec<NodeId>,
    /// Common first entry.
    pub m: i64,
    /// gcd of the members' third entries.
    pub nu: i64,
    /// Self-intersection of each member inside its fibration, when integral.
    pub self_intersections: BTreeMap<NodeId, i64>,
    pub violations: Vec<String>,
}

impl KlClass {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Classes of vertices joined by weight-1 edges, each checked: a tree of
/// rational curves with one `m`, satisfying `2 ν(K) = sum ν_i (2 - δ_i)`,
/// whose fibre-relation self-intersections give a negative semidefinite form
/// of corank one.
pub fn kl_partition(c: &BranchGraph) -> Vec<KlClass> {
    let ones = c.filtered(|_, n| !n.is_arrowhead(), |_, rec| rec.data == Weight::One);
    let mut out = Vec::new();
    for members in ones.components() {
        let set: BTreeSet<NodeId> = members.iter().copied().collect();
        let sub = c.induced(|id, _| set.contains(&id));
        let mut violations = Vec::new();
        let triples: Vec<Triple> = members.iter().map(|v| c.node(*v).unwrap().triple()).collect();
        let m = triples[0].m;
        let nu = triples.iter().fold(0, |acc, t| acc.gcd(&t.nu));
        if triples.iter().any(|t| t.m != m) {
            violations.push("members have different m".into());
        }
        if !sub.is_tree() {
            violations.push("class graph is not a tree".into());
        }
        if sub.edges().any(|(_, rec)| rec.data == Weight::Two) {
            violations.push("weight-2 edge inside a class".into());
        }
        for &v in &members {
            if let BranchNode::Vertex { genus, .. } = c.node(v).unwrap() {
                if *genus > 0 {
                    violations.push(format!("member {v} has genus {genus}"));
                }
            }
        }
        let rational: i64 = members
            .iter()
            .zip(&triples)
            .map(|(v, t)| t.nu * (2 - sub.degree(*v) as i64))
            .sum();
        if rational != 2 * nu {
            violations.push(format!("sum ν_i (2 - δ_i) = {rational}, expected 2 ν = {}", 2 * nu));
        }
        let mut selfints = BTreeMap::new();
        for (&v, t) in members.iter().zip(&triples) {
            let adjacent: i64 = sub
                .incident(v)
                .map(|e| {
                    let rec = sub.edge(e).unwrap();
                    let other = sub.node(rec.other(v)).unwrap().triple().nu;
                    if rec.is_loop() {
                        2 * other
                    } else {
                        other
                    }
                })
                .sum();
            if adjacent % t.nu == 0 {
                selfints.insert(v, -adjacent / t.nu);
            } else {
                violations.push(format!("self-intersection of {v} is -{adjacent}/{}", t.nu));
            }
        }
        if selfints.len() == members.len() {
            let vs: Vec<(NodeId, i64)> = members.iter().map(|v| (*v, selfints[v])).collect();
            let mat = IntersectionMatrix::from_graph(&sub, &vs);
            match mat.negative_semidefinite_rank() {
                Some(r) if r + 1 == members.len() => {}
                Some(r) => violations.push(format!(
                    "fibre form has rank {r}, expected {}",
                    members.len() - 1
                )),
                None => violations.push("fibre form is not negative semidefinite".into()),
            }
        }
        out.push(KlClass {
            members,
            m,
            nu,
            self_intersections: selfints,
            violations,
        });
    }
    out
}

// --------------------------------------------------------------- quotient

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuotientNode {
    Class { index: usize, m: i64 },
    Arrowhead { source: NodeId },
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub graph: MultiGraph<QuotientNode, ()>,
    pub data: CoveringData,
    /// Branch-graph vertex to quotient node.
    pub class_of: BTreeMap<NodeId, NodeId>,
}

/// Collapses every class to a vertex; edges come from the weight-2 edges
/// between classes and to arrowheads. The covering data are the third
/// entries: `ν(K)` on classes, `ν` on arrowheads and edges.
pub fn quotient_and_data(c: &BranchGraph, classes: &[KlClass]) -> Result<Quotient> {
    let mut graph = MultiGraph::new();
    let mut data = CoveringData::default();
    let mut class_of = BTreeMap::new();
    for (index, k) in classes.iter().enumerate() {
        let id = graph.add_node(QuotientNode::Class { index, m: k.m });
        data.vertex.insert(id, k.nu);
        for &v in &k.members {
            class_of.insert(v, id);
        }
    }
    for (v, node) in c.nodes() {
        if let BranchNode::Arrowhead { source, triple, .. } = node {
            let id = graph.add_node(QuotientNode::Arrowhead { source: *source });
            data.vertex.insert(id, triple.nu);
            class_of.insert(v, id);
        }
    }
    for (_, rec) in c.edges() {
        if rec.data != Weight::Two {
            continue;
        }
        let (a, b) = (class_of[&rec.ends[0]], class_of[&rec.ends[1]]);
        let e = graph.add_edge(a, b, ())?;
        // the two ends agree on ν in a valid input
        let nu = |v: NodeId| c.node(v).unwrap().triple().nu;
        data.edge.insert(e, nu(rec.ends[0]).lcm(&nu(rec.ends[1])));
    }
    if !graph.is_tree() {
        return Err(Error::Transversal("quotient graph is not a connected tree".into()));
    }
    Ok(Quotient {
        graph,
        data,
        class_of,
    })
}

// ------------------------------------------------------------- transversal

#[derive(Clone, Debug)]
pub struct TransversalReport {
    pub classes: Vec<KlClass>,
    pub quotient: Quotient,
    /// Degree of `g` on the branch.
    pub d: i64,
    /// Embedded resolution graph of the transversal plane curve.
    pub graph: ResGraph,
    /// Number of irreducible components of the transversal curve.
    pub branch_count: usize,
    pub milnor: i64,
    /// `ν(e) / d` for every weight-2 edge leaving the component.
    pub edge_degrees: Vec<i64>,
}

fn lifted_form(cover: &MultiGraph<crate::covering::VertexLift, crate::covering::EdgeLift>, comp: &[NodeId], q: &Quotient) -> Option<String> {
    let set: BTreeSet<NodeId> = comp.iter().copied().collect();
    let sub = cover.induced(|id, _| set.contains(&id));
    crate::resgraph::canonical_tree_form(&sub, |_, l| match q.graph.node(l.base).unwrap() {
        QuotientNode::Class { m, .. } => format!("c{m}"),
        QuotientNode::Arrowhead { .. } => "a".to_string(),
    })
}

pub fn transversal_graph(c: &BranchGraph) -> Result<TransversalReport> {
    let classes = kl_partition(c);
    if let Some(bad) = classes.iter().find(|k| !k.is_valid()) {
        return Err(Error::Transversal(format!(
            "class {:?}: {}",
            bad.members,
            bad.violations.join("; ")
        )));
    }
    let quotient = quotient_and_data(c, &classes)?;
    let d = c
        .nodes()
        .filter(|(_, n)| !n.is_arrowhead())
        .fold(0, |acc, (_, n)| acc.gcd(&n.triple().nu));
    let cover = standard_covering(&quotient.graph, &quotient.data)?;
    verify_local_degrees(&quotient.graph, &quotient.data, &cover).map_err(Error::Transversal)?;
    let expected = component_count(&quotient.graph, &quotient.data)?;
    let comps = cover.graph.components();
    if comps.len() as i64 != d || expected != d {
        return Err(Error::Transversal(format!(
            "covering has {} components, expected d = {d}",
            comps.len()
        )));
    }
    let forms: Vec<Option<String>> = comps.iter().map(|comp| lifted_form(&cover.graph, comp, &quotient)).collect();
    if forms[0].is_none() || forms.iter().any(|f| *f != forms[0]) {
        return Err(Error::Transversal("covering components are not isomorphic trees".into()));
    }

    let keep: BTreeSet<NodeId> = comps[0].iter().copied().collect();
    let mut rg = ResGraph::new();
    let mut ids = BTreeMap::new();
    for &v in &comps[0] {
        let lift = cover.graph.node(v).unwrap();
        let origin = Origin::Lift {
            base: lift.base,
            sheet: lift.sheet as u32,
        };
        let node = match quotient.graph.node(lift.base).unwrap() {
            QuotientNode::Class { m, .. } => ResNode::Curve(Curve {
                multiplicity: *m,
                genus: 0,
                self_intersection: None,
                origin,
            }),
            QuotientNode::Arrowhead { .. } => ResNode::Arrow(Arrow {
                multiplicity: 1,
                origin,
            }),
        };
        ids.insert(v, rg.add_node(node));
    }
    for (_, rec) in cover.graph.edges() {
        if keep.contains(&rec.ends[0]) {
            rg.connect(ids[&rec.ends[0]], ids[&rec.ends[1]])?;
        }
    }
    rg.check_structure().map_err(Error::Transversal)?;
    let graph = solve_selfints(&rg)?;
    let branch_count = graph.arrow_count();

    let nus: Vec<i64> = c
        .nodes()
        .filter(|(_, n)| n.is_arrowhead())
        .map(|(_, n)| n.triple().nu)
        .collect();
    let total: i64 = nus.iter().sum();
    if d * branch_count as i64 != total {
        return Err(Error::Transversal(format!(
            "d * branches = {d} * {branch_count} but the leaving edges carry {total}"
        )));
    }
    let mut edge_degrees = Vec::new();
    for nu in nus {
        if nu % d != 0 {
            return Err(Error::Transversal(format!("d = {d} does not divide ν(e) = {nu}")));
        }
        edge_degrees.push(nu / d);
    }
    let milnor = milnor_from_plane_graph(&graph)?;
    Ok(TransversalReport {
        classes,
        quotient,
        d,
        graph,
        branch_count,
        milnor,
        edge_degrees,
    })
}

// ----------------------------------------------------------------- summary

#[derive(Clone, Debug)]
pub struct Analysis {
    pub partition: Partition,
    pub g1: G1,
    pub branches: Vec<TransversalReport>,
}

impl Analysis {
    /// `sum d_j μ_j`; the Euler characteristic correction is `k` times this.
    pub fn chi_coefficient(&self) -> i64 {
        self.branches.iter().map(|b| b.d * b.milnor).sum()
    }
}

pub fn analyze(g: &GammaC) -> Result<Analysis> {
    let report = validate(g);
    if !report.is_valid() {
        return Err(Error::Invalid(report));
    }
    let partition = partition(g);
    let g1 = build_g1(&partition)?;
    let branches = partition
        .gamma2
        .iter()
        .map(transversal_graph)
        .collect::<Result<Vec<_>>>()?;
    Ok(Analysis {
        partition,
        g1,
        branches,
    })
}

/// `χ(F_{f+g^k}) - χ(F_f) = k sum d_j μ_j`.
pub fn chi_correction(g: &GammaC, k: i64) -> Result<i64> {
    Ok(k * analyze(g)?.chi_coefficient())
}

// ------------------------------------------------------------- plane curves

/// Curve-arrangement graph of `f(x, y, z) = f'(x, y)`, `g = z`, from an
/// embedded resolution graph of the plane curve `f'`.
///
/// A curve of multiplicity `m` becomes `(m; 0, 1)` and an arrow an
/// arrowhead. Edges get weight 2, except edges whose two ends have `m = 1`,
/// which get weight 1.
pub fn from_plane_curve_graph(pg: &ResGraph) -> Result<GammaC> {
    acampo_chi(pg)?;
    let mut out = GammaC::new();
    let mut ids = BTreeMap::new();
    for (id, node) in pg.graph().nodes() {
        let new = match node {
            ResNode::Curve(c) => out.add_vertex(Triple::new(c.multiplicity, 0, 1), 0),
            ResNode::Arrow(_) => out.add_arrowhead(),
        };
        ids.insert(id, new);
    }
    for (_, rec) in pg.graph().edges() {
        let [a, b] = rec.ends;
        let both_one = pg.node(a).unwrap().multiplicity() == 1 && pg.node(b).unwrap().multiplicity() == 1;
        let w = if both_one { Weight::One } else { Weight::Two };
        out.add_edge(ids[&a], ids[&b], w)?;
    }
    Ok(out)
}

// ----------------------------------------------------------------- reports

#[derive(Clone, Debug, Serialize)]
pub struct BranchSummary {
    pub vertices: Vec<String>,
    pub classes: Vec<ClassSummary>,
    pub d: i64,
    pub branch_count: usize,
    pub milnor: i64,
    pub edge_degrees: Vec<i64>,
    pub transversal_graph: ExportDocument,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub members: Vec<String>,
    pub m: i64,
    pub nu: i64,
    pub self_intersections: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisSummary {
    pub v1: Vec<String>,
    pub v2: Vec<String>,
    pub normalization_components: usize,
    pub normalization_graphs: Vec<ExportDocument>,
    pub branches: Vec<BranchSummary>,
    pub chi_coefficient: i64,
}

impl Analysis {
    pub fn summary(&self) -> AnalysisSummary {
        let n = &self.partition.normalized;
        let name_of = |c: &BranchGraph, v: NodeId| match c.node(v).unwrap() {
            BranchNode::Vertex { source, .. } | BranchNode::Arrowhead { source, .. } => {
                n.name(*source).to_string()
            }
        };
        AnalysisSummary {
            v1: self.partition.v1.iter().map(|v| n.name(*v).to_string()).collect(),
            v2: self.partition.v2.iter().map(|v| n.name(*v).to_string()).collect(),
            normalization_components: self.g1.components.len(),
            normalization_graphs: self.g1.components.iter().map(|g| g.export_document()).collect(),
            branches: self
                .partition
                .gamma2
                .iter()
                .zip(&self.branches)
                .map(|(c, b)| BranchSummary {
                    vertices: c
                        .nodes()
                        .filter(|(_, node)| !node.is_arrowhead())
                        .map(|(v, _)| name_of(c, v))
                        .collect(),
                    classes: b
                        .classes
                        .iter()
                        .map(|k| ClassSummary {
                            members: k.members.iter().map(|v| name_of(c, *v)).collect(),
                            m: k.m,
                            nu: k.nu,
                            self_intersections: k.members.iter().map(|v| k.self_intersections[v]).collect(),
                        })
                        .collect(),
                    d: b.d,
                    branch_count: b.branch_count,
                    milnor: b.milnor,
                    edge_degrees: b.edge_degrees.clone(),
                    transversal_graph: b.graph.export_document(),
                })
                .collect(),
            chi_coefficient: self.chi_coefficient(),
        }
    }
}
