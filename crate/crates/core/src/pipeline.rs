//! From the curve-arrangement graph and `k` to the resolution graphs of
//! `f + g^k`.
//!
//! 1. every vertex gets covering data `n_v`, a multiplicity and a genus;
//! 2. every edge gets covering data `n_e` and a Hirzebruch-Jung string;
//! 3. the covering graph with strings inserted gets its missing
//!    self-intersections from the Euler relation, which is then checked on
//!    the whole graph;
//! 4. arrows and multiplicities are dropped and (-1)-curves blown down.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_integer::Integer;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::covering::{check_data, standard_covering, CoveringData};
use crate::error::{Error, Result};
use crate::gammac::{normalize_extrablowup, star_of, validate, GammaC, Weight};
use crate::graph::{EdgeId, NodeId};
use crate::hj::{compute_string, HJChain, StringSpec};
use crate::resgraph::{
    blow_down, euler_check, solve_selfints, Arrow, BlowDownMode, Curve, Origin, PlumbingGraph,
    ResGraph, ResNode,
};

/// Least `k` with `k ν - n >= 1` at every vertex.
pub fn k_min(g: &GammaC) -> i64 {
    g.vertices()
        .map(|v| {
            let t = g.triple(v);
            Integer::div_floor(&t.n, &t.nu) + 1
        })
        .fold(1, i64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LiftData {
    pub n_v: i64,
    pub multiplicity: i64,
    pub genus: u32,
    pub arrowhead: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step1Result {
    pub k: i64,
    pub lifts: BTreeMap<NodeId, LiftData>,
}

fn positive_part(g: &GammaC, v: NodeId, k: i64) -> Result<i64> {
    let t = g.triple(v);
    let a = k * t.nu - t.n;
    if a < 1 {
        return Err(Error::Inadmissible(format!(
            "k ν - n = {a} at {} {t} for k = {k}",
            g.name(v)
        )));
    }
    Ok(a)
}

pub fn step1(g: &GammaC, k: i64) -> Result<Step1Result> {
    let mut lifts = BTreeMap::new();
    for v in g.graph().node_ids() {
        if g.is_arrowhead(v) {
            lifts.insert(
                v,
                LiftData {
                    n_v: 1,
                    multiplicity: 1,
                    genus: 0,
                    arrowhead: true,
                },
            );
            continue;
        }
        let star = star_of(g, v)?;
        let t = star.triple;
        let a = positive_part(g, v, k)?;
        let base = t.m.gcd(&a);
        let mut n_v = base;
        let mut euler = (2 - 2 * star.genus as i64 - (star.s + star.t) as i64) * base;
        for leg in &star.legs {
            let x = match leg.weight {
                Weight::One => k * leg.other.nu - leg.other.n,
                Weight::Two => leg.other.m,
            };
            n_v = n_v.gcd(&x);
            euler += base.gcd(&x);
        }
        if euler % (2 * n_v) != 0 || euler > 2 * n_v {
            return Err(Error::Inadmissible(format!(
                "lifts over {} would have genus (2 - {euler}/{n_v})/2 at k = {k}",
                g.name(v)
            )));
        }
        lifts.insert(
            v,
            LiftData {
                n_v,
                multiplicity: t.m * t.nu / base,
                genus: ((2 * n_v - euler) / (2 * n_v)) as u32,
                arrowhead: false,
            },
        );
    }
    Ok(Step1Result { k, lifts })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeString {
    pub weight: Weight,
    pub n_e: i64,
    pub spec: StringSpec,
    /// Endpoint the α-end of every inserted string attaches to.
    pub alpha_end: NodeId,
    pub beta_end: NodeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step2Result {
    pub k: i64,
    pub edges: BTreeMap<EdgeId, EdgeString>,
}

pub fn step2(g: &GammaC, k: i64) -> Result<Step2Result> {
    let mut edges = BTreeMap::new();
    for (e, [a, b], weight) in g.edges() {
        // an arrowhead always sits at the β-end
        let (v1, v2) = if g.is_arrowhead(a) { (b, a) } else { (a, b) };
        let (t1, t2) = (g.triple(v1), g.triple(v2));
        let (n_e, spec) = match weight {
            Weight::One => {
                let (p, q) = (positive_part(g, v1, k)?, positive_part(g, v2, k)?);
                let n_e = t1.m.gcd(&p).gcd(&q);
                let spec = StringSpec::new(p / n_e, q / n_e, t1.m / n_e, t1.nu, t2.nu, 0);
                (n_e, spec)
            }
            Weight::Two => {
                let p = positive_part(g, v1, k)?;
                let n_e = t1.m.gcd(&t2.m).gcd(&p);
                let spec = StringSpec::new(t1.m / n_e, t2.m / n_e, p / n_e, 0, 0, t1.nu);
                (n_e, spec)
            }
        };
        edges.insert(
            e,
            EdgeString {
                weight,
                n_e,
                spec,
                alpha_end: v1,
                beta_end: v2,
            },
        );
    }
    Ok(Step2Result { k, edges })
}

/// Covering data read off steps 1 and 2.
pub fn covering_data(s1: &Step1Result, s2: &Step2Result) -> CoveringData {
    CoveringData {
        vertex: s1.lifts.iter().map(|(v, l)| (*v, l.n_v)).collect(),
        edge: s2.edges.iter().map(|(e, s)| (*e, s.n_e)).collect(),
    }
}

/// Builds the covering graph and inserts the strings. Self-intersections
/// are set on string vertices only.
pub fn assemble(g: &GammaC, s1: &Step1Result, s2: &Step2Result) -> Result<ResGraph> {
    let data = covering_data(s1, s2);
    let v1: Vec<NodeId> = g
        .vertices()
        .filter(|v| g.triple(*v).m == 1)
        .chain(g.arrowheads())
        .collect();
    let report = check_data(g.graph(), &data, &v1);
    if !report.is_valid() {
        return Err(Error::InvalidCoveringData(report.violations.join("; ")));
    }
    if !report.uniqueness_precondition {
        return Err(Error::InvalidCoveringData(
            "a vertex with m = 1 has n_v > 1".into(),
        ));
    }
    for (e, s) in &s2.edges {
        for v in [s.alpha_end, s.beta_end] {
            if s.n_e % data.n_v(v) != 0 {
                return Err(Error::InvalidCoveringData(format!(
                    "n_v = {} at {} does not divide n_e = {} of {e}",
                    data.n_v(v),
                    g.name(v),
                    s.n_e
                )));
            }
        }
    }
    let cover = standard_covering(g.graph(), &data)?;

    let mut out = ResGraph::new();
    let mut lift_ids: BTreeMap<(NodeId, i64), NodeId> = BTreeMap::new();
    for (_, lift) in cover.graph.nodes() {
        let l = s1.lifts[&lift.base];
        let origin = Origin::Lift {
            base: lift.base,
            sheet: lift.sheet as u32,
        };
        let node = if l.arrowhead {
            ResNode::Arrow(Arrow {
                multiplicity: 1,
                origin,
            })
        } else {
            ResNode::Curve(Curve {
                multiplicity: l.multiplicity,
                genus: l.genus,
                self_intersection: None,
                origin,
            })
        };
        lift_ids.insert((lift.base, lift.sheet), out.add_node(node));
    }

    let mut chains: BTreeMap<EdgeId, HJChain> = BTreeMap::new();
    for (e, s) in &s2.edges {
        chains.insert(*e, compute_string(&s.spec)?);
    }
    for (_, rec) in cover.graph.edges() {
        let (e, sheet) = (rec.data.base, rec.data.sheet);
        let s = &s2.edges[&e];
        let chain = &chains[&e];
        let la = lift_ids[&(s.alpha_end, sheet % data.n_v(s.alpha_end))];
        let lb = lift_ids[&(s.beta_end, sheet % data.n_v(s.beta_end))];
        for (lift, found) in [
            (la, chain.alpha_end_multiplicity),
            (lb, chain.beta_end_multiplicity),
        ] {
            let expected = out.node(lift).unwrap().multiplicity();
            if expected != found {
                return Err(Error::ChainEndMismatch {
                    edge: e,
                    expected,
                    found,
                });
            }
        }
        if chain.is_empty() && out.node(la).unwrap().is_arrow() && out.node(lb).unwrap().is_arrow() {
            return Err(Error::Inadmissible(format!(
                "edge {e} joins two arrowheads with an empty string"
            )));
        }
        let mut prev = la;
        for (pos, cv) in chain.vertices.iter().enumerate() {
            let id = out.add_curve_with(Curve {
                multiplicity: cv.multiplicity,
                genus: 0,
                self_intersection: Some(cv.self_intersection),
                origin: Origin::Chain {
                    edge: e,
                    sheet: sheet as u32,
                    position: pos as u32,
                },
            });
            out.connect(prev, id)?;
            prev = id;
        }
        out.connect(prev, lb)?;
    }
    Ok(out)
}

/// Solves the missing self-intersections, then checks the Euler relation at
/// every curve, string curves included.
pub fn step3(g: &ResGraph) -> Result<ResGraph> {
    let solved = solve_selfints(g)?;
    let bad = euler_check(&solved)?;
    if let Some(v) = bad.first() {
        return Err(Error::Inadmissible(format!(
            "Euler relation fails at {} (residual {}) on {} curves",
            v.vertex,
            v.residual,
            bad.len()
        )));
    }
    Ok(solved)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    /// Run below `k_min`.
    pub force: bool,
    /// Blow down (-1)-curves after stripping.
    pub minimize: bool,
    pub mode: BlowDownMode,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        Self {
            force: false,
            minimize: true,
            mode: BlowDownMode::Default,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `k >= k_min`.
    Admissible,
    /// Forced below `k_min`; the output is computed but nothing vouches for it.
    Unverified,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Admissible => "admissible",
            Regime::Unverified => "unverified regime",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub k: i64,
    pub k_min: i64,
    pub regime: Regime,
    /// The input after subdividing weight-2 edges between `m = 1` ends.
    pub normalized: GammaC,
    pub step1: Step1Result,
    pub step2: Step2Result,
    /// Embedded resolution graph of `g` on `f + g^k = 0`.
    pub embedded: ResGraph,
    /// Resolution graph of `f + g^k = 0`.
    pub minimal: PlumbingGraph,
}

pub fn resolve(g: &GammaC, k: i64, options: ResolveOptions) -> Result<Resolution> {
    let report = validate(g);
    if !report.is_valid() {
        return Err(Error::Invalid(report));
    }
    let k_min = k_min(g);
    let regime = if k >= k_min {
        Regime::Admissible
    } else if options.force {
        Regime::Unverified
    } else {
        return Err(Error::InadmissibleK { k, k_min });
    };
    let normalized = normalize_extrablowup(g);
    let s1 = step1(&normalized, k)?;
    let s2 = step2(&normalized, k)?;
    let embedded = step3(&assemble(&normalized, &s1, &s2)?)?;
    let stripped = embedded.strip()?;
    let minimal = if options.minimize {
        blow_down(&stripped, options.mode)
    } else {
        stripped
    };
    if !minimal.graph().is_connected() {
        return Err(Error::NotNegativeDefinite(format!(
            "resolution graph has {} components",
            minimal.graph().components().len()
        )));
    }
    if !minimal.intersection_matrix().is_negative_definite() {
        return Err(Error::NotNegativeDefinite(
            "intersection form is not negative definite".into(),
        ));
    }
    Ok(Resolution {
        k,
        k_min,
        regime,
        normalized,
        step1: s1,
        step2: s2,
        embedded,
        minimal,
    })
}

// ------------------------------------------------------------------- series

/// The part of the embedded graph that does not depend on `k`: lifts of
/// `m = 1` vertices and of arrowheads with multiplicity and genus, plus the
/// edges between them. Self-intersections are left out since they see the
/// strings attached to the part.
pub fn stable_part(res: &Resolution) -> Vec<String> {
    let g = &res.normalized;
    let graph = res.embedded.graph();
    let in_part = |id: NodeId| -> Option<NodeId> {
        match graph.node(id)?.origin() {
            Origin::Lift { base, .. } if g.triple(base).m == 1 => Some(base),
            _ => None,
        }
    };
    let mut items = Vec::new();
    for (id, node) in graph.nodes() {
        if let Some(base) = in_part(id) {
            let genus = node.as_curve().map_or(0, |c| c.genus);
            let kind = if node.is_arrow() { "arrow" } else { "curve" };
            items.push(format!(
                "{kind} {} m={} g={genus}",
                g.name(base),
                node.multiplicity()
            ));
        }
    }
    for (_, rec) in graph.edges() {
        if let (Some(a), Some(b)) = (in_part(rec.ends[0]), in_part(rec.ends[1])) {
            let (a, b) = (g.name(a), g.name(b));
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            items.push(format!("edge {a} {b}"));
        }
    }
    items.sort();
    items
}

pub fn stable_hash(res: &Resolution) -> String {
    let mut h = Sha256::new();
    for item in stable_part(res) {
        h.update(item.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesRow {
    pub k: i64,
    pub regime: Option<Regime>,
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub det_abs: Option<String>,
    pub definite: Option<bool>,
    pub stable_hash: Option<String>,
    /// Curves on strings inserted over weight-2 edges, all sheets.
    pub two_edge_string_curves: Option<usize>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub rows: Vec<SeriesRow>,
    /// Whether every successful row has the same stable hash.
    pub stable_part_constant: bool,
    /// Per-step change of `two_edge_string_curves` between consecutive successful rows.
    pub tail_growth: Vec<i64>,
}

fn series_row(g: &GammaC, k: i64, options: ResolveOptions) -> SeriesRow {
    match resolve(g, k, options) {
        Ok(res) => {
            let m = res.minimal.intersection_matrix();
            let tails = res
                .embedded
                .curves()
                .filter(|(_, c)| match c.origin {
                    Origin::Chain { edge, .. } => res.step2.edges[&edge].weight == Weight::Two,
                    _ => false,
                })
                .count();
            SeriesRow {
                k,
                regime: Some(res.regime),
                vertices: Some(res.minimal.vertex_count()),
                edges: Some(res.minimal.edge_count()),
                det_abs: Some(m.det_abs().to_string()),
                definite: Some(m.is_negative_definite()),
                stable_hash: Some(stable_hash(&res)),
                two_edge_string_curves: Some(tails),
                error: None,
            }
        }
        Err(e) => SeriesRow {
            k,
            regime: None,
            vertices: None,
            edges: None,
            det_abs: None,
            definite: None,
            stable_hash: None,
            two_edge_string_curves: None,
            error: Some(e.to_string()),
        },
    }
}

/// Resolves every `k` in `ks`; failures become rows with an error message.
pub fn series(g: &GammaC, ks: RangeInclusive<i64>, options: ResolveOptions) -> SeriesReport {
    let rows: Vec<SeriesRow> = ks.map(|k| series_row(g, k, options)).collect();
    let hashes: Vec<&String> = rows.iter().filter_map(|r| r.stable_hash.as_ref()).collect();
    let tails: Vec<i64> = rows
        .iter()
        .filter_map(|r| r.two_edge_string_curves.map(|t| t as i64))
        .collect();
    SeriesReport {
        stable_part_constant: hashes.windows(2).all(|w| w[0] == w[1]),
        tail_growth: tails.windows(2).map(|w| w[1] - w[0]).collect(),
        rows,
    }
}

impl SeriesReport {
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "k",
            "regime",
            "vertices",
            "edges",
            "det_abs",
            "definite",
            "stable_hash",
            "two_edge_string_curves",
            "error",
        ])?;
        let opt = |x: Option<String>| x.unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.k.to_string(),
                opt(r.regime.map(|x| x.label().to_string())),
                opt(r.vertices.map(|x| x.to_string())),
                opt(r.edges.map(|x| x.to_string())),
                opt(r.det_abs.clone()),
                opt(r.definite.map(|x| x.to_string())),
                opt(r.stable_hash.clone()),
                opt(r.two_edge_string_curves.map(|x| x.to_string())),
                opt(r.error.clone()),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gammac::Triple;

    #[test]
    fn k_min_examples() {
        assert_eq!(k_min(&fixtures::cusp()), 1);
        let mut g = GammaC::new();
        g.add_vertex(Triple::new(3, 7, 2), 0);
        assert_eq!(k_min(&g), 4);
        let mut h = GammaC::new();
        h.add_vertex(Triple::new(2, 5, 1), 0);
        assert_eq!(k_min(&h), 6);
    }

    #[test]
    fn step1_cusp_center() {
        let g = fixtures::cusp();
        let c = g.vertices().find(|v| g.triple(*v).m == 6).unwrap();
        let l5 = step1(&g, 5).unwrap().lifts[&c];
        assert_eq!((l5.n_v, l5.multiplicity, l5.genus), (1, 6, 0));
        let l6 = step1(&g, 6).unwrap().lifts[&c];
        assert_eq!((l6.n_v, l6.multiplicity, l6.genus), (1, 1, 1));
    }

    #[test]
    fn step2_cusp_edges() {
        let g = fixtures::cusp();
        let s2 = step2(&g, 5).unwrap();
        let specs: Vec<StringSpec> = s2.edges.values().map(|s| s.spec).collect();
        assert!(specs.contains(&StringSpec::new(2, 6, 5, 0, 0, 1)));
        assert!(specs.contains(&StringSpec::new(6, 1, 5, 0, 0, 1)));
        assert!(s2.edges.values().all(|s| s.n_e == 1));
    }

    #[test]
    fn cusp_k5_embedded() {
        let res = resolve(&fixtures::cusp(), 5, ResolveOptions::default()).unwrap();
        let mut ms: Vec<i64> = res.embedded.curves().map(|(_, c)| c.multiplicity).collect();
        ms.sort();
        let mut want = vec![2, 3, 6, 2, 4, 3, 3, 5, 4, 3, 2];
        want.sort();
        assert_eq!(ms, want);
        assert_eq!(res.minimal.vertex_count(), 8);
        assert!(res.minimal.self_intersections().iter().all(|e| *e == -2));
    }

    #[test]
    fn below_k_min_refused() {
        let g = fixtures::cusp();
        assert!(matches!(
            resolve(&g, 0, ResolveOptions::default()),
            Err(Error::InadmissibleK { k: 0, k_min: 1 })
        ));
    }

    #[test]
    fn node_series_counts() {
        let rep = series(&fixtures::node(), 2..=10, ResolveOptions::default());
        let counts: Vec<usize> = rep.rows.iter().map(|r| r.vertices.unwrap()).collect();
        assert_eq!(counts, (1..=9).collect::<Vec<_>>());
        assert!(rep.stable_part_constant);
        let csv = rep.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 10);
    }
}
