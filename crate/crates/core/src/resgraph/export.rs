use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::{PlumbingGraph, ResGraph, ResNode};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExportVertex {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<i64>,
    pub genus: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_intersection: Option<i64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub origin: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExportArrow {
    pub id: String,
    pub support: String,
    pub multiplicity: i64,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub origin: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExportEdge {
    pub id: String,
    pub ends: [String; 2],
}

/// Format-neutral view of a decorated graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExportDocument {
    pub vertices: Vec<ExportVertex>,
    pub arrowheads: Vec<ExportArrow>,
    pub edges: Vec<ExportEdge>,
}

pub trait GraphExport {
    fn export_document(&self) -> ExportDocument;
}

impl GraphExport for ResGraph {
    fn export_document(&self) -> ExportDocument {
        let g = self.graph();
        let mut doc = ExportDocument::default();
        for (id, node) in g.nodes() {
            match node {
                ResNode::Curve(c) => doc.vertices.push(ExportVertex {
                    id: id.to_string(),
                    multiplicity: Some(c.multiplicity),
                    genus: c.genus,
                    self_intersection: c.self_intersection,
                    origin: c.origin.label(),
                }),
                ResNode::Arrow(a) => doc.arrowheads.push(ExportArrow {
                    id: id.to_string(),
                    support: self.support(id).map(|s| s.to_string()).unwrap_or_default(),
                    multiplicity: a.multiplicity,
                    origin: a.origin.label(),
                }),
            }
        }
        for (eid, rec) in g.edges() {
            if rec.ends.iter().any(|v| g.node(*v).unwrap().is_arrow()) {
                continue;
            }
            doc.edges.push(ExportEdge {
                id: eid.to_string(),
                ends: rec.ends.map(|v| v.to_string()),
            });
        }
        doc
    }
}

impl GraphExport for PlumbingGraph {
    fn export_document(&self) -> ExportDocument {
        let g = self.graph();
        ExportDocument {
            vertices: g
                .nodes()
                .map(|(id, n)| ExportVertex {
                    id: id.to_string(),
                    multiplicity: None,
                    genus: n.genus,
                    self_intersection: Some(n.self_intersection),
                    origin: n.origin.label(),
                })
                .collect(),
            arrowheads: Vec::new(),
            edges: g
                .edges()
                .map(|(eid, rec)| ExportEdge {
                    id: eid.to_string(),
                    ends: rec.ends.map(|v| v.to_string()),
                })
                .collect(),
        }
    }
}

fn fmt_opt(v: Option<i64>) -> String {
    v.map_or_else(|| "?".to_string(), |x| x.to_string())
}

fn to_dot(doc: &ExportDocument) -> String {
    let mut out = String::from("graph G {\n");
    for v in &doc.vertices {
        let mult = v.multiplicity.map_or_else(|| "-".to_string(), |m| m.to_string());
        let _ = writeln!(
            out,
            "  {} [label=\"({}, {}, {})\"];",
            v.id,
            mult,
            v.genus,
            fmt_opt(v.self_intersection)
        );
    }
    for a in &doc.arrowheads {
        let _ = writeln!(out, "  {} [shape=point, xlabel=\"{}\"];", a.id, a.multiplicity);
    }
    for e in &doc.edges {
        let _ = writeln!(out, "  {} -- {};", e.ends[0], e.ends[1]);
    }
    for a in &doc.arrowheads {
        let _ = writeln!(out, "  {} -- {} [arrowhead=normal, dir=forward];", a.support, a.id);
    }
    out.push_str("}\n");
    out
}

/// Renders `g` deterministically. Vertex labels read `(multiplicity, genus, self-intersection)`.
pub fn export(g: &impl GraphExport, format: ExportFormat) -> String {
    let doc = g.export_document();
    match format {
        ExportFormat::Dot => to_dot(&doc),
        ExportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_documents() {
        let g = ResGraph::new();
        assert_eq!(export(&g, ExportFormat::Dot), "graph G {\n}\n");
        let json: serde_json::Value = serde_json::from_str(&export(&g, ExportFormat::Json)).unwrap();
        assert_eq!(json["vertices"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn loop_is_self_edge() {
        let mut g = PlumbingGraph::new();
        let v = g.add_vertex(1, -1);
        g.connect(v, v).unwrap();
        let dot = export(&g, ExportFormat::Dot);
        assert!(dot.contains("n0 -- n0;"));
        assert!(dot.contains("(-, 1, -1)"));
    }

    #[test]
    fn format_flag() {
        assert_eq!("DOT".parse::<ExportFormat>().unwrap(), ExportFormat::Dot);
        assert!(matches!("svg".parse::<ExportFormat>(), Err(Error::UnknownFormat(_))));
    }

    #[test]
    fn arrows_rendered() {
        let mut g = ResGraph::new();
        let v = g.add_curve(2, 0, Some(-1));
        g.add_arrow(v, 1).unwrap();
        let dot = export(&g, ExportFormat::Dot);
        assert!(dot.contains("n0 [label=\"(2, 0, -1)\"];"));
        assert!(dot.contains("n0 -- n1 [arrowhead=normal, dir=forward];"));
        assert_eq!(export(&g, ExportFormat::Dot), dot);
    }
}
