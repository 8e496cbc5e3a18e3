use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::WGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidInput(format!("unknown graph format {s:?}"))),
        }
    }
}

#[derive(Serialize)]
struct VertexRecord {
    id: usize,
    word: Vec<usize>,
    descents: Vec<usize>,
    interior: bool,
}

#[derive(Serialize)]
struct EdgeRecord {
    a: usize,
    b: usize,
    mu: i64,
}

#[derive(Serialize)]
struct GraphRecord {
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
}

fn non_empty(graph: &WGraph) -> Result<()> {
    if graph.vertices().is_empty() {
        Err(Error::InvalidInput(format!(
            "{} truncated at depth {} has no vertices",
            graph.label(),
            graph.depth()
        )))
    } else {
        Ok(())
    }
}

fn labels(it: impl Iterator<Item = usize>) -> Vec<usize> {
    it.map(|i| i + 1).collect()
}

pub fn export_json(graph: &WGraph) -> Result<String> {
    non_empty(graph)?;
    let record = GraphRecord {
        vertices: graph
            .vertices()
            .iter()
            .map(|v| VertexRecord {
                id: v.id,
                word: v.element.word().labels(),
                descents: labels(v.descents.iter().map(|g| g.index())),
                interior: v.interior,
            })
            .collect(),
        edges: graph.edges().iter().map(|(&(a, b), &mu)| EdgeRecord { a, b, mu }).collect(),
    };
    Ok(serde_json::to_string(&record)?)
}

pub fn export_dot(graph: &WGraph) -> Result<String> {
    non_empty(graph)?;
    let mut out = String::from("graph wgraph {\n");
    for v in graph.vertices() {
        let word: Vec<String> = v.element.word().labels().iter().map(|l| l.to_string()).collect();
        let desc: Vec<String> = v.descents.iter().map(|g| (g.index() + 1).to_string()).collect();
        let _ = writeln!(
            out,
            "  v{} [label=\"{{{}}}\", tooltip=\"{}\"{}];",
            v.id,
            desc.join(","),
            word.join(" "),
            if v.interior { "" } else { ", style=dashed" }
        );
    }
    for (&(a, b), &mu) in graph.edges() {
        if mu == 1 {
            let _ = writeln!(out, "  v{a} -- v{b};");
        } else {
            let _ = writeln!(out, "  v{a} -- v{b} [label=\"{mu}\"];");
        }
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn export(graph: &WGraph, format: Format) -> Result<Vec<u8>> {
    Ok(match format {
        Format::Dot => export_dot(graph)?,
        Format::Json => export_json(graph)?,
    }
    .into_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::CellLabel;
    use crate::coxeter::{CoxeterSystem, Generator};
    use crate::klpoly::KlTable;
    use crate::wgraph::build_wgraph;

    #[test]
    fn export_examples() {
        let sys = CoxeterSystem::polygon(5).unwrap();
        let mut table = KlTable::new(&sys);
        let s1 = CellLabel::TypeI(Generator(0));

        let empty = build_wgraph(&mut table, &s1, 0).unwrap();
        assert!(export(&empty, Format::Json).is_err());

        let one = build_wgraph(&mut table, &s1, 1).unwrap();
        let dot = export_dot(&one).unwrap();
        assert_eq!(dot, "graph wgraph {\n  v0 [label=\"{1}\", tooltip=\"1\", style=dashed];\n}\n");

        let three = build_wgraph(&mut table, &s1, 3).unwrap();
        let json: serde_json::Value = serde_json::from_slice(&export(&three, Format::Json).unwrap()).unwrap();
        assert_eq!(json["vertices"].as_array().unwrap().len(), 7);
        assert_eq!(json["edges"].as_array().unwrap().len(), 6);
        assert_eq!(json["vertices"][0], serde_json::json!({"id":0,"word":[1],"descents":[1],"interior":true}));
        assert_eq!(json["edges"][0], serde_json::json!({"a":0,"b":1,"mu":1}));
        assert_eq!(export_json(&three).unwrap(), export_json(&three).unwrap());
    }
}
