//! JSON graph files and fixed-precision number output.
//!
//! A graph file looks like
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "weight_kind": "standard",
//!   "vertices": [{"id": 0}, {"id": 1}],
//!   "edges": [{"id": 0, "src": 0, "dst": 1, "alpha": 0.5, "cocycle": 1}]
//! }
//! ```
//!
//! Weights are written only for `custom` graphs and are read back bit for
//! bit. `alpha` defaults to 0 and `cocycle` (the number of fundamental domains
//! an edge crosses in a periodic graph) defaults to 0.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::covering::PeriodicGraph;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSpec, MWGraph, VertexId, VertexSpec, WeightKind};
use crate::spectra::Spectrum;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    #[serde(default = "default_version")]
    format_version: u32,
    weight_kind: WeightKind,
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

fn is_zero_f(x: &f64) -> bool {
    *x == 0.0
}

fn is_zero_i(x: &i64) -> bool {
    *x == 0
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    id: u32,
    src: u32,
    dst: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<f64>,
    #[serde(default, skip_serializing_if = "is_zero_f")]
    alpha: f64,
    #[serde(default, skip_serializing_if = "is_zero_i")]
    cocycle: i64,
}

fn parse_file(text: &str) -> Result<GraphFile> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format_version {}", file.format_version)));
    }
    Ok(file)
}

fn build(file: &GraphFile) -> Result<MWGraph> {
    let vertices = file.vertices.iter().map(|v| VertexSpec { id: VertexId(v.id), weight: v.weight }).collect();
    let edges = file
        .edges
        .iter()
        .map(|e| EdgeSpec { id: EdgeId(e.id), src: VertexId(e.src), dst: VertexId(e.dst), weight: e.weight, alpha: e.alpha })
        .collect();
    MWGraph::new(file.weight_kind, vertices, edges)
}

/// Reads a graph, ignoring any cocycle entries.
pub fn graph_from_json(text: &str) -> Result<MWGraph> {
    build(&parse_file(text)?)
}

pub fn periodic_from_json(text: &str) -> Result<PeriodicGraph> {
    let file = parse_file(text)?;
    let g = build(&file)?;
    let cocycle = file.edges.iter().filter(|e| e.cocycle != 0).map(|e| (EdgeId(e.id), e.cocycle)).collect();
    PeriodicGraph::new(g, cocycle)
}

fn to_file(g: &MWGraph, cocycle: &BTreeMap<EdgeId, i64>) -> GraphFile {
    let custom = g.kind() == WeightKind::Custom;
    GraphFile {
        format_version: FORMAT_VERSION,
        weight_kind: g.kind(),
        vertices: g.vertices().iter().map(|v| VertexRecord { id: v.id.0, weight: custom.then_some(v.weight) }).collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeRecord {
                id: e.id.0,
                src: e.src.0,
                dst: e.dst.0,
                weight: custom.then_some(e.weight),
                alpha: e.alpha,
                cocycle: cocycle.get(&e.id).copied().unwrap_or(0),
            })
            .collect(),
    }
}

pub fn graph_to_json(g: &MWGraph) -> String {
    serde_json::to_string_pretty(&to_file(g, &BTreeMap::new())).expect("graph serialises") + "\n"
}

pub fn periodic_to_json(p: &PeriodicGraph) -> String {
    serde_json::to_string_pretty(&to_file(p.quotient(), p.cocycle_map())).expect("graph serialises") + "\n"
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> Result<MWGraph> {
    graph_from_json(&read_text(path)?)
}

pub fn load_periodic(path: &Path) -> Result<PeriodicGraph> {
    periodic_from_json(&read_text(path)?)
}

pub fn save_graph(path: &Path, g: &MWGraph) -> Result<()> {
    write_text(path, &graph_to_json(g))
}

pub fn save_periodic(path: &Path, p: &PeriodicGraph) -> Result<()> {
    write_text(path, &periodic_to_json(p))
}

/// Rounds to 15 significant digits; magnitudes below `1e-12` become 0.
pub fn round15(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

/// Shortest decimal text of [`round15`]`(x)`.
pub fn fmt_num(x: f64) -> String {
    format!("{}", round15(x))
}

pub fn spectrum_csv(s: &Spectrum) -> String {
    s.values().iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(",")
}

pub fn spectrum_json(s: &Spectrum) -> Value {
    json!({
        "format_version": FORMAT_VERSION,
        "values": s.values().iter().map(|&x| round15(x)).collect::<Vec<_>>(),
        "grouped": s.grouped().iter().map(|&(x, m)| json!([round15(x), m])).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn custom_weights_round_trip_exactly() {
        let g = MWGraph::builder(WeightKind::Custom)
            .weighted_vertex(3, 0.1 + 0.2)
            .weighted_vertex(7, std::f64::consts::E)
            .weighted_edge(3, 7, 1.0 / 3.0, 2.0_f64.sqrt())
            .weighted_edge(7, 7, 1e-300, -3.0)
            .build()
            .unwrap();
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(back, g);
        for (a, b) in back.edges().iter().zip(g.edges()) {
            assert_eq!(a.weight.to_bits(), b.weight.to_bits());
            assert_eq!(a.alpha.to_bits(), b.alpha.to_bits());
        }
    }

    #[test]
    fn derived_weights_are_not_written() {
        let g = MWGraph::builder(WeightKind::Standard).vertices(0..2).edge(0, 1).build().unwrap();
        let text = graph_to_json(&g);
        assert!(!text.contains("weight\":"));
        assert!(text.contains("\"weight_kind\": \"standard\""));
        assert_eq!(graph_from_json(&text).unwrap(), g);
    }

    #[test]
    fn cocycles_round_trip() {
        let g = MWGraph::builder(WeightKind::Combinatorial).vertices(0..2).edge(0, 1).edge(1, 0).build().unwrap();
        let p = PeriodicGraph::new(g, [(EdgeId(1), -2)].into()).unwrap();
        assert_eq!(periodic_from_json(&periodic_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn bad_input_is_a_parse_error() {
        assert!(matches!(graph_from_json("{"), Err(Error::Parse(_))));
        let wrong_version = r#"{"format_version": 9, "weight_kind": "custom", "vertices": [], "edges": []}"#;
        assert!(matches!(graph_from_json(wrong_version), Err(Error::Parse(_))));
        let dangling = r#"{"weight_kind": "combinatorial", "vertices": [{"id": 0}], "edges": [{"id": 0, "src": 0, "dst": 4}]}"#;
        assert!(matches!(graph_from_json(dangling), Err(Error::DanglingEndpoint { .. })));
    }

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(1e-13), "0");
        assert_eq!(fmt_num(-1e-13), "0");
        assert_eq!(fmt_num((3.0 - 5f64.sqrt()) / 2.0), "0.381966011250105");
        assert_eq!(fmt_num(2.0), "2");
        let s = Spectrum::new(vec![0.0, 1.0, 1.0 + 1e-15]);
        assert_eq!(spectrum_csv(&s), "0,1,1");
        assert_eq!(spectrum_json(&s)["grouped"], json!([[0.0, 1], [1.0, 2]]));
    }
}
