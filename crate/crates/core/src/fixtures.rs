//! Named example graphs shipped as files in `fixtures/`.
//!
//! Graphs whose spectrum depends on a Floquet parameter are periodic graphs
//! with a nonzero cocycle on one edge; all others carry the zero cocycle.

use std::collections::BTreeMap;

use crate::covering::PeriodicGraph;
use crate::graph::{EdgeId, MWGraph, VertexId, VertexPartition, WeightKind};

fn periodic(g: MWGraph, cocycle: &[(u32, i64)]) -> PeriodicGraph {
    let map: BTreeMap<EdgeId, i64> = cocycle.iter().map(|&(e, c)| (EdgeId(e), c)).collect();
    PeriodicGraph::new(g, map).expect("fixture cocycle refers to existing edges")
}

fn plain(g: MWGraph) -> PeriodicGraph {
    periodic(g, &[])
}

fn graph(kind: WeightKind, vertices: impl IntoIterator<Item = u32>, edges: &[(u32, u32)]) -> MWGraph {
    let mut b = MWGraph::builder(kind).vertices(vertices);
    for &(s, d) in edges {
        b = b.edge(s, d);
    }
    b.build().expect("fixture graph is valid")
}

/// House-shaped graph on `1..=5`; edge 1 (`2–3`) is deleted in [`fig1b`],
/// edge 3 (`3–4`) carries the cocycle.
pub fn fig1a() -> PeriodicGraph {
    let g = graph(WeightKind::Combinatorial, 1..=5, &[(1, 2), (2, 3), (2, 4), (3, 4), (3, 5)]);
    periodic(g, &[(3, 1)])
}

pub fn fig1b() -> PeriodicGraph {
    let p = fig1a();
    let g = p.quotient().delete_edge(EdgeId(1), WeightKind::Combinatorial).unwrap();
    periodic(g, &[(3, 1)])
}

/// Standard-weight tree; [`fig2b`] identifies vertices 2 and 7.
pub fn fig2a() -> PeriodicGraph {
    let g = graph(WeightKind::Standard, [1, 2, 3, 4, 5, 7], &[(1, 2), (2, 3), (3, 4), (4, 7), (3, 5)]);
    periodic(g, &[(3, 1)])
}

pub fn fig2b() -> PeriodicGraph {
    fig2a().contract_vertices(VertexId(2), VertexId(7)).unwrap()
}

/// Two cherries joined by the bridge `2–3` (edge 2), contracted in [`fig3b`].
pub fn fig3a() -> PeriodicGraph {
    let g = graph(WeightKind::Standard, 0..6, &[(0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]);
    periodic(g, &[(5, 1)])
}

pub fn fig3b() -> PeriodicGraph {
    let p = fig3a();
    let g = p.quotient().contract_edge(EdgeId(2), WeightKind::Standard).unwrap();
    periodic(g, &[(5, 1)])
}

/// Edge 4 (`3–5`) is pendant; [`fig4b`] contracts it.
pub fn fig4a() -> PeriodicGraph {
    let g = graph(WeightKind::Combinatorial, 1..=5, &[(1, 2), (2, 3), (2, 4), (3, 4), (3, 5)]);
    periodic(g, &[(1, 1)])
}

pub fn fig4b() -> PeriodicGraph {
    let p = fig4a();
    let g = p.quotient().contract_edge(EdgeId(4), WeightKind::Combinatorial).unwrap();
    periodic(g, &[(1, 1)])
}

fn k6_plus(extra: &[(u32, u32)]) -> PeriodicGraph {
    let mut edges = Vec::new();
    for i in 1..=6 {
        for j in i + 1..=6 {
            edges.push((i, j));
        }
    }
    edges.extend_from_slice(extra);
    let mut ids: Vec<u32> = (1..=6).collect();
    ids.extend(extra.iter().flat_map(|&(s, d)| [s, d]).filter(|v| *v > 6));
    ids.sort_unstable();
    ids.dedup();
    plain(graph(WeightKind::Combinatorial, ids, &edges))
}

/// `K₆` with two extra edges leaving the clique.
pub fn fig5_g1() -> PeriodicGraph {
    k6_plus(&[(4, 7), (7, 8)])
}

pub fn fig5_g2() -> PeriodicGraph {
    k6_plus(&[(4, 7), (3, 8)])
}

pub fn fig5_g3() -> PeriodicGraph {
    k6_plus(&[(4, 7), (3, 7)])
}

/// Vertices `A..F` are `0..5`.
const ORDER_EDGES: [(u32, u32); 7] = [(2, 5), (1, 2), (1, 4), (1, 3), (1, 0), (4, 3), (2, 4)];

/// `W₁` has no edges; `W_i` adds the first `i − 1` edges of the chain for `i ≤ 8`.
/// `W₉` identifies `D` and `F` in `W₈`, and `W₁₀` removes the pendant vertex `A` from `W₉`.
pub fn order_graph(i: usize) -> Option<PeriodicGraph> {
    match i {
        1..=8 => Some(plain(graph(WeightKind::Combinatorial, 0..6, &ORDER_EDGES[..i - 1]))),
        9 => {
            let w8 = order_graph(8)?.quotient().clone();
            let part = VertexPartition::new(vec![vec![VertexId(3), VertexId(5)]]).unwrap();
            Some(plain(w8.contract_vertices(&part, WeightKind::Combinatorial).unwrap()))
        }
        10 => {
            let w9 = order_graph(9)?.quotient().clone();
            Some(plain(w9.delete_vertex(VertexId(0), WeightKind::Combinatorial).unwrap()))
        }
        _ => None,
    }
}

pub fn petersen() -> PeriodicGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    plain(graph(WeightKind::Combinatorial, 0..10, &edges))
}

pub fn complete(d: u32) -> PeriodicGraph {
    let mut edges = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            edges.push((i, j));
        }
    }
    plain(graph(WeightKind::Combinatorial, 0..d, &edges))
}

/// `K_d` with the edge `0–1` doubled.
pub fn complete_double(d: u32) -> PeriodicGraph {
    let k = complete(d).quotient().clone();
    let next = k.edge_count() as u32;
    let g = k
        .add_edge(
            crate::graph::EdgeSpec { id: EdgeId(next), src: VertexId(0), dst: VertexId(1), weight: None, alpha: 0.0 },
            WeightKind::Combinatorial,
        )
        .unwrap();
    plain(g)
}

/// Standard-weight 7-cycle with a pendant vertex `3` at `2`; edge 5
/// (`0 → 1`) crosses into the next fundamental domain.
pub fn brack_quotient() -> PeriodicGraph {
    let g = graph(WeightKind::Standard, 0..7, &[(1, 2), (2, 4), (4, 5), (5, 6), (6, 0), (0, 1), (2, 3)]);
    periodic(g, &[(5, 1)])
}

/// The tree obtained by cutting [`brack_quotient`] open at vertex 1: edge 5
/// ends at a new vertex 8, and identifying 1 with 8 gives the quotient back.
pub fn brack_split() -> PeriodicGraph {
    let g = graph(WeightKind::Standard, [0, 1, 2, 3, 4, 5, 6, 8], &[(1, 2), (2, 4), (4, 5), (5, 6), (6, 0), (0, 8), (2, 3)]);
    periodic(g, &[(5, 1)])
}

/// Edges virtualised for the lower bracket of [`brack_quotient`].
pub const BRACK_E0: [EdgeId; 1] = [EdgeId(5)];
/// Vertices virtualised for the upper bracket of [`brack_quotient`].
pub const BRACK_V0: [VertexId; 1] = [VertexId(1)];

/// Every fixture with its file stem.
pub fn all() -> Vec<(&'static str, PeriodicGraph)> {
    let mut out = vec![
        ("fig1a", fig1a()),
        ("fig1b", fig1b()),
        ("fig2a", fig2a()),
        ("fig2b", fig2b()),
        ("fig3a", fig3a()),
        ("fig3b", fig3b()),
        ("fig4a", fig4a()),
        ("fig4b", fig4b()),
        ("fig5-g1", fig5_g1()),
        ("fig5-g2", fig5_g2()),
        ("fig5-g3", fig5_g3()),
        ("fig-brack-quotient", brack_quotient()),
        ("fig-brack-split", brack_split()),
        ("petersen", petersen()),
        ("k3-double", complete_double(3)),
        ("k4-double", complete_double(4)),
    ];
    const ORDER_NAMES: [&str; 10] = [
        "order-graph-w1",
        "order-graph-w2",
        "order-graph-w3",
        "order-graph-w4",
        "order-graph-w5",
        "order-graph-w6",
        "order-graph-w7",
        "order-graph-w8",
        "order-graph-w9",
        "order-graph-w10",
    ];
    for (i, name) in ORDER_NAMES.iter().enumerate() {
        out.push((name, order_graph(i + 1).unwrap()));
    }
    const K_NAMES: [&str; 5] = ["k2", "k3", "k4", "k5", "k6"];
    for (d, name) in (2..).zip(K_NAMES) {
        out.push((name, complete(d)));
    }
    out
}

pub fn by_name(name: &str) -> Option<PeriodicGraph> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, p)| p)
}
