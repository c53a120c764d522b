#![allow(dead_code)]

pub mod oracle;
pub mod props;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;

use magspec::covering::PeriodicGraph;
use magspec::graph::{EdgeId, EdgeSpec, MWGraph, VertexId, VertexSpec, WeightKind};
use proptest::prelude::*;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.mwg"))
}

pub fn fixture(name: &str) -> PeriodicGraph {
    magspec::io::load_periodic(&fixture_path(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// `t_j = 2πj/(n − 1)`, `j = 0..n`.
pub fn t_grid(n: usize) -> Vec<f64> {
    (0..n).map(|j| 2.0 * PI * j as f64 / (n - 1) as f64).collect()
}

/// Raw description of a random graph, turned into an [`MWGraph`] by [`RawGraph::build`].
#[derive(Debug, Clone)]
pub struct RawGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64, f64)>,
    pub vertex_weights: Vec<f64>,
    pub kind: WeightKind,
}

impl RawGraph {
    pub fn build(&self) -> MWGraph {
        let custom = self.kind == WeightKind::Custom;
        let vertices = (0..self.n)
            .map(|i| VertexSpec { id: VertexId(i as u32), weight: custom.then_some(self.vertex_weights[i]) })
            .collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(s, d, w, a))| EdgeSpec {
                id: EdgeId(i as u32),
                src: VertexId(s as u32),
                dst: VertexId(d as u32),
                weight: custom.then_some(w),
                alpha: a,
            })
            .collect();
        MWGraph::new(self.kind, vertices, edges).expect("generated graph is valid")
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Potentials {
    Zero,
    Signed,
    /// Multiples of π/4, so that nontrivial fluxes stay far from 0.
    Eighths,
    Circle,
}

fn alpha_strategy(p: Potentials) -> BoxedStrategy<f64> {
    match p {
        Potentials::Zero => Just(0.0).boxed(),
        Potentials::Signed => prop_oneof![Just(0.0), Just(PI)].boxed(),
        Potentials::Eighths => (-4i32..4).prop_map(|k| k as f64 * PI / 4.0).boxed(),
        Potentials::Circle => (-PI..PI).boxed(),
    }
}

/// Random multigraph with `min_n..=max_n` vertices, loops allowed when `loops`.
pub fn raw_graph(
    min_n: usize,
    max_n: usize,
    kinds: Vec<WeightKind>,
    potentials: Potentials,
    loops: bool,
) -> impl Strategy<Value = RawGraph> {
    (min_n..=max_n, proptest::sample::select(kinds)).prop_flat_map(move |(n, kind)| {
        let edge = (0..n, 0..n, 0.25f64..4.0, alpha_strategy(potentials))
            .prop_filter("loops disabled", move |(s, d, _, _)| loops || s != d);
        (
            Just(n),
            proptest::collection::vec(edge, 0..=2 * n),
            proptest::collection::vec(0.25f64..4.0, n),
            Just(kind),
        )
            .prop_map(|(n, edges, vertex_weights, kind)| RawGraph { n, edges, vertex_weights, kind })
    })
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn connected_graph(
    min_n: usize,
    max_n: usize,
    kinds: Vec<WeightKind>,
    potentials: Potentials,
    loops: bool,
) -> impl Strategy<Value = RawGraph> {
    (min_n..=max_n, proptest::sample::select(kinds)).prop_flat_map(move |(n, kind)| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|i| (0..i).boxed()).collect();
        let extra = (0..n, 0..n, 0.25f64..4.0, alpha_strategy(potentials))
            .prop_filter("loops disabled", move |(s, d, _, _)| loops || s != d);
        (
            Just(n),
            parents,
            proptest::collection::vec((0.25f64..4.0, alpha_strategy(potentials)), n - 1),
            proptest::collection::vec(extra, 0..=n),
            proptest::collection::vec(0.25f64..4.0, n),
            Just(kind),
        )
            .prop_map(|(n, parents, tree_data, extra, vertex_weights, kind)| {
                let mut edges: Vec<(usize, usize, f64, f64)> =
                    parents.iter().enumerate().map(|(i, &p)| (p, i + 1, tree_data[i].0, tree_data[i].1)).collect();
                edges.extend(extra);
                RawGraph { n, edges, vertex_weights, kind }
            })
    })
}

pub fn all_kinds() -> Vec<WeightKind> {
    vec![WeightKind::Combinatorial, WeightKind::Standard, WeightKind::Custom]
}

/// Random gauge `ξ` on the vertices of `g`.
pub fn gauge(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-PI..PI, n)
}

pub fn gauge_map(g: &MWGraph, xi: &[f64]) -> BTreeMap<VertexId, f64> {
    g.vertex_ids().zip(xi.iter().copied()).collect()
}

/// Exhaustive signed frustration index over all of `{0, π}^V`.
pub fn naive_signed_frustration(n: usize, edges: &[(usize, usize, f64, f64)]) -> f64 {
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << n) {
        let tau = |v: usize| if mask >> v & 1 == 1 { PI } else { 0.0 };
        let mut total = 0.0;
        for &(s, d, w, a) in edges {
            let z = num_complex::Complex64::from_polar(1.0, tau(d)) - num_complex::Complex64::from_polar(1.0, tau(s) - a);
            total += w * z.norm();
        }
        best = best.min(total);
    }
    best
}
