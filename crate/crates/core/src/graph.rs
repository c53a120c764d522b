//! Magnetic weighted multigraphs (MW-graphs).
//!
//! A graph stores one record per unoriented edge. Each record stands for a
//! pair of oriented edges `e` and `bar e`: the record's `src -> dst` direction
//! is `e`, the reverse is `bar e`, which carries the same weight and the
//! negated potential. Loops and parallel edges are allowed.
//!
//! Graph values are immutable. Every structural operation returns a new graph,
//! and the caller picks which weight kind the result should carry.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for comparing angles modulo 2π.
pub const ANGLE_TOL: f64 = 1e-12;

/// Tolerance used when deciding whether a potential is gauge trivial.
/// Gauges are propagated along spanning trees, so rounding accumulates.
pub const TRIVIALITY_TOL: f64 = 1e-9;

/// Reduces an angle to the half-open interval `[-π, π)`.
///
/// Values already in range come back bit-for-bit unchanged.
pub fn normalize_angle(a: f64) -> f64 {
    let mut x = a % TAU;
    if x >= PI {
        x -= TAU;
    } else if x < -PI {
        x += TAU;
    }
    if x >= PI {
        x -= TAU;
    }
    x
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    normalize_angle(a - b).abs()
}

/// True when `a ≡ b (mod 2π)` up to `tol`.
pub fn angles_equal(a: f64, b: f64, tol: f64) -> bool {
    angle_distance(a, b) <= tol
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One orientation of an unoriented edge record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrientedEdge {
    pub edge: EdgeId,
    /// `false` for the stored `src -> dst` direction.
    pub reversed: bool,
}

impl OrientedEdge {
    pub fn forward(edge: EdgeId) -> Self {
        OrientedEdge { edge, reversed: false }
    }

    pub fn backward(edge: EdgeId) -> Self {
        OrientedEdge { edge, reversed: true }
    }

    /// The oppositely oriented edge.
    pub fn bar(self) -> Self {
        OrientedEdge { edge: self.edge, reversed: !self.reversed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    /// Vertex and edge weights all equal to one.
    Combinatorial,
    /// Vertex weight equal to the degree, edge weights one.
    Standard,
    /// Arbitrary positive weights.
    Custom,
}

impl WeightKind {
    pub fn name(self) -> &'static str {
        match self {
            WeightKind::Combinatorial => "combinatorial",
            WeightKind::Standard => "standard",
            WeightKind::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub id: VertexId,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: EdgeId,
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: f64,
    /// Potential of the `src -> dst` orientation, in `[-π, π)`.
    pub alpha: f64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.src == self.dst
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.src == v || self.dst == v
    }
}

/// Input record for a vertex. Missing weights are filled in from the weight kind.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexSpec {
    pub id: VertexId,
    pub weight: Option<f64>,
}

impl VertexSpec {
    pub fn new(id: u32) -> Self {
        VertexSpec { id: VertexId(id), weight: None }
    }
}

/// Input record for one unoriented edge, given by its stored orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSpec {
    pub id: EdgeId,
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: Option<f64>,
    pub alpha: f64,
}

/// Disjoint nonempty vertex blocks. Used both for quotients, where the blocks
/// usually cover only the vertices being merged, and for Cheeger subpartitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    blocks: Vec<Vec<VertexId>>,
}

impl VertexPartition {
    pub fn new(blocks: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            block.sort();
            block.dedup();
            for &v in &block {
                if !seen.insert(v) {
                    return Err(Error::OverlappingBlocks(v));
                }
            }
            normalized.push(block);
        }
        normalized.sort_by_key(|b| b[0]);
        Ok(VertexPartition { blocks: normalized })
    }

    pub fn blocks(&self) -> &[Vec<VertexId>] {
        &self.blocks
    }
}

/// A finite magnetic weighted multigraph.
#[derive(Debug, Clone, PartialEq)]
pub struct MWGraph {
    kind: WeightKind,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

fn check_weight(item: impl FnOnce() -> String, w: f64) -> Result<()> {
    if w.is_finite() && w > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveWeight { item: item(), value: w })
    }
}

fn weights_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

impl MWGraph {
    /// Builds a graph from vertex and edge records.
    ///
    /// For the combinatorial and standard kinds weights are derived from the
    /// structure; an explicit weight that disagrees is rejected. Custom weights
    /// default to one when absent.
    pub fn new(kind: WeightKind, vertices: Vec<VertexSpec>, edges: Vec<EdgeSpec>) -> Result<Self> {
        let mut vs: Vec<Vertex> = Vec::with_capacity(vertices.len());
        for spec in &vertices {
            if let Some(w) = spec.weight {
                check_weight(|| format!("vertex {}", spec.id), w)?;
            }
            vs.push(Vertex { id: spec.id, weight: spec.weight.unwrap_or(1.0) });
        }
        vs.sort_by_key(|v| v.id);
        for pair in vs.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::DuplicateVertexId(pair[0].id));
            }
        }
        let mut es: Vec<Edge> = Vec::with_capacity(edges.len());
        for spec in &edges {
            if let Some(w) = spec.weight {
                check_weight(|| format!("edge {}", spec.id), w)?;
            }
            if !spec.alpha.is_finite() {
                return Err(Error::NonFinitePotential(spec.id));
            }
            for v in [spec.src, spec.dst] {
                if vs.binary_search_by_key(&v, |x| x.id).is_err() {
                    return Err(Error::DanglingEndpoint { edge: spec.id, vertex: v });
                }
            }
            es.push(Edge {
                id: spec.id,
                src: spec.src,
                dst: spec.dst,
                weight: spec.weight.unwrap_or(1.0),
                alpha: normalize_angle(spec.alpha),
            });
        }
        es.sort_by_key(|e| e.id);
        for pair in es.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::DuplicateEdgeId(pair[0].id));
            }
        }
        let graph = MWGraph { kind: WeightKind::Custom, vertices: vs, edges: es }.rederive(kind);
        if kind != WeightKind::Custom {
            for spec in &vertices {
                if let Some(w) = spec.weight {
                    let expected = graph.vertex_weight(spec.id);
                    if !weights_match(w, expected) {
                        return Err(Error::WeightKindMismatch {
                            item: format!("vertex {}", spec.id),
                            kind: kind.name(),
                            found: w,
                            expected,
                        });
                    }
                }
            }
            for spec in &edges {
                if let Some(w) = spec.weight {
                    if !weights_match(w, 1.0) {
                        return Err(Error::WeightKindMismatch {
                            item: format!("edge {}", spec.id),
                            kind: kind.name(),
                            found: w,
                            expected: 1.0,
                        });
                    }
                }
            }
        }
        Ok(graph)
    }

    pub fn builder(kind: WeightKind) -> GraphBuilder {
        GraphBuilder { kind, vertices: Vec::new(), edges: Vec::new() }
    }

    /// Recomputes weights for `kind` on an already validated structure.
    fn rederive(mut self, kind: WeightKind) -> Self {
        match kind {
            WeightKind::Custom => {}
            WeightKind::Combinatorial => {
                self.vertices.iter_mut().for_each(|v| v.weight = 1.0);
                self.edges.iter_mut().for_each(|e| e.weight = 1.0);
            }
            WeightKind::Standard => {
                self.edges.iter_mut().for_each(|e| e.weight = 1.0);
                let degrees: Vec<usize> = self.vertices.iter().map(|v| self.degree(v.id)).collect();
                for (v, d) in self.vertices.iter_mut().zip(degrees) {
                    // An isolated vertex keeps the placeholder weight one; its
                    // row of the Laplacian is zero, giving the eigenvalue 0.
                    v.weight = if d == 0 { 1.0 } else { d as f64 };
                }
            }
        }
        self.kind = kind;
        self
    }

    /// Same structure and potential, weights re-derived for `kind`.
    /// Asking for [`WeightKind::Custom`] keeps the current values.
    pub fn with_kind(&self, kind: WeightKind) -> Self {
        self.clone().rederive(kind)
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().map(|v| v.id)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    /// Position of `v` in the canonical vertex order.
    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search_by_key(&v, |x| x.id).ok()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertex_index(v).is_some()
    }

    pub fn vertex(&self, v: VertexId) -> Option<&Vertex> {
        self.vertex_index(v).map(|i| &self.vertices[i])
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edges.binary_search_by_key(&e, |x| x.id).ok().map(|i| &self.edges[i])
    }

    fn require_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    fn require_edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edge(e).ok_or(Error::UnknownEdge(e))
    }

    /// Vertex weight; panics on an unknown vertex.
    pub fn vertex_weight(&self, v: VertexId) -> f64 {
        self.vertex(v).expect("unknown vertex").weight
    }

    /// `(∂₋e, ∂₊e)` of an oriented edge.
    pub fn boundary(&self, oe: OrientedEdge) -> Option<(VertexId, VertexId)> {
        self.edge(oe.edge).map(|e| if oe.reversed { (e.dst, e.src) } else { (e.src, e.dst) })
    }

    /// Potential of an oriented edge; the reverse orientation carries `-α`.
    pub fn potential(&self, oe: OrientedEdge) -> Option<f64> {
        self.edge(oe.edge).map(|e| if oe.reversed { normalize_angle(-e.alpha) } else { e.alpha })
    }

    /// The oriented edges starting at `v` (the set `E_v`). A loop contributes
    /// both of its orientations.
    pub fn incident(&self, v: VertexId) -> Vec<OrientedEdge> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.src == v {
                out.push(OrientedEdge::forward(e.id));
            }
            if e.dst == v {
                out.push(OrientedEdge::backward(e.id));
            }
        }
        out
    }

    /// Number of oriented edges starting at `v`; loops count twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().map(|e| (e.src == v) as usize + (e.dst == v) as usize).sum()
    }

    /// `Σ_{e ∈ E_v} w_e`.
    pub fn weighted_degree(&self, v: VertexId) -> f64 {
        self.edges
            .iter()
            .map(|e| e.weight * ((e.src == v) as u8 + (e.dst == v) as u8) as f64)
            .sum()
    }

    /// Relative weight `ρ(v)`.
    pub fn rho(&self, v: VertexId) -> f64 {
        self.weighted_degree(v) / self.vertex_weight(v)
    }

    /// `ρ_∞ = max_v ρ(v)`, zero for an edgeless graph.
    pub fn rho_max(&self) -> f64 {
        self.vertices.iter().map(|v| self.rho(v.id)).fold(0.0, f64::max)
    }

    pub fn total_vertex_weight(&self) -> f64 {
        self.vertices.iter().map(|v| v.weight).sum()
    }

    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<&Edge> {
        self.edges
            .iter()
            .filter(|e| (e.src == u && e.dst == v) || (e.src == v && e.dst == u))
            .collect()
    }

    pub fn has_loop_at(&self, v: VertexId) -> bool {
        self.edges.iter().any(|e| e.is_loop() && e.src == v)
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| {
            let key = (e.src.min(e.dst), e.src.max(e.dst));
            !e.is_loop() && seen.insert(key)
        })
    }

    /// True when every potential value is zero.
    pub fn has_zero_potential(&self) -> bool {
        self.edges.iter().all(|e| angles_equal(e.alpha, 0.0, ANGLE_TOL))
    }

    /// Connected components, each sorted, listed by least vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut uf = UnionFind::new(self.vertex_count());
        for e in &self.edges {
            uf.union(self.vertex_index(e.src).unwrap(), self.vertex_index(e.dst).unwrap());
        }
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(v.id);
        }
        let mut comps: Vec<Vec<VertexId>> = groups.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().len() == 1
    }

    fn component_count_without(&self, skip: Option<EdgeId>) -> usize {
        let mut uf = UnionFind::new(self.vertex_count());
        for e in self.edges.iter().filter(|e| Some(e.id) != skip) {
            uf.union(self.vertex_index(e.src).unwrap(), self.vertex_index(e.dst).unwrap());
        }
        uf.count()
    }

    /// An edge is a bridge when removing it increases the number of components.
    pub fn is_bridge(&self, e: EdgeId) -> Result<bool> {
        let edge = self.require_edge(e)?;
        if edge.is_loop() {
            return Ok(false);
        }
        Ok(self.component_count_without(Some(e)) > self.component_count_without(None))
    }

    /// The degree-one endpoint of a pendant edge, if `e` is one. When both
    /// endpoints have degree one the larger id is returned.
    pub fn pendant_vertex(&self, e: EdgeId) -> Result<Option<VertexId>> {
        let edge = self.require_edge(e)?;
        if edge.is_loop() {
            return Ok(None);
        }
        Ok(match (self.degree(edge.src) == 1, self.degree(edge.dst) == 1) {
            (true, true) => Some(edge.src.max(edge.dst)),
            (true, false) => Some(edge.src),
            (false, true) => Some(edge.dst),
            (false, false) => None,
        })
    }

    /// `G - E0`: the listed edges are removed, vertices kept.
    pub fn delete_edges(&self, removed: &[EdgeId], target: WeightKind) -> Result<Self> {
        for &e in removed {
            self.require_edge(e)?;
        }
        let drop: BTreeSet<EdgeId> = removed.iter().copied().collect();
        let edges = self.edges.iter().filter(|e| !drop.contains(&e.id)).cloned().collect();
        Ok(MWGraph { kind: self.kind, vertices: self.vertices.clone(), edges }.rederive(target))
    }

    pub fn delete_edge(&self, e0: EdgeId, target: WeightKind) -> Result<Self> {
        self.delete_edges(&[e0], target)
    }

    /// Inserts an edge record. Custom weights default to one.
    pub fn add_edge(&self, spec: EdgeSpec, target: WeightKind) -> Result<Self> {
        if self.edge(spec.id).is_some() {
            return Err(Error::DuplicateEdgeId(spec.id));
        }
        for v in [spec.src, spec.dst] {
            if !self.contains_vertex(v) {
                return Err(Error::DanglingEndpoint { edge: spec.id, vertex: v });
            }
        }
        let weight = spec.weight.unwrap_or(1.0);
        check_weight(|| format!("edge {}", spec.id), weight)?;
        if !spec.alpha.is_finite() {
            return Err(Error::NonFinitePotential(spec.id));
        }
        let mut edges = self.edges.clone();
        edges.push(Edge {
            id: spec.id,
            src: spec.src,
            dst: spec.dst,
            weight,
            alpha: normalize_angle(spec.alpha),
        });
        edges.sort_by_key(|e| e.id);
        Ok(MWGraph { kind: self.kind, vertices: self.vertices.clone(), edges }.rederive(target))
    }

    /// Quotient `G/~`: each block becomes one vertex carrying the least id of
    /// the block. All edges survive; edges inside a block become loops.
    /// Custom weights of a block are summed.
    pub fn contract_vertices(&self, part: &VertexPartition, target: WeightKind) -> Result<Self> {
        let mut rep: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for block in part.blocks() {
            for &v in block {
                self.require_vertex(v)?;
                rep.insert(v, block[0]);
            }
        }
        let map = |v: VertexId| *rep.get(&v).unwrap_or(&v);
        let mut merged: BTreeMap<VertexId, f64> = BTreeMap::new();
        for v in &self.vertices {
            *merged.entry(map(v.id)).or_insert(0.0) += v.weight;
        }
        let vertices = merged.into_iter().map(|(id, weight)| Vertex { id, weight }).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { src: map(e.src), dst: map(e.dst), ..e.clone() })
            .collect();
        Ok(MWGraph { kind: self.kind, vertices, edges }.rederive(target))
    }

    /// `G/{e0}`: delete `e0`, then identify its endpoints.
    pub fn contract_edge(&self, e0: EdgeId, target: WeightKind) -> Result<Self> {
        let edge = self.require_edge(e0)?;
        if edge.is_loop() {
            return Err(Error::LoopContraction(e0));
        }
        let part = VertexPartition::new(vec![vec![edge.src, edge.dst]])?;
        self.delete_edge(e0, WeightKind::Custom)?.contract_vertices(&part, target)
    }

    /// `G - v0`: removes the vertex and every edge at it.
    pub fn delete_vertex(&self, v0: VertexId, target: WeightKind) -> Result<Self> {
        self.require_vertex(v0)?;
        if self.has_loop_at(v0) {
            return Err(Error::LoopAtVertex(v0));
        }
        let vertices = self.vertices.iter().filter(|v| v.id != v0).cloned().collect();
        let edges = self.edges.iter().filter(|e| !e.touches(v0)).cloned().collect();
        Ok(MWGraph { kind: self.kind, vertices, edges }.rederive(target))
    }

    /// The subgraph induced by `keep`, with restricted weights (custom kind).
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut set = BTreeSet::new();
        for &v in keep {
            self.require_vertex(v)?;
            set.insert(v);
        }
        let vertices = self.vertices.iter().filter(|v| set.contains(&v.id)).cloned().collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| set.contains(&e.src) && set.contains(&e.dst))
            .cloned()
            .collect();
        Ok(MWGraph { kind: WeightKind::Custom, vertices, edges })
    }

    /// Replaces `α` by `α + δξ`, where `(δξ)_e = ξ(∂₊e) − ξ(∂₋e)`.
    pub fn gauge_transform(&self, xi: impl Fn(VertexId) -> f64) -> Self {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.alpha = normalize_angle(e.alpha + xi(e.dst) - xi(e.src));
        }
        out
    }

    /// Replaces every potential by `f(edge)`.
    pub fn with_potential(&self, f: impl Fn(&Edge) -> f64) -> Self {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.alpha = normalize_angle(f(e));
        }
        out
    }

    /// A gauge `ξ` that cancels the potential on a breadth-first spanning
    /// forest: `α_e + ξ(∂₊e) − ξ(∂₋e) = 0` on every forest edge. Roots get 0.
    pub fn spanning_forest_gauge(&self) -> BTreeMap<VertexId, f64> {
        let mut xi: BTreeMap<VertexId, f64> = BTreeMap::new();
        let mut adjacency: BTreeMap<VertexId, Vec<(VertexId, f64)>> = BTreeMap::new();
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            adjacency.entry(e.src).or_default().push((e.dst, e.alpha));
            adjacency.entry(e.dst).or_default().push((e.src, -e.alpha));
        }
        for root in self.vertex_ids() {
            if xi.contains_key(&root) {
                continue;
            }
            xi.insert(root, 0.0);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let xu = xi[&u];
                for &(w, a) in adjacency.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                    if let std::collections::btree_map::Entry::Vacant(slot) = xi.entry(w) {
                        slot.insert(normalize_angle(xu - a));
                        queue.push_back(w);
                    }
                }
            }
        }
        xi
    }

    /// Whether `α` is gauge equivalent to zero, with tolerance [`TRIVIALITY_TOL`].
    pub fn is_trivial_potential(&self) -> bool {
        self.is_trivial_potential_tol(TRIVIALITY_TOL)
    }

    pub fn is_trivial_potential_tol(&self, tol: f64) -> bool {
        let xi = self.spanning_forest_gauge();
        self.edges
            .iter()
            .all(|e| angles_equal(e.alpha + xi[&e.dst] - xi[&e.src], 0.0, tol))
    }
}

/// Incremental construction of graphs in code.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    kind: WeightKind,
    vertices: Vec<VertexSpec>,
    edges: Vec<EdgeSpec>,
}

impl GraphBuilder {
    pub fn vertex(mut self, id: u32) -> Self {
        self.vertices.push(VertexSpec::new(id));
        self
    }

    pub fn vertices(mut self, ids: impl IntoIterator<Item = u32>) -> Self {
        self.vertices.extend(ids.into_iter().map(VertexSpec::new));
        self
    }

    pub fn weighted_vertex(mut self, id: u32, weight: f64) -> Self {
        self.vertices.push(VertexSpec { id: VertexId(id), weight: Some(weight) });
        self
    }

    fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.iter().map(|e| e.id.0 + 1).max().unwrap_or(0))
    }

    /// Adds an edge with the next free id and zero potential.
    pub fn edge(self, src: u32, dst: u32) -> Self {
        self.magnetic_edge(src, dst, 0.0)
    }

    pub fn magnetic_edge(mut self, src: u32, dst: u32, alpha: f64) -> Self {
        let id = self.next_edge_id();
        self.edges.push(EdgeSpec { id, src: VertexId(src), dst: VertexId(dst), weight: None, alpha });
        self
    }

    pub fn weighted_edge(mut self, src: u32, dst: u32, weight: f64, alpha: f64) -> Self {
        let id = self.next_edge_id();
        self.edges.push(EdgeSpec {
            id,
            src: VertexId(src),
            dst: VertexId(dst),
            weight: Some(weight),
            alpha,
        });
        self
    }

    pub fn edge_spec(mut self, spec: EdgeSpec) -> Self {
        self.edges.push(spec);
        self
    }

    pub fn build(self) -> Result<MWGraph> {
        MWGraph::new(self.kind, self.vertices, self.edges)
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n], sets: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.sets
    }
}
