//! MW-homomorphisms: verification of candidate maps and exhaustive search.
//!
//! A map `π: W → W'` is an MW-homomorphism when it is a graph homomorphism
//! commuting with edge reversal, preserves the potential, pushes vertex
//! weight forward to at least the target weight and edge weight to at most
//! the target weight.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{angles_equal, EdgeId, MWGraph, OrientedEdge, VertexId, ANGLE_TOL};

/// Relative tolerance for weight (in)equalities.
const WEIGHT_TOL: f64 = 1e-12;

fn leq(a: f64, b: f64) -> bool {
    a <= b + WEIGHT_TOL * a.abs().max(b.abs()).max(1.0)
}

fn close(a: f64, b: f64) -> bool {
    leq(a, b) && leq(b, a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct HomFlags {
    pub is_graph_hom: bool,
    pub preserves_potential: bool,
    pub vertex_weight_ineq: bool,
    pub edge_weight_ineq: bool,
    pub vertex_measure_preserving: bool,
    pub edge_measure_preserving: bool,
    /// `Σ_{π(v)=v'} deg(v) ≤ deg(v')` for all `v'`; evaluated only when the
    /// edge map is injective.
    pub degree_sum_ok: Option<bool>,
}

/// A vertex map and edge map between two graphs, with verification flags.
///
/// Each source edge record is sent to an oriented target edge; its reverse
/// goes to the reverse, so the map commutes with `bar` by construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MwHom {
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub edge_map: BTreeMap<EdgeId, OrientedEdge>,
    pub flags: HomFlags,
}

impl MwHom {
    /// All four defining conditions hold.
    pub fn is_mw_hom(&self) -> bool {
        let f = &self.flags;
        f.is_graph_hom && f.preserves_potential && f.vertex_weight_ineq && f.edge_weight_ineq
    }

    pub fn is_measure_preserving(&self) -> bool {
        self.is_mw_hom() && self.flags.vertex_measure_preserving && self.flags.edge_measure_preserving
    }

    /// Preimage of a target vertex set.
    pub fn preimage(&self, target: &[VertexId]) -> Vec<VertexId> {
        self.vertex_map.iter().filter(|(_, t)| target.contains(t)).map(|(s, _)| *s).collect()
    }
}

/// Evaluates every flag of a candidate map.
pub fn verify_hom(
    source: &MWGraph,
    target: &MWGraph,
    vertex_map: &BTreeMap<VertexId, VertexId>,
    edge_map: &BTreeMap<EdgeId, OrientedEdge>,
) -> Result<MwHom> {
    for v in source.vertex_ids() {
        match vertex_map.get(&v) {
            None => return Err(Error::PartialMap(format!("vertex {v} has no image"))),
            Some(t) if !target.contains_vertex(*t) => return Err(Error::UnknownVertex(*t)),
            _ => {}
        }
    }
    for e in source.edge_ids() {
        match edge_map.get(&e) {
            None => return Err(Error::PartialMap(format!("edge {e} has no image"))),
            Some(t) if target.edge(t.edge).is_none() => return Err(Error::UnknownEdge(t.edge)),
            _ => {}
        }
    }

    let mut flags = HomFlags { is_graph_hom: true, preserves_potential: true, ..Default::default() };
    for e in source.edges() {
        let image = edge_map[&e.id];
        let (tm, tp) = target.boundary(image).unwrap();
        if vertex_map[&e.src] != tm || vertex_map[&e.dst] != tp {
            flags.is_graph_hom = false;
        }
        if !angles_equal(e.alpha, target.potential(image).unwrap(), ANGLE_TOL) {
            flags.preserves_potential = false;
        }
    }

    let mut vertex_push: BTreeMap<VertexId, f64> = BTreeMap::new();
    for v in source.vertices() {
        *vertex_push.entry(vertex_map[&v.id]).or_insert(0.0) += v.weight;
    }
    let mut edge_push: BTreeMap<EdgeId, f64> = BTreeMap::new();
    for e in source.edges() {
        *edge_push.entry(edge_map[&e.id].edge).or_insert(0.0) += e.weight;
    }
    flags.vertex_weight_ineq = target
        .vertices()
        .iter()
        .all(|t| leq(t.weight, vertex_push.get(&t.id).copied().unwrap_or(0.0)));
    flags.vertex_measure_preserving = target
        .vertices()
        .iter()
        .all(|t| close(t.weight, vertex_push.get(&t.id).copied().unwrap_or(0.0)));
    flags.edge_weight_ineq = target
        .edges()
        .iter()
        .all(|t| leq(edge_push.get(&t.id).copied().unwrap_or(0.0), t.weight));
    flags.edge_measure_preserving = target
        .edges()
        .iter()
        .all(|t| close(edge_push.get(&t.id).copied().unwrap_or(0.0), t.weight));

    let injective = edge_map.values().map(|t| t.edge).collect::<std::collections::BTreeSet<_>>().len()
        == edge_map.len();
    if injective {
        let mut sums: BTreeMap<VertexId, usize> = BTreeMap::new();
        for v in source.vertex_ids() {
            *sums.entry(vertex_map[&v]).or_insert(0) += source.degree(v);
        }
        flags.degree_sum_ok = Some(sums.iter().all(|(t, s)| *s <= target.degree(*t)));
    }

    Ok(MwHom { vertex_map: vertex_map.clone(), edge_map: edge_map.clone(), flags })
}

/// Identity map of a graph onto a graph with the same structure.
pub fn identity_map(g: &MWGraph) -> (BTreeMap<VertexId, VertexId>, BTreeMap<EdgeId, OrientedEdge>) {
    (
        g.vertex_ids().map(|v| (v, v)).collect(),
        g.edge_ids().map(|e| (e, OrientedEdge::forward(e))).collect(),
    )
}

/// Limits for [`search_hom`].
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub max_source_vertices: usize,
    /// Upper bound on `|V(source)|·|V(target)|`.
    pub max_product: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_source_vertices: 10, max_product: 1000 }
    }
}

struct Search<'a> {
    source: &'a MWGraph,
    target: &'a MWGraph,
    order: Vec<VertexId>,
    candidates: Vec<VertexId>,
    /// Source edges checked once both ends are placed, keyed by the later vertex in `order`.
    edges_closing_at: Vec<Vec<EdgeId>>,
    assignment: BTreeMap<VertexId, VertexId>,
    pushed_vertex: BTreeMap<VertexId, f64>,
    pushed_degree: BTreeMap<VertexId, f64>,
}

impl<'a> Search<'a> {
    /// Target oriented edges an edge may be sent to once its ends are placed.
    fn edge_options(&self, e: EdgeId) -> Vec<OrientedEdge> {
        let edge = self.source.edge(e).unwrap();
        let (a, b) = (self.assignment[&edge.src], self.assignment[&edge.dst]);
        let mut out = Vec::new();
        for t in self.target.edges() {
            for oe in [OrientedEdge::forward(t.id), OrientedEdge::backward(t.id)] {
                if t.is_loop() && oe.reversed && angles_equal(t.alpha, -t.alpha, ANGLE_TOL) {
                    continue; // both orientations of this loop are interchangeable
                }
                if self.target.boundary(oe) == Some((a, b))
                    && angles_equal(edge.alpha, self.target.potential(oe).unwrap(), ANGLE_TOL)
                {
                    out.push(oe);
                }
            }
        }
        out
    }

    fn place(&mut self, depth: usize) -> Option<MwHom> {
        if depth == self.order.len() {
            return self.finish();
        }
        let v = self.order[depth];
        let weight = self.source.vertex_weight(v);
        let wdeg = self.source.weighted_degree(v);
        let remaining = self.order.len() - depth - 1;
        for t in self.candidates.clone() {
            let new_deg = self.pushed_degree.get(&t).copied().unwrap_or(0.0) + wdeg;
            if !leq(new_deg, self.target.weighted_degree(t)) {
                continue;
            }
            self.assignment.insert(v, t);
            let edges_ok = self.edges_closing_at[depth].iter().all(|&e| !self.edge_options(e).is_empty());
            if edges_ok {
                *self.pushed_vertex.entry(t).or_insert(0.0) += weight;
                *self.pushed_degree.entry(t).or_insert(0.0) += wdeg;
                let deficits = self
                    .target
                    .vertices()
                    .iter()
                    .filter(|x| !leq(x.weight, self.pushed_vertex.get(&x.id).copied().unwrap_or(0.0)))
                    .count();
                if deficits <= remaining {
                    if let Some(found) = self.place(depth + 1) {
                        return Some(found);
                    }
                }
                *self.pushed_vertex.get_mut(&t).unwrap() -= weight;
                *self.pushed_degree.get_mut(&t).unwrap() -= wdeg;
            }
            self.assignment.remove(&v);
        }
        None
    }

    /// All vertices placed: assign edges under the target edge capacities.
    fn finish(&self) -> Option<MwHom> {
        let mut edges: Vec<(EdgeId, f64, Vec<OrientedEdge>)> = self
            .source
            .edges()
            .iter()
            .map(|e| (e.id, e.weight, self.edge_options(e.id)))
            .collect();
        edges.sort_by(|a, b| a.2.len().cmp(&b.2.len()).then(b.1.total_cmp(&a.1)));
        let mut capacity: BTreeMap<EdgeId, f64> = self.target.edges().iter().map(|t| (t.id, t.weight)).collect();
        let mut chosen: BTreeMap<EdgeId, OrientedEdge> = BTreeMap::new();
        if !assign_edges(&edges, 0, &mut capacity, &mut chosen) {
            return None;
        }
        let hom = verify_hom(self.source, self.target, &self.assignment, &chosen).ok()?;
        hom.is_mw_hom().then_some(hom)
    }
}

fn assign_edges(
    edges: &[(EdgeId, f64, Vec<OrientedEdge>)],
    i: usize,
    capacity: &mut BTreeMap<EdgeId, f64>,
    chosen: &mut BTreeMap<EdgeId, OrientedEdge>,
) -> bool {
    let Some((id, w, options)) = edges.get(i) else {
        return true;
    };
    for &oe in options {
        let left = capacity[&oe.edge];
        if !leq(*w, left) {
            continue;
        }
        capacity.insert(oe.edge, left - w);
        chosen.insert(*id, oe);
        if assign_edges(edges, i + 1, capacity, chosen) {
            return true;
        }
        chosen.remove(id);
        capacity.insert(oe.edge, left);
    }
    false
}

/// Exhaustive backtracking search for an MW-homomorphism `source → target`.
///
/// `Ok(None)` means no such map exists. Candidate images are tried in order
/// of decreasing target degree; branches are pruned when the weighted degree
/// pushed onto a target vertex exceeds its own weighted degree, which every
/// MW-homomorphism must respect, or when too few source vertices remain to
/// cover the vertex weight still missing in the target.
pub fn search_hom(source: &MWGraph, target: &MWGraph, limits: SearchLimits) -> Result<Option<MwHom>> {
    let (n, m) = (source.vertex_count(), target.vertex_count());
    if n > limits.max_source_vertices || n * m > limits.max_product {
        return Err(Error::SizeLimitExceeded(format!(
            "search over {n} source and {m} target vertices exceeds the configured limit"
        )));
    }
    if n == 0 {
        let hom = verify_hom(source, target, &BTreeMap::new(), &BTreeMap::new())?;
        return Ok(hom.is_mw_hom().then_some(hom));
    }

    // Source order: start at a vertex of maximal degree, then grow along
    // edges so that edge constraints are checked as early as possible.
    let mut order: Vec<VertexId> = Vec::with_capacity(n);
    let mut placed = std::collections::BTreeSet::new();
    while order.len() < n {
        let next = source
            .vertex_ids()
            .filter(|v| !placed.contains(v))
            .max_by_key(|&v| {
                let links = source
                    .edges()
                    .iter()
                    .filter(|e| (e.src == v && placed.contains(&e.dst)) || (e.dst == v && placed.contains(&e.src)))
                    .count();
                (links, source.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    let position: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut edges_closing_at = vec![Vec::new(); n];
    for e in source.edges() {
        edges_closing_at[position[&e.src].max(position[&e.dst])].push(e.id);
    }
    let mut candidates: Vec<VertexId> = target.vertex_ids().collect();
    candidates.sort_by_key(|&t| (std::cmp::Reverse(target.degree(t)), t));

    let mut search = Search {
        source,
        target,
        order,
        candidates,
        edges_closing_at,
        assignment: BTreeMap::new(),
        pushed_vertex: BTreeMap::new(),
        pushed_degree: BTreeMap::new(),
    };
    Ok(search.place(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{VertexPartition, WeightKind};

    fn triangle_plus_tail(kind: WeightKind) -> MWGraph {
        MWGraph::builder(kind)
            .vertices(0..4)
            .magnetic_edge(0, 1, 0.5)
            .edge(1, 2)
            .edge(2, 0)
            .edge(2, 3)
            .build()
            .unwrap()
    }

    #[test]
    fn identity_from_standard_to_combinatorial() {
        let std = triangle_plus_tail(WeightKind::Standard);
        let com = triangle_plus_tail(WeightKind::Combinatorial);
        let (vm, em) = identity_map(&std);
        let hom = verify_hom(&std, &com, &vm, &em).unwrap();
        assert!(hom.is_mw_hom());
        assert_eq!(hom.flags.degree_sum_ok, Some(true));
        // The reverse direction fails the vertex weight inequality.
        assert!(!verify_hom(&com, &std, &vm, &em).unwrap().flags.vertex_weight_ineq);
    }

    #[test]
    fn quotient_map_is_measure_preserving_for_standard_weights() {
        let g = triangle_plus_tail(WeightKind::Standard);
        let part = VertexPartition::new(vec![vec![VertexId(0), VertexId(3)]]).unwrap();
        let q = g.contract_vertices(&part, WeightKind::Standard).unwrap();
        let vm = g.vertex_ids().map(|v| (v, if v == VertexId(3) { VertexId(0) } else { v })).collect();
        let em = g.edge_ids().map(|e| (e, OrientedEdge::forward(e))).collect();
        let hom = verify_hom(&g, &q, &vm, &em).unwrap();
        assert!(hom.is_measure_preserving());
    }

    #[test]
    fn inclusion_of_edge_deletion_is_not_edge_measure_preserving() {
        let g = triangle_plus_tail(WeightKind::Combinatorial);
        let sub = g.delete_edge(EdgeId(1), WeightKind::Combinatorial).unwrap();
        let (vm, em) = identity_map(&sub);
        let hom = verify_hom(&sub, &g, &vm, &em).unwrap();
        assert!(hom.is_mw_hom());
        assert!(hom.flags.vertex_measure_preserving);
        assert!(!hom.flags.edge_measure_preserving);
    }

    #[test]
    fn partial_maps_are_rejected() {
        let g = triangle_plus_tail(WeightKind::Combinatorial);
        let (mut vm, em) = identity_map(&g);
        vm.remove(&VertexId(2));
        assert!(matches!(verify_hom(&g, &g, &vm, &em), Err(Error::PartialMap(_))));
    }

    #[test]
    fn potential_mismatch_is_flagged() {
        let g = triangle_plus_tail(WeightKind::Combinatorial);
        let h = g.with_potential(|_| 0.0);
        let (vm, em) = identity_map(&g);
        let hom = verify_hom(&g, &h, &vm, &em).unwrap();
        assert!(hom.flags.is_graph_hom);
        assert!(!hom.flags.preserves_potential);
    }

    #[test]
    fn search_finds_identity() {
        let g = triangle_plus_tail(WeightKind::Standard);
        let hom = search_hom(&g, &g, SearchLimits::default()).unwrap().unwrap();
        assert!(hom.is_mw_hom());
    }

    #[test]
    fn search_respects_edge_capacity() {
        // Two parallel edges cannot both go onto a single edge of weight one.
        let double = MWGraph::builder(WeightKind::Combinatorial).vertices(0..2).edge(0, 1).edge(0, 1).build().unwrap();
        let single = MWGraph::builder(WeightKind::Combinatorial).vertices(0..2).edge(0, 1).build().unwrap();
        assert!(search_hom(&double, &single, SearchLimits::default()).unwrap().is_none());
        assert!(search_hom(&single, &double, SearchLimits::default()).unwrap().is_some());
    }

    #[test]
    fn search_maps_reversed_orientation() {
        let a = MWGraph::builder(WeightKind::Combinatorial).vertices(0..2).magnetic_edge(0, 1, 0.7).build().unwrap();
        let b = MWGraph::builder(WeightKind::Combinatorial).vertices(0..2).magnetic_edge(1, 0, -0.7).build().unwrap();
        let hom = search_hom(&a, &b, SearchLimits::default()).unwrap().unwrap();
        assert!(hom.is_mw_hom());
    }

    #[test]
    fn size_limit() {
        let big = MWGraph::builder(WeightKind::Combinatorial).vertices(0..11).build().unwrap();
        assert!(matches!(
            search_hom(&big, &big, SearchLimits::default()),
            Err(Error::SizeLimitExceeded(_))
        ));
    }
}
