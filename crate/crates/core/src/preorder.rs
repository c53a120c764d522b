//! Certified spectral relations for elementary perturbations.
//!
//! Every certificate states the shifts guaranteed for the perturbation and is
//! checked against the computed spectra before it is returned. A failed check
//! is reported as [`Error::CertificateViolation`]. Each relation also records
//! the smallest shift that holds numerically, which may be below the
//! guaranteed one.
//!
//! For standard weights the shifts below are the ones that follow from the
//! loop-deletion inequalities `W ≼ W − ℓ` (loop `ℓ` with zero potential) and
//! `W − ℓ ≼ W` (loop with potential `π`). Contracting a simple edge with zero
//! potential therefore gives `W ≼₀ W' ≼₂ W`, and with potential `π` it gives
//! `W ≼₁ W' ≼₁ W`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{angles_equal, EdgeId, MWGraph, OrientedEdge, VertexId, VertexPartition, WeightKind, ANGLE_TOL};
use crate::hom::{identity_map, verify_hom, MwHom};
use crate::spectra::{minimal_shift, shift_less, spectrum, Spectrum, SHIFT_TOL};

/// Hypothesis variants for graphs with general weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    /// Edge deletion; `w' ≤ w` on edges and `w ≤ w'` on all vertices.
    DeleteEdgeA1,
    /// Edge deletion; `w' ≤ w` on edges, `w ≤ w'` away from the endpoints,
    /// `w − w_{e0} ≤ w'` at the endpoints, and `ρ_∞ ≤ 1`.
    DeleteEdgeA2,
    /// Edge deletion; `w ≤ w'` on edges and `w' ≤ w` on all vertices.
    DeleteEdgeB,
    /// Deleting a zero-potential loop with all weights unchanged.
    DeleteEdgeC,
    /// Vertex contraction; edge weights may grow, vertex weights may shrink.
    ContractA,
    /// Vertex contraction with the contraction map measure preserving.
    ContractB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightClass {
    Combinatorial,
    Standard,
    General(Hypothesis),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    DeleteEdge,
    ContractVertices,
    ContractEdge,
    ContractPendant,
    DeleteVertex,
    SpanningSubgraph,
    Minor,
}

/// Which graph of a certificate a relation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operand {
    Original,
    Perturbed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// An MW-homomorphism `lhs → rhs` exists (and was verified).
    Geometric,
    /// `σ(lhs) ≼_shift σ(rhs)`.
    SpectralShift,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedRelation {
    pub lhs: Operand,
    pub rhs: Operand,
    pub kind: RelationKind,
    pub shift: usize,
    pub theorem: String,
    pub numerically_verified: bool,
    /// Smallest shift for which the relation holds numerically.
    pub minimal_shift: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationCertificate {
    pub operation: Operation,
    pub parameters: BTreeMap<String, String>,
    pub weight_class: WeightClass,
    pub relations: Vec<CertifiedRelation>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub tolerance: f64,
}

impl PerturbationCertificate {
    /// Guaranteed shift of `Original ≼ Perturbed`, if certified.
    pub fn up_shift(&self) -> Option<usize> {
        self.shift_between(Operand::Original, Operand::Perturbed)
    }

    /// Guaranteed shift of `Perturbed ≼ Original`, if certified.
    pub fn down_shift(&self) -> Option<usize> {
        self.shift_between(Operand::Perturbed, Operand::Original)
    }

    fn shift_between(&self, lhs: Operand, rhs: Operand) -> Option<usize> {
        self.relations
            .iter()
            .filter(|r| r.kind == RelationKind::SpectralShift && r.lhs == lhs && r.rhs == rhs)
            .map(|r| r.shift)
            .min()
    }
}

/// Checks claimed relations between an original graph and its perturbation.
struct Verifier {
    original: Spectrum,
    perturbed: Spectrum,
    tol: f64,
    relations: Vec<CertifiedRelation>,
}

impl Verifier {
    fn new(original: &MWGraph, perturbed: &MWGraph) -> Result<Self> {
        Ok(Verifier { original: spectrum(original)?, perturbed: spectrum(perturbed)?, tol: SHIFT_TOL, relations: Vec::new() })
    }

    fn spec(&self, op: Operand) -> &Spectrum {
        match op {
            Operand::Original => &self.original,
            Operand::Perturbed => &self.perturbed,
        }
    }

    fn spectral(&mut self, lhs: Operand, rhs: Operand, shift: usize, theorem: &str) -> Result<()> {
        let (a, b) = (self.spec(lhs), self.spec(rhs));
        let rel = shift_less(a, b, shift, self.tol);
        if !rel.holds {
            return Err(Error::CertificateViolation(format!(
                "{theorem}: {lhs:?} ≼_{shift} {rhs:?} fails at index {:?}",
                rel.witness_index
            )));
        }
        let minimal = minimal_shift(a, b, self.tol);
        self.relations.push(CertifiedRelation {
            lhs,
            rhs,
            kind: RelationKind::SpectralShift,
            shift,
            theorem: theorem.to_string(),
            numerically_verified: true,
            minimal_shift: Some(minimal),
        });
        Ok(())
    }

    fn both(&mut self, up: usize, down: usize, theorem: &str) -> Result<()> {
        self.spectral(Operand::Original, Operand::Perturbed, up, theorem)?;
        self.spectral(Operand::Perturbed, Operand::Original, down, theorem)
    }

    fn geometric(&mut self, lhs: Operand, rhs: Operand, hom: &MwHom, theorem: &str) -> Result<()> {
        if !hom.is_mw_hom() {
            return Err(Error::CertificateViolation(format!(
                "{theorem}: map {lhs:?} → {rhs:?} is not an MW-homomorphism ({:?})",
                hom.flags
            )));
        }
        self.relations.push(CertifiedRelation {
            lhs,
            rhs,
            kind: RelationKind::Geometric,
            shift: 0,
            theorem: theorem.to_string(),
            numerically_verified: true,
            minimal_shift: None,
        });
        Ok(())
    }

    fn finish(
        self,
        operation: Operation,
        parameters: BTreeMap<String, String>,
        weight_class: WeightClass,
        r: Option<usize>,
        s: Option<usize>,
    ) -> PerturbationCertificate {
        PerturbationCertificate { operation, parameters, weight_class, relations: self.relations, r, s, tolerance: self.tol }
    }
}

fn params(items: &[(&str, String)]) -> BTreeMap<String, String> {
    items.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn require_kind(w: &MWGraph, class: WeightClass) -> Result<WeightKind> {
    match class {
        WeightClass::Combinatorial if w.kind() != WeightKind::Combinatorial => Err(Error::NotCombinatorial),
        WeightClass::Standard if w.kind() != WeightKind::Standard => Err(Error::NotStandard),
        WeightClass::Combinatorial => Ok(WeightKind::Combinatorial),
        WeightClass::Standard => Ok(WeightKind::Standard),
        WeightClass::General(_) => Ok(WeightKind::Custom),
    }
}

fn is_zero(alpha: f64) -> bool {
    angles_equal(alpha, 0.0, ANGLE_TOL)
}

fn is_pi(alpha: f64) -> bool {
    angles_equal(alpha, PI, ANGLE_TOL)
}

fn leq(a: f64, b: f64) -> bool {
    a <= b + 1e-12 * a.abs().max(b.abs()).max(1.0)
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::HypothesisNotSatisfied(what()))
    }
}

/// Inclusion of a subgraph on the same vertex set.
fn inclusion(sub: &MWGraph, host: &MWGraph) -> Result<MwHom> {
    let (vm, em) = identity_map(sub);
    verify_hom(sub, host, &vm, &em)
}

/// Deletes `e0` and certifies the resulting spectral relations.
pub fn certify_delete_edge(w: &MWGraph, e0: EdgeId, class: WeightClass) -> Result<(MWGraph, PerturbationCertificate)> {
    let kind = require_kind(w, class)?;
    let perturbed = w.delete_edge(e0, kind)?;
    let cert = match class {
        WeightClass::General(h) => return certify_delete_edge_with(w, perturbed, e0, h),
        _ => delete_edge_relations(w, &perturbed, e0, class)?,
    };
    Ok((perturbed, cert))
}

fn delete_edge_relations(w: &MWGraph, wp: &MWGraph, e0: EdgeId, class: WeightClass) -> Result<PerturbationCertificate> {
    let edge = w.edge(e0).ok_or(Error::UnknownEdge(e0))?.clone();
    let mut v = Verifier::new(w, wp)?;
    match class {
        WeightClass::Combinatorial => {
            v.geometric(Operand::Perturbed, Operand::Original, &inclusion(wp, w)?, "edge-deletion/combinatorial")?;
            v.both(1, 0, "edge-deletion/combinatorial")?;
            if edge.is_loop() && is_zero(edge.alpha) {
                v.spectral(Operand::Original, Operand::Perturbed, 0, "loop-deletion/zero-potential")?;
            }
        }
        WeightClass::Standard => {
            if edge.is_loop() && is_zero(edge.alpha) {
                v.both(0, 1, "loop-deletion/standard/zero-potential")?;
            } else if edge.is_loop() && is_pi(edge.alpha) {
                v.both(1, 0, "loop-deletion/standard/potential-pi")?;
            } else {
                v.both(1, 1, "edge-deletion/standard")?;
            }
        }
        WeightClass::General(_) => unreachable!("handled by certify_delete_edge_with"),
    }
    Ok(v.finish(Operation::DeleteEdge, params(&[("edge", e0.to_string())]), class, None, None))
}

/// Edge deletion for general weights, with the perturbed weights supplied by
/// the caller. The structure of `wp` must be that of `w − e0`.
pub fn certify_delete_edge_with(
    w: &MWGraph,
    wp: MWGraph,
    e0: EdgeId,
    h: Hypothesis,
) -> Result<(MWGraph, PerturbationCertificate)> {
    let edge = w.edge(e0).ok_or(Error::UnknownEdge(e0))?.clone();
    let expected = w.delete_edge(e0, WeightKind::Custom)?;
    let same_shape = expected.vertex_ids().eq(wp.vertex_ids())
        && expected.edges().len() == wp.edges().len()
        && expected
            .edges()
            .iter()
            .zip(wp.edges())
            .all(|(a, b)| a.id == b.id && a.src == b.src && a.dst == b.dst && angles_equal(a.alpha, b.alpha, ANGLE_TOL));
    if !same_shape {
        return Err(Error::InvalidInput(format!("perturbed graph is not the original minus edge {e0}")));
    }
    let ends = [edge.src, edge.dst];
    let edge_pairs = || w.edges().iter().filter(|e| e.id != e0).zip(wp.edges());
    let mut v = Verifier::new(w, &wp)?;
    let tag = "edge-deletion/general";
    match h {
        Hypothesis::DeleteEdgeA1 | Hypothesis::DeleteEdgeA2 => {
            check(edge_pairs().all(|(a, b)| leq(b.weight, a.weight)), || "edge weights must not grow".into())?;
            for x in w.vertices() {
                let new = wp.vertex_weight(x.id);
                if ends.contains(&x.id) && h == Hypothesis::DeleteEdgeA2 {
                    check(leq(x.weight - edge.weight, new), || format!("w(v) − w_e0 ≤ w'(v) fails at {}", x.id))?;
                } else {
                    check(leq(x.weight, new), || format!("w(v) ≤ w'(v) fails at {}", x.id))?;
                }
            }
            if h == Hypothesis::DeleteEdgeA1 {
                v.geometric(Operand::Perturbed, Operand::Original, &inclusion(&wp, w)?, tag)?;
                v.spectral(Operand::Perturbed, Operand::Original, 0, tag)?;
            } else {
                check(leq(w.rho_max(), 1.0), || format!("ρ_∞ = {} exceeds 1", w.rho_max()))?;
                let shift = if edge.is_loop() && is_pi(edge.alpha) { 0 } else { 1 };
                v.spectral(Operand::Perturbed, Operand::Original, shift, tag)?;
            }
        }
        Hypothesis::DeleteEdgeB => {
            check(edge_pairs().all(|(a, b)| leq(a.weight, b.weight)), || "edge weights must not shrink".into())?;
            check(w.vertices().iter().all(|x| leq(wp.vertex_weight(x.id), x.weight)), || {
                "vertex weights must not grow".into()
            })?;
            let shift = if edge.is_loop() && is_zero(edge.alpha) { 0 } else { 1 };
            v.spectral(Operand::Original, Operand::Perturbed, shift, tag)?;
        }
        Hypothesis::DeleteEdgeC => {
            check(edge.is_loop() && is_zero(edge.alpha), || "edge must be a loop with zero potential".into())?;
            check(edge_pairs().all(|(a, b)| leq(a.weight, b.weight) && leq(b.weight, a.weight)), || {
                "edge weights must be unchanged".into()
            })?;
            check(
                w.vertices().iter().all(|x| {
                    let y = wp.vertex_weight(x.id);
                    leq(x.weight, y) && leq(y, x.weight)
                }),
                || "vertex weights must be unchanged".into(),
            )?;
            v.both(0, 0, tag)?;
        }
        other => {
            return Err(Error::HypothesisNotSatisfied(format!("{other:?} does not apply to edge deletion")));
        }
    }
    let cert = v.finish(Operation::DeleteEdge, params(&[("edge", e0.to_string())]), WeightClass::General(h), None, None);
    Ok((wp, cert))
}

/// `r = min(deg v1, deg v2)` and `s` = number of zero-potential edges joining them.
pub fn contraction_r_s(w: &MWGraph, v1: VertexId, v2: VertexId) -> (usize, usize) {
    let r = w.degree(v1).min(w.degree(v2));
    let s = w.edges_between(v1, v2).iter().filter(|e| !e.is_loop() && is_zero(e.alpha)).count();
    (r, s)
}

fn quotient_hom(w: &MWGraph, q: &MWGraph, v1: VertexId, v2: VertexId) -> Result<MwHom> {
    let rep = v1.min(v2);
    let vm: BTreeMap<VertexId, VertexId> =
        w.vertex_ids().map(|v| (v, if v == v1 || v == v2 { rep } else { v })).collect();
    let em: BTreeMap<EdgeId, OrientedEdge> = w.edge_ids().map(|e| (e, OrientedEdge::forward(e))).collect();
    verify_hom(w, q, &vm, &em)
}

/// Identifies `v1` and `v2` and certifies the resulting relations.
pub fn certify_contract_vertices(
    w: &MWGraph,
    v1: VertexId,
    v2: VertexId,
    class: WeightClass,
) -> Result<(MWGraph, PerturbationCertificate)> {
    if v1 == v2 {
        return Err(Error::SameVertex(v1));
    }
    let kind = require_kind(w, class)?;
    let part = VertexPartition::new(vec![vec![v1, v2]])?;
    let q = w.contract_vertices(&part, kind)?;
    if let WeightClass::General(h) = class {
        return certify_contract_vertices_with(w, q, v1, v2, h);
    }
    let (r, s) = contraction_r_s(w, v1, v2);
    let mut v = Verifier::new(w, &q)?;
    let hom = quotient_hom(w, &q, v1, v2)?;
    match class {
        WeightClass::Combinatorial => {
            let tag = "vertex-contraction/combinatorial";
            v.geometric(Operand::Original, Operand::Perturbed, &hom, tag)?;
            v.both(0, r + 1 - s, tag)?;
        }
        _ => {
            let tag = "vertex-contraction/standard";
            v.geometric(Operand::Original, Operand::Perturbed, &hom, tag)?;
            v.both(0, 1, tag)?;
        }
    }
    let p = params(&[("v1", v1.to_string()), ("v2", v2.to_string())]);
    Ok((q, v.finish(Operation::ContractVertices, p, class, Some(r), Some(s))))
}

/// Vertex contraction for general weights with caller-supplied quotient weights.
pub fn certify_contract_vertices_with(
    w: &MWGraph,
    q: MWGraph,
    v1: VertexId,
    v2: VertexId,
    h: Hypothesis,
) -> Result<(MWGraph, PerturbationCertificate)> {
    if v1 == v2 {
        return Err(Error::SameVertex(v1));
    }
    let part = VertexPartition::new(vec![vec![v1, v2]])?;
    let expected = w.contract_vertices(&part, WeightKind::Custom)?;
    let same_shape = expected.vertex_ids().eq(q.vertex_ids())
        && expected.edges().len() == q.edges().len()
        && expected.edges().iter().zip(q.edges()).all(|(a, b)| a.id == b.id && a.src == b.src && a.dst == b.dst);
    if !same_shape {
        return Err(Error::InvalidInput("perturbed graph is not the quotient by {v1, v2}".into()));
    }
    let rep = v1.min(v2);
    let merged_weight = w.vertex_weight(v1) + w.vertex_weight(v2);
    let (r, s) = contraction_r_s(w, v1, v2);
    let tag = "vertex-contraction/general";
    let mut v = Verifier::new(w, &q)?;
    match h {
        Hypothesis::ContractA => {
            check(w.edges().iter().zip(q.edges()).all(|(a, b)| leq(a.weight, b.weight)), || {
                "edge weights must not shrink".into()
            })?;
            for x in q.vertices() {
                let bound = if x.id == rep { merged_weight } else { w.vertex_weight(x.id) };
                check(leq(x.weight, bound), || format!("quotient weight too large at {}", x.id))?;
            }
            v.geometric(Operand::Original, Operand::Perturbed, &quotient_hom(w, &q, v1, v2)?, tag)?;
            v.both(0, r + 1 - s, tag)?;
        }
        Hypothesis::ContractB => {
            let hom = quotient_hom(w, &q, v1, v2)?;
            check(hom.is_measure_preserving(), || "contraction map is not measure preserving".into())?;
            v.geometric(Operand::Original, Operand::Perturbed, &hom, tag)?;
            v.both(0, 1, tag)?;
        }
        other => {
            return Err(Error::HypothesisNotSatisfied(format!("{other:?} does not apply to vertex contraction")));
        }
    }
    let p = params(&[("v1", v1.to_string()), ("v2", v2.to_string())]);
    Ok((q, v.finish(Operation::ContractVertices, p, WeightClass::General(h), Some(r), Some(s))))
}

/// Contracts a simple, non-loop edge and certifies the relations.
pub fn certify_contract_edge(w: &MWGraph, e0: EdgeId, class: WeightClass) -> Result<(MWGraph, PerturbationCertificate)> {
    if let WeightClass::General(_) = class {
        return Err(Error::HypothesisNotSatisfied(
            "edge contraction is certified for combinatorial and standard weights only".into(),
        ));
    }
    let kind = require_kind(w, class)?;
    let edge = w.edge(e0).ok_or(Error::UnknownEdge(e0))?.clone();
    if edge.is_loop() {
        return Err(Error::LoopContraction(e0));
    }
    if w.edges_between(edge.src, edge.dst).len() != 1 {
        return Err(Error::MultiEdge(e0));
    }
    let wp = w.contract_edge(e0, kind)?;
    let r = w.degree(edge.src).min(w.degree(edge.dst));
    let bridge = w.is_bridge(e0)?;
    let mut v = Verifier::new(w, &wp)?;
    match class {
        WeightClass::Combinatorial => {
            if bridge || is_zero(edge.alpha) {
                v.both(0, r, "edge-contraction/combinatorial/trivial-or-bridge")?;
            } else {
                v.both(1, r + 1, "edge-contraction/combinatorial")?;
            }
        }
        _ => {
            if bridge {
                v.both(0, 1, "edge-contraction/standard/bridge")?;
            } else if is_zero(edge.alpha) {
                v.both(0, 2, "edge-contraction/standard/zero-potential")?;
            } else if is_pi(edge.alpha) {
                v.both(1, 1, "edge-contraction/standard/potential-pi")?;
            } else {
                v.both(1, 2, "edge-contraction/standard")?;
            }
        }
    }
    let p = params(&[("edge", e0.to_string()), ("bridge", bridge.to_string())]);
    Ok((wp, v.finish(Operation::ContractEdge, p, class, Some(r), None)))
}

/// Removes the degree-one end of a pendant edge. The neighbour keeps its id,
/// so the result is the edge contraction up to naming of the merged vertex.
pub fn certify_contract_pendant(w: &MWGraph, e0: EdgeId, class: WeightClass) -> Result<(MWGraph, PerturbationCertificate)> {
    if let WeightClass::General(_) = class {
        return Err(Error::HypothesisNotSatisfied(
            "pendant contraction is certified for combinatorial and standard weights only".into(),
        ));
    }
    let kind = require_kind(w, class)?;
    let v0 = w.pendant_vertex(e0)?.ok_or(Error::NotPendant(e0))?;
    let wp = w.delete_vertex(v0, kind)?;
    let mut v = Verifier::new(w, &wp)?;
    v.both(0, 1, "pendant-contraction")?;
    let p = params(&[("edge", e0.to_string()), ("pendant_vertex", v0.to_string())]);
    Ok((wp, v.finish(Operation::ContractPendant, p, class, None, None)))
}

/// Deletes a loop-free vertex of degree `r` and certifies the relations.
pub fn certify_delete_vertex(w: &MWGraph, v0: VertexId, class: WeightClass) -> Result<(MWGraph, PerturbationCertificate)> {
    if let WeightClass::General(_) = class {
        return Err(Error::HypothesisNotSatisfied(
            "vertex deletion is certified for combinatorial and standard weights only".into(),
        ));
    }
    let kind = require_kind(w, class)?;
    let wp = w.delete_vertex(v0, kind)?;
    let r = w.degree(v0);
    let mut v = Verifier::new(w, &wp)?;
    if r == 0 {
        // Removing an isolated vertex removes one eigenvalue 0.
        v.both(0, 1, "vertex-deletion/isolated")?;
    } else if class == WeightClass::Combinatorial {
        v.both(r - 1, 1, "vertex-deletion/combinatorial")?;
    } else {
        v.both(r - 1, r, "vertex-deletion/standard")?;
    }
    let p = params(&[("vertex", v0.to_string())]);
    Ok((wp, v.finish(Operation::DeleteVertex, p, class, Some(r), None)))
}

/// `W − E0 ≼₀ W` for combinatorial weights.
pub fn spanning_subgraph_monotone(w: &MWGraph, removed: &[EdgeId]) -> Result<(MWGraph, PerturbationCertificate)> {
    if w.kind() != WeightKind::Combinatorial {
        return Err(Error::NotCombinatorial);
    }
    let sub = w.delete_edges(removed, WeightKind::Combinatorial)?;
    let mut v = Verifier::new(w, &sub)?;
    let tag = "spanning-subgraph";
    v.geometric(Operand::Perturbed, Operand::Original, &inclusion(&sub, w)?, tag)?;
    v.spectral(Operand::Perturbed, Operand::Original, 0, tag)?;
    let list = removed.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
    Ok((sub, v.finish(Operation::SpanningSubgraph, params(&[("edges", list)]), WeightClass::Combinatorial, None, None)))
}

/// Relations implied by an MW-homomorphism `source → target`: always
/// `source ≼₀ target`, and `target ≼_r source` with `r = |V| − |V'|` when the
/// map is measure preserving.
pub fn homomorphism_relations(source: &MWGraph, target: &MWGraph, hom: &MwHom) -> Result<Vec<CertifiedRelation>> {
    let mut v = Verifier::new(source, target)?;
    let tag = "homomorphism";
    v.geometric(Operand::Original, Operand::Perturbed, hom, tag)?;
    v.spectral(Operand::Original, Operand::Perturbed, 0, tag)?;
    if hom.is_measure_preserving() {
        let r = source.vertex_count().saturating_sub(target.vertex_count());
        v.spectral(Operand::Perturbed, Operand::Original, r, tag)?;
    }
    Ok(v.relations)
}

/// Clique number of the underlying simple graph (loops and multiplicities ignored).
pub fn clique_number(w: &MWGraph) -> Result<usize> {
    let n = w.vertex_count();
    if n > 16 {
        return Err(Error::SizeLimitExceeded(format!("clique search limited to 16 vertices, got {n}")));
    }
    let mut adj = vec![0u32; n];
    for e in w.edges().iter().filter(|e| !e.is_loop()) {
        let (i, j) = (w.vertex_index(e.src).unwrap(), w.vertex_index(e.dst).unwrap());
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    let mut best = 0;
    bron_kerbosch(&adj, 0, (1u32 << n) - 1, 0, &mut best);
    Ok(best)
}

fn bron_kerbosch(adj: &[u32], size: usize, mut p: u32, mut x: u32, best: &mut usize) {
    if p == 0 && x == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + (p.count_ones() as usize) <= *best {
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        bron_kerbosch(adj, size + 1, p & adj[v], x & adj[v], best);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliqueBound {
    /// Clique number.
    pub d: usize,
    /// Number of unoriented edges.
    pub m: usize,
    /// Guaranteed multiplicity of the eigenvalue `d`.
    pub multiplicity_lower_bound: usize,
    /// Multiplicity of `d` in the computed spectrum.
    pub observed_multiplicity: usize,
}

/// If `m < (d−1)(d+2)/2`, the eigenvalue `d` has multiplicity at least
/// `(d−1)(d+2)/2 − m`. Returns `None` when the edge count is too large.
pub fn clique_multiplicity_bound(w: &MWGraph) -> Result<Option<CliqueBound>> {
    if w.kind() != WeightKind::Combinatorial {
        return Err(Error::NotCombinatorial);
    }
    if !w.is_connected() {
        return Err(Error::Disconnected);
    }
    if !w.has_zero_potential() {
        return Err(Error::NonzeroPotential);
    }
    let d = clique_number(w)?;
    let m = w.edge_count();
    let threshold = (d.saturating_sub(1)) * (d + 2) / 2;
    if m >= threshold {
        return Ok(None);
    }
    let bound = threshold - m;
    let observed = spectrum(w)?.multiplicity_of(d as f64, 1e-8);
    if observed < bound {
        return Err(Error::CertificateViolation(format!(
            "eigenvalue {d} has multiplicity {observed}, expected at least {bound}"
        )));
    }
    Ok(Some(CliqueBound { d, m, multiplicity_lower_bound: bound, observed_multiplicity: observed }))
}

/// True when the spectrum and edge count certify that the graph has no
/// `d`-clique: either `m` is below `d(d−1)/2`, or `d ∉ Λ` and `m < (d−1)(d+2)/2`.
pub fn exclude_clique(spec: &Spectrum, d: usize, m: usize) -> bool {
    if m < d * d.saturating_sub(1) / 2 {
        return true;
    }
    spec.multiplicity_of(d as f64, 1e-8) == 0 && m < d.saturating_sub(1) * (d + 2) / 2
}

/// One elementary step of a minor script.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "op", content = "id")]
pub enum MinorStep {
    DeleteEdge(EdgeId),
    ContractEdge(EdgeId),
    DeletePendantVertex(VertexId),
}

/// An eigenvalue of high multiplicity that must survive in the minor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Persistence {
    pub value: f64,
    pub multiplicity: usize,
    pub guaranteed_in_minor: usize,
    pub observed_in_minor: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinorCertificate {
    pub certificate: PerturbationCertificate,
    pub steps: Vec<PerturbationCertificate>,
    pub deleted_edges: usize,
    pub contracted_edges: usize,
    pub contracted_bridges: usize,
    pub deleted_pendants: usize,
    /// Sum of `min(deg ∂₊e, deg ∂₋e)` over contracted edges, at the time of contraction.
    pub contraction_degree_sum: usize,
    pub persistence: Vec<Persistence>,
}

/// Applies a script of deletions and contractions to a simple graph without
/// potential, composing the per-step certificates by adding shifts.
pub fn certify_minor(w: &MWGraph, script: &[MinorStep], class: WeightClass) -> Result<(MWGraph, MinorCertificate)> {
    if let WeightClass::General(_) = class {
        return Err(Error::HypothesisNotSatisfied("minors are certified for combinatorial and standard weights only".into()));
    }
    require_kind(w, class)?;
    if !w.is_simple() {
        return Err(Error::NotSimple);
    }
    if !w.has_zero_potential() {
        return Err(Error::NonzeroPotential);
    }
    let mut current = w.clone();
    let mut steps = Vec::new();
    let (mut p, mut q, mut qb, mut s, mut rsum) = (0, 0, 0, 0, 0);
    let (mut up, mut down) = (0, 0);
    for (i, step) in script.iter().enumerate() {
        let invalid = |e: Error| Error::InvalidStep { step: i, reason: e.to_string() };
        let (next, cert) = match *step {
            MinorStep::DeleteEdge(e) => {
                p += 1;
                certify_delete_edge(&current, e, class).map_err(invalid)?
            }
            MinorStep::ContractEdge(e) => {
                let out = certify_contract_edge(&current, e, class).map_err(invalid)?;
                q += 1;
                rsum += out.1.r.unwrap_or(0);
                if out.1.parameters.get("bridge").map(String::as_str) == Some("true") {
                    qb += 1;
                }
                out
            }
            MinorStep::DeletePendantVertex(v) => {
                let edge = current
                    .incident(v)
                    .first()
                    .map(|oe| oe.edge)
                    .filter(|_| current.degree(v) == 1)
                    .ok_or_else(|| Error::InvalidStep { step: i, reason: format!("vertex {v} is not pendant") })?;
                s += 1;
                certify_contract_pendant(&current, edge, class).map_err(invalid)?
            }
        };
        up += cert.up_shift().unwrap_or(0);
        down += cert.down_shift().unwrap_or(0);
        current = next;
        steps.push(cert);
    }
    let tag = match class {
        WeightClass::Combinatorial => "minor/combinatorial",
        _ => "minor/standard",
    };
    let mut v = Verifier::new(w, &current)?;
    v.both(up, down, tag)?;
    let persistence = persistence(&v.original, &v.perturbed, up, down)?;
    let script_text = script
        .iter()
        .map(|st| match st {
            MinorStep::DeleteEdge(e) => format!("delete-edge:{e}"),
            MinorStep::ContractEdge(e) => format!("contract-edge:{e}"),
            MinorStep::DeletePendantVertex(x) => format!("delete-pendant:{x}"),
        })
        .collect::<Vec<_>>()
        .join(";");
    let certificate = v.finish(Operation::Minor, params(&[("script", script_text)]), class, Some(rsum), Some(s));
    Ok((
        current,
        MinorCertificate {
            certificate,
            steps,
            deleted_edges: p,
            contracted_edges: q,
            contracted_bridges: qb,
            deleted_pendants: s,
            contraction_degree_sum: rsum,
            persistence,
        },
    ))
}

/// From `W ≼_a W'` and `W' ≼_b W`, an eigenvalue of `W` with multiplicity
/// `μ ≥ a + b + 1` is an eigenvalue of `W'` with multiplicity `≥ μ − a − b`.
pub fn persistence(original: &Spectrum, perturbed: &Spectrum, a: usize, b: usize) -> Result<Vec<Persistence>> {
    let mut out = Vec::new();
    for (value, mult) in original.grouped() {
        if mult < a + b + 1 {
            continue;
        }
        let guaranteed = mult - a - b;
        let observed = perturbed.multiplicity_of(value, 1e-8 * value.abs().max(1.0));
        if observed < guaranteed {
            return Err(Error::CertificateViolation(format!(
                "eigenvalue {value} kept multiplicity {observed}, expected at least {guaranteed}"
            )));
        }
        out.push(Persistence { value, multiplicity: mult, guaranteed_in_minor: guaranteed, observed_in_minor: observed });
    }
    Ok(out)
}
