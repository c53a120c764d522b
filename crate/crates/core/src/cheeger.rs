//! Frustration index and magnetic Cheeger constants.
//!
//! Edge sums run over unoriented edges, so an edge contributes
//! `w_e |e^{iτ(∂₊e)} − e^{−iα_e} e^{iτ(∂₋e)}|` once. Summing over both
//! orientations instead would double every frustration index. The boundary
//! term `w(E(V₀, ∁V₀))` likewise counts each crossing edge once.

use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{angles_equal, normalize_angle, MWGraph, VertexId, VertexPartition, ANGLE_TOL, TRIVIALITY_TOL};
use crate::hom::MwHom;
use crate::spectra::spectrum;

/// Subgroup of the circle the phases `τ` range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PotentialRange {
    /// `{0, π}`.
    Signed,
    /// All of `ℝ/2πℤ`.
    Circle,
}

impl PotentialRange {
    /// `Signed` when every potential lies in `{0, π}`.
    pub fn infer(g: &MWGraph) -> Self {
        let signed = g.edges().iter().all(|e| angles_equal(e.alpha, 0.0, ANGLE_TOL) || angles_equal(e.alpha, PI, ANGLE_TOL));
        if signed {
            PotentialRange::Signed
        } else {
            PotentialRange::Circle
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrustrationMethod {
    /// Exhaustive search over `{0, π}^V`.
    ExactSigned,
    /// Multi-start coordinate descent on the torus; an upper bound.
    GridDescent,
    /// The potential is a coboundary and `τ` is the gauge that removes it.
    TrivialGauge,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrustrationResult {
    pub value: f64,
    pub tau: BTreeMap<VertexId, f64>,
    pub method: FrustrationMethod,
    pub certified_exact: bool,
}

pub const SIGNED_VERTEX_CAP: usize = 24;
pub const DESCENT_RESTARTS: usize = 40;
pub const DESCENT_TOL: f64 = 1e-10;
const GRID_POINTS: u32 = 16;
const DESCENT_SEED: u64 = 0x5eed_f00d;

/// Index-based view of a graph for the inner loops.
struct Frame {
    n: usize,
    /// `(src, dst, weight, alpha)`.
    edges: Vec<(usize, usize, f64, f64)>,
}

impl Frame {
    fn of(g: &MWGraph) -> Self {
        let edges = g
            .edges()
            .iter()
            .map(|e| (g.vertex_index(e.src).unwrap(), g.vertex_index(e.dst).unwrap(), e.weight, e.alpha))
            .collect();
        Frame { n: g.vertex_count(), edges }
    }

    /// Induced frame on the vertices in `mask`; also returns the boundary weight.
    fn induced(&self, mask: u32) -> (Frame, f64) {
        let mut index = vec![usize::MAX; self.n];
        let mut n = 0;
        for (v, slot) in index.iter_mut().enumerate() {
            if mask >> v & 1 == 1 {
                *slot = n;
                n += 1;
            }
        }
        let mut edges = Vec::new();
        let mut boundary = 0.0;
        for &(s, d, w, a) in &self.edges {
            match (mask >> s & 1 == 1, mask >> d & 1 == 1) {
                (true, true) => edges.push((index[s], index[d], w, a)),
                (false, false) => {}
                _ => boundary += w,
            }
        }
        (Frame { n, edges }, boundary)
    }

    fn cost(&self, tau: &[f64]) -> f64 {
        self.edges.iter().map(|&(s, d, w, a)| w * edge_term(tau[s], tau[d], a)).sum()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(s, d, _, _)) in self.edges.iter().enumerate() {
            adj[s].push((d, i));
            if s != d {
                adj[d].push((s, i));
            }
        }
        adj
    }

    /// Spanning-forest gauge `ξ` with `ξ(∂₊e) = ξ(∂₋e) − α_e` on tree edges,
    /// plus the visiting order and component roots.
    fn gauge(&self) -> (Vec<f64>, Vec<usize>, Vec<bool>) {
        let adj = self.adjacency();
        let mut xi = vec![f64::NAN; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut root = vec![false; self.n];
        for start in 0..self.n {
            if !xi[start].is_nan() {
                continue;
            }
            xi[start] = 0.0;
            root[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &(x, i) in &adj[u] {
                    if xi[x].is_nan() {
                        let (s, _, _, a) = self.edges[i];
                        xi[x] = if s == u { xi[u] - a } else { xi[u] + a };
                        queue.push_back(x);
                    }
                }
            }
        }
        (xi, order, root)
    }

    fn is_trivial(&self, xi: &[f64]) -> bool {
        self.edges.iter().all(|&(s, d, _, a)| angles_equal(a + xi[d] - xi[s], 0.0, TRIVIALITY_TOL))
    }
}

/// `|e^{iτ₊} − e^{−iα} e^{iτ₋}| = 2 |sin((τ₊ − τ₋ + α)/2)|`.
fn edge_term(tau_src: f64, tau_dst: f64, alpha: f64) -> f64 {
    2.0 * ((tau_dst - tau_src + alpha) / 2.0).sin().abs()
}

/// `ι(W, τ)`.
pub fn frustration(g: &MWGraph, tau: &BTreeMap<VertexId, f64>) -> Result<f64> {
    let mut values = Vec::with_capacity(g.vertex_count());
    for v in g.vertex_ids() {
        values.push(*tau.get(&v).ok_or_else(|| Error::PartialMap(format!("τ is undefined at vertex {v}")))?);
    }
    Ok(Frame::of(g).cost(&values))
}

struct FrameResult {
    value: f64,
    tau: Vec<f64>,
    method: FrustrationMethod,
}

fn frame_frustration(fr: &Frame, range: PotentialRange) -> Result<FrameResult> {
    let (xi, order, root) = fr.gauge();
    if fr.is_trivial(&xi) {
        let value = fr.cost(&xi);
        return Ok(FrameResult { value, tau: xi, method: FrustrationMethod::TrivialGauge });
    }
    match range {
        PotentialRange::Signed => {
            if fr.n > SIGNED_VERTEX_CAP {
                return Err(Error::SizeLimitExceeded(format!(
                    "exact signed frustration limited to {SIGNED_VERTEX_CAP} vertices, got {}",
                    fr.n
                )));
            }
            let (value, tau) = signed_search(fr, &order, &root);
            Ok(FrameResult { value, tau, method: FrustrationMethod::ExactSigned })
        }
        PotentialRange::Circle => {
            let (value, tau) = circle_descent(fr, &xi);
            Ok(FrameResult { value, tau, method: FrustrationMethod::GridDescent })
        }
    }
}

/// Depth-first branch and bound over `{0, π}^V`. The first vertex of each
/// component is pinned to 0, since `τ + π` has the same cost as `τ`.
fn signed_search(fr: &Frame, order: &[usize], root: &[bool]) -> (f64, Vec<f64>) {
    let mut position = vec![0; fr.n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // Edges are charged at the later of their two endpoints.
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); fr.n];
    for (i, &(s, d, _, _)) in fr.edges.iter().enumerate() {
        let last = if position[s] >= position[d] { s } else { d };
        closing[last].push(i);
    }
    let mut tau = vec![0.0; fr.n];
    let mut best = (f64::INFINITY, tau.clone());
    #[allow(clippy::too_many_arguments)]
    fn go(
        depth: usize,
        cost: f64,
        fr: &Frame,
        order: &[usize],
        root: &[bool],
        closing: &[Vec<usize>],
        tau: &mut Vec<f64>,
        best: &mut (f64, Vec<f64>),
    ) {
        if cost >= best.0 - 1e-12 {
            return;
        }
        if depth == order.len() {
            *best = (cost, tau.clone());
            return;
        }
        let v = order[depth];
        let choices: &[f64] = if root[v] { &[0.0] } else { &[0.0, PI] };
        for &c in choices {
            tau[v] = c;
            let extra: f64 = closing[v]
                .iter()
                .map(|&i| {
                    let (s, d, w, a) = fr.edges[i];
                    w * edge_term(tau[s], tau[d], a)
                })
                .sum();
            go(depth + 1, cost + extra, fr, order, root, closing, tau, best);
        }
    }
    go(0, 0.0, fr, order, root, &closing, &mut tau, &mut best);
    best
}

/// Coordinate descent with exact line searches. Along one coordinate the
/// objective is `Σ_j w_j |e^{iθ} − e^{iφ_j}|`, which is concave between
/// consecutive `φ_j`, so its minimum is attained at one of them.
fn circle_descent(fr: &Frame, gauge: &[f64]) -> (f64, Vec<f64>) {
    let adj = fr.adjacency();
    let mut rng = ChaCha8Rng::seed_from_u64(DESCENT_SEED);
    let mut best = (f64::INFINITY, vec![0.0; fr.n]);
    for restart in 0..DESCENT_RESTARTS {
        let mut tau: Vec<f64> = match restart {
            0 => vec![0.0; fr.n],
            1 => gauge.to_vec(),
            _ => (0..fr.n).map(|_| TAU * f64::from(rng.random_range(0..GRID_POINTS)) / f64::from(GRID_POINTS)).collect(),
        };
        let value = descend(fr, &adj, &mut tau);
        if value < best.0 - DESCENT_TOL {
            best = (value, tau);
        }
    }
    best
}

fn descend(fr: &Frame, adj: &[Vec<(usize, usize)>], tau: &mut [f64]) -> f64 {
    let mut targets: Vec<(f64, f64)> = Vec::new();
    loop {
        let mut improved = false;
        for v in 0..fr.n {
            targets.clear();
            for &(u, i) in &adj[v] {
                let (s, d, w, a) = fr.edges[i];
                if s == d {
                    continue;
                }
                let phi = if d == v { tau[u] - a } else { tau[u] + a };
                targets.push((w, phi));
            }
            if targets.is_empty() {
                continue;
            }
            let local = |theta: f64| -> f64 { targets.iter().map(|&(w, phi)| 2.0 * w * ((theta - phi) / 2.0).sin().abs()).sum() };
            let current = local(tau[v]);
            let (arg, val) = targets
                .iter()
                .map(|&(_, phi)| (phi, local(phi)))
                .fold((tau[v], current), |acc, x| if x.1 < acc.1 { x } else { acc });
            if val < current - DESCENT_TOL {
                tau[v] = arg;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    fr.cost(tau)
}

/// `ι(W)`. With `range = None` the range is inferred from the potential.
pub fn frustration_index(g: &MWGraph, range: Option<PotentialRange>) -> Result<FrustrationResult> {
    let range = range.unwrap_or_else(|| PotentialRange::infer(g));
    if range == PotentialRange::Signed {
        if let Some(e) = g.edges().iter().find(|e| !(angles_equal(e.alpha, 0.0, ANGLE_TOL) || angles_equal(e.alpha, PI, ANGLE_TOL))) {
            return Err(Error::PotentialOutOfRange(e.id));
        }
    }
    let res = frame_frustration(&Frame::of(g), range)?;
    let tau = g.vertex_ids().zip(res.tau.iter().map(|&t| normalize_angle(t))).collect();
    Ok(FrustrationResult {
        value: res.value,
        tau,
        method: res.method,
        certified_exact: res.method != FrustrationMethod::GridDescent,
    })
}

fn subset_mask(g: &MWGraph, set: &[VertexId]) -> Result<u32> {
    if set.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    if g.vertex_count() > 32 {
        return Err(Error::SizeLimitExceeded(format!("set functionals limited to 32 vertices, got {}", g.vertex_count())));
    }
    let mut mask = 0u32;
    for v in set {
        mask |= 1 << g.vertex_index(*v).ok_or(Error::UnknownVertex(*v))?;
    }
    Ok(mask)
}

fn mask_weight(weights: &[f64], mask: u32) -> f64 {
    weights.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w).sum()
}

fn set_value(fr: &Frame, weights: &[f64], mask: u32, range: PotentialRange) -> Result<(f64, FrustrationMethod)> {
    let (sub, boundary) = fr.induced(mask);
    let res = frame_frustration(&sub, range)?;
    Ok(((res.value + boundary) / mask_weight(weights, mask), res.method))
}

/// `h(W, V₀) = (ι(W[V₀]) + w(E(V₀, ∁V₀))) / w(V₀)`.
pub fn cheeger_of_set(g: &MWGraph, set: &[VertexId], range: Option<PotentialRange>) -> Result<f64> {
    let mask = subset_mask(g, set)?;
    let range = range.unwrap_or_else(|| PotentialRange::infer(g));
    let weights: Vec<f64> = g.vertices().iter().map(|v| v.weight).collect();
    Ok(set_value(&Frame::of(g), &weights, mask, range)?.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerResult {
    pub k: usize,
    pub value: f64,
    pub subpartition: VertexPartition,
    pub block_values: Vec<f64>,
    /// False if any set value relied on descent rather than an exact method.
    pub certified: bool,
    pub frustration_method: FrustrationMethod,
}

/// Vertex cap for [`cheeger_constant`] at order `k`.
pub fn cheeger_vertex_cap(k: usize) -> usize {
    if k <= 3 {
        12
    } else {
        10
    }
}

/// All set values `h(W, S)` indexed by bit mask, with the weakest method used.
fn all_set_values(g: &MWGraph, range: PotentialRange) -> Result<(Vec<f64>, FrustrationMethod)> {
    let fr = Frame::of(g);
    let weights: Vec<f64> = g.vertices().iter().map(|v| v.weight).collect();
    let full = 1usize << fr.n;
    let mut h = vec![f64::INFINITY; full];
    let mut method = FrustrationMethod::TrivialGauge;
    for (mask, slot) in h.iter_mut().enumerate().skip(1) {
        let (value, m) = set_value(&fr, &weights, mask as u32, range)?;
        *slot = value;
        method = weaker(method, m);
    }
    Ok((h, method))
}

fn weaker(a: FrustrationMethod, b: FrustrationMethod) -> FrustrationMethod {
    use FrustrationMethod::*;
    match (a, b) {
        (GridDescent, _) | (_, GridDescent) => GridDescent,
        (ExactSigned, _) | (_, ExactSigned) => ExactSigned,
        _ => TrivialGauge,
    }
}

/// `h_k(W)`: the minimum over `k`-subpartitions of the largest block value.
pub fn cheeger_constant(g: &MWGraph, k: usize, range: Option<PotentialRange>) -> Result<CheegerResult> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    if n > cheeger_vertex_cap(k) {
        return Err(Error::SizeLimitExceeded(format!(
            "h_{k} enumeration limited to {} vertices, got {n}",
            cheeger_vertex_cap(k)
        )));
    }
    let range = range.unwrap_or_else(|| PotentialRange::infer(g));
    let (h, method) = all_set_values(g, range)?;
    let (value, masks) = best_subpartition(&h, n, k);
    let mut blocks: Vec<(u32, f64)> = masks.into_iter().map(|m| (m, h[m as usize])).collect();
    blocks.sort_by_key(|(m, _)| m.trailing_zeros());
    let ids: Vec<VertexId> = g.vertex_ids().collect();
    let partition = VertexPartition::new(
        blocks.iter().map(|(m, _)| (0..n).filter(|i| m >> i & 1 == 1).map(|i| ids[i]).collect()).collect(),
    )?;
    Ok(CheegerResult {
        k,
        value,
        subpartition: partition,
        block_values: blocks.iter().map(|b| b.1).collect(),
        certified: method != FrustrationMethod::GridDescent,
        frustration_method: method,
    })
}

/// Dynamic programme over subsets: `g(U, j)` is the best value of a
/// `j`-subpartition inside `U`. The lowest vertex `u` of `U` is either left
/// out or starts a block `S ∋ u`.
fn best_subpartition(h: &[f64], n: usize, k: usize) -> (f64, Vec<u32>) {
    let full = 1usize << n;
    let mut layers: Vec<Vec<f64>> = vec![vec![0.0; full]];
    for j in 1..=k {
        let prev = &layers[j - 1];
        let mut cur = vec![f64::INFINITY; full];
        for u_set in 1..full {
            if (u_set.count_ones() as usize) < j {
                continue;
            }
            let low = u_set & u_set.wrapping_neg();
            let mut best = cur[u_set ^ low];
            let rest = u_set ^ low;
            let mut sub = rest;
            loop {
                let s = sub | low;
                let v = h[s].max(prev[u_set ^ s]);
                if v < best {
                    best = v;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            cur[u_set] = best;
        }
        layers.push(cur);
    }
    // Reconstruct, preferring to skip a vertex, then smaller blocks.
    let mut blocks = Vec::new();
    let mut u_set = full - 1;
    let mut j = k;
    let target = layers[k][full - 1];
    while j > 0 {
        let low = u_set & u_set.wrapping_neg();
        if layers[j][u_set ^ low] <= layers[j][u_set] {
            u_set ^= low;
            continue;
        }
        let rest = u_set ^ low;
        let mut chosen = None;
        let mut sub = 0usize;
        loop {
            let s = sub | low;
            if h[s].max(layers[j - 1][u_set ^ s]) <= layers[j][u_set] {
                chosen = Some(s);
                break;
            }
            // Enumerate subsets of `rest` in increasing order.
            sub = (sub.wrapping_sub(rest)) & rest;
            if sub == 0 {
                break;
            }
        }
        let s = chosen.expect("dynamic programme is consistent");
        blocks.push(s as u32);
        u_set ^= s;
        j -= 1;
    }
    (target, blocks)
}

/// `min w(E(V₀, ∁V₀)) / min(w(V₀), w(∁V₀))` over proper nonempty `V₀`.
pub fn classical_cut_ratio(g: &MWGraph) -> Result<f64> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::IndexOutOfRange { index: 2, len: n });
    }
    if n > 20 {
        return Err(Error::SizeLimitExceeded(format!("cut enumeration limited to 20 vertices, got {n}")));
    }
    let fr = Frame::of(g);
    let weights: Vec<f64> = g.vertices().iter().map(|v| v.weight).collect();
    let full = (1u32 << n) - 1;
    let mut best = f64::INFINITY;
    for mask in 1..full {
        let cut: f64 = fr.edges.iter().filter(|&&(s, d, _, _)| (mask >> s & 1) != (mask >> d & 1)).map(|e| e.2).sum();
        let ratio = cut / mask_weight(&weights, mask).min(mask_weight(&weights, full ^ mask));
        best = best.min(ratio);
    }
    Ok(best)
}

/// Checks `h_k(source) ≤ h_k(target)` for `k = 1..=k_max` (and `k` at most
/// the smaller vertex count).
pub fn check_cheeger_monotonicity(hom: &MwHom, source: &MWGraph, target: &MWGraph, k_max: usize) -> Result<bool> {
    if !hom.is_mw_hom() {
        return Err(Error::NotAHomomorphism);
    }
    let top = k_max.min(source.vertex_count()).min(target.vertex_count());
    let range = if PotentialRange::infer(source) == PotentialRange::Signed && PotentialRange::infer(target) == PotentialRange::Signed {
        PotentialRange::Signed
    } else {
        PotentialRange::Circle
    };
    let (hs, _) = all_set_values(source, range)?;
    let (ht, _) = all_set_values(target, range)?;
    for k in 1..=top {
        for (g, _) in [(source, 0), (target, 1)] {
            if g.vertex_count() > cheeger_vertex_cap(k) {
                return Err(Error::SizeLimitExceeded(format!("h_{k} limited to {} vertices", cheeger_vertex_cap(k))));
            }
        }
        let a = best_subpartition(&hs, source.vertex_count(), k).0;
        let b = best_subpartition(&ht, target.vertex_count(), k).0;
        if a > b + 1e-9 * b.abs().max(1.0) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerInequalities {
    pub k: usize,
    pub lambda_k: f64,
    pub h_k: f64,
    pub rho_max: f64,
    pub constant: f64,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl CheegerInequalities {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Checks `λ_k/2 ≤ h_k ≤ C k³ √(ρ_∞ λ_k)` with `C = 1` for `k = 1` and
/// `C = √2/4` for `k = 2` (the latter only for trivial potential).
pub fn check_cheeger_inequalities(g: &MWGraph, k: usize) -> Result<CheegerInequalities> {
    let constant = match k {
        1 => 1.0,
        2 if g.is_trivial_potential_tol(TRIVIALITY_TOL) => 2f64.sqrt() / 4.0,
        2 => return Err(Error::NonzeroPotential),
        _ => return Err(Error::UnsupportedCheegerOrder(k)),
    };
    let lambda_k = spectrum(g)?.lambda(k).ok_or(Error::IndexOutOfRange { index: k, len: g.vertex_count() })?;
    let h_k = cheeger_constant(g, k, None)?.value;
    let rho_max = g.rho_max();
    let tol = 1e-9;
    let upper = constant * (k * k * k) as f64 * (rho_max * lambda_k.max(0.0)).sqrt();
    Ok(CheegerInequalities {
        k,
        lambda_k,
        h_k,
        rho_max,
        constant,
        lower_holds: lambda_k / 2.0 <= h_k + tol,
        upper_holds: h_k <= upper + tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightKind;

    fn cycle(n: u32, alphas: &[f64]) -> MWGraph {
        let mut b = MWGraph::builder(WeightKind::Combinatorial).vertices(0..n);
        for i in 0..n {
            b = b.magnetic_edge(i, (i + 1) % n, alphas.get(i as usize).copied().unwrap_or(0.0));
        }
        b.build().unwrap()
    }

    fn zero_tau(g: &MWGraph) -> BTreeMap<VertexId, f64> {
        g.vertex_ids().map(|v| (v, 0.0)).collect()
    }

    #[test]
    fn frustration_of_fixed_phases() {
        let tri = cycle(3, &[PI]);
        assert!((frustration(&tri, &zero_tau(&tri)).unwrap() - 2.0).abs() < 1e-12);
        let t = 0.7;
        let edge = MWGraph::builder(WeightKind::Combinatorial).vertices(0..2).magnetic_edge(0, 1, t).build().unwrap();
        assert!((frustration(&edge, &zero_tau(&edge)).unwrap() - 2.0 * (t / 2.0).sin().abs()).abs() < 1e-12);
        let partial: BTreeMap<_, _> = [(VertexId(0), 0.0)].into();
        assert!(matches!(frustration(&edge, &partial), Err(Error::PartialMap(_))));
    }

    #[test]
    fn frustration_index_cases() {
        let unbalanced = frustration_index(&cycle(3, &[PI]), None).unwrap();
        assert_eq!(unbalanced.method, FrustrationMethod::ExactSigned);
        assert!((unbalanced.value - 2.0).abs() < 1e-12);
        let balanced = frustration_index(&cycle(4, &[PI, PI]), None).unwrap();
        assert_eq!(balanced.method, FrustrationMethod::TrivialGauge);
        assert!(balanced.value < 1e-12);
        let tree = MWGraph::builder(WeightKind::Combinatorial).vertices(0..3).magnetic_edge(0, 1, 1.1).magnetic_edge(2, 1, -2.5).build().unwrap();
        let res = frustration_index(&tree, None).unwrap();
        assert!(res.value < 1e-12);
        assert!(frustration(&tree, &res.tau).unwrap() < 1e-12);
    }

    #[test]
    fn circle_descent_on_a_fluxed_triangle() {
        // The optimum concentrates the flux on a single edge.
        let t = 2.0;
        let res = frustration_index(&cycle(3, &[t]), None).unwrap();
        assert_eq!(res.method, FrustrationMethod::GridDescent);
        assert!(!res.certified_exact);
        assert!((res.value - 2.0 * (t / 2.0).sin()).abs() < 1e-9);
        assert!(res.value > 0.0);
    }

    #[test]
    fn signed_range_rejects_other_potentials() {
        assert!(matches!(frustration_index(&cycle(3, &[1.0]), Some(PotentialRange::Signed)), Err(Error::PotentialOutOfRange(_))));
    }

    #[test]
    fn set_values() {
        let p2 = cycle(2, &[]).delete_edge(crate::graph::EdgeId(1), WeightKind::Combinatorial).unwrap();
        assert!((cheeger_of_set(&p2, &[VertexId(0)], None).unwrap() - 1.0).abs() < 1e-12);
        let c4 = cycle(4, &[]);
        assert!((cheeger_of_set(&c4, &[VertexId(0), VertexId(1)], None).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(cheeger_of_set(&c4, &c4.vertex_ids().collect::<Vec<_>>(), None).unwrap(), 0.0);
        assert_eq!(cheeger_of_set(&c4, &[], None), Err(Error::EmptyVertexSet));
    }

    #[test]
    fn cheeger_constants_of_c4() {
        let c4 = cycle(4, &[]);
        assert_eq!(cheeger_constant(&c4, 1, None).unwrap().value, 0.0);
        let h2 = cheeger_constant(&c4, 2, None).unwrap();
        assert!((h2.value - 1.0).abs() < 1e-12);
        assert_eq!(h2.subpartition.blocks().len(), 2);
        let max_block = h2.block_values.iter().cloned().fold(0.0, f64::max);
        assert!((max_block - h2.value).abs() < 1e-12);
        // Adjacent pairs induce single edges, so the sign only shows at k = 1.
        let unbalanced = cycle(4, &[PI]);
        assert!((cheeger_constant(&unbalanced, 2, None).unwrap().value - 1.0).abs() < 1e-12);
        assert!((cheeger_constant(&unbalanced, 1, None).unwrap().value - 0.5).abs() < 1e-12);
        assert!((classical_cut_ratio(&c4).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cheeger_inequalities_on_c4() {
        let c4 = cycle(4, &[]);
        let two = check_cheeger_inequalities(&c4, 2).unwrap();
        assert!(two.holds());
        assert!((two.lambda_k - 2.0).abs() < 1e-9);
        assert!(check_cheeger_inequalities(&c4, 1).unwrap().holds());
        assert_eq!(check_cheeger_inequalities(&c4, 3), Err(Error::UnsupportedCheegerOrder(3)));
    }

    #[test]
    fn size_caps() {
        let big = cycle(13, &[]);
        assert!(matches!(cheeger_constant(&big, 2, None), Err(Error::SizeLimitExceeded(_))));
        assert!(matches!(cheeger_constant(&cycle(4, &[]), 5, None), Err(Error::IndexOutOfRange { .. })));
    }
}
