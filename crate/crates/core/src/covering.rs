//! ℤ-periodic coverings handled on the quotient.
//!
//! A [`PeriodicGraph`] is a finite quotient together with an integer cocycle
//! recording how many fundamental domains an edge crosses. The covering
//! spectrum is the union over `t ∈ [0, 2π]` of the spectra of the Floquet
//! graphs, whose potential is `α_e + t·c(e)`. Bracketing reports enclose the
//! `k`-th band in an interval computed from a few `t`-independent graphs.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MWGraph, VertexId, VertexPartition, WeightKind};
use crate::spectra::{assemble_laplacian, eigenvalues, spectrum, HermitianOperator, Spectrum};

/// Slack used in all interval comparisons.
pub const INTERVAL_SLACK: f64 = 1e-9;
pub const T_INDEPENDENCE_SAMPLES: usize = 8;
pub const T_INDEPENDENCE_TOL: f64 = 1e-8;
pub const DEFAULT_SWEEP_RESOLUTION: usize = 512;
/// Sweep used to cross-check each bracket report as it is built.
pub const SOUNDNESS_RESOLUTION: usize = 128;
const T_SEED: u64 = 0x7_1de9;

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicGraph {
    quotient: MWGraph,
    cocycle: BTreeMap<EdgeId, i64>,
}

impl PeriodicGraph {
    /// Edges missing from `cocycle` stay inside the fundamental domain.
    pub fn new(quotient: MWGraph, cocycle: BTreeMap<EdgeId, i64>) -> Result<Self> {
        if let Some(e) = cocycle.keys().find(|e| quotient.edge(**e).is_none()) {
            return Err(Error::UnknownEdge(*e));
        }
        let cocycle = cocycle.into_iter().filter(|(_, c)| *c != 0).collect();
        Ok(PeriodicGraph { quotient, cocycle })
    }

    pub fn quotient(&self) -> &MWGraph {
        &self.quotient
    }

    /// Cocycle of the forward orientation of `e`; the reverse orientation carries the negative.
    pub fn cocycle(&self, e: EdgeId) -> i64 {
        self.cocycle.get(&e).copied().unwrap_or(0)
    }

    pub fn cocycle_map(&self) -> &BTreeMap<EdgeId, i64> {
        &self.cocycle
    }

    /// The Floquet graph at parameter `t`.
    pub fn floquet(&self, t: f64) -> MWGraph {
        self.quotient.with_potential(|e| e.alpha + t * self.cocycle(e.id) as f64)
    }

    /// Identifies `v1` and `v2` in the quotient, keeping the cocycle.
    pub fn contract_vertices(&self, v1: VertexId, v2: VertexId) -> Result<PeriodicGraph> {
        if v1 == v2 {
            return Err(Error::SameVertex(v1));
        }
        let part = VertexPartition::new(vec![vec![v1, v2]])?;
        let q = self.quotient.contract_vertices(&part, self.quotient.kind())?;
        Ok(PeriodicGraph { quotient: q, cocycle: self.cocycle.clone() })
    }
}

pub fn floquet_graph(p: &PeriodicGraph, t: f64) -> MWGraph {
    p.floquet(t)
}

/// Spectra of the Floquet graphs at `t_j = 2πj/(resolution − 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandSweep {
    pub ts: Vec<f64>,
    pub spectra: Vec<Spectrum>,
}

impl BandSweep {
    /// Per-index minimum and maximum over the sampled parameters.
    pub fn envelopes(&self) -> Vec<(f64, f64)> {
        let n = self.spectra.first().map_or(0, Spectrum::len);
        (0..n)
            .map(|k| {
                self.spectra.iter().map(|s| s.values()[k]).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
            })
            .collect()
    }
}

pub fn band_sweep(p: &PeriodicGraph, resolution: usize) -> Result<BandSweep> {
    if resolution < 2 {
        return Err(Error::InvalidInput(format!("sweep resolution must be at least 2, got {resolution}")));
    }
    let ts: Vec<f64> = (0..resolution).map(|j| TAU * j as f64 / (resolution - 1) as f64).collect();
    let spectra = ts.iter().map(|&t| spectrum(&p.floquet(t))).collect::<Result<Vec<_>>>()?;
    Ok(BandSweep { ts, spectra })
}

/// Removes the edges `e0` but keeps every vertex weight.
pub fn virtualise_edges(w: &MWGraph, e0: &[EdgeId]) -> Result<MWGraph> {
    w.with_kind(WeightKind::Custom).delete_edges(e0, WeightKind::Custom)
}

/// How edges between surviving and virtualised vertices are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum VirtualiseMode {
    /// Survivors keep their full degree on the diagonal.
    #[default]
    Dirichlet,
    /// Boundary edges are removed together with their degree contribution.
    Drop,
}

/// Operator on functions supported away from `v0`.
pub fn virtualise_vertices(w: &MWGraph, v0: &[VertexId], mode: VirtualiseMode) -> Result<HermitianOperator> {
    for v in v0 {
        if !w.contains_vertex(*v) {
            return Err(Error::UnknownVertex(*v));
        }
    }
    let keep: Vec<VertexId> = w.vertex_ids().filter(|v| !v0.contains(v)).collect();
    if keep.is_empty() {
        return Err(Error::AllVerticesVirtualised);
    }
    match mode {
        VirtualiseMode::Dirichlet => {
            let full = assemble_laplacian(w)?;
            let idx: Vec<usize> = keep.iter().map(|v| w.vertex_index(*v).unwrap()).collect();
            Ok(full.restrict(&idx))
        }
        VirtualiseMode::Drop => assemble_laplacian(&w.induced_subgraph(&keep)?),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.lo - slack <= x && x <= self.hi + slack
    }

    /// Intersection, or `None` if the intervals are disjoint beyond the slack.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval { lo, hi })
        } else if lo - hi <= INTERVAL_SLACK {
            Some(Interval::point((lo + hi) / 2.0))
        } else {
            None
        }
    }
}

/// Sorted, disjoint union of intervals, merging those closer than the slack.
pub fn merge_intervals(items: impl IntoIterator<Item = Interval>) -> Vec<Interval> {
    let mut sorted: Vec<Interval> = items.into_iter().collect();
    sorted.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut out: Vec<Interval> = Vec::new();
    for iv in sorted {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi + INTERVAL_SLACK => last.hi = last.hi.max(iv.hi),
            _ => out.push(iv),
        }
    }
    out
}

/// Open intervals of `range` not covered by `union`.
pub fn gaps_in(union: &[Interval], range: Interval) -> Vec<Interval> {
    let mut gaps = Vec::new();
    let mut cursor = range.lo;
    for iv in union {
        if iv.lo > cursor + INTERVAL_SLACK {
            gaps.push(Interval::new(cursor, iv.lo.min(range.hi)));
        }
        cursor = cursor.max(iv.hi);
    }
    if range.hi > cursor + INTERVAL_SLACK {
        gaps.push(Interval::new(cursor, range.hi));
    }
    gaps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketMethod {
    /// `[λ_k(W⁻), λ_k(W⁺)]` from edge and vertex virtualisation.
    Virtualisation,
    /// `[λ_{k−1}(W̃), λ_k(W̃)]` from contracting two quotient vertices.
    Contraction,
    /// `[λ_k(W'), λ_{k+1}(W')]` from a split graph whose contraction is the quotient.
    Splitting,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketReport {
    /// `J_k`; `None` marks an empty intersection.
    pub intervals: Vec<Option<Interval>>,
    pub union: Vec<Interval>,
    pub gaps: Vec<Interval>,
    pub methods: Vec<BracketMethod>,
    /// `[0, 2ρ_∞]`, which contains every Floquet spectrum.
    pub range: Interval,
}

impl BracketReport {
    pub fn build(intervals: Vec<Option<Interval>>, methods: Vec<BracketMethod>, range: Interval) -> Self {
        let union = merge_intervals(intervals.iter().flatten().copied());
        let gaps = gaps_in(&union, range);
        BracketReport { intervals, union, gaps, methods, range }
    }
}

fn spectral_range(g: &MWGraph) -> Interval {
    Interval::new(0.0, 2.0 * g.rho_max())
}

/// Confirms that `f(t)` has the same spectrum for several random `t`.
fn require_t_independent(what: &str, f: impl Fn(f64) -> Result<Spectrum>) -> Result<Spectrum> {
    let mut rng = ChaCha8Rng::seed_from_u64(T_SEED);
    let base = f(0.0)?;
    for _ in 0..T_INDEPENDENCE_SAMPLES {
        let t = rng.random::<f64>() * TAU;
        let s = f(t)?;
        let worst = base.values().iter().zip(s.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if s.len() != base.len() || worst > T_INDEPENDENCE_TOL {
            return Err(Error::NotTIndependent(format!("{what}: spectrum moves by {worst:.3e} at t = {t:.6}")));
        }
    }
    Ok(base)
}

/// Checks `λ_k(W_t) ∈ J_k` for every sampled `t` and every index.
pub fn check_bracket_soundness(p: &PeriodicGraph, report: &BracketReport, resolution: usize) -> Result<()> {
    let sweep = band_sweep(p, resolution)?;
    if report.intervals.len() != p.quotient().vertex_count() {
        return Err(Error::IndexCountMismatch(report.intervals.len(), p.quotient().vertex_count()));
    }
    for (t, s) in sweep.ts.iter().zip(&sweep.spectra) {
        for (k, (x, j)) in s.values().iter().zip(&report.intervals).enumerate() {
            let ok = j.is_some_and(|j| j.contains(*x, INTERVAL_SLACK));
            if !ok {
                return Err(Error::BracketViolation(format!("λ_{}(t = {t:.6}) = {x} lies outside J_{} = {j:?}", k + 1, k + 1)));
            }
        }
    }
    Ok(())
}

/// `J_k = [λ_k(W⁻), λ_k(W⁺)]` with `W⁻` the quotient with the edges `e0`
/// virtualised and `W⁺` the Dirichlet operator away from `v0`. Both must be
/// independent of the Floquet parameter.
pub fn bracket_by_virtualisation(p: &PeriodicGraph, e0: &[EdgeId], v0: &[VertexId]) -> Result<BracketReport> {
    bracket_by_virtualisation_with(p, e0, v0, VirtualiseMode::Dirichlet)
}

pub fn bracket_by_virtualisation_with(
    p: &PeriodicGraph,
    e0: &[EdgeId],
    v0: &[VertexId],
    mode: VirtualiseMode,
) -> Result<BracketReport> {
    let lower = require_t_independent("edge virtualisation", |t| spectrum(&virtualise_edges(&p.floquet(t), e0)?))?;
    let upper =
        require_t_independent("vertex virtualisation", |t| eigenvalues(&virtualise_vertices(&p.floquet(t), v0, mode)?))?;
    let range = spectral_range(p.quotient());
    let intervals = (1..=p.quotient().vertex_count())
        .map(|k| Some(Interval::new(lower.lambda(k).unwrap(), upper.lambda(k).unwrap_or(range.hi))))
        .collect();
    let report = BracketReport::build(intervals, vec![BracketMethod::Virtualisation], range);
    check_bracket_soundness(p, &report, SOUNDNESS_RESOLUTION)?;
    Ok(report)
}

/// Contracts `v1, v2` in the quotient. If the contracted Floquet graph `W̃` is
/// independent of `t`, then `W_t ≼₀ W̃ ≼₁ W_t` (standard weights) gives
/// `J_k = [λ_{k−1}(W̃), λ_k(W̃)]`, with `0` and `2ρ_∞` at the ends.
pub fn bracket_by_contraction(p: &PeriodicGraph, v1: VertexId, v2: VertexId) -> Result<BracketReport> {
    if p.quotient().kind() != WeightKind::Standard {
        return Err(Error::NotStandard);
    }
    let contracted = p.contract_vertices(v1, v2)?;
    let tilde = require_t_independent("contracted quotient", |t| spectrum(&contracted.floquet(t)))?;
    let range = spectral_range(p.quotient());
    let intervals = (1..=p.quotient().vertex_count())
        .map(|k| {
            let lo = if k == 1 { range.lo } else { tilde.lambda(k - 1).unwrap() };
            Some(Interval::new(lo, tilde.lambda(k).unwrap_or(range.hi)))
        })
        .collect();
    let report = BracketReport::build(intervals, vec![BracketMethod::Contraction], range);
    check_bracket_soundness(p, &report, SOUNDNESS_RESOLUTION)?;
    Ok(report)
}

/// The quotient is obtained from `split` by identifying `v1` and `v2`. If the
/// split Floquet graph `W'` is independent of `t`, then
/// `W' ≼₀ W_t ≼₁ W'` gives `J_k = [λ_k(W'), λ_{k+1}(W')]`.
pub fn bracket_by_splitting(split: &PeriodicGraph, v1: VertexId, v2: VertexId) -> Result<BracketReport> {
    if split.quotient().kind() != WeightKind::Standard {
        return Err(Error::NotStandard);
    }
    let quotient = split.contract_vertices(v1, v2)?;
    let prime = require_t_independent("split graph", |t| spectrum(&split.floquet(t)))?;
    let range = spectral_range(quotient.quotient());
    let intervals = (1..=quotient.quotient().vertex_count())
        .map(|k| Some(Interval::new(prime.lambda(k).unwrap(), prime.lambda(k + 1).unwrap())))
        .collect();
    let report = BracketReport::build(intervals, vec![BracketMethod::Splitting], range);
    check_bracket_soundness(&quotient, &report, SOUNDNESS_RESOLUTION)?;
    Ok(report)
}

/// Per-index intersection of reports over the same periodic graph.
pub fn intersect_brackets(reports: &[BracketReport]) -> Result<BracketReport> {
    let first = reports.first().ok_or_else(|| Error::InvalidInput("no bracket reports to intersect".into()))?;
    let n = first.intervals.len();
    let mut intervals = first.intervals.clone();
    let mut methods = first.methods.clone();
    let mut range = first.range;
    for r in &reports[1..] {
        if r.intervals.len() != n {
            return Err(Error::IndexCountMismatch(n, r.intervals.len()));
        }
        for (mine, theirs) in intervals.iter_mut().zip(&r.intervals) {
            *mine = match (*mine, theirs) {
                (Some(a), Some(b)) => a.intersect(b),
                _ => None,
            };
        }
        for m in &r.methods {
            if !methods.contains(m) {
                methods.push(*m);
            }
        }
        range = range.intersect(&r.range).unwrap_or(range);
    }
    Ok(BracketReport::build(intervals, methods, range))
}
