//! Slow reference implementations used as oracles.

use std::f64::consts::PI;

use magspec::graph::{MWGraph, WeightKind};
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All connected simple graphs on `n` vertices up to isomorphism, as edge lists.
pub fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p).collect();
        if !connected(n, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u32;
                for &(a, b) in &edges {
                    let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                    m |= 1 << pairs.iter().position(|&q| q == (x, y)).unwrap();
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(edges);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|s| *s)
}

/// Simple graph with edges `(src, dst, weight, alpha)` and vertex weights.
#[derive(Debug, Clone)]
pub struct Plain {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64, f64)>,
    pub weights: Vec<f64>,
}

impl Plain {
    pub fn of(g: &MWGraph) -> Plain {
        let idx = |v| g.vertex_index(v).unwrap();
        Plain {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|e| (idx(e.src), idx(e.dst), e.weight, e.alpha)).collect(),
            weights: g.vertices().iter().map(|v| v.weight).collect(),
        }
    }
}

/// Builds the variants used for oracle comparisons: combinatorial and standard
/// weights with zero potential, both with a random signing, and random custom
/// weights with a random signing.
pub fn variants(n: usize, edges: &[(usize, usize)], rng: &mut ChaCha8Rng) -> Vec<MWGraph> {
    let mut out = Vec::new();
    for kind in [WeightKind::Combinatorial, WeightKind::Standard, WeightKind::Custom] {
        for signed in [false, true] {
            if kind == WeightKind::Custom && !signed {
                continue;
            }
            let mut b = MWGraph::builder(kind);
            for v in 0..n as u32 {
                b = if kind == WeightKind::Custom { b.weighted_vertex(v, rng.random_range(0.5..2.0)) } else { b.vertex(v) };
            }
            for &(s, d) in edges {
                let alpha = if signed && rng.random_bool(0.5) { PI } else { 0.0 };
                let w = if kind == WeightKind::Custom { rng.random_range(0.5..2.0) } else { 1.0 };
                b = b.weighted_edge(s as u32, d as u32, w, alpha);
            }
            out.push(b.build().unwrap());
        }
    }
    out
}

fn edge_term(tau_src: f64, tau_dst: f64, alpha: f64) -> f64 {
    let z = num_complex::Complex64::from_polar(1.0, tau_dst) - num_complex::Complex64::from_polar(1.0, tau_src - alpha);
    z.norm()
}

/// Frustration of the subgraph induced on `set`, by enumerating `{0, π}^set`.
pub fn naive_set_frustration(p: &Plain, set: u32) -> f64 {
    let members: Vec<usize> = (0..p.n).filter(|v| set >> v & 1 == 1).collect();
    let mut best = f64::INFINITY;
    for choice in 0u32..(1 << members.len()) {
        let mut tau = vec![0.0; p.n];
        for (i, &v) in members.iter().enumerate() {
            if choice >> i & 1 == 1 {
                tau[v] = PI;
            }
        }
        let mut total = 0.0;
        for &(s, d, w, a) in &p.edges {
            if set >> s & 1 == 1 && set >> d & 1 == 1 {
                total += w * edge_term(tau[s], tau[d], a);
            }
        }
        best = best.min(total);
    }
    best
}

pub fn naive_set_value(p: &Plain, set: u32) -> f64 {
    let mut boundary = 0.0;
    for &(s, d, w, _) in &p.edges {
        if (set >> s & 1) != (set >> d & 1) {
            boundary += w;
        }
    }
    let weight: f64 = (0..p.n).filter(|v| set >> v & 1 == 1).map(|v| p.weights[v]).sum();
    (naive_set_frustration(p, set) + boundary) / weight
}

/// `h_k` by trying every labelling of the vertices with `0..=k`, where label 0
/// means "in no block". Only signed potentials are supported.
pub fn naive_cheeger(p: &Plain, k: usize) -> f64 {
    let values: Vec<f64> = (0..1u32 << p.n).map(|s| if s == 0 { f64::NAN } else { naive_set_value(p, s) }).collect();
    let mut best = f64::INFINITY;
    let total = (k + 1).pow(p.n as u32);
    for code in 0..total {
        let mut blocks = vec![0u32; k];
        let mut c = code;
        for v in 0..p.n {
            let label = c % (k + 1);
            c /= k + 1;
            if label > 0 {
                blocks[label - 1] |= 1 << v;
            }
        }
        if blocks.contains(&0) {
            continue;
        }
        let worst = blocks.iter().map(|b| values[*b as usize]).fold(f64::NEG_INFINITY, f64::max);
        best = best.min(worst);
    }
    best
}

/// Eigenvalues of `W^{1/2} Δ W^{-1/2}` assembled from scratch and solved by
/// nalgebra through the real symmetric form `[[A, −B], [B, A]]` of `A + iB`.
pub fn nalgebra_spectrum(p: &Plain) -> Vec<f64> {
    let n = p.n;
    let mut re = DMatrix::<f64>::zeros(n, n);
    let mut im = DMatrix::<f64>::zeros(n, n);
    for &(s, d, w, a) in &p.edges {
        if s == d {
            re[(s, s)] += (2.0 - 2.0 * a.cos()) * w / p.weights[s];
            continue;
        }
        re[(s, s)] += w / p.weights[s];
        re[(d, d)] += w / p.weights[d];
        let scale = w / (p.weights[s] * p.weights[d]).sqrt();
        re[(s, d)] -= scale * a.cos();
        im[(s, d)] -= scale * a.sin();
        re[(d, s)] -= scale * a.cos();
        im[(d, s)] += scale * a.sin();
    }
    let mut big = DMatrix::<f64>::zeros(2 * n, 2 * n);
    big.view_mut((0, 0), (n, n)).copy_from(&re);
    big.view_mut((n, n), (n, n)).copy_from(&re);
    big.view_mut((0, n), (n, n)).copy_from(&(-&im));
    big.view_mut((n, 0), (n, n)).copy_from(&im);
    let mut ev: Vec<f64> = big.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev.into_iter().step_by(2).collect()
}
