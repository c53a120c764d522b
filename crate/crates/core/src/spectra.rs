//! Magnetic Laplacians, their spectra, and shift relations between spectra.
//!
//! The Laplacian acts on `ℓ²(V, w)` by
//!
//! ```text
//! (Δφ)(v) = ρ(v) φ(v) − (1/w(v)) Σ_{e ∈ E_v} w_e e^{iα_e} φ(∂₊e)
//! ```
//!
//! and is self-adjoint for the weighted inner product. It is assembled as the
//! Hermitian matrix `W^{1/2} Δ W^{-1/2}`, which has the same spectrum.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{MWGraph, VertexId, WeightKind};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, CMatrix};

/// Default absolute tolerance for shift relations.
pub const SHIFT_TOL: f64 = 1e-9;

/// Relative tolerance for grouping equal eigenvalues in reports.
pub const MULTIPLICITY_TOL: f64 = 1e-8;

/// Hermitian matrix of an operator on vertex functions, with the square roots
/// of the vertex weights used to pass between `ℓ²(V, w)` and plain `ℂⁿ`.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    matrix: CMatrix,
    labels: Vec<VertexId>,
    sqrt_weights: Vec<f64>,
}

impl HermitianOperator {
    pub fn new(matrix: CMatrix, labels: Vec<VertexId>, weights: &[f64]) -> Self {
        assert_eq!(matrix.dim(), labels.len());
        assert_eq!(weights.len(), labels.len());
        let sqrt_weights = weights.iter().map(|w| w.sqrt()).collect();
        HermitianOperator { matrix, labels, sqrt_weights }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    /// Restriction to the listed basis positions (a principal submatrix).
    pub fn restrict(&self, keep: &[usize]) -> HermitianOperator {
        HermitianOperator {
            matrix: self.matrix.principal(keep),
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            sqrt_weights: keep.iter().map(|&i| self.sqrt_weights[i]).collect(),
        }
    }

    fn to_flat(&self, phi: &[Complex64]) -> Vec<Complex64> {
        phi.iter().zip(&self.sqrt_weights).map(|(p, s)| p * s).collect()
    }

    fn unflatten(&self, psi: &[Complex64]) -> Vec<Complex64> {
        psi.iter().zip(&self.sqrt_weights).map(|(p, s)| p / s).collect()
    }
}

/// Eigenvalues in ascending order, repeated by multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    tolerance: f64,
}

impl Spectrum {
    /// Wraps values, sorting them ascending.
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum { values, tolerance: MULTIPLICITY_TOL }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `λ_k` with `k` counted from one.
    pub fn lambda(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Groups nearly equal eigenvalues into `(value, multiplicity)` pairs. The
    /// reported value is the mean of its group. Used for reporting only.
    pub fn grouped(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &x in &self.values {
            match out.last_mut() {
                Some((first, count, total)) if (x - *first).abs() <= self.tolerance * first.abs().max(1.0) => {
                    *count += 1;
                    *total += x;
                }
                _ => out.push((x, 1, x)),
            }
        }
        out.into_iter().map(|(_, c, t)| (t / c as f64, c)).collect()
    }

    /// Number of eigenvalues within `tol` of `x`.
    pub fn multiplicity_of(&self, x: f64, tol: f64) -> usize {
        self.values.iter().filter(|&&v| (v - x).abs() <= tol).count()
    }
}

/// Outcome of testing `Λ ≼_r Λ'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftRelation {
    pub r: usize,
    pub holds: bool,
    /// First index `k` (counted from one) with `λ_k > λ'_{k+r} + tol`.
    pub witness_index: Option<usize>,
    pub tolerance: f64,
}

/// Tests `Λ ≼_r Λ'`: `|Λ| + r ≥ |Λ'|` and `λ_k ≤ λ'_{k+r}` for `1 ≤ k ≤ |Λ'| − r`.
pub fn shift_less(a: &Spectrum, b: &Spectrum, r: usize, tol: f64) -> ShiftRelation {
    let mut rel = ShiftRelation { r, holds: a.len() + r >= b.len(), witness_index: None, tolerance: tol };
    if !rel.holds {
        return rel;
    }
    for k in 1..=b.len().saturating_sub(r) {
        if a.values[k - 1] > b.values[k - 1 + r] + tol {
            rel.holds = false;
            rel.witness_index = Some(k);
            break;
        }
    }
    rel
}

/// Variant accepting a signed shift as typed by a user.
pub fn shift_less_checked(a: &Spectrum, b: &Spectrum, r: i64, tol: f64) -> Result<ShiftRelation> {
    if r < 0 {
        return Err(Error::NegativeShift(r));
    }
    Ok(shift_less(a, b, r as usize, tol))
}

/// Smallest `r` with `Λ ≼_r Λ'`. Always exists: `r = |Λ'|` holds vacuously.
pub fn minimal_shift(a: &Spectrum, b: &Spectrum, tol: f64) -> usize {
    (0..=b.len()).find(|&r| shift_less(a, b, r, tol).holds).unwrap_or(b.len())
}

pub fn is_isospectral(a: &Spectrum, b: &Spectrum, tol: f64) -> bool {
    a.len() == b.len() && a.values.iter().zip(&b.values).all(|(x, y)| (x - y).abs() <= tol)
}

/// Assembles `W^{1/2} Δ_α W^{-1/2}`.
pub fn assemble_laplacian(g: &MWGraph) -> Result<HermitianOperator> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let weights: Vec<f64> = g.vertices().iter().map(|v| v.weight).collect();
    let mut m = CMatrix::zeros(n);
    for e in g.edges() {
        let i = g.vertex_index(e.src).unwrap();
        let j = g.vertex_index(e.dst).unwrap();
        if i == j {
            m[(i, i)] += Complex64::new((2.0 - 2.0 * e.alpha.cos()) * e.weight / weights[i], 0.0);
            continue;
        }
        m[(i, i)] += Complex64::new(e.weight / weights[i], 0.0);
        m[(j, j)] += Complex64::new(e.weight / weights[j], 0.0);
        let c = Complex64::from_polar(e.weight / (weights[i] * weights[j]).sqrt(), e.alpha);
        m[(i, j)] -= c;
        m[(j, i)] -= c.conj();
    }
    Ok(HermitianOperator::new(m, g.vertex_ids().collect(), &weights))
}

pub fn eigenvalues(op: &HermitianOperator) -> Result<Spectrum> {
    hermitian_eigenvalues(op.matrix()).map(Spectrum::new)
}

/// Spectrum of the Laplacian of `g`.
pub fn spectrum(g: &MWGraph) -> Result<Spectrum> {
    eigenvalues(&assemble_laplacian(g)?)
}

/// Eigenvalues with eigenfunctions in `ℓ²(V, w)`, each of unit weighted norm.
pub fn eigenpairs(op: &HermitianOperator) -> Result<(Spectrum, Vec<Vec<Complex64>>)> {
    let eig = hermitian_eigen(op.matrix(), true)?;
    let vectors = eig.vectors.unwrap();
    let functions = (0..op.dim()).map(|k| op.unflatten(&vectors.column(k))).collect();
    Ok((Spectrum::new(eig.values), functions))
}

/// `⟨Aφ, φ⟩ / ⟨φ, φ⟩` in the weighted inner product.
pub fn rayleigh_quotient(op: &HermitianOperator, phi: &[Complex64]) -> Result<f64> {
    if phi.len() != op.dim() {
        return Err(Error::InvalidInput(format!("vector of length {} for dimension {}", phi.len(), op.dim())));
    }
    let psi = op.to_flat(phi);
    let denom: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if denom == 0.0 {
        return Err(Error::ZeroVector);
    }
    let apsi = op.matrix().mul_vec(&psi);
    let num: Complex64 = apsi.iter().zip(&psi).map(|(a, p)| a * p.conj()).sum();
    Ok(num.re / denom)
}

/// Randomized check of the min-max characterisation of `λ_k`.
///
/// Checks, for `samples` random vectors each, that Rayleigh quotients on the
/// span of the first `k` eigenfunctions stay below `λ_k`, that those on the span
/// of the last `n − k + 1` stay above it, and that the maximum of the quotient
/// over a random `k`-dimensional subspace is at least `λ_k`.
pub fn min_max_check(op: &HermitianOperator, k: usize, samples: usize, seed: u64) -> Result<bool> {
    let n = op.dim();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let (spec, funcs) = eigenpairs(op)?;
    let lambda = spec.values()[k - 1];
    let tol = 1e-9 * op.matrix().norm_inf().max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let combine = |coeffs: &[Complex64], basis: &[Vec<Complex64>]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (c, f) in coeffs.iter().zip(basis) {
            for (o, x) in out.iter_mut().zip(f) {
                *o += c * x;
            }
        }
        out
    };

    for _ in 0..samples {
        let low: Vec<Complex64> = (0..k).map(|_| sample(&mut rng)).collect();
        if rayleigh_quotient(op, &combine(&low, &funcs[..k]))? > lambda + tol {
            return Ok(false);
        }
        let high: Vec<Complex64> = (k - 1..n).map(|_| sample(&mut rng)).collect();
        if rayleigh_quotient(op, &combine(&high, &funcs[k - 1..]))? < lambda - tol {
            return Ok(false);
        }
        // Max of the quotient over a random k-dimensional subspace S equals the
        // top eigenvalue of the compression of the flat matrix to S.
        let basis: Vec<Vec<Complex64>> =
            (0..k).map(|_| (0..n).map(|_| sample(&mut rng)).collect()).collect();
        let onb = gram_schmidt(basis);
        if onb.len() == k {
            let mut comp = CMatrix::zeros(k);
            for (a, u) in onb.iter().enumerate() {
                let au = op.matrix().mul_vec(u);
                for (b, w) in onb.iter().enumerate() {
                    comp[(b, a)] = w.iter().zip(&au).map(|(x, y)| x.conj() * y).sum();
                }
            }
            for a in 0..k {
                for b in a + 1..k {
                    let avg = (comp[(a, b)] + comp[(b, a)].conj()) * 0.5;
                    comp[(a, b)] = avg;
                    comp[(b, a)] = avg.conj();
                }
                comp[(a, a)] = Complex64::new(comp[(a, a)].re, 0.0);
            }
            let top = *hermitian_eigenvalues(&comp)?.last().unwrap();
            if top < lambda - tol {
                return Ok(false);
            }
        }
    }
    Ok((rayleigh_quotient(op, &funcs[k - 1])? - lambda).abs() <= tol)
}

fn sample(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
}

fn gram_schmidt(vectors: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for mut v in vectors {
        for u in &out {
            let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-10 {
            out.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    out
}

/// Number of spanning trees, `(1/n) Π_{i ≥ 2} λ_i`, as a real number.
pub fn spanning_tree_count(g: &MWGraph) -> Result<f64> {
    if g.kind() != WeightKind::Combinatorial {
        return Err(Error::NotCombinatorial);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !g.has_zero_potential() {
        return Err(Error::NonzeroPotential);
    }
    let spec = spectrum(g)?;
    Ok(spec.values()[1..].iter().product::<f64>() / spec.len() as f64)
}

/// Matrix of the magnetic exterior derivative, one row per edge record:
/// `(d_α φ)(e) = e^{iα_e/2} φ(∂₊e) − e^{−iα_e/2} φ(∂₋e)`.
///
/// With the edge weights as row weights, `‖d_α φ‖² = ⟨Δ_α φ, φ⟩` in `ℓ²(V, w)`.
pub fn exterior_derivative(g: &MWGraph) -> (Vec<Vec<Complex64>>, Vec<f64>) {
    let n = g.vertex_count();
    let mut rows = Vec::with_capacity(g.edge_count());
    let mut weights = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let mut row = vec![Complex64::new(0.0, 0.0); n];
        let half = Complex64::from_polar(1.0, e.alpha / 2.0);
        row[g.vertex_index(e.dst).unwrap()] += half;
        row[g.vertex_index(e.src).unwrap()] -= half.conj();
        rows.push(row);
        weights.push(e.weight);
    }
    (rows, weights)
}

/// Algebraic connectivity `λ₂`, if the graph has two vertices.
pub fn algebraic_connectivity(g: &MWGraph) -> Result<Option<f64>> {
    Ok(spectrum(g)?.lambda(2))
}
