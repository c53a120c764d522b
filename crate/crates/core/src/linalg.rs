//! Dense complex matrices and a Hermitian eigensolver.
//!
//! The solver reduces the matrix to real symmetric tridiagonal form with
//! complex Householder reflections followed by a diagonal phase change, then
//! runs implicit QL iterations with Wilkinson shifts. Eigenvectors are
//! accumulated on request.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; `data.len()` must be `n²`.
    pub fn from_rows(n: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), n * n, "matrix data has wrong length");
        CMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest absolute row sum; an upper bound for the spectral norm.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `max |a_ij − conj(a_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Principal submatrix on the given rows and columns.
    pub fn principal(&self, keep: &[usize]) -> CMatrix {
        let k = keep.len();
        let mut out = CMatrix::zeros(k);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Eigenvalues in ascending order and, if requested, orthonormal eigenvectors
/// as the columns of a matrix.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Option<CMatrix>,
}

/// Relative tolerance for the Hermitian input check.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigen-decomposition of a Hermitian matrix.
pub fn hermitian_eigen(a: &CMatrix, want_vectors: bool) -> Result<Eigen> {
    let n = a.dim();
    let scale = a.norm_inf().max(1.0);
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(defect));
    }
    if n == 0 {
        return Ok(Eigen { values: Vec::new(), vectors: want_vectors.then(|| CMatrix::zeros(0)) });
    }

    let (mut d, mut e, q, phases) = tridiagonalize(a, want_vectors);
    let mut z = want_vectors.then(|| vec![vec![0.0; n]; n]);
    if let Some(z) = z.as_mut() {
        for (i, row) in z.iter_mut().enumerate() {
            row[i] = 1.0;
        }
    }
    tql(&mut d, &mut e, z.as_mut())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();

    let vectors = match (z, q) {
        (Some(z), Some(q)) => {
            // Columns of Q·D·Z, with D the diagonal phase matrix.
            let mut v = CMatrix::zeros(n);
            for (col, &k) in order.iter().enumerate() {
                for i in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (l, zrow) in z.iter().enumerate() {
                        acc += q[(i, l)] * phases[l] * zrow[k];
                    }
                    v[(i, col)] = acc;
                }
            }
            Some(v)
        }
        _ => None,
    };
    Ok(Eigen { values, vectors })
}

/// Eigenvalues only.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(a, false).map(|e| e.values)
}

type Tridiagonal = (Vec<f64>, Vec<f64>, Option<CMatrix>, Vec<Complex64>);

/// Householder reduction `Qᴴ A Q = T`, followed by a unitary diagonal `D`
/// making `Dᴴ T D` real. Returns the diagonal, the off-diagonal (padded with a
/// trailing zero), `Q` if requested, and the diagonal of `D`.
fn tridiagonalize(a: &CMatrix, want_q: bool) -> Tridiagonal {
    let n = a.dim();
    let mut m = a.clone();
    let mut q = want_q.then(|| CMatrix::identity(n));
    let zero = Complex64::new(0.0, 0.0);

    for k in 0..n.saturating_sub(2) {
        let tail_norm: f64 = (k + 2..n).map(|i| m[(i, k)].norm_sqr()).sum::<f64>();
        if tail_norm == 0.0 {
            continue;
        }
        let x0 = m[(k + 1, k)];
        let alpha = (tail_norm + x0.norm_sqr()).sqrt();
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        // v = x + phase·‖x‖·e₁ on indices k+1..n, so that H x = −phase‖x‖e₁.
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| m[(i, k)]).collect();
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vnorm2;

        // Left multiplication by H = I − β v vᴴ on rows k+1..n.
        for j in k..n {
            let mut s = zero;
            for (t, vi) in v.iter().enumerate() {
                s += vi.conj() * m[(k + 1 + t, j)];
            }
            s *= beta;
            for (t, vi) in v.iter().enumerate() {
                m[(k + 1 + t, j)] -= vi * s;
            }
        }
        // Right multiplication by H on columns k+1..n.
        for i in k..n {
            let mut s = zero;
            for (t, vj) in v.iter().enumerate() {
                s += m[(i, k + 1 + t)] * vj;
            }
            s *= beta;
            for (t, vj) in v.iter().enumerate() {
                m[(i, k + 1 + t)] -= s * vj.conj();
            }
        }
        if let Some(q) = q.as_mut() {
            for i in 0..n {
                let mut s = zero;
                for (t, vj) in v.iter().enumerate() {
                    s += q[(i, k + 1 + t)] * vj;
                }
                s *= beta;
                for (t, vj) in v.iter().enumerate() {
                    q[(i, k + 1 + t)] -= s * vj.conj();
                }
            }
        }
    }

    let d: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for k in 0..n - 1 {
        let c = m[(k + 1, k)];
        let r = c.norm();
        e[k] = r;
        phases[k + 1] = if r == 0.0 { phases[k] } else { phases[k] * (c / r) };
    }
    (d, e, q, phases)
}

/// Implicit QL with Wilkinson shifts on a real symmetric tridiagonal matrix.
/// `e[i]` couples rows `i` and `i+1`. Rotations are accumulated into `z`.
fn tql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut Vec<Vec<f64>>>) -> Result<()> {
    let n = d.len();
    const MAX_SWEEPS: usize = 60;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m] == 0.0 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::ConvergenceFailure);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for row in z.iter_mut() {
                        let f = row[i + 1];
                        row[i + 1] = s * row[i] + c * f;
                        row[i] = c * row[i] - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn residual(a: &CMatrix, eig: &Eigen) -> f64 {
        let v = eig.vectors.as_ref().unwrap();
        let mut worst: f64 = 0.0;
        for (k, &lambda) in eig.values.iter().enumerate() {
            let x = v.column(k);
            let ax = a.mul_vec(&x);
            let r: f64 = ax.iter().zip(&x).map(|(p, q)| (p - q * lambda).norm_sqr()).sum::<f64>().sqrt();
            worst = worst.max(r);
        }
        worst
    }

    #[test]
    fn two_by_two_laplacian() {
        let a = CMatrix::from_rows(2, vec![c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]);
        let vals = hermitian_eigenvalues(&a).unwrap();
        assert!((vals[0]).abs() < 1e-14 && (vals[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn complex_entries_and_residuals() {
        let a = CMatrix::from_rows(
            3,
            vec![
                c(2.0, 0.0),
                c(0.0, -1.0),
                c(0.5, 0.5),
                c(0.0, 1.0),
                c(3.0, 0.0),
                c(-1.0, 0.25),
                c(0.5, -0.5),
                c(-1.0, -0.25),
                c(1.0, 0.0),
            ],
        );
        let eig = hermitian_eigen(&a, true).unwrap();
        assert!(residual(&a, &eig) < 1e-12);
        let trace: f64 = eig.values.iter().sum();
        assert!((trace - 6.0).abs() < 1e-12);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = CMatrix::from_rows(2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(hermitian_eigen(&a, false), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn diagonal_and_empty() {
        let mut a = CMatrix::zeros(3);
        a[(0, 0)] = c(3.0, 0.0);
        a[(1, 1)] = c(-1.0, 0.0);
        a[(2, 2)] = c(2.0, 0.0);
        assert_eq!(hermitian_eigenvalues(&a).unwrap(), vec![-1.0, 2.0, 3.0]);
        assert!(hermitian_eigenvalues(&CMatrix::zeros(0)).unwrap().is_empty());
    }

    #[test]
    fn vectors_are_orthonormal() {
        let n = 6;
        let mut a = CMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let z = c(((i * 7 + j * 3) % 5) as f64 - 2.0, if i == j { 0.0 } else { ((i + 2 * j) % 3) as f64 - 1.0 });
                a[(i, j)] = z;
                a[(j, i)] = z.conj();
            }
        }
        let eig = hermitian_eigen(&a, true).unwrap();
        let v = eig.vectors.as_ref().unwrap();
        for p in 0..n {
            for q in 0..n {
                let dot: Complex64 = (0..n).map(|i| v[(i, p)].conj() * v[(i, q)]).sum();
                let want = if p == q { 1.0 } else { 0.0 };
                assert!((dot - c(want, 0.0)).norm() < 1e-12);
            }
        }
        assert!(residual(&a, &eig) < 1e-12 * a.norm_inf());
    }
}
