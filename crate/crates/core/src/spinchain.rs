//! The XX chain in its one-excitation sector: a Jacobi matrix with fields
//! `b_l` on the diagonal and couplings `J_l` next to it.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::m1hahn::RecurrenceData;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct SpinChain {
    couplings: Vec<f64>,
    fields: Vec<f64>,
}

impl SpinChain {
    /// `couplings[l - 1]` couples sites `l - 1` and `l`; there are `N` of
    /// them for `N + 1` fields.
    pub fn new(couplings: Vec<f64>, fields: Vec<f64>) -> Result<Self> {
        if fields.is_empty() || couplings.len() + 1 != fields.len() {
            return Err(Error::Domain(format!(
                "a chain with {} fields needs {} couplings, got {}",
                fields.len(),
                fields.len().saturating_sub(1),
                couplings.len()
            )));
        }
        if let Some(i) = couplings.iter().position(|j| !(*j > 0.0) || !j.is_finite()) {
            return Err(Error::NonPositiveCoupling { index: i + 1 });
        }
        if fields.iter().any(|b| !b.is_finite()) {
            return Err(Error::Domain("fields must be finite".into()));
        }
        Ok(SpinChain { couplings, fields })
    }

    /// `N`, the index of the last site.
    pub fn n(&self) -> usize {
        self.couplings.len()
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    /// Dense `(N+1) x (N+1)` Jacobi matrix.
    pub fn jacobi_matrix(&self) -> DMatrix<f64> {
        let size = self.fields.len();
        let mut m = DMatrix::zeros(size, size);
        for (i, b) in self.fields.iter().enumerate() {
            m[(i, i)] = *b;
        }
        for (i, j) in self.couplings.iter().enumerate() {
            m[(i, i + 1)] = *j;
            m[(i + 1, i)] = *j;
        }
        m
    }

    /// Infinity norm of the Jacobi matrix.
    pub fn norm_inf(&self) -> f64 {
        let n = self.n();
        (0..=n)
            .map(|i| {
                let left = if i > 0 { self.couplings[i - 1] } else { 0.0 };
                let right = if i < n { self.couplings[i] } else { 0.0 };
                self.fields[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }
}

/// Couplings `J_n = sqrt(u_n)` and fields `b_n` from recurrence data.
pub fn build_jacobi<T: Scalar>(r: &RecurrenceData<T>) -> Result<SpinChain> {
    let mut couplings = Vec::with_capacity(r.n());
    for (i, u) in r.interior_u().iter().enumerate() {
        if *u <= T::zero() {
            return Err(Error::NonPositiveCoupling { index: i + 1 });
        }
        couplings.push(u.to_f64().sqrt());
    }
    SpinChain::new(couplings, r.b().iter().map(Scalar::to_f64).collect())
}

/// `J_{N-n+1} = J_n` and `b_{N-n} = b_n` within `tol`, relative to the
/// largest coupling and to `1 + max |b|` respectively.
pub fn is_mirror_symmetric(c: &SpinChain, tol: f64) -> bool {
    let jmax = c.couplings.iter().fold(0.0_f64, |m, j| m.max(*j));
    let bmax = c.fields.iter().fold(0.0_f64, |m, b| m.max(b.abs()));
    let n = c.n();
    let couplings_ok = (0..n).all(|i| (c.couplings[i] - c.couplings[n - 1 - i]).abs() <= tol * jmax);
    let fields_ok = (0..=n).all(|i| (c.fields[i] - c.fields[n - i]).abs() <= tol * (1.0 + bmax));
    couplings_ok && fields_ok
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    /// An off-diagonal entry is deflated once `|e| <= deflation_tol * ||J||_inf`.
    pub deflation_tol: f64,
    /// QL sweeps allowed per eigenvalue.
    pub max_iterations: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            deflation_tol: 1e-14,
            max_iterations: 50,
        }
    }
}

/// Eigenvalues in ascending order with orthonormal eigenvectors in the
/// columns of `eigenvectors`, each scaled so that its first entry is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl SpectralDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len() - 1
    }

    /// `V_{0,s}^2`, the spectral measure seen from site 0. Sums to one.
    pub fn weights(&self) -> Vec<f64> {
        self.eigenvectors.row(0).iter().map(|v| v * v).collect()
    }

    /// `(e_N | e^{itJ} | e_0) = sum_s e^{i t x_s} V_{N,s} V_{0,s}`.
    pub fn amplitude(&self, t: f64) -> Complex64 {
        self.element(self.n(), 0, t)
    }

    /// `(e_row | e^{itJ} | e_col)`.
    pub fn element(&self, row: usize, col: usize, t: f64) -> Complex64 {
        let v = &self.eigenvectors;
        self.eigenvalues
            .iter()
            .enumerate()
            .map(|(s, x)| Complex64::from_polar(v[(row, s)] * v[(col, s)], t * x))
            .sum()
    }

    /// The full one-excitation propagator `e^{itJ} = V diag(e^{i t x}) V^T`.
    pub fn propagator(&self, t: f64) -> DMatrix<Complex64> {
        let size = self.eigenvalues.len();
        DMatrix::from_fn(size, size, |i, j| self.element(i, j, t))
    }
}

pub fn eigensystem(c: &SpinChain) -> Result<SpectralDecomposition> {
    eigensystem_with(c, EigenOptions::default())
}

/// Implicit-shift QL on the symmetric tridiagonal matrix, accumulating the
/// rotations into the eigenvector matrix.
pub fn eigensystem_with(c: &SpinChain, opts: EigenOptions) -> Result<SpectralDecomposition> {
    let n = c.fields.len();
    let mut d = c.fields.clone();
    // e[i] couples i and i + 1; e[n - 1] is padding
    let mut e = c.couplings.clone();
    e.push(0.0);
    let mut z = DMatrix::<f64>::identity(n, n);
    let tol = opts.deflation_tol * c.norm_inf();

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n && e[m].abs() > tol {
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == opts.max_iterations {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: iter,
                });
            }
            iter += 1;

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut cos, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = cos * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                cos = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * cos * b;
                p = s * r;
                d[i + 1] = g + p;
                g = cos * r - b;
                for k in 0..n {
                    let zk1 = z[(k, i + 1)];
                    let zk = z[(k, i)];
                    z[(k, i + 1)] = s * zk + cos * zk1;
                    z[(k, i)] = cos * zk - s * zk1;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let sign = if z[(0, src)] < 0.0 { -1.0 } else { 1.0 };
        for row in 0..n {
            eigenvectors[(row, col)] = sign * z[(row, src)];
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Spectral weights `V_{0,s}^2` over the ascending spectrum (unit sum).
pub fn spectral_weights(c: &SpinChain) -> Result<Vec<f64>> {
    let dec = eigensystem(c)?;
    if dec.eigenvalues.windows(2).any(|w| w[0] == w[1]) {
        let i = dec.eigenvalues.windows(2).position(|w| w[0] == w[1]).unwrap_or(0);
        return Err(Error::DegenerateSpectrum {
            first: i,
            second: i + 1,
        });
    }
    Ok(dec.weights())
}

/// `1 / |P'_{N+1}(x_s)|` normalised to unit sum. These are the spectral
/// weights of the unique mirror-symmetric chain with this spectrum.
pub fn reflection_weights(spectrum: &[f64]) -> Result<Vec<f64>> {
    let mut logs = Vec::with_capacity(spectrum.len());
    for (s, xs) in spectrum.iter().enumerate() {
        let mut acc = 0.0;
        for (t, xt) in spectrum.iter().enumerate() {
            if t == s {
                continue;
            }
            let diff = (xs - xt).abs();
            if diff == 0.0 {
                return Err(Error::DegenerateSpectrum {
                    first: s.min(t),
                    second: s.max(t),
                });
            }
            acc -= diff.ln();
        }
        logs.push(acc);
    }
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = logs.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|w| w / total).collect())
}

/// The weight form of mirror symmetry: the spectral weights are the
/// reflection weights and `|V_{N,s}| = |V_{0,s}|` for every level.
pub fn mirror_weight_condition(dec: &SpectralDecomposition, tol: f64) -> Result<bool> {
    let refl = reflection_weights(&dec.eigenvalues)?;
    let weights_ok = dec.weights().iter().zip(&refl).all(|(a, b)| (a - b).abs() <= tol);
    let n = dec.n();
    let ends_ok = (0..=n).all(|s| (dec.eigenvectors[(n, s)].abs() - dec.eigenvectors[(0, s)].abs()).abs() <= tol);
    Ok(weights_ok && ends_ok)
}

/// `(e_N | e^{itJ} | e_0)` for a single time.
pub fn transfer_amplitude(c: &SpinChain, t: f64) -> Result<Complex64> {
    Ok(eigensystem(c)?.amplitude(t))
}

/// Transfer amplitudes sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityTrace {
    pub times: Vec<f64>,
    pub amplitudes: Vec<Complex64>,
}

impl FidelityTrace {
    pub fn magnitudes(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm()).collect()
    }
}
