//! Monic orthogonal polynomials generated by a three-term recurrence.
//!
//! Evaluation is pointwise (no symbolic polynomial algebra). The module also
//! holds the two spectral-surgery tools: the Christoffel transform, which
//! removes an extreme level from the spectrum, and the discrete Stieltjes
//! procedure, which recovers recurrence data from a spectrum and weights.

use crate::error::{Error, Result};
use crate::m1hahn::{mu_number, BannaiItoGrid, RecurrenceData, WeightTable};
use crate::scalar::{Rational, Scalar};

/// `P_0(x), P_1(x), ..., P_{N+1}(x)` by forward recurrence.
pub fn evaluate_monic_sequence<T: Scalar>(r: &RecurrenceData<T>, x: &T) -> Vec<T> {
    let n = r.n();
    let mut values = Vec::with_capacity(n + 2);
    let mut prev = T::zero();
    let mut cur = T::one();
    values.push(cur.clone());
    for k in 0..=n {
        let next = (x.clone() - r.b()[k].clone()) * cur.clone() - r.u()[k].clone() * prev;
        prev = cur;
        cur = next;
        values.push(cur.clone());
    }
    values
}

/// `P'_{N+1}(x_s) = prod_{t != s} (x_s - x_t)`.
pub fn characteristic_derivative<T: Scalar>(spectrum: &[T], s: usize) -> Result<T> {
    if s >= spectrum.len() {
        return Err(Error::Domain(format!("index {s} outside spectrum of length {}", spectrum.len())));
    }
    let mut acc = T::one();
    for (t, x) in spectrum.iter().enumerate() {
        if t == s {
            continue;
        }
        let diff = spectrum[s].clone() - x.clone();
        if diff.is_zero() {
            return Err(Error::DegenerateSpectrum {
                first: s.min(t),
                second: s.max(t),
            });
        }
        acc = acc * diff;
    }
    Ok(acc)
}

/// Table of `P_n(x_s)` for `n = 0..=N+1` (rows) over a set of points (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialTableau<T = Rational> {
    values: Vec<Vec<T>>,
}

impl<T: Scalar> PolynomialTableau<T> {
    pub fn new(r: &RecurrenceData<T>, points: &[T]) -> Self {
        let columns: Vec<Vec<T>> = points.iter().map(|x| evaluate_monic_sequence(r, x)).collect();
        let values = (0..r.n() + 2)
            .map(|n| columns.iter().map(|col| col[n].clone()).collect())
            .collect();
        PolynomialTableau { values }
    }

    /// `P_n` evaluated at every point.
    pub fn row(&self, n: usize) -> &[T] {
        &self.values[n]
    }

    pub fn get(&self, n: usize, s: usize) -> &T {
        &self.values[n][s]
    }

    pub fn degrees(&self) -> usize {
        self.values.len()
    }
}

/// Gram matrix of `P_0..P_N` under a discrete measure, against the target
/// `diag(kappa_0 h_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport<T = Rational> {
    pub gram: Vec<Vec<T>>,
    pub targets: Vec<T>,
    /// Diagonal: `|G_nn - t_n| / t_n`. Off-diagonal: `|G_nm| / sqrt(t_n t_m)`.
    pub max_relative_residual: f64,
}

impl<T: Scalar> OrthogonalityReport<T> {
    /// True when the Gram matrix equals the target exactly.
    pub fn is_exact(&self) -> bool {
        self.gram.iter().enumerate().all(|(n, row)| {
            row.iter().enumerate().all(|(m, g)| {
                if n == m {
                    *g == self.targets[n]
                } else {
                    g.is_zero()
                }
            })
        })
    }
}

pub fn verify_orthogonality<T: Scalar>(
    r: &RecurrenceData<T>,
    grid: &BannaiItoGrid<T>,
    weights: &WeightTable<T>,
) -> Result<OrthogonalityReport<T>> {
    let n = r.n();
    if grid.points().len() != n + 1 || weights.w.len() != n + 1 {
        return Err(Error::Domain(format!(
            "size mismatch: recurrence has {} sites, grid {}, weights {}",
            n + 1,
            grid.points().len(),
            weights.w.len()
        )));
    }
    let tableau = PolynomialTableau::new(r, grid.points());
    let targets: Vec<T> = (0..=n).map(|k| weights.kappa0.clone() * r.norm(k)).collect();
    let mut gram = vec![vec![T::zero(); n + 1]; n + 1];
    let mut worst = 0.0_f64;
    for a in 0..=n {
        for b in a..=n {
            let g = (0..=n).fold(T::zero(), |acc, s| {
                acc + weights.w[s].clone() * tableau.get(a, s).clone() * tableau.get(b, s).clone()
            });
            let residual = if a == b {
                ((g.clone() - targets[a].clone()) / targets[a].clone()).abs().to_f64()
            } else {
                let scale = (targets[a].to_f64() * targets[b].to_f64()).sqrt();
                if g.is_zero() {
                    0.0
                } else {
                    g.abs().to_f64() / scale
                }
            };
            worst = worst.max(residual);
            gram[a][b] = g.clone();
            gram[b][a] = g;
        }
    }
    Ok(OrthogonalityReport {
        gram,
        targets,
        max_relative_residual: worst,
    })
}

/// Result of removing one extreme level by a Christoffel transform.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelData<T = Rational> {
    /// `K_n = P_{n+1}(x_r) / P_n(x_r)`, `n = 0..=N`.
    pub k: Vec<T>,
    pub removed_level: T,
    /// Recurrence of the chain with one site fewer.
    pub transformed: RecurrenceData<T>,
}

/// Removes `spectrum[level]` from the spectral measure of `r`. Only the
/// smallest (`level == 0`) or largest (`level == N`) level may be removed.
///
/// `u~_n = u_n K_n / K_{n-1}` and `b~_n = b_{n+1} + K_{n+1} - K_n`.
pub fn christoffel_transform<T: Scalar>(
    r: &RecurrenceData<T>,
    spectrum: &[T],
    level: usize,
) -> Result<ChristoffelData<T>> {
    let n = r.n();
    if spectrum.len() != n + 1 {
        return Err(Error::Domain(format!(
            "spectrum has {} points, chain has {} sites",
            spectrum.len(),
            n + 1
        )));
    }
    if n == 0 {
        return Err(Error::Domain("cannot remove the only level of a one-site chain".into()));
    }
    if level != 0 && level != n {
        return Err(Error::UnsupportedRemoval { index: level });
    }
    if spectrum.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("spectrum must be strictly increasing".into()));
    }
    let removed = spectrum[level].clone();
    let p = evaluate_monic_sequence(r, &removed);
    let mut k = Vec::with_capacity(n + 1);
    for deg in 0..=n {
        if p[deg].is_zero() {
            return Err(Error::SingularTransform { degree: deg });
        }
        k.push(p[deg + 1].clone() / p[deg].clone());
    }
    let b: Vec<T> = (0..n)
        .map(|i| r.b()[i + 1].clone() + k[i + 1].clone() - k[i].clone())
        .collect();
    let interior: Vec<T> = (1..n)
        .map(|i| r.u()[i].clone() * k[i].clone() / k[i - 1].clone())
        .collect();
    Ok(ChristoffelData {
        k,
        removed_level: removed,
        transformed: RecurrenceData::from_interior(b, interior)?,
    })
}

/// `K_n = 2 [N - n]_{alpha/2}` for the odd-N mirror-symmetric chain when its
/// largest level is removed.
pub fn christoffel_k_closed_form<T: Scalar>(big_n: usize, alpha: &T, n: usize) -> Result<T> {
    if big_n % 2 == 0 {
        return Err(Error::Domain(format!("closed-form K_n needs odd N, got {big_n}")));
    }
    if n > big_n {
        return Err(Error::Domain(format!("K_n index {n} outside 0..={big_n}")));
    }
    let mu = alpha.clone() * T::half();
    Ok(mu_number((big_n - n) as i64, &mu)? * T::from_i64(2))
}

/// Recurrence coefficients of the discrete measure `sum_s weights[s] delta(x - spectrum[s])`.
///
/// Runs the Stieltjes iteration in an orthonormal polynomial basis: vectors
/// `q_n(x_s) sqrt(w_s)` are kept at unit norm and fully re-orthogonalised
/// against the previous ones, which keeps the iteration accurate up to
/// `n = N`. Output is in monic form (`u_n = ||p_n||^2 / ||p_{n-1}||^2`).
pub fn stieltjes_reconstruct(spectrum: &[f64], weights: &[f64]) -> Result<RecurrenceData<f64>> {
    let len = spectrum.len();
    if len == 0 || weights.len() != len {
        return Err(Error::Domain(format!(
            "need matching non-empty spectrum and weights, got {} and {}",
            len,
            weights.len()
        )));
    }
    if weights.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
        return Err(Error::Domain("weights must be positive and finite".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::Domain(format!("weights must sum to 1, got {total}")));
    }
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| spectrum[a].total_cmp(&spectrum[b]));
    for w in order.windows(2) {
        if spectrum[w[0]] == spectrum[w[1]] {
            return Err(Error::DegenerateSpectrum {
                first: w[0].min(w[1]),
                second: w[0].max(w[1]),
            });
        }
    }

    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let sqrt_w: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(len);
    let mut b = Vec::with_capacity(len);
    let mut u = vec![0.0];
    basis.push(sqrt_w.clone());
    let total_mass = dot(&sqrt_w, &sqrt_w).sqrt();
    basis[0].iter_mut().for_each(|v| *v /= total_mass);

    for n in 0..len {
        let q = &basis[n];
        let xq: Vec<f64> = q.iter().zip(spectrum).map(|(v, x)| v * x).collect();
        let bn = dot(&xq, q);
        b.push(bn);
        if n + 1 == len {
            break;
        }
        let mut next: Vec<f64> = xq;
        for prev in &basis {
            let c = dot(&next, prev);
            next.iter_mut().zip(prev).for_each(|(v, p)| *v -= c * p);
        }
        // second pass keeps orthogonality at the level of round-off
        for prev in &basis {
            let c = dot(&next, prev);
            next.iter_mut().zip(prev).for_each(|(v, p)| *v -= c * p);
        }
        let norm2 = dot(&next, &next);
        let scale = spectrum.iter().fold(0.0_f64, |m, x| m.max(x.abs())).max(1.0);
        if !(norm2 > (1e-13 * scale).powi(2)) {
            return Err(Error::IllConditionedMeasure { degree: n + 1 });
        }
        u.push(norm2);
        let norm = norm2.sqrt();
        next.iter_mut().for_each(|v| *v /= norm);
        basis.push(next);
    }
    u.push(0.0);
    RecurrenceData::new(b, u)
}
