//! Closed-form data of the dual -1 Hahn polynomials: mu-numbers, recurrence
//! coefficients for both parities of `N`, Bannai-Ito grids, discrete weights
//! and the positivity domain.
//!
//! All formulas are generic over [`Scalar`], so they evaluate exactly for
//! rational parameters and in `f64` otherwise.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The triple `(N, alpha, beta)`; the chain has `N + 1` sites.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainParameters<T = Rational> {
    n: usize,
    alpha: T,
    beta: T,
}

impl<T: Scalar> ChainParameters<T> {
    pub fn new(n: usize, alpha: T, beta: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("N must be at least 1".into()));
        }
        Ok(ChainParameters { n, alpha, beta })
    }

    /// Mirror-symmetric parameters `alpha = beta`.
    pub fn symmetric(n: usize, alpha: T) -> Result<Self> {
        Self::new(n, alpha.clone(), alpha)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn beta(&self) -> &T {
        &self.beta
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.n)
    }

    fn big_n(&self) -> T {
        T::from_i64(self.n as i64)
    }

    /// `xi` of the compact mu-number form: `(beta - N - 1)/2` for even N,
    /// `alpha/2` for odd N.
    pub fn xi(&self) -> T {
        match self.parity() {
            Parity::Even => (self.beta.clone() - self.big_n() - T::one()) * T::half(),
            Parity::Odd => self.alpha.clone() * T::half(),
        }
    }

    /// `eta`: `(alpha - N - 1)/2` for even N, `beta/2` for odd N.
    pub fn eta(&self) -> T {
        match self.parity() {
            Parity::Even => (self.alpha.clone() - self.big_n() - T::one()) * T::half(),
            Parity::Odd => self.beta.clone() * T::half(),
        }
    }

    /// Offsets `(eps1, eps2)` from the edge of the positivity domain:
    /// `alpha = N + eps1` (even N) or `alpha = -1 + eps1` (odd N).
    pub fn epsilons(&self) -> (T, T) {
        let edge = match self.parity() {
            Parity::Even => self.big_n(),
            Parity::Odd => -T::one(),
        };
        (self.alpha.clone() - edge.clone(), self.beta.clone() - edge)
    }

    /// `delta = eps1 + eps2`, half the gap between the two subgrids.
    pub fn delta(&self) -> T {
        let (e1, e2) = self.epsilons();
        e1 + e2
    }

    pub fn to_f64(&self) -> ChainParameters<f64> {
        ChainParameters {
            n: self.n,
            alpha: self.alpha.to_f64(),
            beta: self.beta.to_f64(),
        }
    }
}

/// Diagonal `b_0..b_N` and off-diagonal `u_0..u_{N+1}` of the three-term
/// recurrence. `u_0` and `u_{N+1}` are stored as explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceData<T = Rational> {
    b: Vec<T>,
    u: Vec<T>,
}

impl<T: Scalar> RecurrenceData<T> {
    pub fn new(b: Vec<T>, u: Vec<T>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::Domain("recurrence needs at least one diagonal entry".into()));
        }
        if u.len() != b.len() + 1 {
            return Err(Error::Domain(format!(
                "u must have {} entries (with zero sentinels), got {}",
                b.len() + 1,
                u.len()
            )));
        }
        if !u[0].is_zero() || !u[u.len() - 1].is_zero() {
            return Err(Error::Domain("u_0 and u_{N+1} must be zero".into()));
        }
        Ok(RecurrenceData { b, u })
    }

    /// Builds the data from the interior values `u_1..u_N`.
    pub fn from_interior(b: Vec<T>, interior_u: Vec<T>) -> Result<Self> {
        let mut u = Vec::with_capacity(interior_u.len() + 2);
        u.push(T::zero());
        u.extend(interior_u);
        u.push(T::zero());
        Self::new(b, u)
    }

    /// `N`, the index of the last site.
    pub fn n(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    /// All of `u_0..u_{N+1}`, sentinels included.
    pub fn u(&self) -> &[T] {
        &self.u
    }

    pub fn interior_u(&self) -> &[T] {
        &self.u[1..self.u.len() - 1]
    }

    /// `h_n = u_1 u_2 ... u_n`, with `h_0 = 1`.
    pub fn norm(&self, n: usize) -> T {
        self.u[1..=n].iter().fold(T::one(), |acc, u| acc * u.clone())
    }

    /// Exact test of `u_{N-n+1} = u_n` and `b_{N-n} = b_n`.
    pub fn is_mirror_symmetric(&self) -> bool {
        let n = self.n();
        (0..=n).all(|k| self.b[k] == self.b[n - k]) && (1..=n).all(|k| self.u[k] == self.u[n + 1 - k])
    }

    pub fn to_f64(&self) -> RecurrenceData<f64> {
        RecurrenceData {
            b: self.b.iter().map(Scalar::to_f64).collect(),
            u: self.u.iter().map(Scalar::to_f64).collect(),
        }
    }
}

/// Spectral points `y_s` in Bannai-Ito label order.
#[derive(Debug, Clone, PartialEq)]
pub struct BannaiItoGrid<T = Rational> {
    y: Vec<T>,
    sort_permutation: Vec<usize>,
}

impl<T: Scalar> BannaiItoGrid<T> {
    /// Wraps arbitrary points, rejecting coincident ones.
    pub fn from_points(y: Vec<T>) -> Result<Self> {
        let mut order: Vec<usize> = (0..y.len()).collect();
        order.sort_by(|&a, &b| y[a].partial_cmp(&y[b]).expect("grid points are comparable"));
        for w in order.windows(2) {
            if y[w[0]] == y[w[1]] {
                let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(Error::DegenerateSpectrum { first, second });
            }
        }
        Ok(BannaiItoGrid {
            y,
            sort_permutation: order,
        })
    }

    /// Points by BI label `s`.
    pub fn points(&self) -> &[T] {
        &self.y
    }

    /// `sort_permutation()[i]` is the BI label of the `i`-th smallest point.
    pub fn sort_permutation(&self) -> &[usize] {
        &self.sort_permutation
    }

    /// `x_0 < x_1 < ... < x_N`.
    pub fn ascending(&self) -> Vec<T> {
        self.reorder(&self.y)
    }

    /// Reorders any per-label sequence into ascending spectral order.
    pub fn reorder<V: Clone>(&self, by_label: &[V]) -> Vec<V> {
        self.sort_permutation.iter().map(|&s| by_label[s].clone()).collect()
    }

    pub fn to_f64(&self) -> BannaiItoGrid<f64> {
        BannaiItoGrid {
            y: self.y.iter().map(Scalar::to_f64).collect(),
            sort_permutation: self.sort_permutation.clone(),
        }
    }
}

/// Closed-form discrete weights `w_s` (BI label order) and the
/// normalisation `kappa_0 = sum_s w_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable<T = Rational> {
    pub w: Vec<T>,
    pub kappa0: T,
}

impl<T: Scalar> WeightTable<T> {
    /// Weights in ascending spectral order scaled to unit sum.
    pub fn normalized_ascending(&self, grid: &BannaiItoGrid<T>) -> Vec<f64> {
        let total = self.w.iter().map(Scalar::to_f64).sum::<f64>();
        grid.reorder(&self.w).iter().map(|w| w.to_f64() / total).collect()
    }

    pub fn to_f64(&self) -> WeightTable<f64> {
        WeightTable {
            w: self.w.iter().map(Scalar::to_f64).collect(),
            kappa0: self.kappa0.to_f64(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositivityViolation {
    AlphaNotAboveN,
    BetaNotAboveN,
    AlphaNotAboveMinusOne,
    BetaNotAboveMinusOne,
}

impl fmt::Display for PositivityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PositivityViolation::AlphaNotAboveN => "alpha > N fails (even N)",
            PositivityViolation::BetaNotAboveN => "beta > N fails (even N)",
            PositivityViolation::AlphaNotAboveMinusOne => "alpha > -1 fails (odd N)",
            PositivityViolation::BetaNotAboveMinusOne => "beta > -1 fails (odd N)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PositivityReport {
    pub passed: bool,
    pub violation: Option<PositivityViolation>,
}

impl PositivityReport {
    pub fn into_result(self) -> Result<()> {
        match self.violation {
            None => Ok(()),
            Some(v) => Err(Error::Positivity(v)),
        }
    }
}

/// `[n]_mu = n + mu (1 - (-1)^n)`.
pub fn mu_number<T: Scalar>(n: i64, mu: &T) -> Result<T> {
    if n < 0 {
        return Err(Error::Domain(format!("mu-number index must be non-negative, got {n}")));
    }
    Ok(mu_num(n as usize, mu))
}

fn mu_num<T: Scalar>(n: usize, mu: &T) -> T {
    let n_t = T::from_i64(n as i64);
    if n % 2 == 0 {
        n_t
    } else {
        n_t + mu.clone() * T::from_i64(2)
    }
}

/// Rising factorial `(a)_s = a (a+1) ... (a+s-1)`.
pub fn pochhammer<T: Scalar>(a: &T, s: i64) -> Result<T> {
    if s < 0 {
        return Err(Error::Domain(format!("Pochhammer length must be non-negative, got {s}")));
    }
    Ok(poch(a, s as usize))
}

fn poch<T: Scalar>(a: &T, s: usize) -> T {
    (0..s).fold(T::one(), |acc, k| acc * (a.clone() + T::from_i64(k as i64)))
}

/// Recurrence coefficients via the compact mu-number forms
/// `u_n = 4 [n]_xi [N-n+1]_eta` and `b_n = 2([n]_xi + [N-n]_eta) + c`.
pub fn recurrence_coefficients<T: Scalar>(p: &ChainParameters<T>) -> RecurrenceData<T> {
    let n = p.n();
    let (xi, eta) = (p.xi(), p.eta());
    let ab = p.alpha().clone() + p.beta().clone();
    let offset = match p.parity() {
        Parity::Even => T::one() - ab,
        Parity::Odd => -T::from_i64(2 * n as i64 + 1) - ab,
    };
    let four = T::from_i64(4);
    let two = T::from_i64(2);

    let mut u = Vec::with_capacity(n + 2);
    u.push(T::zero());
    for k in 1..=n {
        u.push(four.clone() * mu_num(k, &xi) * mu_num(n - k + 1, &eta));
    }
    u.push(T::zero());

    let b = (0..=n)
        .map(|k| two.clone() * (mu_num(k, &xi) + mu_num(n - k, &eta)) + offset.clone())
        .collect();
    RecurrenceData { b, u }
}

/// The Bannai-Ito grid for the parity of `N`.
pub fn bi_grid<T: Scalar>(p: &ChainParameters<T>) -> Result<BannaiItoGrid<T>> {
    let ab = p.alpha().clone() + p.beta().clone();
    let y = (0..=p.n())
        .map(|s| {
            let lin = T::from_i64(2 * s as i64 + 1);
            match (p.parity(), s % 2 == 0) {
                (Parity::Even, true) => lin - ab.clone(),
                (Parity::Even, false) => ab.clone() - lin,
                (Parity::Odd, true) => ab.clone() + lin,
                (Parity::Odd, false) => -ab.clone() - lin,
            }
        })
        .collect();
    BannaiItoGrid::from_points(y)
}

pub fn positivity_check<T: Scalar>(p: &ChainParameters<T>) -> PositivityReport {
    let violation = match p.parity() {
        Parity::Even => {
            let n = T::from_i64(p.n() as i64);
            if *p.alpha() <= n {
                Some(PositivityViolation::AlphaNotAboveN)
            } else if *p.beta() <= n {
                Some(PositivityViolation::BetaNotAboveN)
            } else {
                None
            }
        }
        Parity::Odd => {
            let m1 = -T::one();
            if *p.alpha() <= m1 {
                Some(PositivityViolation::AlphaNotAboveMinusOne)
            } else if *p.beta() <= m1 {
                Some(PositivityViolation::BetaNotAboveMinusOne)
            } else {
                None
            }
        }
    };
    PositivityReport {
        passed: violation.is_none(),
        violation,
    }
}

fn divide<T: Scalar>(num: T, den: T) -> Result<T> {
    if den.is_zero() {
        return Err(Error::Domain("vanishing Pochhammer denominator in weight formula".into()));
    }
    Ok(num / den)
}

/// Closed-form weights and `kappa_0`; requires the positivity domain.
pub fn closed_form_weights<T: Scalar>(p: &ChainParameters<T>) -> Result<WeightTable<T>> {
    positivity_check(p).into_result()?;
    let n = p.n();
    let half = T::half();
    let (a2, b2) = (p.alpha().clone() * half.clone(), p.beta().clone() * half.clone());
    let big_n = T::from_i64(n as i64);
    let one = T::one();
    let sign = |s: usize| if s % 2 == 0 { T::one() } else { -T::one() };

    let mut w = Vec::with_capacity(n + 1);
    let kappa0 = match p.parity() {
        Parity::Even => {
            let top = -big_n.clone() * half.clone();
            let c1 = one.clone() - a2.clone();
            let c2 = one.clone() - a2.clone() - b2.clone();
            let d1 = one.clone() - b2.clone();
            let d2 = big_n.clone() * half.clone() + one.clone() - a2.clone() - b2.clone();
            for t in 0..=n {
                let s = t / 2;
                let common = poch(&c1, s) * poch(&c2, s) * sign(s);
                let value = if t % 2 == 0 {
                    divide(common * poch(&top, s), poch(&T::one(), s) * poch(&d1, s) * poch(&d2, s))?
                } else {
                    divide(
                        common * poch(&top, s + 1),
                        poch(&T::one(), s) * poch(&d1, s) * poch(&d2, s + 1),
                    )?
                };
                w.push(value);
            }
            let m = n / 2;
            divide(poch(&(one.clone() - a2 - b2), m), poch(&(one - p.beta().clone() * half), m))?
        }
        Parity::Odd => {
            let top = -(big_n.clone() - one.clone()) * half.clone();
            let c1 = half.clone() + a2.clone();
            let c2 = one.clone() + a2.clone() + b2.clone();
            let d1 = half.clone() + b2.clone();
            let d2 = big_n * half.clone() + T::from_i64(3) * half.clone() + a2.clone() + b2.clone();
            for t in 0..=n {
                let s = t / 2;
                let lead = poch(&top, s) * sign(s) * poch(&c2, s);
                let den = poch(&T::one(), s) * poch(&d2, s);
                let value = if t % 2 == 0 {
                    divide(lead * poch(&c1, s), den * poch(&d1, s))?
                } else {
                    divide(lead * poch(&c1, s + 1), den * poch(&d1, s + 1))?
                };
                w.push(value);
            }
            let m = (n + 1) / 2;
            divide(
                poch(&(one.clone() + a2 + b2), m),
                poch(&((p.beta().clone() + one) * half), m),
            )?
        }
    };
    Ok(WeightTable { w, kappa0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        ratio(n, 1)
    }

    fn params(n: usize, a: Rational, b: Rational) -> ChainParameters {
        ChainParameters::new(n, a, b).unwrap()
    }

    // Case-split forms, used as an independent oracle for the compact forms.
    fn case_split(p: &ChainParameters) -> (Vec<Rational>, Vec<Rational>) {
        let n = p.n() as i64;
        let (a, b) = (p.alpha().clone(), p.beta().clone());
        let mut u = vec![r(0)];
        let mut bb = Vec::new();
        for k in 0..=n {
            let even = k % 2 == 0;
            let bk = match (p.parity(), even) {
                (Parity::Even, true) => r(2 * n + 1) - &a - &b,
                (Parity::Even, false) => r(-2 * n - 3) + &a + &b,
                (Parity::Odd, true) => r(-1) - &a + &b,
                (Parity::Odd, false) => r(-1) + &a - &b,
            };
            bb.push(bk);
            if k >= 1 {
                let uk = match (p.parity(), even) {
                    (Parity::Even, true) => r(4 * k) * (a.clone() - r(k)),
                    (Parity::Even, false) => r(4 * (n - k + 1)) * (r(k) + &b - r(n + 1)),
                    (Parity::Odd, true) => r(4 * k * (n + 1 - k)),
                    (Parity::Odd, false) => r(4) * (a.clone() + r(k)) * (b.clone() + r(n + 1 - k)),
                };
                u.push(uk);
            }
        }
        u.push(r(0));
        (bb, u)
    }

    #[test]
    fn mu_number_examples() {
        assert_eq!(mu_number(0, &1.5).unwrap(), 0.0);
        assert_eq!(mu_number(2, &0.7).unwrap(), 2.0);
        assert_eq!(mu_number(3, &1.5).unwrap(), 6.0);
        assert!(matches!(mu_number(-1, &1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&r(-1), 0).unwrap(), r(1));
        assert_eq!(pochhammer(&r(-1), 1).unwrap(), r(-1));
        assert_eq!(pochhammer(&ratio(-1, 2), 2).unwrap(), ratio(-1, 4));
        assert!(pochhammer(&r(2), -1).is_err());
    }

    #[test]
    fn recurrence_examples() {
        let rec = recurrence_coefficients(&params(3, r(2), r(2)));
        assert_eq!(rec.u(), &[r(0), r(60), r(16), r(60), r(0)]);
        assert_eq!(rec.b(), &[r(-1), r(-1), r(-1), r(-1)]);

        let rec = recurrence_coefficients(&params(2, r(3), r(3)));
        assert_eq!(rec.u(), &[r(0), r(8), r(8), r(0)]);
        assert_eq!(rec.b(), &[r(-1), r(-1), r(-1)]);
        assert_eq!(rec.norm(2), r(64));
    }

    #[test]
    fn grid_examples() {
        let g = bi_grid(&params(1, r(2), r(2))).unwrap();
        assert_eq!(g.points(), &[r(5), r(-7)]);
        assert_eq!(g.ascending(), vec![r(-7), r(5)]);

        let g = bi_grid(&params(2, r(3), r(3))).unwrap();
        assert_eq!(g.points(), &[r(-5), r(3), r(-1)]);
        assert_eq!(g.ascending(), vec![r(-5), r(-1), r(3)]);
        assert_eq!(g.sort_permutation(), &[0, 2, 1]);

        let x = bi_grid(&params(3, r(2), r(2))).unwrap().ascending();
        assert_eq!(x, vec![r(-11), r(-7), r(5), r(9)]);
        assert_eq!(&x[2] - &x[1], r(4) * (r(2) + r(1)));
    }

    #[test]
    fn coincident_points_are_rejected() {
        // even N, alpha + beta = 2: y_0 = -1 and y_1 = -1
        let err = bi_grid(&params(2, r(1), r(1))).unwrap_err();
        assert_eq!(err, Error::DegenerateSpectrum { first: 0, second: 1 });
    }

    #[test]
    fn weight_examples() {
        let w = closed_form_weights(&params(2, r(3), r(3))).unwrap();
        assert_eq!(w.w, vec![r(1), r(1), r(2)]);
        assert_eq!(w.kappa0, r(4));

        let w = closed_form_weights(&params(1, r(0), r(0))).unwrap();
        assert_eq!(w.w, vec![r(1), r(1)]);
        assert_eq!(w.kappa0, r(2));

        let w = closed_form_weights(&params(3, r(2), r(2))).unwrap();
        assert_eq!(w.w, vec![r(1), r(1), ratio(3, 5), ratio(3, 5)]);
        assert_eq!(w.kappa0, ratio(16, 5));
    }

    #[test]
    fn weights_require_positivity() {
        let err = closed_form_weights(&params(2, r(2), r(5))).unwrap_err();
        assert_eq!(err, Error::Positivity(PositivityViolation::AlphaNotAboveN));
    }

    #[test]
    fn positivity_examples() {
        assert!(positivity_check(&params(2, ratio(7, 2), ratio(7, 2))).passed);
        let rep = positivity_check(&params(2, r(2), r(5)));
        assert!(!rep.passed);
        assert_eq!(rep.violation, Some(PositivityViolation::AlphaNotAboveN));
        assert!(positivity_check(&params(3, ratio(-1, 2), r(0))).passed);
        assert_eq!(
            positivity_check(&params(3, r(0), r(-1))).violation,
            Some(PositivityViolation::BetaNotAboveMinusOne)
        );
    }

    #[test]
    fn auxiliaries() {
        let p = params(4, ratio(11, 2), r(7));
        assert_eq!(p.xi(), ratio(1, 1));
        assert_eq!(p.eta(), ratio(1, 4));
        assert_eq!(p.delta(), ratio(9, 2));
        let p = params(3, r(2), ratio(1, 3));
        assert_eq!(p.xi(), r(1));
        assert_eq!(p.eta(), ratio(1, 6));
        assert_eq!(p.delta(), ratio(13, 3));
        assert!(ChainParameters::new(0, r(1), r(1)).is_err());
    }

    #[test]
    fn float_path_matches_exact() {
        let p = params(5, ratio(7, 3), ratio(5, 2));
        let exact = recurrence_coefficients(&p).to_f64();
        let float = recurrence_coefficients(&p.to_f64());
        for (a, b) in exact.u().iter().zip(float.u()) {
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
        let we = closed_form_weights(&p).unwrap().to_f64();
        let wf = closed_form_weights(&p.to_f64()).unwrap();
        for (a, b) in we.w.iter().zip(&wf.w) {
            assert!((a - b).abs() <= 1e-12 * a.abs());
        }
    }

    fn positive_params() -> impl Strategy<Value = ChainParameters> {
        (1usize..=20, 1i64..40, 1i64..9, 1i64..40, 1i64..9).prop_map(|(n, a, da, b, db)| {
            let edge = if n % 2 == 0 { r(n as i64) } else { r(-1) };
            params(n, edge.clone() + ratio(a, da), edge + ratio(b, db))
        })
    }

    proptest! {
        #[test]
        fn compact_and_case_split_forms_agree(p in positive_params()) {
            let rec = recurrence_coefficients(&p);
            let (b, u) = case_split(&p);
            prop_assert_eq!(rec.b(), &b[..]);
            prop_assert_eq!(rec.u(), &u[..]);
        }

        #[test]
        fn compact_forms_agree_outside_positivity(n in 1usize..12, a in -30i64..30, b in -30i64..30) {
            let p = params(n, ratio(a, 3), ratio(b, 2));
            let rec = recurrence_coefficients(&p);
            let (bb, u) = case_split(&p);
            prop_assert_eq!(rec.b(), &bb[..]);
            prop_assert_eq!(rec.u(), &u[..]);
        }

        #[test]
        fn positivity_gives_positive_u_and_w(p in positive_params()) {
            let rec = recurrence_coefficients(&p);
            prop_assert!(rec.interior_u().iter().all(|u| u > &r(0)));
            let w = closed_form_weights(&p).unwrap();
            prop_assert!(w.w.iter().all(|w| w > &r(0)));
            let total = w.w.iter().fold(r(0), |acc, w| acc + w);
            prop_assert_eq!(total, w.kappa0);
        }

        #[test]
        fn even_grid_partition(half in 1usize..10, a in 1i64..40, da in 1i64..9, b in 1i64..40, db in 1i64..9) {
            let n = 2 * half;
            let (e1, e2) = (ratio(a, da), ratio(b, db));
            let p = params(n, r(n as i64) + &e1, r(n as i64) + &e2);
            let delta = e1 + e2;
            let g = bi_grid(&p).unwrap();
            let mut even: Vec<_> = g.points().iter().step_by(2).cloned().collect();
            let mut odd: Vec<_> = g.points().iter().skip(1).step_by(2).cloned().collect();
            let mut expect_even: Vec<_> = (0..=half as i64).map(|k| r(1) - &delta - r(4 * k)).collect();
            let mut expect_odd: Vec<_> = (0..half as i64).map(|k| r(1) + &delta + r(4 * k)).collect();
            for v in [&mut even, &mut odd, &mut expect_even, &mut expect_odd] {
                v.sort();
            }
            prop_assert_eq!(even, expect_even);
            prop_assert_eq!(odd, expect_odd);
        }

        #[test]
        fn sorted_grid_is_two_step_four_subgrids(p in positive_params()) {
            let x = bi_grid(&p).unwrap().ascending();
            let n = p.n();
            // lower subgrid holds floor(N/2)+1 points for even N, (N+1)/2 for odd N
            let lower = if n % 2 == 0 { n / 2 + 1 } else { (n + 1) / 2 };
            for i in 0..n {
                let gap = &x[i + 1] - &x[i];
                if i + 1 == lower {
                    prop_assert_eq!(gap, r(2) * p.delta());
                } else {
                    prop_assert_eq!(gap, r(4));
                }
            }
        }
    }
}
