//! Perfect state transfer: exact certification, chain design from
//! `(M1, M2)`, fidelity traces, and the Christoffel link between the odd-N
//! and even-N families.
//!
//! A chain has PST iff it is mirror symmetric and consecutive eigenvalue
//! spacings are `(pi / T) M_s` with every `M_s` a positive odd integer. Both
//! conditions are decided on exact rational data; eigenvalues and amplitudes
//! computed in floating point are recorded only as a cross-check.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::m1hahn::{bi_grid, positivity_check, recurrence_coefficients, ChainParameters, Parity};
use crate::orthopoly::{christoffel_k_closed_form, christoffel_transform, ChristoffelData};
use crate::scalar::{is_even_integer, Rational, Scalar};
use crate::spinchain::{build_jacobi, eigensystem, FidelityTrace, SpinChain};

/// Minimal PST time (as `T / pi`) and the odd integers `M_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingCertificate {
    pub t_over_pi: Rational,
    pub m: Vec<BigInt>,
}

impl SpacingCertificate {
    /// Checks `x_{s+1} - x_s = (pi / T) M_s` for the given spectrum and
    /// that every `M_s` is a positive odd integer.
    pub fn holds_for(&self, spectrum: &[Rational]) -> bool {
        spectrum.len() == self.m.len() + 1
            && self.m.iter().all(|m| m.is_positive() && m.is_odd())
            && spectrum
                .windows(2)
                .zip(&self.m)
                .all(|(w, m)| (&w[1] - &w[0]) * &self.t_over_pi == Rational::from_integer(m.clone()))
    }
}

/// Finds the smallest `T > 0` with `x_{s+1} - x_s = (pi / T) M_s`, all
/// `M_s` odd, or reports the first spacing whose ratio to the first spacing
/// is not a ratio of odd integers.
pub fn spacing_certificate(spectrum: &[Rational]) -> Result<SpacingCertificate> {
    if spectrum.len() < 2 {
        return Err(Error::Domain("spacing certificate needs at least two levels".into()));
    }
    let spacings: Vec<Rational> = spectrum.windows(2).map(|w| &w[1] - &w[0]).collect();
    if let Some(i) = spacings.iter().position(|d| !d.is_positive()) {
        return Err(Error::Domain(format!("spectrum is not strictly increasing at index {i}")));
    }
    let first = spacings[0].clone();
    let mut ratios = Vec::with_capacity(spacings.len());
    for (i, d) in spacings.iter().enumerate() {
        let q = d / &first;
        if is_even_integer(q.numer()) || is_even_integer(q.denom()) {
            return Err(Error::SpacingViolation {
                index: i,
                ratio: q.to_string(),
            });
        }
        ratios.push(q);
    }
    let lcm = ratios.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut m: Vec<BigInt> = ratios.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let gcd = m.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    m.iter_mut().for_each(|v| *v /= &gcd);
    let t_over_pi = Rational::from_integer(m[0].clone()) / first;
    Ok(SpacingCertificate { t_over_pi, m })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    MirrorViolation,
    SpacingViolation,
    Degenerate,
}

impl FailureReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureReason::MirrorViolation => "mirror-violation",
            FailureReason::SpacingViolation => "spacing-violation",
            FailureReason::Degenerate => "degenerate",
        }
    }

    pub fn parse(tag: &str) -> Option<Self> {
        match tag {
            "mirror-violation" => Some(FailureReason::MirrorViolation),
            "spacing-violation" => Some(FailureReason::SpacingViolation),
            "degenerate" => Some(FailureReason::Degenerate),
            _ => None,
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PstCertificate {
    pub passed: bool,
    /// Minimal `T / pi`, present whenever the spacing condition holds.
    pub t_over_pi: Option<Rational>,
    pub m: Vec<BigInt>,
    pub mirror: bool,
    /// `arg A(T)` measured numerically.
    pub phase: Option<f64>,
    /// `|A(T)|` measured numerically.
    pub fidelity: Option<f64>,
    /// Largest deviation of the floating eigenvalues from the exact grid,
    /// relative to the largest level.
    pub spectrum_deviation: Option<f64>,
    pub failure_reason: Option<FailureReason>,
}

impl PstCertificate {
    fn failed(reason: FailureReason, mirror: bool) -> Self {
        PstCertificate {
            passed: false,
            t_over_pi: None,
            m: Vec::new(),
            mirror,
            phase: None,
            fidelity: None,
            spectrum_deviation: None,
            failure_reason: Some(reason),
        }
    }

    /// The PST time itself.
    pub fn time(&self) -> Option<f64> {
        self.t_over_pi.as_ref().map(|t| t.to_f64() * std::f64::consts::PI)
    }
}

/// Certifies PST for the dual -1 Hahn chain with parameters `p`.
pub fn certify_pst(p: &ChainParameters) -> Result<PstCertificate> {
    positivity_check(p).into_result()?;
    let rec = recurrence_coefficients(p);
    let mirror = rec.is_mirror_symmetric();
    let grid = match bi_grid(p) {
        Ok(g) => g,
        Err(Error::DegenerateSpectrum { .. }) => {
            return Ok(PstCertificate::failed(FailureReason::Degenerate, mirror))
        }
        Err(e) => return Err(e),
    };
    let levels = grid.ascending();
    let spacing = match spacing_certificate(&levels) {
        Ok(s) => Some(s),
        Err(Error::SpacingViolation { .. }) => None,
        Err(e) => return Err(e),
    };

    let chain = build_jacobi(&rec)?;
    let dec = eigensystem(&chain)?;
    let scale = levels.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max).max(1.0);
    let deviation = dec
        .eigenvalues
        .iter()
        .zip(&levels)
        .map(|(a, b)| (a - b.to_f64()).abs() / scale)
        .fold(0.0, f64::max);

    let failure_reason = if !mirror {
        Some(FailureReason::MirrorViolation)
    } else if spacing.is_none() {
        Some(FailureReason::SpacingViolation)
    } else {
        None
    };
    let (t_over_pi, m, phase, fidelity) = match spacing {
        Some(s) => {
            let amp = dec.amplitude(s.t_over_pi.to_f64() * std::f64::consts::PI);
            (Some(s.t_over_pi), s.m, Some(amp.arg()), Some(amp.norm()))
        }
        None => (None, Vec::new(), None, None),
    };
    Ok(PstCertificate {
        passed: failure_reason.is_none(),
        t_over_pi,
        m,
        mirror,
        phase,
        fidelity,
        spectrum_deviation: Some(deviation),
        failure_reason,
    })
}

/// Request for a PST chain with `alpha = beta = M2/M1` (odd N) or
/// `alpha = beta = N + M1/M2` (even N).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignRequest {
    pub parity: Parity,
    pub n: usize,
    pub m1: u64,
    pub m2: u64,
}

impl DesignRequest {
    pub fn validate(&self) -> Result<()> {
        let DesignRequest { parity, n, m1, m2 } = *self;
        if n == 0 {
            return Err(Error::InvalidDesign("N must be at least 1".into()));
        }
        if Parity::of(n) != parity {
            return Err(Error::InvalidDesign(format!("N = {n} does not have {parity} parity")));
        }
        if m1 == 0 || m2 == 0 {
            return Err(Error::InvalidDesign("M1 and M2 must be positive".into()));
        }
        match parity {
            Parity::Odd => {
                if m2 % 2 != 0 || m1 % 2 == 0 {
                    return Err(Error::InvalidDesign(format!(
                        "odd N requires M2 even and M1 odd (alpha = M2/M1), got M1 = {m1}, M2 = {m2}"
                    )));
                }
                if m2 <= m1 {
                    return Err(Error::InvalidDesign(format!(
                        "odd N requires M2 > M1, got M1 = {m1}, M2 = {m2}"
                    )));
                }
            }
            Parity::Even => {
                if m1 % 2 == 0 || m2 % 2 == 0 {
                    return Err(Error::InvalidDesign(format!(
                        "even N requires M1 and M2 both odd (alpha = N + M1/M2), got M1 = {m1}, M2 = {m2}"
                    )));
                }
            }
        }
        if m1.gcd(&m2) != 1 {
            return Err(Error::InvalidDesign(format!("M1 = {m1} and M2 = {m2} must be coprime")));
        }
        Ok(())
    }

    pub fn alpha(&self) -> Rational {
        let m1 = Rational::from_i64(self.m1 as i64);
        let m2 = Rational::from_i64(self.m2 as i64);
        match self.parity {
            Parity::Odd => m2 / m1,
            Parity::Even => Rational::from_i64(self.n as i64) + m1 / m2,
        }
    }

    /// The PST time predicted from `(M1, M2)`: the step-4 spacing carries
    /// `M1` (odd N) or `M2` (even N). A two-site chain has only the gap.
    pub fn expected_t_over_pi(&self) -> Rational {
        let m1 = Rational::from_i64(self.m1 as i64);
        let m2 = Rational::from_i64(self.m2 as i64);
        let four = Rational::from_i64(4);
        match self.parity {
            Parity::Odd if self.n == 1 => m1.clone() / (four * (m1 + m2)),
            Parity::Odd => m1 / four,
            Parity::Even => m2 / four,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    pub parameters: ChainParameters,
    pub certificate: PstCertificate,
}

pub fn design_chain(d: &DesignRequest) -> Result<Design> {
    d.validate()?;
    let parameters = ChainParameters::symmetric(d.n, d.alpha())?;
    let certificate = certify_pst(&parameters)?;
    if !certificate.passed {
        return Err(Error::DesignMismatch(format!(
            "designed chain failed certification ({})",
            certificate.failure_reason.map(|r| r.as_str()).unwrap_or("unknown")
        )));
    }
    let expected = d.expected_t_over_pi();
    if certificate.t_over_pi.as_ref() != Some(&expected) {
        return Err(Error::DesignMismatch(format!(
            "certified T/pi {:?} differs from predicted {expected}",
            certificate.t_over_pi.as_ref().map(|t| t.to_string())
        )));
    }
    Ok(Design {
        parameters,
        certificate,
    })
}

/// `samples` amplitudes on the uniform grid `t_k = k t_max / (samples - 1)`.
pub fn fidelity_trace(c: &SpinChain, t_max: f64, samples: usize) -> Result<FidelityTrace> {
    if samples < 2 {
        return Err(Error::Domain(format!("need at least 2 samples, got {samples}")));
    }
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::Domain(format!("t_max must be positive, got {t_max}")));
    }
    let dec = eigensystem(c)?;
    let step = t_max / (samples - 1) as f64;
    let times: Vec<f64> = (0..samples)
        .map(|k| if k + 1 == samples { t_max } else { k as f64 * step })
        .collect();
    let amplitudes = times.par_iter().map(|&t| dec.amplitude(t)).collect();
    Ok(FidelityTrace { times, amplitudes })
}

/// Outcome of mapping the odd-N chain onto the even-N family by removing
/// its largest level.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelLink<T = Rational> {
    pub transform: ChristoffelData<T>,
    /// The even chain `(N - 1, N + alpha, N + alpha)` the transform lands on.
    pub even_parameters: ChainParameters<T>,
    /// Constant offset `b~_n - b_n(even chain)`.
    pub shift: T,
    /// Max deviation from the even family after removing `shift`.
    pub residual: T,
    /// Max deviation of `K_n`, `u~_n`, `b~_n` from their closed forms.
    pub closed_form_residual: T,
}

pub fn verify_christoffel_link<T: Scalar>(n: usize, alpha: T) -> Result<ChristoffelLink<T>> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::Domain(format!("Christoffel link needs odd N >= 3, got {n}")));
    }
    let odd = ChainParameters::symmetric(n, alpha.clone())?;
    positivity_check(&odd).into_result()?;
    let rec = recurrence_coefficients(&odd);
    let levels = bi_grid(&odd)?.ascending();
    let transform = christoffel_transform(&rec, &levels, n)?;

    let even_parameters = ChainParameters::symmetric(n - 1, alpha.clone() + T::from_i64(n as i64))?;
    let even = recurrence_coefficients(&even_parameters);
    let tb = transform.transformed.b();
    let tu = transform.transformed.u();
    let shift = tb[0].clone() - even.b()[0].clone();

    let mut residual = T::zero();
    let bump = |acc: &mut T, v: T| {
        let v = v.abs();
        if v > *acc {
            *acc = v;
        }
    };
    for k in 0..n {
        bump(&mut residual, tb[k].clone() - even.b()[k].clone() - shift.clone());
    }
    for k in 1..n {
        bump(&mut residual, tu[k].clone() - even.u()[k].clone());
    }

    let half_alpha = alpha.clone() * T::half();
    let mu = |k: usize| crate::m1hahn::mu_number(k as i64, &half_alpha).expect("non-negative index");
    let mut closed = T::zero();
    for k in 0..=n {
        bump(&mut closed, transform.k[k].clone() - christoffel_k_closed_form(n, &alpha, k)?);
    }
    for k in 0..n {
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        let b_closed = -T::from_i64(3) - T::from_i64(2) * sign * alpha.clone();
        bump(&mut closed, tb[k].clone() - b_closed);
    }
    for k in 1..n {
        bump(&mut closed, tu[k].clone() - T::from_i64(4) * mu(k) * mu(n - k));
    }

    Ok(ChristoffelLink {
        transform,
        even_parameters,
        shift,
        residual,
        closed_form_residual: closed,
    })
}
