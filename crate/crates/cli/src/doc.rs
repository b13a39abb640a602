//! On-disk formats: the chain document (JSON, schema version 1), the
//! certificate embedded in it, and the CSV amplitude trace.
//!
//! Rationals are written as `{"num": p, "den": q}` with arbitrary-size JSON
//! integers. Floats are written with 17 significant digits so the bytes are
//! stable and every value round-trips.

use std::fmt::Write as _;
use std::str::FromStr;

use hahnchain_core::{
    ChainParameters, FidelityTrace, PstCertificate, Rational, RecurrenceData, SpinChain,
};
use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

pub const SCHEMA_VERSION: u32 = 1;

fn raw<S: Serializer>(text: String, ser: S) -> Result<S::Ok, S::Error> {
    RawValue::from_string(text)
        .map_err(serde::ser::Error::custom)?
        .serialize(ser)
}

/// Integer of any size, serialised as a bare JSON number.
#[derive(Debug, Clone, PartialEq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        raw(self.0.to_string(), ser)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let text = Box::<RawValue>::deserialize(de)?;
        BigInt::from_str(text.get().trim())
            .map(Int)
            .map_err(|_| D::Error::custom(format!("expected an integer, got {}", text.get())))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exact {
    pub num: Int,
    pub den: Int,
}

impl From<&Rational> for Exact {
    fn from(q: &Rational) -> Self {
        Exact {
            num: Int(q.numer().clone()),
            den: Int(q.denom().clone()),
        }
    }
}

impl Exact {
    pub fn to_rational(&self) -> Result<Rational, String> {
        if self.den.0 == BigInt::from(0) {
            return Err("rational with zero denominator".into());
        }
        Ok(Rational::new(self.num.0.clone(), self.den.0.clone()))
    }
}

/// Float written with 17 significant digits; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Float(pub f64);

pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

impl Serialize for Float {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        raw(format_float(self.0), ser)
    }
}

impl<'de> Deserialize<'de> for Float {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        Option::<f64>::deserialize(de).map(|v| Float(v.unwrap_or(f64::NAN)))
    }
}

fn exact_vec(values: &[Rational]) -> Vec<Exact> {
    values.iter().map(Exact::from).collect()
}

fn float_vec(values: &[f64]) -> Vec<Float> {
    values.iter().copied().map(Float).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub passed: bool,
    #[serde(rename = "T_over_pi")]
    pub t_over_pi: Option<Exact>,
    #[serde(rename = "M")]
    pub m: Vec<Int>,
    pub mirror: bool,
    pub phase: Option<Float>,
    pub fidelity: Option<Float>,
    #[serde(rename = "spectrumDeviation")]
    pub spectrum_deviation: Option<Float>,
    #[serde(rename = "failureReason")]
    pub failure_reason: Option<String>,
}

impl From<&PstCertificate> for CertificateDoc {
    fn from(c: &PstCertificate) -> Self {
        CertificateDoc {
            passed: c.passed,
            t_over_pi: c.t_over_pi.as_ref().map(Exact::from),
            m: c.m.iter().cloned().map(Int).collect(),
            mirror: c.mirror,
            phase: c.phase.map(Float),
            fidelity: c.fidelity.map(Float),
            spectrum_deviation: c.spectrum_deviation.map(Float),
            failure_reason: c.failure_reason.map(|r| r.as_str().to_string()),
        }
    }
}

impl CertificateDoc {
    #[cfg(test)]
    pub fn failure(&self) -> Option<hahnchain_core::FailureReason> {
        self.failure_reason.as_deref().and_then(hahnchain_core::FailureReason::parse)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainDocument {
    #[serde(rename = "schemaVersion")]
    pub schema_version: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha: Exact,
    pub beta: Exact,
    pub parity: String,
    pub b: Vec<Exact>,
    /// Interior `u_1..u_N`.
    pub u: Vec<Exact>,
    pub couplings: Vec<Float>,
    pub fields: Vec<Float>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
}

impl ChainDocument {
    pub fn new(
        p: &ChainParameters,
        rec: &RecurrenceData,
        chain: &SpinChain,
        certificate: Option<&PstCertificate>,
    ) -> Self {
        ChainDocument {
            schema_version: SCHEMA_VERSION,
            n: p.n(),
            alpha: p.alpha().into(),
            beta: p.beta().into(),
            parity: p.parity().as_str().to_string(),
            b: exact_vec(rec.b()),
            u: exact_vec(rec.interior_u()),
            couplings: float_vec(chain.couplings()),
            fields: float_vec(chain.fields()),
            certificate: certificate.map(CertificateDoc::from),
        }
    }

    /// Checks the schema and the internal consistency of the document.
    pub fn validate(&self) -> Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!("unsupported schemaVersion {}", self.schema_version));
        }
        let n = self.n;
        if self.b.len() != n + 1 || self.fields.len() != n + 1 {
            return Err(format!("b and fields must have N+1 = {} entries", n + 1));
        }
        if self.u.len() != n || self.couplings.len() != n {
            return Err(format!("u and couplings must have N = {n} entries"));
        }
        let parity = if n % 2 == 0 { "even" } else { "odd" };
        if self.parity != parity {
            return Err(format!("parity {:?} does not match N = {n}", self.parity));
        }
        for (l, (j, u)) in self.couplings.iter().zip(&self.u).enumerate() {
            let u = hahnchain_core::Scalar::to_f64(&u.to_rational()?);
            if !((j.0 * j.0 - u).abs() <= 1e-12 * u.abs()) {
                return Err(format!("couplings[{l}]^2 does not match u[{l}]"));
            }
        }
        Ok(())
    }

    pub fn parameters(&self) -> Result<ChainParameters, String> {
        ChainParameters::new(self.n, self.alpha.to_rational()?, self.beta.to_rational()?).map_err(|e| e.to_string())
    }

    pub fn recurrence(&self) -> Result<RecurrenceData, String> {
        let b = self.b.iter().map(Exact::to_rational).collect::<Result<Vec<_>, _>>()?;
        let u = self.u.iter().map(Exact::to_rational).collect::<Result<Vec<_>, _>>()?;
        RecurrenceData::from_interior(b, u).map_err(|e| e.to_string())
    }

    pub fn chain(&self) -> Result<SpinChain, String> {
        SpinChain::new(
            self.couplings.iter().map(|f| f.0).collect(),
            self.fields.iter().map(|f| f.0).collect(),
        )
        .map_err(|e| e.to_string())
    }
}

/// `t,reA,imA,absA` rows.
pub fn trace_csv(trace: &FidelityTrace) -> String {
    let mut out = String::from("t,reA,imA,absA\n");
    for (t, a) in trace.times.iter().zip(&trace.amplitudes) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_float(*t),
            format_float(a.re),
            format_float(a.im),
            format_float(a.norm())
        );
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents serialise");
    s.push('\n');
    s
}
