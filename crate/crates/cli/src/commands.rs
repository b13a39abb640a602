use std::fs;
use std::io::Write;
use std::path::Path;

use hahnchain_core::{
    bi_grid, build_jacobi, certify_pst, christoffel_transform, closed_form_weights, design_chain,
    eigensystem, fidelity_trace, parse_rational, recurrence_coefficients, reflection_weights,
    stieltjes_reconstruct, verify_christoffel_link, ChainParameters, DesignRequest, Parity, Rational, Scalar,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::doc::{to_json, trace_csv, CertificateDoc, ChainDocument, Exact, Float, SCHEMA_VERSION};
use crate::{Command, ParityArg, RemoveArg, Source};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

impl From<hahnchain_core::Error> for CliError {
    fn from(e: hahnchain_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type Outcome = Result<u8, CliError>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Design {
            parity,
            n,
            m1,
            m2,
            sweep,
            out,
        } => design(parity, n, m1, m2, sweep, out.as_deref()),
        Command::Certify { source, out } => certify(&source, out.as_deref()),
        Command::Evolve {
            chain,
            t_max,
            t_max_over_pi,
            samples,
            out,
        } => evolve(&chain, t_max, t_max_over_pi.as_deref(), samples, out.as_deref()),
        Command::Transform { chain, remove, out } => transform(&chain, remove, out.as_deref()),
        Command::Reconstruct { chain, tol, out } => reconstruct(&chain, tol, out.as_deref()),
        Command::Weights { source, tol, out } => weights(&source, tol, out.as_deref()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn read_document(path: &Path) -> Result<ChainDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let doc: ChainDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed chain document {}: {e}", path.display())))?;
    doc.validate()
        .map_err(|e| CliError::Usage(format!("invalid chain document {}: {e}", path.display())))?;
    Ok(doc)
}

fn parameters(source: &Source) -> Result<ChainParameters, CliError> {
    if let Some(path) = &source.chain {
        let doc = read_document(path)?;
        let p = doc.parameters().map_err(CliError::Usage)?;
        let rec = doc.recurrence().map_err(CliError::Usage)?;
        if rec != recurrence_coefficients(&p) {
            return Err(CliError::Usage(format!(
                "chain document {} has b, u inconsistent with its (N, alpha, beta)",
                path.display()
            )));
        }
        return Ok(p);
    }
    match (source.n, &source.alpha, &source.beta) {
        (Some(n), Some(a), Some(b)) => Ok(ChainParameters::new(n, parse_rational(a)?, parse_rational(b)?)?),
        _ => Err(CliError::Usage("give a chain document or all of --N, --alpha, --beta".into())),
    }
}

fn design_document(req: &DesignRequest) -> Result<ChainDocument, CliError> {
    let design = design_chain(req)?;
    let rec = recurrence_coefficients(&design.parameters);
    let chain = build_jacobi(&rec)?;
    Ok(ChainDocument::new(&design.parameters, &rec, &chain, Some(&design.certificate)))
}

fn design(
    parity: ParityArg,
    n: Option<usize>,
    m1: u64,
    m2: u64,
    sweep: Option<Vec<usize>>,
    out: Option<&Path>,
) -> Outcome {
    let parity = match parity {
        ParityArg::Odd => Parity::Odd,
        ParityArg::Even => Parity::Even,
    };
    let request = |n| DesignRequest { parity, n, m1, m2 };
    let text = match sweep {
        Some(ns) => {
            let docs = ns
                .par_iter()
                .map(|&n| design_document(&request(n)))
                .collect::<Result<Vec<_>, _>>()?;
            to_json(&docs)
        }
        None => to_json(&design_document(&request(n.expect("clap enforces --N")))?),
    };
    emit(&text, out)?;
    Ok(0)
}

fn certify(source: &Source, out: Option<&Path>) -> Outcome {
    let p = parameters(source)?;
    let cert = certify_pst(&p)?;
    emit(&to_json(&CertificateDoc::from(&cert)), out)?;
    Ok(if cert.passed { 0 } else { 1 })
}

fn evolve(chain: &Path, t_max: Option<f64>, t_max_over_pi: Option<&str>, samples: usize, out: Option<&Path>) -> Outcome {
    let doc = read_document(chain)?;
    let chain = doc.chain().map_err(CliError::Usage)?;
    let t_max = match (t_max, t_max_over_pi) {
        (Some(t), _) => t,
        (None, Some(q)) => parse_rational(q)?.to_f64() * std::f64::consts::PI,
        (None, None) => return Err(CliError::Usage("give --t-max or --t-max-over-pi".into())),
    };
    let trace = fidelity_trace(&chain, t_max, samples)?;
    emit(&trace_csv(&trace), out)?;
    Ok(0)
}

#[derive(Serialize)]
struct LinkDoc {
    #[serde(rename = "evenN")]
    even_n: usize,
    #[serde(rename = "evenAlpha")]
    even_alpha: Exact,
    shift: Exact,
    residual: Exact,
    #[serde(rename = "closedFormResidual")]
    closed_form_residual: Exact,
}

#[derive(Serialize)]
struct TransformDoc {
    #[serde(rename = "schemaVersion")]
    schema_version: u32,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "removedLevel")]
    removed_level: Exact,
    #[serde(rename = "K")]
    k: Vec<Exact>,
    b: Vec<Exact>,
    u: Vec<Exact>,
    couplings: Vec<Float>,
    fields: Vec<Float>,
    #[serde(skip_serializing_if = "Option::is_none")]
    link: Option<LinkDoc>,
}

fn transform(chain: &Path, remove: RemoveArg, out: Option<&Path>) -> Outcome {
    let doc = read_document(chain)?;
    let p = doc.parameters().map_err(CliError::Usage)?;
    let rec = doc.recurrence().map_err(CliError::Usage)?;
    let levels = bi_grid(&p)?.ascending();
    let level = match remove {
        RemoveArg::Top => p.n(),
        RemoveArg::Bottom => 0,
    };
    let data = christoffel_transform(&rec, &levels, level)?;
    let reduced = build_jacobi(&data.transformed)?;

    let link = if remove == RemoveArg::Top && p.parity() == Parity::Odd && p.n() >= 3 && p.alpha() == p.beta() {
        let link = verify_christoffel_link(p.n(), p.alpha().clone())?;
        Some(LinkDoc {
            even_n: link.even_parameters.n(),
            even_alpha: link.even_parameters.alpha().into(),
            shift: (&link.shift).into(),
            residual: (&link.residual).into(),
            closed_form_residual: (&link.closed_form_residual).into(),
        })
    } else {
        None
    };
    let exact = |v: &[Rational]| v.iter().map(Exact::from).collect::<Vec<_>>();
    let floats = |v: &[f64]| v.iter().copied().map(Float).collect::<Vec<_>>();
    let out_doc = TransformDoc {
        schema_version: SCHEMA_VERSION,
        n: data.transformed.n(),
        removed_level: (&data.removed_level).into(),
        k: exact(&data.k),
        b: exact(data.transformed.b()),
        u: exact(data.transformed.interior_u()),
        couplings: floats(reduced.couplings()),
        fields: floats(reduced.fields()),
        link,
    };
    emit(&to_json(&out_doc), out)?;
    Ok(0)
}

#[derive(Serialize)]
struct ReconstructDoc {
    #[serde(rename = "schemaVersion")]
    schema_version: u32,
    #[serde(rename = "N")]
    n: usize,
    spectrum: Vec<Float>,
    weights: Vec<Float>,
    b: Vec<Float>,
    u: Vec<Float>,
    #[serde(rename = "maxRelativeDeviation")]
    max_relative_deviation: Float,
    #[serde(rename = "withinTolerance")]
    within_tolerance: bool,
}

fn reconstruct(chain: &Path, tol: f64, out: Option<&Path>) -> Outcome {
    let doc = read_document(chain)?;
    let chain = doc.chain().map_err(CliError::Usage)?;
    let dec = eigensystem(&chain)?;
    let weights = dec.weights();
    let rec = stieltjes_reconstruct(&dec.eigenvalues, &weights)?;

    let b_scale = chain.fields().iter().fold(1.0_f64, |m, b| m.max(b.abs()));
    let mut worst = 0.0_f64;
    for (got, want) in rec.b().iter().zip(chain.fields()) {
        worst = worst.max((got - want).abs() / b_scale);
    }
    for (got, j) in rec.interior_u().iter().zip(chain.couplings()) {
        let want = j * j;
        worst = worst.max((got - want).abs() / want);
    }
    let within = worst <= tol;
    let floats = |v: &[f64]| v.iter().copied().map(Float).collect::<Vec<_>>();
    let out_doc = ReconstructDoc {
        schema_version: SCHEMA_VERSION,
        n: chain.n(),
        spectrum: floats(&dec.eigenvalues),
        weights: floats(&weights),
        b: floats(rec.b()),
        u: floats(rec.interior_u()),
        max_relative_deviation: Float(worst),
        within_tolerance: within,
    };
    emit(&to_json(&out_doc), out)?;
    Ok(if within { 0 } else { 1 })
}

#[derive(Serialize)]
struct WeightsDoc {
    #[serde(rename = "schemaVersion")]
    schema_version: u32,
    #[serde(rename = "N")]
    n: usize,
    grid: Vec<Exact>,
    #[serde(rename = "sortPermutation")]
    sort_permutation: Vec<usize>,
    w: Vec<Exact>,
    kappa0: Exact,
    /// Closed-form weights, ascending order, unit sum.
    normalized: Vec<Float>,
    /// `1/|P'_{N+1}(x_s)|`, ascending order, unit sum.
    reflection: Vec<Float>,
    #[serde(rename = "maxDeviation")]
    max_deviation: Float,
    #[serde(rename = "mirrorWeights")]
    mirror_weights: bool,
}

fn weights(source: &Source, tol: f64, out: Option<&Path>) -> Outcome {
    let p = parameters(source)?;
    let grid = bi_grid(&p)?;
    let table = closed_form_weights(&p)?;
    let normalized = table.normalized_ascending(&grid);
    let levels: Vec<f64> = grid.ascending().iter().map(Scalar::to_f64).collect();
    let reflection = reflection_weights(&levels)?;
    let deviation = normalized
        .iter()
        .zip(&reflection)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let floats = |v: &[f64]| v.iter().copied().map(Float).collect::<Vec<_>>();
    let out_doc = WeightsDoc {
        schema_version: SCHEMA_VERSION,
        n: p.n(),
        grid: grid.points().iter().map(Exact::from).collect(),
        sort_permutation: grid.sort_permutation().to_vec(),
        w: table.w.iter().map(Exact::from).collect(),
        kappa0: (&table.kappa0).into(),
        normalized: floats(&normalized),
        reflection: floats(&reflection),
        max_deviation: Float(deviation),
        mirror_weights: deviation <= tol,
    };
    emit(&to_json(&out_doc), out)?;
    Ok(0)
}
