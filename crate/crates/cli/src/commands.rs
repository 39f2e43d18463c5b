//! Subcommand implementations. Each returns the process exit status.

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use log::info;
use pstlab_core::bounds::{audit_chain_full, write_scan_csv, ChainAudit};
use pstlab_core::chain::mirror_asymmetry;
use pstlab_core::pst::{fmt_sig, time_grid, EndToEndPropagator};
use pstlab_core::synthesis::synthesize_with_report;
use pstlab_core::{
    canonical_chain, certify, decompose, evolve_fidelity, falsify_search, is_mirror_symmetric,
    saturation_scan, BoundReport, CertifyConfig, ChainFamily, ChainSpec, PstCertificate,
    PstError, ProofAudit, SearchConfig, SpectrumSpec, SynthesisError,
};
use serde::{Deserialize, Serialize};

use crate::config::{CommandKind, RunConfig, SynthSource};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_INADMISSIBLE: u8 = 2;

pub fn run(config: &RunConfig) -> Result<u8> {
    match config.command {
        CommandKind::Analyze => analyze(config),
        CommandKind::Synth => synth(config),
        CommandKind::Evolve => evolve(config),
        CommandKind::Scan => scan(config),
        CommandKind::Search => search(config),
    }
}

/// Reads a chain file. Any JSON object with a `chain` member (such as an
/// analysis report) is accepted too, so reports can be fed back in.
pub fn read_chain(path: &Path) -> Result<ChainSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let body = match value.get("chain") {
        Some(inner) => inner.clone(),
        None => value,
    };
    serde_json::from_value(body).with_context(|| format!("invalid chain in {}", path.display()))
}

fn read_spectrum(path: &Path) -> Result<SpectrumSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| {
        format!(
            "invalid spectrum in {}: expected {{\"lambda\": [..]}} or {{\"unit\": u, \"multipliers\": [..]}}",
            path.display()
        )
    })
}

/// Opens `--output`, or standard output when absent.
fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut out = sink(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// Everything `analyze` knows about a chain.
#[derive(Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub chain: ChainSpec,
    pub mirror_symmetric: bool,
    pub mirror_asymmetry: f64,
    pub eigenvalues: Vec<f64>,
    /// Absent when the gaps share no unit within the multiplier cap.
    pub certificate: Option<PstCertificate>,
    pub verdict: String,
    pub fidelity_at_t0: Option<f64>,
    pub bound: Option<BoundReport>,
    pub audit: Option<ProofAudit>,
}

fn analyze(config: &RunConfig) -> Result<u8> {
    let path = config.input.as_deref().expect("validated");
    let chain = read_chain(path)?;
    let certify_config = CertifyConfig {
        symmetry_tol: config.symmetry_tol,
        ..CertifyConfig::default()
    };
    let eigenvalues = decompose(&chain)?.eigenvalues;
    let certificate = match certify(&chain, &certify_config) {
        Ok(c) => Some(c),
        Err(PstError::MultiplierOverflow { cap }) => {
            info!("gaps share no unit with multipliers up to {cap}");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let verdict = match &certificate {
        Some(c) => match c.failure() {
            None => "admissible".to_string(),
            Some(f) => f.to_string(),
        },
        None => format!(
            "gaps share no common unit with multipliers up to {}",
            certify_config.multiplier_cap
        ),
    };
    let transfer = certificate.as_ref().and_then(|c| c.transfer()).cloned();
    let admissible = transfer.is_some();
    let fidelity_at_t0 = match &transfer {
        Some(t) => Some(EndToEndPropagator::from_chain(&chain)?.fidelity(t.t0)),
        None => None,
    };
    let audited = match &transfer {
        Some(_) => match audit_chain_full(&chain) {
            Ok(ChainAudit { report, audit, .. }) => Some((report, audit)),
            Err(e) => {
                log::warn!("bound audit skipped: {e}");
                None
            }
        },
        None => None,
    };
    let (bound, audit) = audited.unzip();
    let report = AnalysisReport {
        mirror_symmetric: is_mirror_symmetric(&chain, config.symmetry_tol),
        mirror_asymmetry: mirror_asymmetry(&chain),
        chain,
        eigenvalues,
        certificate,
        verdict,
        fidelity_at_t0,
        bound,
        audit,
    };

    let mut stdout = io::stdout().lock();
    stdout.write_all(render(&report).as_bytes())?;
    stdout.flush()?;
    if let Some(out) = config.output.as_deref() {
        write_json(Some(out), &report)?;
    }
    Ok(if admissible {
        EXIT_OK
    } else {
        EXIT_INADMISSIBLE
    })
}

fn render(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let join = |xs: &[f64]| xs.iter().map(|&x| fmt_sig(x)).collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "sites: {}", r.chain.n_sites());
    let _ = writeln!(
        s,
        "mirror symmetric: {} (asymmetry {})",
        if r.mirror_symmetric { "yes" } else { "no" },
        fmt_sig(r.mirror_asymmetry)
    );
    let _ = writeln!(s, "spectrum: {}", join(&r.eigenvalues));
    let _ = writeln!(s, "verdict: {}", r.verdict);
    if let Some(t) = r.certificate.as_ref().and_then(|c| c.transfer()) {
        let _ = writeln!(s, "t0: {}", fmt_sig(t.t0));
        let _ = writeln!(s, "phi: {}", fmt_sig(t.phi));
        let m: Vec<String> = t.multipliers.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "multipliers: {}", m.join(","));
    }
    if let Some(f) = r.fidelity_at_t0 {
        let _ = writeln!(s, "fidelity at t0: {}", fmt_sig(f));
    }
    if let Some(b) = &r.bound {
        let _ = writeln!(s, "J_max: {}", fmt_sig(b.j_max));
        let _ = writeln!(s, "J_max*t0: {}", fmt_sig(b.product));
        let _ = writeln!(s, "bound ({}): {}", b.parity, fmt_sig(b.bound));
        let _ = writeln!(s, "ratio: {}", fmt_sig(b.ratio));
        let _ = writeln!(
            s,
            "lambda_N constraint: {}",
            if b.lambda_min_ok { "holds" } else { "violated" }
        );
        if let Some(c) = b.central_field {
            let _ = writeln!(s, "central field: {}", fmt_sig(c));
        }
    }
    if let Some(a) = &r.audit {
        let _ = writeln!(s, "trace identity residual: {}", fmt_sig(a.identity_residual()));
        for (step, slack) in a.inequality_slacks() {
            let _ = writeln!(s, "slack {step}: {}", fmt_sig(slack));
        }
    }
    s
}

fn synth(config: &RunConfig) -> Result<u8> {
    let (chain, residual) = match config.synth_source.as_ref().expect("validated") {
        SynthSource::Canonical(n) => {
            let chain = canonical_chain(*n, ChainFamily::EquallySpaced)?;
            let got = decompose(&chain)?.eigenvalues;
            let top = (*n - 1) as f64;
            let residual = got
                .iter()
                .enumerate()
                .map(|(k, l)| (l - (top - 2.0 * k as f64)).abs() / top)
                .fold(0.0, f64::max);
            (chain, residual)
        }
        SynthSource::File(path) => {
            let spectrum = read_spectrum(path)?;
            let report = synthesize_with_report(&spectrum).map_err(|e| match e {
                SynthesisError::NumericalBreakdown { .. } => anyhow!(
                    "{e}; reduce N or the ratio between largest and smallest gap"
                ),
                other => other.into(),
            })?;
            (report.chain, report.roundtrip_residual)
        }
    };
    write_json(config.output.as_deref(), &chain)?;
    eprintln!("round-trip spectral residual: {}", fmt_sig(residual));
    Ok(EXIT_OK)
}

fn evolve(config: &RunConfig) -> Result<u8> {
    let chain = read_chain(config.input.as_deref().expect("validated"))?;
    let certify_config = CertifyConfig {
        symmetry_tol: config.symmetry_tol,
        ..CertifyConfig::default()
    };
    let t0 = match certify(&chain, &certify_config) {
        Ok(c) => c.transfer().map(|t| t.t0),
        Err(PstError::MultiplierOverflow { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let trace = evolve_fidelity(&chain, &time_grid(config.t_max, config.steps))?;
    let mut out = sink(config.output.as_deref())?;
    trace.write_csv(&mut out)?;
    match t0 {
        Some(t0) => writeln!(out, "# t0={}", fmt_sig(t0))?,
        None => writeln!(out, "# no certificate")?,
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn scan(config: &RunConfig) -> Result<u8> {
    let range = config.n_range.expect("validated").to_range();
    eprintln!("scanning N = {}..={}", range.start(), range.end());
    let rows = saturation_scan(range);
    let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
    let mut out = sink(config.output.as_deref())?;
    write_scan_csv(&rows, &mut out)?;
    out.flush()?;
    eprintln!("{} rows, {failed} failed", rows.len());
    Ok(if failed == rows.len() { EXIT_ERROR } else { EXIT_OK })
}

fn search(config: &RunConfig) -> Result<u8> {
    let search = SearchConfig {
        n_sites: config.n_range.expect("validated").start,
        samples: config.samples,
        max_multiplier: config.cap,
        seed: config.seed,
    };
    eprintln!(
        "searching N = {}, {} samples, multipliers <= {}, seed {}",
        search.n_sites, search.samples, search.max_multiplier, search.seed
    );
    let report = falsify_search(&search);
    eprintln!(
        "evaluated {}, failed {}, min ratio {}, bound violations {}",
        report.evaluated,
        report.failed,
        report.min_ratio.map(fmt_sig).unwrap_or_else(|| "n/a".into()),
        report.bound_violations.len()
    );
    write_json(config.output.as_deref(), &report)?;
    Ok(if report.evaluated == 0 { EXIT_ERROR } else { EXIT_OK })
}
