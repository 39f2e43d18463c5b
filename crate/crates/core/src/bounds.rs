//! Speed bounds on `J_max·t₀`, step-by-step audits of both lower-bound
//! arguments, saturation scans and a randomized search for violations.

use std::f64::consts::PI;
use std::io::{self, Write};
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{
    eigen_side_traces, mirror_trace_h, mirror_trace_h2, traceless_shift, ChainSpec,
};
use crate::eigen::{classify_parity, decompose, EigenError};
use crate::pst::{certify, fmt_sig, CertifyConfig, PstCertificate, PstError, Transfer};
use crate::synthesis::{
    canonical_chain, random_admissible_spectrum, synthesize, ChainFamily, SpectrumSpec,
    SynthesisError,
};

/// Relative tolerance on the saturation ratio and on audit slacks.
pub const RATIO_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("chain does not admit perfect state transfer: {0}")]
    NotAdmissible(String),
    #[error(transparent)]
    Pst(#[from] PstError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
    #[error(transparent)]
    Chain(#[from] crate::chain::ChainError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n_sites: usize) -> Self {
        if n_sites.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Lower bound on `J_max·t₀`: `πN/4` for even `N`, `π√(N²−1)/4` for odd `N`.
pub fn bound_value(n_sites: usize) -> f64 {
    let n = n_sites as f64;
    match Parity::of(n_sites) {
        Parity::Even => PI * n / 4.0,
        Parity::Odd => PI * (n * n - 1.0).sqrt() / 4.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n_sites: usize,
    pub parity: Parity,
    pub j_max: f64,
    pub t0: f64,
    /// `J_max·t₀`.
    pub product: f64,
    pub bound: f64,
    /// `product / bound`.
    pub ratio: f64,
    /// `λ_N ≤ −(N−1)π/(2t₀)` up to `1e−9·width`, on the traceless spectrum.
    pub lambda_min_ok: bool,
    /// `B_c` after the traceless shift, odd `N` only.
    pub central_field: Option<f64>,
}

/// Relative slack `(lhs − rhs)/max(|lhs|, |rhs|)`; negative means the inequality fails.
pub fn slack(lhs: f64, rhs: f64) -> f64 {
    let scale = lhs.abs().max(rhs.abs());
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs) / scale
    }
}

/// Steps of the `Tr(S h)` argument.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvenAudit {
    /// `Tr(S h) = 2 J_{N/2}` from the matrix.
    pub trace_matrix: f64,
    /// `Σ (λ_{2n−1} − λ_{2n})`.
    pub trace_eigen: f64,
    /// `slack(λ_{2n−1} − λ_{2n}, π/t₀)`, minimized over pairs.
    pub gap_floor_slack: f64,
    /// `slack(2 J_max, 2 J_{N/2})`.
    pub j_max_slack: f64,
    /// `slack(Σ (λ_{2n−1} − λ_{2n}), (N/2)·π/t₀)`.
    pub pair_sum_slack: f64,
    /// `slack(J_max·t₀, πN/4)`.
    pub final_slack: f64,
}

/// Steps of the `Tr(S h²)` argument, including the exact `B_c²` term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OddAudit {
    /// `Tr(S h²) = B_c² + 4 J²_{(N−1)/2}` from the matrix.
    pub trace_matrix: f64,
    /// `Σ (−1)^{n+1} λ_n²`.
    pub trace_eigen: f64,
    pub central_field_sq: f64,
    /// `λ_N² − (π/t₀) λ_N`.
    pub lambda_n_term: f64,
    /// `slack(4 J_max² + B_c², Σ (−1)^{n+1} λ_n²)`.
    pub j_max_slack: f64,
    /// `slack(Σ (−1)^{n+1} λ_n², λ_N² − (π/t₀) λ_N)`; the pairwise gap step.
    pub gap_step_slack: f64,
    /// `slack(−(N−1)π/(2t₀), λ_N)`.
    pub lambda_constraint_slack: f64,
    /// `slack(λ_N² − (π/t₀)λ_N, (N²−1)π²/(4t₀²))`.
    pub lambda_n_bound_slack: f64,
    /// `slack((4 J_max² + B_c²)·t₀², π²(N²−1)/4)`: the inequality the argument proves.
    pub corrected_final_slack: f64,
    /// `slack(J_max·t₀, π√(N²−1)/4)`: the stated bound.
    pub final_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "parity", rename_all = "lowercase")]
pub enum ProofAudit {
    Even(EvenAudit),
    Odd(OddAudit),
}

impl ProofAudit {
    /// `(step name, slack)` for every inequality step.
    pub fn inequality_slacks(&self) -> Vec<(&'static str, f64)> {
        match self {
            ProofAudit::Even(a) => vec![
                ("gap_floor", a.gap_floor_slack),
                ("j_max", a.j_max_slack),
                ("pair_sum", a.pair_sum_slack),
                ("final", a.final_slack),
            ],
            ProofAudit::Odd(a) => vec![
                ("j_max", a.j_max_slack),
                ("gap_step", a.gap_step_slack),
                ("lambda_constraint", a.lambda_constraint_slack),
                ("lambda_n_bound", a.lambda_n_bound_slack),
                ("corrected_final", a.corrected_final_slack),
                ("final", a.final_slack),
            ],
        }
    }

    /// Relative mismatch between the matrix and eigen sides of the trace identity.
    pub fn identity_residual(&self) -> f64 {
        let (m, e) = match self {
            ProofAudit::Even(a) => (a.trace_matrix, a.trace_eigen),
            ProofAudit::Odd(a) => (a.trace_matrix, a.trace_eigen),
        };
        slack(m, e).abs()
    }

    /// Steps whose slack falls below `−tol`.
    pub fn negative_steps(&self, tol: f64) -> Vec<(&'static str, f64)> {
        self.inequality_slacks()
            .into_iter()
            .filter(|(_, s)| *s < -tol)
            .collect()
    }
}

/// Certificate, bound report and proof audit of one chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainAudit {
    pub certificate: PstCertificate,
    pub report: BoundReport,
    pub audit: ProofAudit,
}

/// Audits both bound arguments on an admissible chain.
///
/// The chain is shifted to zero trace first; this moves the spectrum but not
/// `t₀` or the couplings.
pub fn audit_chain(chain: &ChainSpec) -> Result<(BoundReport, ProofAudit), BoundsError> {
    let full = audit_chain_full(chain)?;
    Ok((full.report, full.audit))
}

pub fn audit_chain_full(chain: &ChainSpec) -> Result<ChainAudit, BoundsError> {
    let chain = traceless_shift(chain);
    let certificate = certify(&chain, &CertifyConfig::default())?;
    let transfer = match certificate.transfer() {
        Some(t) => t.clone(),
        None => {
            let reason = certificate
                .failure()
                .map(|f| f.to_string())
                .unwrap_or_default();
            return Err(BoundsError::NotAdmissible(reason));
        }
    };
    let spectral = classify_parity(decompose(&chain)?, &chain)?;
    let (alt_sum, alt_sq_sum) = eigen_side_traces(&spectral)?;
    let lambda = &spectral.eigenvalues;
    let n = chain.n_sites();
    let nf = n as f64;
    let unit = transfer.unit();
    let t0 = transfer.t0;
    let j_max = chain.j_max();
    let lambda_n = lambda[n - 1];
    let width = spectral.width();
    let lambda_n_cap = -(nf - 1.0) * unit / 2.0;
    let bound = bound_value(n);
    let product = j_max * t0;

    let audit = match Parity::of(n) {
        Parity::Even => {
            let gap_floor_slack = lambda
                .chunks_exact(2)
                .map(|p| slack(p[0] - p[1], unit))
                .fold(f64::INFINITY, f64::min);
            let j_mid = chain.couplings()[n / 2 - 1];
            ProofAudit::Even(EvenAudit {
                trace_matrix: mirror_trace_h(&chain),
                trace_eigen: alt_sum,
                gap_floor_slack,
                j_max_slack: slack(2.0 * j_max, 2.0 * j_mid),
                pair_sum_slack: slack(alt_sum, nf / 2.0 * unit),
                final_slack: slack(product, bound),
            })
        }
        Parity::Odd => {
            let b_c = chain.central_field().unwrap_or(0.0);
            let lambda_n_term = lambda_n * lambda_n - unit * lambda_n;
            ProofAudit::Odd(OddAudit {
                trace_matrix: mirror_trace_h2(&chain),
                trace_eigen: alt_sq_sum,
                central_field_sq: b_c * b_c,
                lambda_n_term,
                j_max_slack: slack(4.0 * j_max * j_max + b_c * b_c, alt_sq_sum),
                gap_step_slack: slack(alt_sq_sum, lambda_n_term),
                lambda_constraint_slack: slack(lambda_n_cap, lambda_n),
                lambda_n_bound_slack: slack(lambda_n_term, (nf * nf - 1.0) * unit * unit / 4.0),
                corrected_final_slack: slack(
                    (4.0 * j_max * j_max + b_c * b_c) * t0 * t0,
                    PI * PI * (nf * nf - 1.0) / 4.0,
                ),
                final_slack: slack(product, bound),
            })
        }
    };

    let report = BoundReport {
        n_sites: n,
        parity: Parity::of(n),
        j_max,
        t0,
        product,
        bound,
        ratio: product / bound,
        lambda_min_ok: lambda_n <= lambda_n_cap + 1e-9 * width,
        central_field: chain.central_field(),
    };
    Ok(ChainAudit {
        certificate,
        report,
        audit,
    })
}

/// One row of a saturation scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub n_sites: usize,
    pub outcome: Result<BoundReport, BoundsError>,
}

/// Audits `canonical_chain(N)` for each `N` in the range; failures stay per row.
pub fn saturation_scan(range: RangeInclusive<usize>) -> Vec<ScanRow> {
    range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| ScanRow {
            n_sites: n,
            outcome: canonical_chain(n, ChainFamily::EquallySpaced)
                .map_err(BoundsError::from)
                .and_then(|c| audit_chain(&c).map(|(r, _)| r)),
        })
        .collect()
}

pub const SCAN_CSV_HEADER: &str = "N,parity,J_max,t0,product,bound,ratio,lambda_min_ok,central_field";

/// Writes scan rows as CSV; failed rows are skipped with a warning.
pub fn write_scan_csv<W: Write>(rows: &[ScanRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{SCAN_CSV_HEADER}")?;
    for row in rows {
        match &row.outcome {
            Ok(r) => writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.n_sites,
                r.parity,
                fmt_sig(r.j_max),
                fmt_sig(r.t0),
                fmt_sig(r.product),
                fmt_sig(r.bound),
                fmt_sig(r.ratio),
                r.lambda_min_ok,
                r.central_field.map(fmt_sig).unwrap_or_default(),
            )?,
            Err(e) => log::warn!("scan row N = {} failed: {e}", row.n_sites),
        }
    }
    Ok(())
}

/// Parameters of a falsification search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n_sites: usize,
    pub samples: usize,
    pub max_multiplier: u32,
    pub seed: u64,
}

/// A synthesized sample and its audit, kept as evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub sample: usize,
    pub spectrum: SpectrumSpec,
    pub eigenvalues: Vec<f64>,
    pub chain: ChainSpec,
    pub certificate: PstCertificate,
    pub report: BoundReport,
    pub audit: ProofAudit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlackFinding {
    pub sample: usize,
    pub step: String,
    pub slack: f64,
    pub central_field: Option<f64>,
}

/// Number of individual slack findings kept in a report.
pub const MAX_RECORDED_FINDINGS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub evaluated: usize,
    pub failed: usize,
    pub min_ratio: Option<f64>,
    pub min_ratio_witness: Option<Witness>,
    /// Samples where `λ_N ≤ −(N−1)π/(2t₀)` holds with equality.
    pub lambda_constraint_active: usize,
    /// Samples where that constraint fails; expected zero.
    pub lambda_constraint_violations: usize,
    /// Samples with `J_max·t₀` below the bound by more than [`RATIO_TOL`].
    pub bound_violations: Vec<Witness>,
    /// Samples with at least one negative audit slack.
    pub negative_slack_samples: usize,
    /// Up to [`MAX_RECORDED_FINDINGS`] individual negative slacks.
    pub negative_slack_findings: Vec<SlackFinding>,
    /// Largest `|B_c|` seen (odd `N`).
    pub max_central_field: Option<f64>,
}

impl SearchReport {
    pub fn holds(&self) -> bool {
        self.bound_violations.is_empty()
            && self.min_ratio.is_some_and(|r| r >= 1.0 - RATIO_TOL)
    }
}

/// Per-sample seed derived from the search seed (SplitMix64 finalizer).
pub fn sample_seed(seed: u64, sample: usize) -> u64 {
    let mut z = seed ^ (sample as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Audits a synthesized chain for a random admissible spectrum.
pub fn audit_sample(config: &SearchConfig, sample: usize) -> Result<Witness, BoundsError> {
    let spectrum = random_admissible_spectrum(
        config.n_sites,
        config.max_multiplier,
        1.0,
        sample_seed(config.seed, sample),
    )?;
    let eigenvalues = spectrum.eigenvalues()?;
    let chain = synthesize(&spectrum)?;
    let ChainAudit {
        certificate,
        report,
        audit,
    } = audit_chain_full(&chain)?;
    Ok(Witness {
        sample,
        spectrum,
        eigenvalues,
        chain,
        certificate,
        report,
        audit,
    })
}

#[derive(Default)]
struct Tally {
    evaluated: usize,
    failed: usize,
    best: Option<Witness>,
    active: usize,
    violations: usize,
    bound_violations: Vec<Witness>,
    negative_samples: usize,
    findings: Vec<SlackFinding>,
    max_central_field: Option<f64>,
}

impl Tally {
    fn observe(mut self, outcome: Result<Witness, (usize, BoundsError)>) -> Self {
        let w = match outcome {
            Ok(w) => w,
            Err((sample, e)) => {
                log::warn!("sample {sample} skipped: {e}");
                self.failed += 1;
                return self;
            }
        };
        self.evaluated += 1;
        if let ProofAudit::Odd(a) = &w.audit {
            if a.lambda_constraint_slack.abs() <= RATIO_TOL {
                self.active += 1;
            }
        }
        if !w.report.lambda_min_ok {
            self.violations += 1;
        }
        if let Some(b) = w.report.central_field {
            self.max_central_field = Some(self.max_central_field.unwrap_or(0.0).max(b.abs()));
        }
        let negative = w.audit.negative_steps(RATIO_TOL);
        if !negative.is_empty() {
            self.negative_samples += 1;
            for (step, slack) in negative {
                self.findings.push(SlackFinding {
                    sample: w.sample,
                    step: step.to_string(),
                    slack,
                    central_field: w.report.central_field,
                });
            }
        }
        if w.report.ratio < 1.0 - RATIO_TOL {
            self.bound_violations.push(w.clone());
        }
        if self.best.as_ref().is_none_or(|b| better(&w, b)) {
            self.best = Some(w);
        }
        self
    }

    fn merge(mut self, mut other: Tally) -> Self {
        self.evaluated += other.evaluated;
        self.failed += other.failed;
        self.active += other.active;
        self.violations += other.violations;
        self.negative_samples += other.negative_samples;
        self.bound_violations.append(&mut other.bound_violations);
        self.findings.append(&mut other.findings);
        self.max_central_field = match (self.max_central_field, other.max_central_field) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(if better(&b, &a) { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Lower ratio wins; ties go to the lower sample index.
fn better(a: &Witness, b: &Witness) -> bool {
    match a.report.ratio.total_cmp(&b.report.ratio) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Equal => a.sample < b.sample,
        std::cmp::Ordering::Greater => false,
    }
}

/// Draws random admissible spectra, synthesizes and audits each one.
///
/// Deterministic per seed regardless of thread count.
pub fn falsify_search(config: &SearchConfig) -> SearchReport {
    let tally = (0..config.samples)
        .into_par_iter()
        .map(|i| audit_sample(config, i).map_err(|e| (i, e)))
        .fold(Tally::default, Tally::observe)
        .reduce(Tally::default, Tally::merge);

    let mut bound_violations = tally.bound_violations;
    bound_violations.sort_by_key(|w| w.sample);
    let mut findings = tally.findings;
    findings.sort_by(|a, b| a.sample.cmp(&b.sample).then_with(|| a.step.cmp(&b.step)));
    findings.truncate(MAX_RECORDED_FINDINGS);

    SearchReport {
        config: *config,
        evaluated: tally.evaluated,
        failed: tally.failed,
        min_ratio: tally.best.as_ref().map(|w| w.report.ratio),
        min_ratio_witness: tally.best,
        lambda_constraint_active: tally.active,
        lambda_constraint_violations: tally.violations,
        bound_violations,
        negative_slack_samples: tally.negative_samples,
        negative_slack_findings: findings,
        max_central_field: tally.max_central_field,
    }
}

/// Multipliers of a transfer, for display.
pub fn multipliers_of(transfer: &Transfer) -> String {
    transfer
        .multipliers
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn bound_examples() {
        assert_relative_eq!(bound_value(2), FRAC_PI_2);
        assert_relative_eq!(bound_value(3), PI / 2f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(bound_value(4), PI);
    }

    #[test]
    fn canonical_four_saturates() {
        let c = canonical_chain(4, ChainFamily::EquallySpaced).unwrap();
        let (r, a) = audit_chain(&c).unwrap();
        assert_relative_eq!(r.j_max, 2.0, max_relative = 1e-15);
        assert_relative_eq!(r.t0, FRAC_PI_2, max_relative = 1e-12);
        assert!((r.ratio - 1.0).abs() < 1e-12);
        assert!(r.lambda_min_ok);
        assert_eq!(r.central_field, None);
        assert!(a.identity_residual() < 1e-12);
        assert!(a.negative_steps(RATIO_TOL).is_empty());
    }

    #[test]
    fn canonical_five_saturates() {
        let c = canonical_chain(5, ChainFamily::EquallySpaced).unwrap();
        let (r, a) = audit_chain(&c).unwrap();
        assert_relative_eq!(r.j_max, 6f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(r.bound, PI * 24f64.sqrt() / 4.0, max_relative = 1e-15);
        assert!((r.ratio - 1.0).abs() < 1e-12);
        assert!(a.negative_steps(RATIO_TOL).is_empty());
    }

    #[test]
    fn central_field_chain_is_recorded() {
        let spec = SpectrumSpec::Structured { unit: 1.0, multipliers: vec![1, 3] };
        let c = synthesize(&spec).unwrap();
        let (r, a) = audit_chain(&c).unwrap();
        assert!(r.ratio >= 1.0);
        assert!(r.central_field.unwrap().abs() > 0.1);
        let ProofAudit::Odd(odd) = &a else { panic!("odd chain") };
        assert!(odd.central_field_sq > 0.01);
        assert!(a.identity_residual() < 1e-10);
    }

    #[test]
    fn audit_rejects_inadmissible() {
        let c = ChainSpec::from_couplings(vec![1.0, 2.0, 1.5]).unwrap();
        assert!(matches!(audit_chain(&c), Err(BoundsError::NotAdmissible(_))));
    }

    #[test]
    fn scan_closed_form() {
        let rows = saturation_scan(2..=7);
        assert_eq!(rows.len(), 6);
        for row in &rows {
            let r = row.outcome.as_ref().unwrap();
            let n = row.n_sites;
            let j = (((n / 2) * n.div_ceil(2)) as f64).sqrt();
            assert_relative_eq!(r.product, j * FRAC_PI_2, max_relative = 1e-12);
            assert!((r.ratio - 1.0).abs() < RATIO_TOL);
        }
        #[allow(clippy::reversed_empty_ranges)]
        let empty = saturation_scan(5..=4);
        assert!(empty.is_empty());
    }

    #[test]
    fn scan_csv_header_and_rows() {
        let rows = saturation_scan(2..=3);
        let mut buf = Vec::new();
        write_scan_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], SCAN_CSV_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("2,even,"));
        assert!(lines[2].starts_with("3,odd,"));
        assert!(lines[1].ends_with(",true,"));
    }

    #[test]
    fn two_site_search_always_saturates() {
        // a single gap g is its own unit: t₀ = π/g, J₁ = g/2, so J₁·t₀ = π/2
        let cfg = SearchConfig { n_sites: 2, samples: 50, max_multiplier: 7, seed: 3 };
        for i in 0..cfg.samples {
            let w = audit_sample(&cfg, i).unwrap();
            let SpectrumSpec::Structured { multipliers, .. } = &w.spectrum else { unreachable!() };
            let gap = f64::from(multipliers[0]);
            assert_relative_eq!(w.report.t0, PI / gap, max_relative = 1e-12);
            assert_relative_eq!(w.chain.couplings()[0], gap / 2.0, max_relative = 1e-12);
            assert_eq!(w.certificate.transfer().unwrap().multipliers, vec![1]);
            assert_relative_eq!(w.report.ratio, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn three_site_unit_cap_is_canonical() {
        let cfg = SearchConfig { n_sites: 3, samples: 20, max_multiplier: 1, seed: 9 };
        let report = falsify_search(&cfg);
        assert_eq!(report.evaluated, 20);
        assert!((report.min_ratio.unwrap() - 1.0).abs() < 1e-12);
        assert!(report.holds());
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = SearchConfig { n_sites: 5, samples: 300, max_multiplier: 5, seed: 42 };
        assert_eq!(falsify_search(&cfg), falsify_search(&cfg));
    }

    #[test]
    fn slack_sign() {
        assert!(slack(2.0, 1.0) > 0.0);
        assert!(slack(1.0, 2.0) < 0.0);
        assert_eq!(slack(0.0, 0.0), 0.0);
    }
}
