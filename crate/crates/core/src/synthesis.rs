//! Inverse eigenvalue problem: the mirror-symmetric Jacobi matrix with a
//! prescribed spectrum, plus canonical and random admissible spectra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{ChainError, ChainSpec};
use crate::eigen::{decompose, EigenError};

/// Chains longer than this are synthesized but flagged in reports.
pub const SYNTHESIS_WORKING_RANGE: usize = 64;

/// Lanczos breakdown threshold relative to the spectral width.
const BREAKDOWN_TOL: f64 = 1e-13;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthesisError {
    #[error("spectrum needs at least 2 eigenvalues, got {0}")]
    TooShort(usize),
    #[error("eigenvalues must be finite and strictly descending (violated at position {0})")]
    NotDescending(usize),
    #[error("multiplier {value} at position {index} is not an odd positive integer")]
    EvenMultiplier { index: usize, value: u32 },
    #[error("unit must be positive and finite, got {0}")]
    BadUnit(f64),
    #[error("multiplier cap {0} is not an odd positive integer")]
    BadCap(u32),
    #[error("Lanczos breakdown at step {step}: off-diagonal {value:e} below threshold; reduce N or the gap ratio")]
    NumericalBreakdown { step: usize, value: f64 },
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// A target spectrum, either raw or as odd gap multipliers of a unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpectrumSpec {
    Raw {
        lambda: Vec<f64>,
    },
    Structured {
        unit: f64,
        multipliers: Vec<u32>,
    },
}

impl SpectrumSpec {
    pub fn n_sites(&self) -> usize {
        match self {
            SpectrumSpec::Raw { lambda } => lambda.len(),
            SpectrumSpec::Structured { multipliers, .. } => multipliers.len() + 1,
        }
    }

    /// Descending eigenvalues. The structured form is anchored at `λ_N = 0`,
    /// stacked upwards by `m_n·u` and shifted to zero trace.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, SynthesisError> {
        match self {
            SpectrumSpec::Raw { lambda } => {
                if lambda.len() < 2 {
                    return Err(SynthesisError::TooShort(lambda.len()));
                }
                if let Some(i) = lambda.iter().position(|x| !x.is_finite()) {
                    return Err(SynthesisError::NotDescending(i));
                }
                if let Some(i) = lambda.windows(2).position(|w| w[0] <= w[1]) {
                    return Err(SynthesisError::NotDescending(i));
                }
                Ok(lambda.clone())
            }
            SpectrumSpec::Structured { unit, multipliers } => {
                if !(unit.is_finite() && *unit > 0.0) {
                    return Err(SynthesisError::BadUnit(*unit));
                }
                if multipliers.is_empty() {
                    return Err(SynthesisError::TooShort(1));
                }
                if let Some(index) = multipliers.iter().position(|m| m % 2 == 0) {
                    return Err(SynthesisError::EvenMultiplier {
                        index,
                        value: multipliers[index],
                    });
                }
                let mut lambda = vec![0.0; multipliers.len() + 1];
                for (n, &m) in multipliers.iter().enumerate().rev() {
                    lambda[n] = lambda[n + 1] + f64::from(m) * unit;
                }
                let mean = lambda.iter().sum::<f64>() / lambda.len() as f64;
                lambda.iter_mut().for_each(|x| *x -= mean);
                Ok(lambda)
            }
        }
    }
}

/// Normalized end weights `w_n ∝ 1/∏_{m≠n}|λ_n − λ_m|`, evaluated in log space.
pub fn end_weights(eigenvalues: &[f64]) -> Vec<f64> {
    let logs: Vec<f64> = eigenvalues
        .iter()
        .enumerate()
        .map(|(n, &ln)| {
            -eigenvalues
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != n)
                .map(|(_, &lm)| (ln - lm).abs().ln())
                .sum::<f64>()
        })
        .collect();
    let shift = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = logs.iter().map(|l| (l - shift).exp()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

/// Builds the mirror-symmetric chain whose spectrum is `spectrum`.
///
/// Runs Lanczos with full reorthogonalization on `diag(λ)` from the start
/// vector `(√w_n)`; the resulting tridiagonal matrix is the chain.
pub fn synthesize(spectrum: &SpectrumSpec) -> Result<ChainSpec, SynthesisError> {
    let lambda = spectrum.eigenvalues()?;
    let n = lambda.len();
    let width = lambda[0] - lambda[n - 1];
    let start: Vec<f64> = end_weights(&lambda).into_iter().map(f64::sqrt).collect();

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut diagonal = Vec::with_capacity(n);
    let mut couplings = Vec::with_capacity(n - 1);
    let mut q = start;
    for step in 0..n {
        let aq: Vec<f64> = q.iter().zip(&lambda).map(|(x, l)| x * l).collect();
        let alpha = dot(&q, &aq);
        diagonal.push(alpha);
        basis.push(q);
        if step + 1 == n {
            break;
        }
        let mut r = aq;
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for v in &basis {
                let c = dot(v, &r);
                r.iter_mut().zip(v).for_each(|(ri, vi)| *ri -= c * vi);
            }
        }
        let beta = dot(&r, &r).sqrt();
        // negated so that a NaN residual also counts as breakdown
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(beta > BREAKDOWN_TOL * width) {
            return Err(SynthesisError::NumericalBreakdown { step: step + 1, value: beta });
        }
        couplings.push(beta);
        q = r.into_iter().map(|x| x / beta).collect();
    }
    Ok(ChainSpec::new(diagonal, couplings)?)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Synthesized chain with its round-trip spectral residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisReport {
    pub chain: ChainSpec,
    /// `max_n |λ_n(chain) − λ_n| / max|λ|`.
    pub roundtrip_residual: f64,
    /// `N` beyond [`SYNTHESIS_WORKING_RANGE`].
    pub beyond_working_range: bool,
}

pub fn synthesize_with_report(spectrum: &SpectrumSpec) -> Result<SynthesisReport, SynthesisError> {
    let target = spectrum.eigenvalues()?;
    let chain = synthesize(spectrum)?;
    let got = decompose(&chain)?.eigenvalues;
    let scale = target.iter().fold(f64::MIN_POSITIVE, |a, x| a.max(x.abs()));
    let roundtrip_residual = got
        .iter()
        .zip(&target)
        .map(|(a, b)| (a - b).abs() / scale)
        .fold(0.0, f64::max);
    let beyond_working_range = chain.n_sites() > SYNTHESIS_WORKING_RANGE;
    if beyond_working_range {
        log::warn!(
            "synthesizing N = {} beyond the double-precision working range of {}",
            chain.n_sites(),
            SYNTHESIS_WORKING_RANGE
        );
    }
    Ok(SynthesisReport {
        chain,
        roundtrip_residual,
        beyond_working_range,
    })
}

/// Chain families with closed-form couplings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainFamily {
    /// `J_n = √(n(N−n))`, `B = 0`: spectrum `N−1, N−3, …, −(N−1)`.
    EquallySpaced,
}

pub fn canonical_chain(n_sites: usize, family: ChainFamily) -> Result<ChainSpec, ChainError> {
    match family {
        ChainFamily::EquallySpaced => {
            if n_sites < 2 {
                return Err(ChainError::TooShort(n_sites));
            }
            let couplings = (1..n_sites)
                .map(|n| ((n * (n_sites - n)) as f64).sqrt())
                .collect();
            ChainSpec::from_couplings(couplings)
        }
    }
}

/// Multipliers drawn uniformly from `{1, 3, …, max_multiplier}`; deterministic per seed.
pub fn random_admissible_spectrum(
    n_sites: usize,
    max_multiplier: u32,
    unit: f64,
    seed: u64,
) -> Result<SpectrumSpec, SynthesisError> {
    if n_sites < 2 {
        return Err(SynthesisError::TooShort(n_sites));
    }
    if max_multiplier.is_multiple_of(2) {
        return Err(SynthesisError::BadCap(max_multiplier));
    }
    if !(unit.is_finite() && unit > 0.0) {
        return Err(SynthesisError::BadUnit(unit));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choices = max_multiplier.div_ceil(2);
    let multipliers = (1..n_sites)
        .map(|_| 2 * rng.gen_range(0..choices) + 1)
        .collect();
    Ok(SpectrumSpec::Structured { unit, multipliers })
}
