//! Perfect-state-transfer certification and transfer-fidelity evolution.

use std::f64::consts::PI;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{is_mirror_symmetric, ChainSpec, DEFAULT_SYMMETRY_TOL};
use crate::eigen::{decompose, EigenError, SpectralData};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PstError {
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error("no common unit divides every gap within multiplier cap {cap}; spectrum is numerically incommensurate")]
    MultiplierOverflow { cap: u32 },
}

/// Tolerances for [`certify`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifyConfig {
    /// Relative tolerance for mirror symmetry.
    pub symmetry_tol: f64,
    /// Relative tolerance, per gap, for a gap to count as an integer multiple of the unit.
    pub commensurability_tol: f64,
    /// Largest multiplier tried before giving up.
    pub multiplier_cap: u32,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            symmetry_tol: DEFAULT_SYMMETRY_TOL,
            commensurability_tol: 1e-9,
            multiplier_cap: 999,
        }
    }
}

/// Why a chain cannot transfer perfectly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PstFailure {
    /// `B_n ≠ B_{N+1-n}` or `J_n ≠ J_{N-n}`.
    Asymmetry,
    /// The gaps share a common unit but some gap is an even multiple of it.
    NoCommonOddUnit,
}

impl std::fmt::Display for PstFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PstFailure::Asymmetry => "not mirror-symmetric",
            PstFailure::NoCommonOddUnit => "no common odd unit for the spectral gaps",
        })
    }
}

/// Transfer data of an admissible chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transfer {
    /// Minimal transfer time `t₀ = π/u`.
    pub t0: f64,
    /// Global phase, principal value in `(−π, π]`.
    pub phi: f64,
    /// Odd `m_n` with `λ_n − λ_{n+1} = m_n π/t₀`.
    pub multipliers: Vec<u32>,
    /// Worst relative deviation of a gap from its odd multiple.
    pub max_residual: f64,
}

impl Transfer {
    pub fn unit(&self) -> f64 {
        PI / self.t0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Admissible(Transfer),
    Inadmissible { failure: PstFailure },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PstCertificate {
    pub eigenvalues: Vec<f64>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl PstCertificate {
    pub fn is_admissible(&self) -> bool {
        matches!(self.verdict, Verdict::Admissible(_))
    }

    pub fn transfer(&self) -> Option<&Transfer> {
        match &self.verdict {
            Verdict::Admissible(t) => Some(t),
            Verdict::Inadmissible { .. } => None,
        }
    }

    pub fn failure(&self) -> Option<PstFailure> {
        match self.verdict {
            Verdict::Admissible(_) => None,
            Verdict::Inadmissible { failure } => Some(failure),
        }
    }

    /// `max_n |e^{−iλ_n t₀} − (−1)^{n+1} e^{iφ}|`; `None` when inadmissible.
    pub fn phase_residual(&self) -> Option<f64> {
        let t = self.transfer()?;
        let residual = self
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(n, &lambda)| {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let (sa, ca) = (-lambda * t.t0).sin_cos();
                let (sb, cb) = t.phi.sin_cos();
                (ca - sign * cb).hypot(sa - sign * sb)
            })
            .fold(0.0, f64::max);
        Some(residual)
    }
}

/// Decides whether `chain` admits perfect transfer from site 1 to site N.
pub fn certify(chain: &ChainSpec, config: &CertifyConfig) -> Result<PstCertificate, PstError> {
    let spectral = decompose(chain)?;
    let eigenvalues = spectral.eigenvalues.clone();
    if !is_mirror_symmetric(chain, config.symmetry_tol) {
        return Ok(PstCertificate {
            eigenvalues,
            verdict: Verdict::Inadmissible {
                failure: PstFailure::Asymmetry,
            },
        });
    }
    let verdict = match common_unit(&spectral.gaps(), config)? {
        Unit { multipliers, .. } if multipliers.iter().any(|m| m % 2 == 0) => {
            Verdict::Inadmissible {
                failure: PstFailure::NoCommonOddUnit,
            }
        }
        Unit {
            unit,
            multipliers,
            max_residual,
        } => {
            let t0 = PI / unit;
            Verdict::Admissible(Transfer {
                t0,
                phi: principal_angle(-eigenvalues[0] * t0),
                multipliers,
                max_residual,
            })
        }
    };
    Ok(PstCertificate { eigenvalues, verdict })
}

struct Unit {
    unit: f64,
    multipliers: Vec<u32>,
    max_residual: f64,
}

/// Largest `u = g_min/k` (`k = 1, 2, …, cap`) for which every gap is an
/// integer multiple of `u`. Any other common unit divides this one, so the
/// spectrum admits an odd unit iff every multiplier found here is odd.
fn common_unit(gaps: &[f64], config: &CertifyConfig) -> Result<Unit, PstError> {
    let g_min = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    // an unresolved splitting would need a multiplier far beyond any cap
    if g_min <= 0.0 {
        return Err(PstError::MultiplierOverflow {
            cap: config.multiplier_cap,
        });
    }
    for k in 1..=config.multiplier_cap {
        let unit = g_min / f64::from(k);
        let mut multipliers = Vec::with_capacity(gaps.len());
        let mut max_residual = 0.0_f64;
        let fits = gaps.iter().all(|&g| {
            let m = (g / unit).round();
            let residual = (g - m * unit).abs() / g;
            max_residual = max_residual.max(residual);
            multipliers.push(m as u32);
            m >= 1.0 && m <= f64::from(config.multiplier_cap) && residual <= config.commensurability_tol
        });
        if fits {
            return Ok(Unit {
                unit,
                multipliers,
                max_residual,
            });
        }
    }
    Err(PstError::MultiplierOverflow {
        cap: config.multiplier_cap,
    })
}

/// Maps an angle to `(−π, π]`.
pub fn principal_angle(theta: f64) -> f64 {
    let wrapped = theta.rem_euclid(2.0 * PI);
    if wrapped > PI {
        wrapped - 2.0 * PI
    } else {
        wrapped
    }
}

/// True when every consecutive gap is at least `π/t₀` (up to `1e−9` relative).
pub fn gap_floor_check(spectral: &SpectralData, t0: f64) -> bool {
    let floor = PI / t0 * (1.0 - 1e-9);
    spectral.gaps().iter().all(|&g| g >= floor)
}

/// `f(t) = |⟨N|e^{−iht}|1⟩|` sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityTrace {
    pub times: Vec<f64>,
    pub fidelity: Vec<f64>,
}

impl FidelityTrace {
    /// Writes `time,fidelity` rows with 12 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "time,fidelity")?;
        for (t, f) in self.times.iter().zip(&self.fidelity) {
            writeln!(out, "{},{}", fmt_sig(*t), fmt_sig(*f))?;
        }
        Ok(())
    }

    pub fn max(&self) -> Option<(f64, f64)> {
        self.times
            .iter()
            .copied()
            .zip(self.fidelity.iter().copied())
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Formats with 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    format!("{:.11e}", x)
}

/// End-to-end propagator `⟨N|e^{−iht}|1⟩ = Σ_n w_n e^{−iλ_n t}` with
/// `w_n = ⟨N|λ_n⟩⟨λ_n|1⟩`.
#[derive(Debug, Clone)]
pub struct EndToEndPropagator {
    eigenvalues: Vec<f64>,
    weights: Vec<f64>,
}

impl EndToEndPropagator {
    pub fn new(spectral: &SpectralData) -> Self {
        let weights = spectral
            .eigenvectors
            .iter()
            .map(|v| v[0] * v[v.len() - 1])
            .collect();
        Self {
            eigenvalues: spectral.eigenvalues.clone(),
            weights,
        }
    }

    pub fn from_chain(chain: &ChainSpec) -> Result<Self, EigenError> {
        Ok(Self::new(&decompose(chain)?))
    }

    /// `(Re, Im)` of the amplitude at time `t`.
    pub fn amplitude(&self, t: f64) -> (f64, f64) {
        self.eigenvalues
            .iter()
            .zip(&self.weights)
            .fold((0.0, 0.0), |(re, im), (&lambda, &w)| {
                let (s, c) = (lambda * t).sin_cos();
                (re + w * c, im - w * s)
            })
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        let (re, im) = self.amplitude(t);
        re.hypot(im)
    }

    /// `d|A|²/dt = 2 Re(conj(A)·A')`.
    fn slope(&self, t: f64) -> f64 {
        let (mut re, mut im, mut dre, mut dim) = (0.0, 0.0, 0.0, 0.0);
        for (&lambda, &w) in self.eigenvalues.iter().zip(&self.weights) {
            let (s, c) = (lambda * t).sin_cos();
            re += w * c;
            im -= w * s;
            dre -= w * lambda * s;
            dim -= w * lambda * c;
        }
        2.0 * (re * dre + im * dim)
    }

    fn width(&self) -> f64 {
        match (self.eigenvalues.first(), self.eigenvalues.last()) {
            (Some(a), Some(b)) => a - b,
            _ => 0.0,
        }
    }

    /// Times of the local maxima of `f` in `(0, horizon]`, ascending.
    ///
    /// The scan step is `π/(8·width)`; each bracket where the slope of `|A|²`
    /// changes sign from positive to non-positive is refined by bisection.
    pub fn peaks(&self, horizon: f64) -> impl Iterator<Item = f64> + '_ {
        let width = self.width();
        let step = if width > 0.0 { PI / (8.0 * width) } else { horizon };
        let steps = (horizon / step).ceil() as usize;
        let mut prev_t = 0.0;
        let mut prev_slope = self.slope(0.0);
        (1..=steps).filter_map(move |k| {
            let t = (k as f64 * step).min(horizon);
            let slope = self.slope(t);
            let found = (prev_slope > 0.0 && slope <= 0.0).then(|| self.refine_peak(prev_t, t));
            prev_t = t;
            prev_slope = slope;
            found
        })
    }

    fn refine_peak(&self, mut lo: f64, mut hi: f64) -> f64 {
        // slope(lo) > 0 ≥ slope(hi)
        while hi - lo > 1e-12 * hi.abs().max(1e-300) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.slope(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// `f(t) = |⟨N|e^{−iht}|1⟩|` for each requested time.
pub fn evolve_fidelity(chain: &ChainSpec, times: &[f64]) -> Result<FidelityTrace, EigenError> {
    let propagator = EndToEndPropagator::from_chain(chain)?;
    Ok(FidelityTrace {
        times: times.to_vec(),
        fidelity: times.iter().map(|&t| propagator.fidelity(t)).collect(),
    })
}

/// Time of the first fidelity peak in `(0, horizon]` reaching `threshold`.
pub fn first_perfect_time(
    chain: &ChainSpec,
    threshold: f64,
    horizon: f64,
) -> Result<Option<f64>, EigenError> {
    let propagator = EndToEndPropagator::from_chain(chain)?;
    let first = propagator
        .peaks(horizon)
        .find(|&t| propagator.fidelity(t) >= threshold);
    Ok(first)
}

/// Highest fidelity peak in `(0, horizon]` as `(time, fidelity)`.
pub fn max_fidelity(chain: &ChainSpec, horizon: f64) -> Result<Option<(f64, f64)>, EigenError> {
    let propagator = EndToEndPropagator::from_chain(chain)?;
    let best = propagator
        .peaks(horizon)
        .map(|t| (t, propagator.fidelity(t)))
        .max_by(|a, b| a.1.total_cmp(&b.1));
    Ok(best)
}

/// Evenly spaced grid of `steps` points on `[0, t_max]`.
pub fn time_grid(t_max: f64, steps: usize) -> Vec<f64> {
    let last = (steps.max(2) - 1) as f64;
    (0..steps).map(|k| t_max * k as f64 / last).collect()
}
