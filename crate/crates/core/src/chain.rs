//! Chains as real symmetric tridiagonal Hamiltonians, the mirror operator and
//! the mirror (antidiagonal) traces of `h` and `h²`.
//!
//! Sites are 0-indexed internally. Every serialized form uses the `N`/`B`/`J`
//! layout with site labels counted from 1.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen::SpectralData;

/// Default relative tolerance for mirror-symmetry tests.
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("chain needs at least 2 sites, got {0}")]
    TooShort(usize),
    #[error("field `{field}` has length {found}, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("coupling J_{site} = {value} is not strictly positive")]
    NonPositiveCoupling { site: usize, value: f64 },
    #[error("field `{field}` entry {site} is not finite")]
    NonFinite { field: &'static str, site: usize },
    #[error("spectral data carries no parity signs")]
    MissingParity,
}

/// A chain of `N` sites: on-site fields `B_1..B_N` and couplings `J_1..J_{N-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChainFile", into = "ChainFile")]
pub struct ChainSpec {
    diagonal: Vec<f64>,
    couplings: Vec<f64>,
}

/// On-disk layout: `{"N": int, "B": [..N], "J": [..N-1]}`; `B` may be omitted.
#[derive(Debug, Serialize, Deserialize)]
struct ChainFile {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    b: Option<Vec<f64>>,
    #[serde(rename = "J")]
    j: Vec<f64>,
}

impl TryFrom<ChainFile> for ChainSpec {
    type Error = ChainError;

    fn try_from(file: ChainFile) -> Result<Self, Self::Error> {
        if file.n < 2 {
            return Err(ChainError::TooShort(file.n));
        }
        let b = file.b.unwrap_or_else(|| vec![0.0; file.n]);
        if b.len() != file.n {
            return Err(ChainError::LengthMismatch {
                field: "B",
                expected: file.n,
                found: b.len(),
            });
        }
        ChainSpec::new(b, file.j)
    }
}

impl From<ChainSpec> for ChainFile {
    fn from(chain: ChainSpec) -> Self {
        ChainFile {
            n: chain.n_sites(),
            b: Some(chain.diagonal),
            j: chain.couplings,
        }
    }
}

impl ChainSpec {
    pub fn new(diagonal: Vec<f64>, couplings: Vec<f64>) -> Result<Self, ChainError> {
        let n = diagonal.len();
        if n < 2 {
            return Err(ChainError::TooShort(n));
        }
        if couplings.len() != n - 1 {
            return Err(ChainError::LengthMismatch {
                field: "J",
                expected: n - 1,
                found: couplings.len(),
            });
        }
        if let Some(site) = diagonal.iter().position(|b| !b.is_finite()) {
            return Err(ChainError::NonFinite { field: "B", site: site + 1 });
        }
        if let Some(site) = couplings.iter().position(|j| !j.is_finite()) {
            return Err(ChainError::NonFinite { field: "J", site: site + 1 });
        }
        if let Some(site) = couplings.iter().position(|&j| j <= 0.0) {
            return Err(ChainError::NonPositiveCoupling {
                site: site + 1,
                value: couplings[site],
            });
        }
        Ok(Self { diagonal, couplings })
    }

    /// Chain with zero on-site fields.
    pub fn from_couplings(couplings: Vec<f64>) -> Result<Self, ChainError> {
        let n = couplings.len() + 1;
        Self::new(vec![0.0; n], couplings)
    }

    pub fn n_sites(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn j_max(&self) -> f64 {
        self.couplings.iter().copied().fold(0.0, f64::max)
    }

    /// Central field `B_c`, `c = (N+1)/2`, for odd `N`.
    pub fn central_field(&self) -> Option<f64> {
        let n = self.n_sites();
        (n % 2 == 1).then(|| self.diagonal[n / 2])
    }

    /// Largest entry magnitude, floored at 1.
    pub fn scale(&self) -> f64 {
        self.diagonal
            .iter()
            .chain(&self.couplings)
            .fold(1.0_f64, |acc, x| acc.max(x.abs()))
    }

    /// Matrix entry `h[i][j]` (0-indexed) read off the tridiagonal storage.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match i.abs_diff(j) {
            0 => self.diagonal[i],
            1 => self.couplings[i.min(j)],
            _ => 0.0,
        }
    }

    /// Entry `(h²)[i][j]`; only `k ∈ {i-1, i, i+1}` contribute.
    pub fn entry_squared(&self, i: usize, j: usize) -> f64 {
        if i.abs_diff(j) > 2 {
            return 0.0;
        }
        let lo = i.saturating_sub(1);
        let hi = (i + 1).min(self.n_sites() - 1);
        (lo..=hi).map(|k| self.entry(i, k) * self.entry(k, j)).sum()
    }

    /// `y = h·x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n_sites();
        assert_eq!(x.len(), n, "vector length must match chain length");
        (0..n)
            .map(|i| {
                let mut y = self.diagonal[i] * x[i];
                if i > 0 {
                    y += self.couplings[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.couplings[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Same chain with the mirror image of every entry.
    pub fn mirrored(&self) -> ChainSpec {
        let mut diagonal = self.diagonal.clone();
        let mut couplings = self.couplings.clone();
        diagonal.reverse();
        couplings.reverse();
        ChainSpec { diagonal, couplings }
    }
}

/// The antidiagonal permutation `S`, `S[n][N+1-n] = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MirrorOperator {
    n_sites: usize,
}

impl MirrorOperator {
    pub fn new(n_sites: usize) -> Self {
        Self { n_sites }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// Image site of `site` (0-indexed).
    pub fn partner(&self, site: usize) -> usize {
        self.n_sites - 1 - site
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if j == self.partner(i) {
            1.0
        } else {
            0.0
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_sites, "vector length must match operator size");
        x.iter().rev().copied().collect()
    }
}

/// Matrix-side mirror traces next to their tridiagonal closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub trace_sh: f64,
    pub trace_sh2: f64,
    pub closed_form_sh: f64,
    pub closed_form_sh2: f64,
}

/// True when `B_n = B_{N+1-n}` and `J_n = J_{N-n}` up to `tol` relative to
/// the largest entry magnitude (floored at 1).
pub fn is_mirror_symmetric(chain: &ChainSpec, tol: f64) -> bool {
    mirror_asymmetry(chain) <= tol * chain.scale()
}

/// Largest absolute difference between an entry and its mirror image.
pub fn mirror_asymmetry(chain: &ChainSpec) -> f64 {
    let pairs = |v: &[f64]| {
        v.iter()
            .zip(v.iter().rev())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    };
    pairs(chain.diagonal()).max(pairs(chain.couplings()))
}

/// Subtracts the mean field so that `ΣB_n = 0`. Couplings are untouched.
pub fn traceless_shift(chain: &ChainSpec) -> ChainSpec {
    let n = chain.n_sites() as f64;
    let mean = chain.diagonal.iter().sum::<f64>() / n;
    let diagonal = if mean == 0.0 {
        chain.diagonal.clone()
    } else {
        chain.diagonal.iter().map(|b| b - mean).collect()
    };
    ChainSpec {
        diagonal,
        couplings: chain.couplings.clone(),
    }
}

/// `Tr(S h)`, the antidiagonal sum of `h`.
pub fn mirror_trace_h(chain: &ChainSpec) -> f64 {
    let s = MirrorOperator::new(chain.n_sites());
    (0..chain.n_sites()).map(|i| chain.entry(i, s.partner(i))).sum()
}

/// `Tr(S h²)`, the antidiagonal sum of `h²`.
pub fn mirror_trace_h2(chain: &ChainSpec) -> f64 {
    let s = MirrorOperator::new(chain.n_sites());
    (0..chain.n_sites())
        .map(|i| chain.entry_squared(i, s.partner(i)))
        .sum()
}

/// Closed form of `Tr(S h)`: `2 J_{N/2}` for even `N`, `B_c` for odd `N`.
pub fn closed_form_sh(chain: &ChainSpec) -> f64 {
    let n = chain.n_sites();
    if n.is_multiple_of(2) {
        2.0 * chain.couplings[n / 2 - 1]
    } else {
        chain.diagonal[n / 2]
    }
}

/// Closed form of `Tr(S h²)`.
///
/// Even `N`: `2 J_{N/2} (B_{N/2} + B_{N/2+1})`.
/// Odd `N`: `B_c² + (J_{c-1} + J_c)²`, i.e. `B_c² + 4 J²_{(N-1)/2}` on a
/// mirror-symmetric chain.
pub fn closed_form_sh2(chain: &ChainSpec) -> f64 {
    let n = chain.n_sites();
    let (b, j) = (&chain.diagonal, &chain.couplings);
    if n.is_multiple_of(2) {
        let m = n / 2;
        2.0 * j[m - 1] * (b[m - 1] + b[m])
    } else {
        let c = n / 2;
        let (left, right) = (j[c - 1], j[c]);
        b[c] * b[c] + (left + right) * (left + right)
    }
}

pub fn trace_report(chain: &ChainSpec) -> TraceReport {
    TraceReport {
        trace_sh: mirror_trace_h(chain),
        trace_sh2: mirror_trace_h2(chain),
        closed_form_sh: closed_form_sh(chain),
        closed_form_sh2: closed_form_sh2(chain),
    }
}

/// Eigen side of the mirror traces: `(Σ σ_n λ_n, Σ σ_n λ_n²)`.
///
/// With classified parity `σ_n = (-1)^{n+1}` these are the alternating sums
/// that match [`mirror_trace_h`] and [`mirror_trace_h2`].
pub fn eigen_side_traces(spectral: &SpectralData) -> Result<(f64, f64), ChainError> {
    let signs = spectral
        .parity_signs
        .as_ref()
        .ok_or(ChainError::MissingParity)?;
    Ok(spectral
        .eigenvalues
        .iter()
        .zip(signs)
        .fold((0.0, 0.0), |(s1, s2), (&lambda, &sigma)| {
            let sigma = f64::from(sigma);
            (s1 + sigma * lambda, s2 + sigma * lambda * lambda)
        }))
}
