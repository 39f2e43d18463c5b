//! Certification, synthesis, simulation and speed-limit auditing of
//! perfect-state-transfer chains.
//!
//! A chain of `N` sites is the real symmetric tridiagonal Hamiltonian with
//! on-site fields `B_n` and positive couplings `J_n`. It transfers a state
//! perfectly from site 1 to site N iff it is mirror-symmetric and every
//! spectral gap is an odd multiple of a common unit `π/t₀`. Every such chain
//! obeys `J_max·t₀ ≥ πN/4` (even `N`) or `J_max·t₀ ≥ π√(N²−1)/4` (odd `N`).
//!
//! - [`chain`]: chain type, mirror operator and mirror traces.
//! - [`eigen`]: tridiagonal eigensolver and parity classification.
//! - [`pst`]: transfer certificates and fidelity evolution.
//! - [`synthesis`]: inverse eigenvalue problem and chain families.
//! - [`bounds`]: speed bounds, proof audits, scans and the falsification search.

pub mod bounds;
pub mod chain;
pub mod eigen;
pub mod pst;
pub mod synthesis;

pub use bounds::{
    audit_chain, bound_value, falsify_search, saturation_scan, BoundReport, BoundsError,
    ProofAudit, SearchConfig, SearchReport,
};
pub use chain::{
    eigen_side_traces, is_mirror_symmetric, mirror_trace_h, mirror_trace_h2, traceless_shift,
    ChainError, ChainSpec, MirrorOperator, TraceReport,
};
pub use eigen::{classify_parity, decompose, end_amplitudes, EigenError, SpectralData};
pub use pst::{
    certify, evolve_fidelity, first_perfect_time, gap_floor_check, CertifyConfig, FidelityTrace,
    PstCertificate, PstError, PstFailure,
};
pub use synthesis::{
    canonical_chain, random_admissible_spectrum, synthesize, ChainFamily, SpectrumSpec,
    SynthesisError,
};
