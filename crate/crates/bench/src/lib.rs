//! Inputs shared by the pipeline benchmarks.

use pstlab_core::{canonical_chain, random_admissible_spectrum, ChainFamily, ChainSpec, SpectrumSpec};

/// Chain lengths every size-swept benchmark runs at.
pub const SIZES: [usize; 4] = [8, 32, 128, 512];

pub fn canonical(n: usize) -> ChainSpec {
    canonical_chain(n, ChainFamily::EquallySpaced).expect("n >= 2")
}

/// Admissible spectrum with multipliers up to 9; fixed seed per size.
pub fn admissible_spectrum(n: usize) -> SpectrumSpec {
    random_admissible_spectrum(n, 9, 1.0, n as u64).expect("valid parameters")
}
