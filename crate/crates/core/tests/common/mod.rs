//! Test-only oracles: dense linear algebra that never touches the
//! tridiagonal code paths under test.

#![allow(dead_code)]

use nalgebra::{Complex, DMatrix};
use pstlab_core::ChainSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn dense(chain: &ChainSpec) -> DMatrix<f64> {
    let n = chain.n_sites();
    let (b, j) = (chain.diagonal(), chain.couplings());
    DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            b[r]
        } else if r + 1 == c {
            j[r]
        } else if c + 1 == r {
            j[c]
        } else {
            0.0
        }
    })
}

/// Descending eigenvalues from nalgebra's dense symmetric solver.
pub fn dense_eigenvalues(chain: &ChainSpec) -> Vec<f64> {
    let mut ev: Vec<f64> = dense(chain).symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

pub fn antidiagonal_sum(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    (0..n).map(|i| m[(i, n - 1 - i)]).sum()
}

/// `|⟨N|e^{−iht}|1⟩|` by Taylor series with scaling and squaring.
pub fn expm_fidelity(chain: &ChainSpec, t: f64) -> f64 {
    let h = dense(chain);
    let n = h.nrows();
    let norm = h.iter().map(|x| x.abs()).sum::<f64>() * t.abs();
    let squarings = if norm > 0.25 { (norm / 0.25).log2().ceil() as u32 } else { 0 };
    let scale = t / 2f64.powi(squarings as i32);
    let a: DMatrix<Complex<f64>> = h.map(|x| Complex::new(0.0, -x * scale));
    let mut term = DMatrix::<Complex<f64>>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=30 {
        term = &term * &a / Complex::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum[(n - 1, 0)].norm()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries drawn from `[lo, hi]`.
pub fn random_chain(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> ChainSpec {
    let b = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    let j = (0..n - 1).map(|_| rng.gen_range(lo..=hi)).collect();
    ChainSpec::new(b, j).unwrap()
}

/// Mirror-symmetric chain with entries drawn from `[lo, hi]`.
pub fn random_symmetric_chain(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> ChainSpec {
    let mut b: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    let mut j: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(lo..=hi)).collect();
    for i in 0..n / 2 {
        b[n - 1 - i] = b[i];
    }
    for i in 0..(n - 1) / 2 {
        j[n - 2 - i] = j[i];
    }
    ChainSpec::new(b, j).unwrap()
}

/// Distinct descending spectrum whose largest/smallest gap ratio is at most `max_ratio`.
pub fn random_spectrum(rng: &mut impl Rng, n: usize, max_ratio: f64) -> Vec<f64> {
    let mut lambda = vec![rng.gen_range(-5.0..5.0)];
    for _ in 1..n {
        let gap = rng.gen_range(1.0..=max_ratio);
        let next = lambda.last().unwrap() - gap;
        lambda.push(next);
    }
    lambda
}

pub fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().chain(b).fold(f64::MIN_POSITIVE, |m, x| m.max(x.abs()));
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / scale).fold(0.0, f64::max)
}
