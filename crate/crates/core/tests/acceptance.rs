//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p pstlab-core --test acceptance -- --nocapture` to see them.

mod common;

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use pstlab_core::bounds::{saturation_scan, RATIO_TOL};
use pstlab_core::chain::DEFAULT_SYMMETRY_TOL;
use pstlab_core::eigen::expected_parity;
use pstlab_core::pst::{max_fidelity, EndToEndPropagator};
use pstlab_core::{
    canonical_chain, certify, classify_parity, decompose, eigen_side_traces, falsify_search,
    is_mirror_symmetric, random_admissible_spectrum, synthesize, CertifyConfig, ChainFamily,
    ChainSpec, SearchConfig, SpectrumSpec,
};
use rand::Rng;

use common::{max_rel_diff, random_spectrum, random_symmetric_chain, rng};

fn report(id: &str, ok: bool, detail: String) {
    println!("[{}] {id} {detail}", if ok { "PASS" } else { "FAIL" });
}

fn artifact_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn saturation(id: &str, sizes: Vec<usize>) {
    let start = Instant::now();
    let lo = *sizes.first().unwrap();
    let hi = *sizes.last().unwrap();
    let rows = saturation_scan(lo..=hi);
    let elapsed = start.elapsed().as_secs_f64();
    let mut worst = 0.0_f64;
    let mut errors = Vec::new();
    for row in rows.iter().filter(|r| sizes.contains(&r.n_sites)) {
        match &row.outcome {
            Ok(r) => worst = worst.max((r.ratio - 1.0).abs()),
            Err(e) => errors.push(format!("N={}: {e}", row.n_sites)),
        }
    }
    let ok = errors.is_empty() && worst <= 1e-9 && elapsed < 5.0;
    report(
        id,
        ok,
        format!(
            "N={lo}..{hi} max|ratio-1|={worst:.3e} (tol 1e-9) time={elapsed:.3}s (limit 5s) errors={errors:?}"
        ),
    );
    assert!(ok);
}

#[test]
fn ac1_even_bound_saturation() {
    saturation("AC1", (2..=40).step_by(2).collect());
}

#[test]
fn ac2_odd_bound_saturation() {
    saturation("AC2", (3..=39).step_by(2).collect());
}

/// 200 mirror-symmetric chains of the requested parity, entries in `[0.1, 10]`.
fn symmetric_corpus(seed: u64, even: bool) -> Vec<ChainSpec> {
    let mut r = rng(seed);
    (0..200)
        .map(|_| {
            let half = r.gen_range(1..=16);
            let n = if even { 2 * half } else { (2 * half + 1).min(31) };
            random_symmetric_chain(&mut r, n, 0.1, 10.0)
        })
        .collect()
}

fn trace_identity(id: &str, even: bool) {
    let mut worst = 0.0_f64;
    let mut errors = Vec::new();
    for (k, chain) in symmetric_corpus(if even { 31 } else { 32 }, even).iter().enumerate() {
        let n = chain.n_sites();
        let spectral = match decompose(chain).map(|s| classify_parity(s, chain)) {
            Ok(Ok(s)) => s,
            Ok(Err(e)) | Err(e) => {
                errors.push(format!("chain {k}: {e}"));
                continue;
            }
        };
        let (alt, alt_sq) = eigen_side_traces(&spectral).unwrap();
        let (b, j) = (chain.diagonal(), chain.couplings());
        let (matrix_side, eigen_side) = if even {
            (2.0 * j[n / 2 - 1], alt)
        } else {
            let c = (n - 1) / 2;
            (b[c] * b[c] + 4.0 * j[c - 1] * j[c - 1], alt_sq)
        };
        worst = worst.max(rel(matrix_side, eigen_side));
    }
    let ok = errors.is_empty() && worst <= 1e-10;
    report(
        id,
        ok,
        format!("200 chains max relative residual={worst:.3e} (tol 1e-10) errors={errors:?}"),
    );
    assert!(ok);
}

#[test]
fn ac3_even_trace_identity() {
    trace_identity("AC3", true);
}

#[test]
fn ac4_odd_trace_identity() {
    trace_identity("AC4", false);
}

#[test]
fn ac5_lambda_min_constraint() {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in [3, 5, 7, 9] {
        let r = falsify_search(&SearchConfig {
            n_sites: n,
            samples: 10_000,
            max_multiplier: 9,
            seed: 5,
        });
        ok &= r.failed == 0 && r.evaluated == 10_000 && r.lambda_constraint_violations == 0;
        lines.push(format!(
            "N={n}: violations={} active={} failed={}",
            r.lambda_constraint_violations, r.lambda_constraint_active, r.failed
        ));
    }
    report("AC5", ok, lines.join("; "));
    assert!(ok);
}

#[test]
fn ac6_falsification_suite() {
    let start = Instant::now();
    let mut ok = true;
    let mut min_ratio = f64::INFINITY;
    let mut reports = Vec::new();
    for n in 2..=9 {
        let r = falsify_search(&SearchConfig {
            n_sites: n,
            samples: 10_000,
            max_multiplier: 9,
            seed: 6,
        });
        ok &= r.failed == 0 && r.holds();
        min_ratio = min_ratio.min(r.min_ratio.unwrap_or(f64::NAN));
        reports.push(r);
    }
    let elapsed = start.elapsed().as_secs_f64();
    let violations: usize = reports.iter().map(|r| r.bound_violations.len()).sum();
    let witnesses: Vec<_> = reports
        .iter()
        .map(|r| {
            serde_json::json!({
                "config": r.config,
                "min_ratio": r.min_ratio,
                "min_ratio_witness": r.min_ratio_witness,
                "bound_violations": r.bound_violations,
            })
        })
        .collect();
    let path = artifact_dir().join("falsification_witnesses.json");
    fs::write(&path, serde_json::to_string_pretty(&witnesses).unwrap()).unwrap();
    ok &= elapsed < 60.0 && min_ratio >= 1.0 - RATIO_TOL;
    report(
        "AC6",
        ok,
        format!(
            "N=2..9 x 10^4 samples min ratio={min_ratio:.12} (floor {}) violations={violations} time={elapsed:.2}s (limit 60s) witnesses={}",
            1.0 - RATIO_TOL,
            path.display()
        ),
    );
    assert!(ok);
}

/// Admissible chains synthesized from random odd multipliers, N = 2..=12.
fn synthesized_corpus() -> Vec<ChainSpec> {
    let mut chains: Vec<ChainSpec> = (2..=40)
        .map(|n| canonical_chain(n, ChainFamily::EquallySpaced).unwrap())
        .collect();
    for n in 2..=12 {
        for seed in 0..20 {
            let spectrum = random_admissible_spectrum(n, 9, 1.0, 7000 + seed).unwrap();
            chains.push(synthesize(&spectrum).unwrap());
        }
    }
    chains
}

/// Relative ±1% noise on every coupling and ±1% of `J_max` on every field.
fn break_symmetry(chain: &ChainSpec, r: &mut impl Rng) -> ChainSpec {
    let j_max = chain.j_max();
    let b = chain
        .diagonal()
        .iter()
        .map(|x| x + 0.01 * j_max * r.gen_range(-1.0..=1.0))
        .collect();
    let j = chain
        .couplings()
        .iter()
        .map(|x| x * (1.0 + 0.01 * r.gen_range(-1.0..=1.0)))
        .collect();
    ChainSpec::new(b, j).unwrap()
}

#[test]
fn ac7_transfer_iff_symmetry() {
    let chains = synthesized_corpus();
    let mut worst_peak = 1.0_f64;
    let mut errors = Vec::new();
    for (k, chain) in chains.iter().enumerate() {
        match certify(chain, &CertifyConfig::default()) {
            Ok(cert) => match cert.transfer() {
                Some(t) => {
                    let p = EndToEndPropagator::from_chain(chain).unwrap();
                    worst_peak = worst_peak.min(p.fidelity(t.t0));
                }
                None => errors.push(format!("chain {k}: {:?}", cert.failure())),
            },
            Err(e) => errors.push(format!("chain {k}: {e}")),
        }
    }
    let perfect_ok = errors.is_empty() && worst_peak >= 1.0 - 1e-8;

    let mut r = rng(77);
    let mut best_broken = 0.0_f64;
    let mut over = 0;
    let mut min_asym_ok = true;
    for k in 0..50 {
        let base = &chains[40 + (k * 7) % (chains.len() - 40)];
        let t0 = certify(base, &CertifyConfig::default())
            .unwrap()
            .transfer()
            .unwrap()
            .t0;
        let broken = break_symmetry(base, &mut r);
        min_asym_ok &= !is_mirror_symmetric(&broken, DEFAULT_SYMMETRY_TOL);
        let peak = max_fidelity(&broken, 20.0 * t0).unwrap().map_or(0.0, |p| p.1);
        best_broken = best_broken.max(peak);
        if peak > 1.0 - 1e-3 {
            over += 1;
        }
    }
    let broken_ok = min_asym_ok && over == 0;
    report(
        "AC7",
        perfect_ok && broken_ok,
        format!(
            "{} admissible chains min f(t0)={worst_peak:.12} (floor 1-1e-8) errors={errors:?}; \
             50 symmetry-broken chains max f in 20 t0={best_broken:.9} (ceiling 1-1e-3), {over} above ceiling",
            chains.len()
        ),
    );
    assert!(perfect_ok, "admissible chains fall short of unit fidelity");
    assert!(broken_ok, "{over} of 50 symmetry-broken chains exceed 1 - 1e-3");
}

#[test]
fn ac8_round_trip_synthesis() {
    let mut r = rng(88);
    let mut worst = 0.0_f64;
    let mut errors = Vec::new();
    for k in 0..200 {
        let n = r.gen_range(2..=32);
        let lambda = random_spectrum(&mut r, n, 100.0);
        let result = synthesize(&SpectrumSpec::Raw {
            lambda: lambda.clone(),
        })
        .map_err(|e| e.to_string())
        .and_then(|c| decompose(&c).map_err(|e| e.to_string()));
        match result {
            Ok(s) => worst = worst.max(max_rel_diff(&lambda, &s.eigenvalues)),
            Err(e) => errors.push(format!("spectrum {k}: {e}")),
        }
    }
    let ok = errors.is_empty() && worst <= 1e-8;
    report(
        "AC8",
        ok,
        format!("200 spectra max relative error={worst:.3e} (tol 1e-8) errors={errors:?}"),
    );
    assert!(ok);
}

#[test]
fn ac9_eigenvector_parity() {
    let mut chains = synthesized_corpus();
    chains.extend((41..=64).map(|n| canonical_chain(n, ChainFamily::EquallySpaced).unwrap()));
    chains.extend(symmetric_corpus(31, true));
    chains.extend(symmetric_corpus(32, false));
    let mut failures = Vec::new();
    let mut worst_residual = 0.0_f64;
    for (k, chain) in chains.iter().enumerate() {
        assert!(is_mirror_symmetric(chain, DEFAULT_SYMMETRY_TOL));
        let classified = decompose(chain).and_then(|s| classify_parity(s, chain));
        let s = match classified {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("chain {k} (N={}): {e}", chain.n_sites()));
                continue;
            }
        };
        let signs = s.parity_signs.as_ref().unwrap();
        for (n, (v, &sigma)) in s.eigenvectors.iter().zip(signs).enumerate() {
            if sigma != expected_parity(n) {
                failures.push(format!("chain {k} vector {n}: sigma={sigma}"));
            }
            let res = v
                .iter()
                .zip(v.iter().rev())
                .map(|(a, b)| (b - f64::from(sigma) * a).powi(2))
                .sum::<f64>()
                .sqrt();
            worst_residual = worst_residual.max(res);
        }
    }
    let ok = failures.is_empty();
    report(
        "AC9",
        ok,
        format!(
            "{} symmetric chains, alternating pattern on all; max |Sv - sigma v|={worst_residual:.3e} failures={failures:?}",
            chains.len()
        ),
    );
    assert!(ok);
}
