//! The `compare` subcommand: evaluate the rank-3 formula, the Wootters
//! closed form, and the convex-roof oracle on seeded random mixtures, write
//! the per-instance CSV, and print a summary JSON with the empirical
//! distribution of rank3_C² − wootters_C².

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use concurrence::{
    concurrence_squared_rank3, convex_roof_concurrence, make_pure, wootters_concurrence,
    PureTwoQubit, Rank3Result, RoofConfig, TripleMixture,
};

use crate::{CompareArgs, Failure};
use crate::sweep::fmt;

/// Roof schedule for the comparison corpus: lighter than the default so
/// large counts stay fast, still deterministic per instance.
fn roof_config(seed: u64, index: u64) -> RoofConfig {
    RoofConfig {
        restarts: 16,
        iterations: 300,
        seed: seed.wrapping_add(index),
        ..RoofConfig::default()
    }
}

fn random_state(rng: &mut ChaCha8Rng) -> [Complex64; 4] {
    [
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
    ]
}

/// Gram–Schmidt three raw vectors into an orthonormal triple; false when a
/// vector degenerates (caller resamples).
fn orthonormalize(vs: &mut [[Complex64; 4]; 3]) -> bool {
    for i in 0..3 {
        for prev in 0..i {
            let overlap: Complex64 = (0..4).map(|k| vs[prev][k].conj() * vs[i][k]).sum();
            for k in 0..4 {
                let correction = overlap * vs[prev][k];
                vs[i][k] -= correction;
            }
        }
        let norm: f64 = vs[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return false;
        }
        for z in &mut vs[i] {
            *z /= norm;
        }
    }
    true
}

fn random_mixture(rng: &mut ChaCha8Rng, rank: u8, orthogonalize: bool) -> TripleMixture {
    let states: [PureTwoQubit; 3] = loop {
        let mut raw = [random_state(rng), random_state(rng), random_state(rng)];
        if orthogonalize && !orthonormalize(&mut raw) {
            continue;
        }
        break [
            make_pure(raw[0]).expect("random state is nonzero"),
            make_pure(raw[1]).expect("random state is nonzero"),
            make_pure(raw[2]).expect("random state is nonzero"),
        ];
    };
    let p = match rank {
        2 => {
            let w = 0.1 + 0.8 * rng.gen::<f64>();
            [w, 1.0 - w, 0.0]
        }
        _ => {
            let raw = [
                -rng.gen::<f64>().ln(),
                -rng.gen::<f64>().ln(),
                -rng.gen::<f64>().ln(),
            ];
            let total: f64 = raw.iter().sum();
            [raw[0] / total, raw[1] / total, raw[2] / total]
        }
    };
    TripleMixture::new(p, states).expect("weights sum to one")
}

fn flags_token(r: &Rank3Result) -> String {
    let mut tokens = vec![if r.orthogonal {
        "orthogonal"
    } else {
        "nonorthogonal"
    }];
    if r.negative {
        tokens.push("negative");
    }
    if r.lower_bound_violated {
        tokens.push("lower_bound_violated");
    }
    tokens.join("|")
}

#[derive(Serialize)]
struct DiffStats {
    min: f64,
    max: f64,
    mean: f64,
    max_abs: f64,
    q05: f64,
    q25: f64,
    q50: f64,
    q75: f64,
    q95: f64,
}

impl DiffStats {
    fn from(diffs: &[f64]) -> DiffStats {
        let mut sorted = diffs.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let q = |frac: f64| -> f64 {
            let idx = ((sorted.len() - 1) as f64 * frac).round() as usize;
            sorted[idx]
        };
        DiffStats {
            min: sorted[0],
            max: sorted[sorted.len() - 1],
            mean: diffs.iter().sum::<f64>() / diffs.len() as f64,
            max_abs: sorted
                .iter()
                .map(|d| d.abs())
                .fold(0.0_f64, f64::max),
            q05: q(0.05),
            q25: q(0.25),
            q50: q(0.50),
            q75: q(0.75),
            q95: q(0.95),
        }
    }
}

#[derive(Serialize)]
struct Summary {
    count: u32,
    rank: u8,
    seed: u64,
    orthogonalized: bool,
    csv_path: String,
    /// Empirical distribution of rank3_C² − wootters_C².
    rank3_minus_wootters: DiffStats,
    /// Fraction of instances with |rank3_C² − wootters_C²| ≤ 1e-6.
    within_1e6_fraction: f64,
    lower_bound_violations: u32,
    /// Always 0: the evaluation hard-errors on an upper-bound violation.
    upper_bound_violations: u32,
    negative_count: u32,
    case_counts: BTreeMap<String, u32>,
    /// Sanity margin of the oracle: distribution of roof_C² − wootters_C²
    /// (the roof never sits below the closed form).
    roof_minus_wootters: DiffStats,
}

pub fn cmd_compare(args: &CompareArgs) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut csv = String::from("rank3_c2,wootters_c2,roof_c2,lower,upper,case,flags\n");
    let mut diffs = Vec::with_capacity(args.count as usize);
    let mut roof_diffs = Vec::with_capacity(args.count as usize);
    let mut lower_violations = 0_u32;
    let mut negative_count = 0_u32;
    let mut within = 0_u32;
    let mut case_counts: BTreeMap<String, u32> = BTreeMap::new();

    for index in 0..args.count {
        let mix = random_mixture(&mut rng, args.rank, !args.nonorthogonal);
        let r3 = concurrence_squared_rank3(&mix)?;
        let rho = mix.density()?;
        let (cw, _) = wootters_concurrence(&rho)?;
        let roof = convex_roof_concurrence(&rho, &roof_config(args.seed, index as u64))?;

        let wootters_c2 = cw * cw;
        let roof_c2 = roof.concurrence * roof.concurrence;
        let diff = r3.c_squared - wootters_c2;
        diffs.push(diff);
        roof_diffs.push(roof_c2 - wootters_c2);
        if diff.abs() <= 1e-6 {
            within += 1;
        }
        if r3.lower_bound_violated {
            lower_violations += 1;
        }
        if r3.negative {
            negative_count += 1;
        }
        *case_counts.entry(r3.case_label.to_string()).or_insert(0) += 1;

        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt(r3.c_squared),
            fmt(wootters_c2),
            fmt(roof_c2),
            fmt(r3.lower_bound),
            fmt(r3.upper_bound),
            r3.case_label,
            flags_token(&r3)
        ));
    }

    std::fs::write(&args.out, &csv)
        .map_err(|e| Failure::io(format!("writing {}: {e}", args.out.display())))?;

    let summary = Summary {
        count: args.count,
        rank: args.rank,
        seed: args.seed,
        orthogonalized: !args.nonorthogonal,
        csv_path: args.out.display().to_string(),
        rank3_minus_wootters: DiffStats::from(&diffs),
        within_1e6_fraction: f64::from(within) / f64::from(args.count),
        lower_bound_violations: lower_violations,
        upper_bound_violations: 0,
        negative_count,
        case_counts,
        roof_minus_wootters: DiffStats::from(&roof_diffs),
    };
    let rendered = serde_json::to_string_pretty(&summary)
        .map_err(|e| Failure::io(format!("serializing summary: {e}")))?;
    crate::emit_line(&rendered)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormalize_produces_orthonormal_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let mut vs = [random_state(&mut rng), random_state(&mut rng), random_state(&mut rng)];
            assert!(orthonormalize(&mut vs));
            for i in 0..3 {
                for j in 0..3 {
                    let overlap: Complex64 =
                        (0..4).map(|k| vs[i][k].conj() * vs[j][k]).sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    assert!((overlap - Complex64::new(target, 0.0)).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn random_mixture_ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mix2 = random_mixture(&mut rng, 2, true);
        assert_eq!(mix2.p[2], 0.0);
        assert!(mix2.is_orthogonal());
        let mix3 = random_mixture(&mut rng, 3, true);
        assert!(mix3.p.iter().all(|&w| w > 0.0));
        assert!(mix3.is_orthogonal());
        let loose = random_mixture(&mut rng, 3, false);
        assert!(!loose.is_orthogonal());
    }

    #[test]
    fn diff_stats_basics() {
        let stats = DiffStats::from(&[0.0, -1.0, 2.0, 1.0]);
        assert_eq!(stats.min, -1.0);
        assert_eq!(stats.max, 2.0);
        assert_eq!(stats.mean, 0.5);
        assert_eq!(stats.max_abs, 2.0);
        assert_eq!(stats.q50, 1.0);
    }
}
