//! The `selftest` subcommand: a seeded, embedded invariant corpus printing
//! one pass/fail line per named group. Exit 0 iff every group passes.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use concurrence::{
    amplitude_concurrence, concurrence_pure, concurrence_squared_rank3, convex_roof_concurrence,
    entangled_coherent_pure, entanglement_of_formation, herm_eigensystem, make_pure,
    random_density, spin_flip_density, spin_flip_pure, werner_state, wootters_concurrence,
    CMatrix4, CoherentPairSpec, DensityMatrix4, PureTwoQubit, RoofConfig, TripleMixture,
};

use crate::Failure;

type GroupFn = fn() -> Result<(), String>;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_pure(rng: &mut ChaCha8Rng) -> PureTwoQubit {
    make_pure([
        c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
    ])
    .expect("random amplitudes are nonzero")
}

fn random_real_pure(rng: &mut ChaCha8Rng) -> PureTwoQubit {
    make_pure([
        c64(rng.gen::<f64>() - 0.5, 0.0),
        c64(rng.gen::<f64>() - 0.5, 0.0),
        c64(rng.gen::<f64>() - 0.5, 0.0),
        c64(rng.gen::<f64>() - 0.5, 0.0),
    ])
    .expect("random amplitudes are nonzero")
}

fn random_weights(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let raw = [
        -rng.gen::<f64>().ln(),
        -rng.gen::<f64>().ln(),
        -rng.gen::<f64>().ln(),
    ];
    let total: f64 = raw.iter().sum();
    [raw[0] / total, raw[1] / total, raw[2] / total]
}

fn check(cond: bool, message: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.into())
    }
}

fn group_eigensolver() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for trial in 0..100 {
        let raw = CMatrix4::from_fn(|_, _| c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        let h = (raw + raw.adjoint()) * 0.5;
        let eig = herm_eigensystem(&h).map_err(|e| e.to_string())?;
        let defect = h.max_abs_diff(&eig.reconstruct());
        check(defect < 1e-11, format!("reconstruction defect {defect:.3e} (trial {trial})"))?;
        for i in 0..4 {
            for j in 0..4 {
                let overlap: Complex64 = (0..4)
                    .map(|k| eig.eigenvectors[i][k].conj() * eig.eigenvectors[j][k])
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                check(
                    (overlap - c64(target, 0.0)).norm() < 1e-11,
                    format!("eigenvectors not orthonormal (trial {trial})"),
                )?;
            }
        }
    }
    let diag = CMatrix4::diagonal([3.0, -1.0, 2.0, 0.5]);
    let eig = herm_eigensystem(&diag).map_err(|e| e.to_string())?;
    check(
        eig.eigenvalues == [3.0, 2.0, 0.5, -1.0],
        "diagonal spectrum not recovered exactly",
    )
}

fn group_spin_flip() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..100 {
        let psi = random_pure(&mut rng);
        let back = spin_flip_pure(&spin_flip_pure(&psi));
        for k in 0..4 {
            check(
                (psi.amps[k] - back.amps[k]).norm() == 0.0,
                "spin flip is not an exact involution",
            )?;
        }
    }
    let bell = PureTwoQubit::bell_phi_plus();
    let flipped = spin_flip_pure(&bell);
    check(
        (bell.inner(&flipped) + c64(1.0, 0.0)).norm() < 1e-15,
        "Bell state is not a −1 eigenstate of the flip",
    )?;
    let mixed = DensityMatrix4::maximally_mixed();
    let defect = mixed.matrix().max_abs_diff(spin_flip_density(&mixed).matrix());
    check(defect < 1e-15, "I/4 is not a spin-flip fixed point")
}

fn group_vertex_reduction() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for trial in 0..200 {
        let psi = random_pure(&mut rng);
        let mix = TripleMixture::new(
            [1.0, 0.0, 0.0],
            [psi, random_pure(&mut rng), random_pure(&mut rng)],
        )
        .map_err(|e| e.to_string())?;
        let r = concurrence_squared_rank3(&mix).map_err(|e| e.to_string())?;
        let c = concurrence_pure(&psi);
        check(
            (r.c_squared - c * c).abs() < 1e-12,
            format!("vertex mixture deviates from component (trial {trial})"),
        )?;
    }
    Ok(())
}

fn group_amplitude_form() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let spec_from = |rng: &mut ChaCha8Rng| -> CoherentPairSpec {
        CoherentPairSpec::new(
            c64(2.0 * rng.gen::<f64>() - 1.0, 2.0 * rng.gen::<f64>() - 1.0),
            c64(2.0 * rng.gen::<f64>() - 1.0, 2.0 * rng.gen::<f64>() - 1.0),
            c64(2.0 * rng.gen::<f64>() - 1.0, 2.0 * rng.gen::<f64>() - 1.0),
            c64(2.0 * rng.gen::<f64>() - 1.0, 2.0 * rng.gen::<f64>() - 1.0),
            std::f64::consts::PI * rng.gen::<f64>(),
            2.0 * std::f64::consts::PI * rng.gen::<f64>(),
        )
        .expect("finite parameters")
    };
    for trial in 0..200 {
        let spec = spec_from(&mut rng);
        let direct = amplitude_concurrence(&spec).map_err(|e| e.to_string())?;
        let state = entangled_coherent_pure(&spec).map_err(|e| e.to_string())?;
        let built = concurrence_pure(&state);
        check(
            (direct - built).abs() < 1e-12,
            format!("amplitude form deviates by {:.3e} (trial {trial})", (direct - built).abs()),
        )?;
    }
    // Separability triggers must give exactly zero.
    let triggers = [
        CoherentPairSpec::new(c64(0.7, 0.1), c64(0.3, 0.0), c64(0.7, 0.1), c64(-0.8, 0.2), 0.9, 0.4),
        CoherentPairSpec::new(c64(0.7, 0.1), c64(0.3, 0.0), c64(-0.2, 0.5), c64(0.3, 0.0), 0.9, 0.4),
        CoherentPairSpec::new(c64(0.7, 0.1), c64(0.3, 0.0), c64(-0.2, 0.5), c64(-0.8, 0.2), std::f64::consts::FRAC_PI_2, 0.4),
        CoherentPairSpec::new(c64(0.7, 0.1), c64(0.3, 0.0), c64(-0.2, 0.5), c64(-0.8, 0.2), 0.0, 0.4),
    ];
    for (idx, spec) in triggers.into_iter().enumerate() {
        let spec = spec.expect("finite parameters");
        let c = amplitude_concurrence(&spec).map_err(|e| e.to_string())?;
        check(c == 0.0, format!("separability trigger {idx} gave {c:.3e}, not exact 0"))?;
    }
    Ok(())
}

fn group_upper_bound() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    for trial in 0..1000 {
        let real = trial % 2 == 0;
        let gen = |rng: &mut ChaCha8Rng| {
            if real {
                random_real_pure(rng)
            } else {
                random_pure(rng)
            }
        };
        let mix = TripleMixture::new(
            random_weights(&mut rng),
            [gen(&mut rng), gen(&mut rng), gen(&mut rng)],
        )
        .map_err(|e| e.to_string())?;
        let r = concurrence_squared_rank3(&mix)
            .map_err(|e| format!("upper bound violated: {e} (trial {trial})"))?;
        check(
            r.c_squared <= r.upper_bound + 1e-10,
            format!("bound slack exceeded (trial {trial})"),
        )?;
    }
    Ok(())
}

fn group_werner_anchors() -> Result<(), String> {
    for p in [0.2, 1.0 / 3.0, 0.5, 0.9] {
        let rho = werner_state(p).map_err(|e| e.to_string())?;
        let (cw, _) = wootters_concurrence(&rho).map_err(|e| e.to_string())?;
        let expect = (0.0_f64).max((3.0 * p - 1.0) / 2.0);
        check(
            (cw - expect).abs() < 1e-9,
            format!("Werner p={p}: got {cw}, expected {expect}"),
        )?;
    }
    let bell = PureTwoQubit::bell_phi_plus();
    let c = concurrence_pure(&bell);
    let eof = entanglement_of_formation(c).map_err(|e| e.to_string())?;
    check((c - 1.0).abs() < 1e-12, "Bell concurrence is not 1")?;
    check((eof - 1.0).abs() < 1e-12, "Bell EoF is not 1")?;
    let (c00, _) = wootters_concurrence(&DensityMatrix4::from_pure(&PureTwoQubit::basis(0)))
        .map_err(|e| e.to_string())?;
    check(c00.abs() < 1e-9, "|00> concurrence is not 0")?;
    let (cmix, _) = wootters_concurrence(&DensityMatrix4::maximally_mixed())
        .map_err(|e| e.to_string())?;
    check(cmix.abs() < 1e-9, "I/4 concurrence is not 0")
}

fn group_oracle_sanity() -> Result<(), String> {
    let config = RoofConfig {
        restarts: 8,
        iterations: 400,
        ..RoofConfig::default()
    };
    let bell = DensityMatrix4::from_pure(&PureTwoQubit::bell_phi_plus());
    let roof = convex_roof_concurrence(&bell, &config).map_err(|e| e.to_string())?;
    check(
        (roof.concurrence - 1.0).abs() < 1e-6,
        format!("roof on Bell projector gave {}", roof.concurrence),
    )?;

    let phi = PureTwoQubit::bell_phi_plus();
    let psi = PureTwoQubit::bell_psi_plus();
    let mix = TripleMixture::new([0.5, 0.5, 0.0], [phi, psi, PureTwoQubit::basis(0)])
        .map_err(|e| e.to_string())?;
    let rho = mix.density().map_err(|e| e.to_string())?;
    let roof = convex_roof_concurrence(&rho, &config).map_err(|e| e.to_string())?;
    check(
        roof.concurrence < 1e-2,
        format!("roof on a separable Bell mixture stuck at {}", roof.concurrence),
    )?;

    for seed in 0..4 {
        let rho = random_density(1 + (seed as usize) % 4, 900 + seed).map_err(|e| e.to_string())?;
        let (cw, _) = wootters_concurrence(&rho).map_err(|e| e.to_string())?;
        let roof = convex_roof_concurrence(&rho, &config).map_err(|e| e.to_string())?;
        check(
            roof.concurrence >= cw - 1e-6,
            format!("roof {} fell below the closed form {cw}", roof.concurrence),
        )?;
    }
    Ok(())
}

pub fn cmd_selftest() -> Result<(), Failure> {
    let groups: [(&str, GroupFn); 7] = [
        ("eigensolver", group_eigensolver),
        ("spin_flip", group_spin_flip),
        ("vertex_reduction", group_vertex_reduction),
        ("amplitude_form", group_amplitude_form),
        ("upper_bound", group_upper_bound),
        ("werner_anchors", group_werner_anchors),
        ("oracle_sanity", group_oracle_sanity),
    ];
    let mut failures = 0;
    for (name, run) in groups {
        match run() {
            Ok(()) => crate::emit_line(&format!("group {name:<18} pass"))?,
            Err(message) => {
                crate::emit_line(&format!("group {name:<18} FAIL: {message}"))?;
                failures += 1;
            }
        }
    }
    if failures > 0 {
        Err(Failure::selftest(format!("{failures} selftest group(s) failed")))
    } else {
        crate::emit_line(&format!("selftest: all {} groups passed", groups.len()))
    }
}
