//! The `sweep` subcommand: CSV grids of the symmetric-case closed form
//! C² = (p/(1+2X))².

use concurrence::SymmetricCaseParams;

use crate::{Failure, SweepArgs, SweepMode};

/// A `lo:hi:n` axis description.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RangeSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

pub fn parse_range(text: &str) -> Result<RangeSpec, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("range must be lo:hi:n, got {text:?}"));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| format!("range lower bound {:?} is not a number", parts[0]))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| format!("range upper bound {:?} is not a number", parts[1]))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| format!("range point count {:?} is not an integer", parts[2]))?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err("range bounds must be finite".into());
    }
    if n < 2 {
        return Err(format!("range needs at least 2 points, got {n}"));
    }
    if lo >= hi {
        return Err(format!("range needs lo < hi, got {lo} >= {hi}"));
    }
    Ok(RangeSpec { lo, hi, n })
}

/// Affine grid point k of n over [lo, hi]. The (lo·(n−1−k) + hi·k)/(n−1)
/// form hits representable rationals exactly (endpoints, and e.g. ±1 on a
/// [−5, 5] 101-point grid), which the golden outputs rely on.
pub fn grid_point(range: &RangeSpec, k: usize) -> f64 {
    let n1 = (range.n - 1) as f64;
    (range.lo * (range.n - 1 - k) as f64 + range.hi * k as f64) / n1
}

/// Fixed CSV number format: 9 significant digits, locale-free; infinities
/// render as `inf`.
pub fn fmt(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.8e}")
    }
}

fn render_alpha(p: f64, range: &RangeSpec) -> String {
    let mut out = String::from("alpha,alpha_p,x,c_squared\n");
    for i in 0..range.n {
        let alpha = grid_point(range, i);
        for j in 0..range.n {
            let alpha_p = grid_point(range, j);
            let params = SymmetricCaseParams::new(p, alpha, alpha_p);
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt(alpha),
                fmt(alpha_p),
                fmt(params.x),
                fmt(params.c_squared())
            ));
        }
    }
    out
}

fn render_xp(range: &RangeSpec) -> String {
    let p_axis = RangeSpec {
        lo: 0.0,
        hi: 1.0,
        n: range.n,
    };
    let mut out = String::from("p,x,c_squared\n");
    for i in 0..range.n {
        let p = grid_point(&p_axis, i);
        for j in 0..range.n {
            let x = grid_point(range, j);
            let c = p / (1.0 + 2.0 * x);
            out.push_str(&format!("{},{},{}\n", fmt(p), fmt(x), fmt(c * c)));
        }
    }
    out
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), Failure> {
    let range = parse_range(&args.range).map_err(Failure::input)?;
    let csv = match args.mode {
        SweepMode::Alpha => {
            if !args.p.is_finite() {
                return Err(Failure::input("p must be finite"));
            }
            render_alpha(args.p, &range)
        }
        SweepMode::Xp => {
            if range.lo < 0.0 {
                return Err(Failure::input(
                    "xp mode sweeps X = ((aa'+1)/(a-a'))^2 >= 0; range must start at 0 or above",
                ));
            }
            render_xp(&range)
        }
    };
    std::fs::write(&args.out, csv)
        .map_err(|e| Failure::io(format!("writing {}: {e}", args.out.display())))?;
    Ok(())
}
