use std::f64::consts::PI;

use rayon::prelude::*;

use super::{check_ascending, linear_grid, SweepRecord, SweepTable};
use crate::error::{Error, Result};
use crate::lindblad::{liouvillian, steady_state, NULL_SPACE_TOL};
use crate::metrics::{concurrence, purity};
use crate::operator::DensityMatrix;
use crate::schemes::{tl_model, TLParams};

pub const SPACING_COLUMNS: [&str; 6] = [
    "dl_over_lambda1",
    "r_opt",
    "concurrence",
    "purity",
    "concurrence_noH",
    "r_at_bound",
];

/// Wavevector at the lower qubit frequency with `λ₁ = 1`; the upper one is 1.5× this.
pub const TL_K1: f64 = 2.0 * PI;
const K2_OVER_K1: f64 = 1.5;
const R_COARSE_STEP: f64 = 0.05;
const R_TOL: f64 = 1e-4;

/// `0 … 0.02` in steps of `5e-4`.
pub fn default_spacing_grid() -> Vec<f64> {
    linear_grid(0.0, 0.02, 5e-4)
}

/// Best steady-state concurrence over `r` for each spacing error `δl/λ₁`.
pub fn sweep_spacing(dl_grid: &[f64], r_bounds: (f64, f64)) -> Result<SweepTable> {
    let (lo, hi) = r_bounds;
    if !(lo > 0.0 && hi <= 8.0 && lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "r bounds must satisfy 0 < lo < hi <= 8, got ({lo}, {hi})"
        )));
    }
    check_ascending("dl", dl_grid)?;
    let records = dl_grid
        .par_iter()
        .map(|&dl| spacing_point(dl, lo, hi).map_err(|e| e.at(format!("dl_over_lambda1 = {dl}"))))
        .collect::<Result<Vec<_>>>()?;
    SweepTable::from_records(&SPACING_COLUMNS, records)
}

fn state(r: f64, dl: f64, with_h: bool) -> Result<DensityMatrix> {
    let p = TLParams::new(r, TL_K1, K2_OVER_K1 * TL_K1, dl)?;
    let ss = steady_state(&liouvillian(&tl_model(&p, with_h)?), NULL_SPACE_TOL)?;
    Ok(ss.unique_state()?.clone())
}

fn conc_at(r: f64, dl: f64) -> Result<f64> {
    concurrence(&state(r, dl, true)?)
}

fn spacing_point(dl: f64, lo: f64, hi: f64) -> Result<SweepRecord> {
    let mut grid = linear_grid(lo, hi, R_COARSE_STEP);
    if hi - grid[grid.len() - 1] > 1e-12 {
        grid.push(hi);
    }
    let values = grid
        .iter()
        .map(|&r| conc_at(r, dl))
        .collect::<Result<Vec<_>>>()?;
    let best = (0..values.len())
        .max_by(|&a, &b| values[a].total_cmp(&values[b]).then(b.cmp(&a)))
        .expect("nonempty grid");
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(grid.len() - 1)];
    let (r_mid, c_mid) = golden_max(|r| conc_at(r, dl), a, b)?;

    // the bracket endpoints are candidates too; the maximum may sit on the bound
    let mut r_opt = r_mid;
    let mut c_opt = c_mid;
    for (r, c) in [
        (grid[best], values[best]),
        (a, conc_at(a, dl)?),
        (b, conc_at(b, dl)?),
    ] {
        if c > c_opt {
            r_opt = r;
            c_opt = c;
        }
    }
    let rho = state(r_opt, dl, true)?;
    let no_h = concurrence(&state(r_opt, dl, false)?)?;
    Ok(SweepRecord::new(vec![
        ("dl_over_lambda1", dl),
        ("r_opt", r_opt),
        ("concurrence", c_opt),
        ("purity", purity(&rho)),
        ("concurrence_noH", no_h),
        ("r_at_bound", if hi - r_opt <= R_TOL { 1.0 } else { 0.0 }),
    ]))
}

/// Golden-section search for a maximum on `[a, b]` to width [`R_TOL`].
fn golden_max(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > R_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc >= fd { (c, fc) } else { (d, fd) })
}
