use rayon::prelude::*;

use super::{check_ascending, SweepRecord, SweepTable};
use crate::error::{Error, Result};
use crate::lindblad::{eigenspectrum, liouvillian};
use crate::schemes::{collective_loss, ideal_tms, solve_asymmetric_drive, DriveParams, Frame};

pub const GAP_MU_COLUMNS: [&str; 3] = ["mu_over_Gamma", "r", "gap_over_Gamma"];
pub const GAP_R_COLUMNS: [&str; 3] = ["r", "gap_numeric", "gap_leading_order"];

/// `10^-3 … 10^2`, 11 points per decade.
pub fn default_mu_grid() -> Vec<f64> {
    log_grid(1e-3, 1e2, 11)
}

/// Log-spaced grid from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points_per_decade: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    let ppd = points_per_decade as f64;
    let n = ((b - a) * ppd + 1e-9).floor() as usize;
    (0..=n).map(|k| 10f64.powf(a + k as f64 / ppd)).collect()
}

/// Gap of the rotated-frame collective-loss model vs drive energy `μ/Γ`.
/// Rows run over `mu` for each `r` in turn. A degenerate point reports gap 0.
pub fn sweep_gap_vs_mu(r_list: &[f64], mu_grid: &[f64], eta: f64) -> Result<SweepTable> {
    check_ascending("mu", mu_grid)?;
    if mu_grid.iter().any(|&m| m < 0.0) || r_list.iter().any(|&r| !(r >= 0.0)) {
        return Err(Error::InvalidArgument(
            "mu and r must be nonnegative".into(),
        ));
    }
    let points: Vec<(f64, f64)> = r_list
        .iter()
        .flat_map(|&r| mu_grid.iter().map(move |&mu| (r, mu)))
        .collect();
    let records = points
        .par_iter()
        .map(|&(r, mu)| {
            gap_point(r, mu, eta).map_err(|e| e.at(format!("r = {r}, mu_over_Gamma = {mu}")))
        })
        .collect::<Result<Vec<_>>>()?;
    SweepTable::from_records(&GAP_MU_COLUMNS, records)
}

fn gap_point(r: f64, mu: f64, eta: f64) -> Result<SweepRecord> {
    let drive = if eta == 1.0 {
        DriveParams::symmetric(r, mu)?
    } else {
        solve_asymmetric_drive(r, mu, eta)?
    };
    let model = collective_loss(Frame::Transformed, &drive, 1.0)?;
    let res = eigenspectrum(&liouvillian(&model))?;
    let gap = if res.degeneracy > 1 {
        0.0
    } else {
        res.gap.unwrap_or(0.0)
    };
    Ok(SweepRecord::new(vec![
        ("mu_over_Gamma", mu),
        ("r", r),
        ("gap_over_Gamma", gap),
    ]))
}

/// Gap of two-mode squeezed dissipation (`Γ = 1`) against `1/(3 sinh² r)`.
pub fn gap_vs_r(r_grid: &[f64]) -> Result<SweepTable> {
    check_ascending("r", r_grid)?;
    if let Some(r) = r_grid.iter().find(|&&r| r < 0.5) {
        return Err(Error::InvalidArgument(format!("r must be >= 0.5, got {r}")));
    }
    let records = r_grid
        .par_iter()
        .map(|&r| {
            let res = eigenspectrum(&liouvillian(&ideal_tms(r, 1.0, 1.0)?))
                .map_err(|e| e.at(format!("r = {r}")))?;
            let gap = res
                .gap
                .ok_or_else(|| Error::Numerical(format!("no gap at r = {r}")))?;
            Ok(SweepRecord::new(vec![
                ("r", r),
                ("gap_numeric", gap),
                ("gap_leading_order", 1.0 / (3.0 * r.sinh().powi(2))),
            ]))
        })
        .collect::<Result<Vec<_>>>()?;
    SweepTable::from_records(&GAP_R_COLUMNS, records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = default_mu_grid();
        assert_eq!(g.len(), 56);
        assert!((g[0] - 1e-3).abs() < 1e-18 && (g[55] - 100.0).abs() < 1e-10);
    }

    #[test]
    fn closed_gap_at_zero_drive() {
        let t = sweep_gap_vs_mu(&[1.0], &[0.0, 1.0], 1.0).unwrap();
        assert!(t.records()[0].get("gap_over_Gamma").unwrap() < 1e-10);
        assert!(t.records()[1].get("gap_over_Gamma").unwrap() > 1e-3);
    }

    #[test]
    fn leading_order_column() {
        let t = gap_vs_r(&[2.0]).unwrap();
        let lo = t.records()[0].get("gap_leading_order").unwrap();
        assert!((lo - 1.0 / (3.0 * 2f64.sinh().powi(2))).abs() < 1e-15);
        assert!((lo - 0.025335).abs() < 1e-5);
        let num = t.records()[0].get("gap_numeric").unwrap();
        assert!((num / lo - 1.0).abs() < 0.08);
    }
}
