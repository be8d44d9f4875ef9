use rayon::prelude::*;

use super::{check_ascending, linear_grid, SweepRecord, SweepTable};
use crate::error::{Error, Result};
use crate::lindblad::{liouvillian, steady_state, NULL_SPACE_TOL};
use crate::metrics::{concurrence, purity};
use crate::schemes::{bose_einstein, thermal_tms};

pub const TEMPERATURE_COLUMNS: [&str; 4] = ["T_K", "n_th", "concurrence", "purity"];

/// 0 to 0.15 K in 2.5 mK steps.
pub fn default_temperature_grid() -> Vec<f64> {
    linear_grid(0.0, 0.15, 0.0025)
}

/// Squeezing whose ideal paired state has concurrence `c` (`tanh 2r = c`).
pub fn fit_r_for_concurrence(c: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&c) {
        return Err(Error::InvalidArgument(format!(
            "target concurrence must lie in [0, 1), got {c}"
        )));
    }
    Ok(c.atanh() / 2.0)
}

/// Steady-state entanglement of thermal two-mode squeezed dissipation vs bath temperature.
pub fn sweep_temperature(r: f64, gamma: f64, freq_ghz: f64, t_grid: &[f64]) -> Result<SweepTable> {
    check_ascending("temperature", t_grid)?;
    let records = t_grid
        .par_iter()
        .map(|&t| point(r, gamma, freq_ghz, t).map_err(|e| e.at(format!("T_K = {t}"))))
        .collect::<Result<Vec<_>>>()?;
    SweepTable::from_records(&TEMPERATURE_COLUMNS, records)
}

fn point(r: f64, gamma: f64, freq_ghz: f64, t: f64) -> Result<SweepRecord> {
    let n_th = bose_einstein(freq_ghz, t)?;
    let l = liouvillian(&thermal_tms(r, gamma, n_th)?);
    let ss = steady_state(&l, NULL_SPACE_TOL)?;
    let rho = ss.unique_state()?;
    Ok(SweepRecord::new(vec![
        ("T_K", t),
        ("n_th", n_th),
        ("concurrence", concurrence(rho)?),
        ("purity", purity(rho)),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_temperature_row() {
        let t = sweep_temperature(1.0, 1.0, 6.0, &[0.0, 0.05]).unwrap();
        let rec = &t.records()[0];
        assert!((rec.get("concurrence").unwrap() - 2f64.tanh()).abs() < 1e-8);
        assert!((rec.get("purity").unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_unsorted_grid() {
        assert!(sweep_temperature(1.0, 1.0, 6.0, &[0.1, 0.05]).is_err());
    }

    #[test]
    fn fit_inverts_tanh() {
        let r = fit_r_for_concurrence(2f64.tanh()).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }
}
