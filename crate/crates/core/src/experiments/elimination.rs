use rayon::prelude::*;

use super::{SweepRecord, SweepTable};
use crate::error::{Error, Result};
use crate::lindblad::{evolve_with, EvolveOptions};
use crate::metrics::trace_distance;
use crate::operator::{partial_trace, Ket, C64, GROUND};
use crate::schemes::{qubit_cavity_full, single_qubit_squeezed, SqueezeParams};

pub const ELIM_COLUMNS: [&str; 2] = ["kappa_ratio", "max_trace_distance"];

/// Highest cavity level allowed to hold population.
const TOP_LEVEL_MAX_POP: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct ElimOptions {
    pub r: f64,
    /// Integration time in units of `1/γ`.
    pub t_final_over_gamma: f64,
    /// Fixed Fock cutoff; `None` grows it from 4 until the top level stays empty.
    pub n_fock: Option<usize>,
    pub max_n_fock: usize,
    /// RK4 step as a fraction of `1/(κ (n_fock − 1))`.
    pub step_factor: f64,
    /// Approximate number of compared samples.
    pub samples: usize,
}

impl ElimOptions {
    pub fn new(r: f64, t_final_over_gamma: f64) -> Self {
        Self {
            r,
            t_final_over_gamma,
            n_fock: None,
            max_n_fock: 12,
            step_factor: 1.0,
            samples: 2000,
        }
    }
}

/// Compare the qubit marginal of the qubit-cavity model against the reduced
/// single-qubit model, for each `κ / (ḡ max|α±|)` in the grid.
pub fn validate_elimination(
    kappa_ratio_grid: &[f64],
    r: f64,
    t_final_over_gamma: f64,
) -> Result<SweepTable> {
    validate_elimination_with(kappa_ratio_grid, &ElimOptions::new(r, t_final_over_gamma))
}

pub fn validate_elimination_with(
    kappa_ratio_grid: &[f64],
    opts: &ElimOptions,
) -> Result<SweepTable> {
    if let Some(x) = kappa_ratio_grid.iter().find(|&&x| !(x >= 5.0)) {
        return Err(Error::InvalidArgument(format!(
            "kappa ratios must be >= 5, got {x}"
        )));
    }
    super::check_ascending("kappa_ratio", kappa_ratio_grid)?;
    let records = kappa_ratio_grid
        .par_iter()
        .map(|&ratio| {
            let d = elimination_point(ratio, opts)
                .map_err(|e| e.at(format!("kappa_ratio = {ratio}")))?;
            Ok(SweepRecord::new(vec![
                ("kappa_ratio", ratio),
                ("max_trace_distance", d),
            ]))
        })
        .collect::<Result<Vec<_>>>()?;
    SweepTable::from_records(&ELIM_COLUMNS, records)
}

fn elimination_point(ratio: f64, opts: &ElimOptions) -> Result<f64> {
    let (g_bar, alpha) = (1.0, 1.0);
    let alpha_minus = alpha * opts.r.cosh();
    let alpha_plus = alpha * opts.r.sinh();
    let kappa = ratio * g_bar * alpha_minus.max(alpha_plus);
    let p = SqueezeParams::new(opts.r, alpha, g_bar, kappa)?;
    let gamma = p.gamma();
    let t_final = opts.t_final_over_gamma / gamma;
    let reduced = single_qubit_squeezed(gamma, opts.r)?;

    let mut n_fock = opts.n_fock.unwrap_or(4);
    loop {
        let full = qubit_cavity_full(
            &p,
            C64::new(alpha_plus, 0.0),
            C64::new(alpha_minus, 0.0),
            n_fock,
        )?;
        let dt = opts.step_factor / (kappa * (n_fock - 1) as f64);
        let steps = (t_final / dt).ceil() as usize;
        let stride = (steps / opts.samples.max(1)).max(1);
        let ev = EvolveOptions::new(t_final).dt(dt).stride(stride);

        let dims = [2, n_fock];
        let rho0 = Ket::basis(&dims, &[GROUND, 0])?.projector();
        let full_traj = evolve_with(&full, &rho0, &ev)?;
        let q0 = Ket::basis(&[2], &[GROUND])?.projector();
        let red_traj = evolve_with(&reduced, &q0, &ev)?;

        let mut top = 0.0f64;
        let mut worst = 0.0f64;
        for ((t1, rho), (t2, q)) in full_traj.iter().zip(&red_traj) {
            debug_assert!((t1 - t2).abs() < 1e-12);
            let cavity = partial_trace(rho, &[1])?;
            top = top.max(cavity.populations()[n_fock - 1]);
            let qubit = partial_trace(rho, &[0])?;
            worst = worst.max(trace_distance(&qubit, q)?);
        }
        if top < TOP_LEVEL_MAX_POP {
            return Ok(worst);
        }
        if opts.n_fock.is_some() || n_fock + 2 > opts.max_n_fock {
            return Err(Error::Numerical(format!(
                "Fock truncation at n_fock = {n_fock} leaves {top:.2e} in the top level; \
                 use a larger n_fock"
            )));
        }
        n_fock += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_ratios() {
        assert!(validate_elimination(&[2.0], 1.0, 5.0).is_err());
    }

    #[test]
    fn fixed_cutoff_too_small_is_reported() {
        let mut opts = ElimOptions::new(1.0, 1.0);
        opts.n_fock = Some(4);
        match validate_elimination_with(&[5.0], &opts) {
            Err(e) => assert!(e.to_string().contains("n_fock"), "{e}"),
            Ok(t) => panic!("expected truncation error, got {t:?}"),
        }
    }
}
