//! Two-mode squeezed dissipation drives two qubits into the pure paired state
//! `(cosh r|00⟩ − sinh r|11⟩)/√cosh 2r`, whose concurrence is `tanh 2r`.

use synthsqueeze::lindblad::NULL_SPACE_TOL;
use synthsqueeze::schemes::{ideal_tms, tms_state};
use synthsqueeze::{liouvillian, steady_state, MetricSet};

fn main() -> synthsqueeze::Result<()> {
    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>14}",
        "r", "concurrence", "tanh 2r", "purity", "1 - fidelity"
    );
    for r in [0.25, 0.5, 1.0, 1.5, 2.0] {
        let res = steady_state(&liouvillian(&ideal_tms(r, 1.0, 1.0)?), NULL_SPACE_TOL)?;
        let m = MetricSet::of(res.unique_state()?, Some(&tms_state(r)))?;
        println!(
            "{r:>5.2} {:>12.8} {:>12.8} {:>12.8} {:>14.2e}",
            m.concurrence,
            (2.0 * r).tanh(),
            m.purity,
            1.0 - m.fidelity_to_target.unwrap()
        );
    }
    Ok(())
}
