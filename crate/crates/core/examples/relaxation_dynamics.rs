//! RK4 trajectory from |gg⟩ under two-mode squeezed dissipation. The state
//! approaches the paired state on the slow time scale `1/κ_slow`.

use synthsqueeze::lindblad::eigenspectrum;
use synthsqueeze::operator::GROUND;
use synthsqueeze::schemes::{ideal_tms, tms_state};
use synthsqueeze::{concurrence, evolve, fidelity, liouvillian, Ket};

fn main() -> synthsqueeze::Result<()> {
    let r = 1.0;
    let model = ideal_tms(r, 1.0, 1.0)?;
    let gap = eigenspectrum(&liouvillian(&model))?.gap.unwrap();
    let rho0 = Ket::basis(&[2, 2], &[GROUND, GROUND])?.projector();
    let traj = evolve(&model, &rho0, 20.0 / gap, 0.01)?;
    let target = tms_state(r);
    println!("κ_slow = {gap:.5}");
    for (t, rho) in traj.iter().step_by(traj.len() / 10) {
        println!(
            "t·κ_slow = {:>5.2}: C = {:.5}, 1 - F = {:.3e}",
            t * gap,
            concurrence(rho)?,
            1.0 - fidelity(rho, &target)?
        );
    }
    Ok(())
}
