//! Collective loss plus two Rabi drives stabilizes a squeezed Bell-like state.
//! The same physics seen in the lab frame and in the rotated frame where the
//! dissipator looks like two-mode squeezing.

use synthsqueeze::lindblad::{eigenspectrum, NULL_SPACE_TOL};
use synthsqueeze::schemes::{collective_loss, local_unitary, target_state, DriveParams, Frame};
use synthsqueeze::{concurrence, fidelity, liouvillian, steady_state};

fn main() -> synthsqueeze::Result<()> {
    let r0 = 1.0;
    for mu in [0.0, 0.1, 1.0, 10.0] {
        let drive = DriveParams::symmetric(r0, mu)?;
        let lab = collective_loss(Frame::Lab, &drive, 1.0)?;
        let spec = eigenspectrum(&liouvillian(&lab))?;
        if spec.degeneracy > 1 {
            println!(
                "mu = {mu:>5}: {}-fold degenerate steady state",
                spec.degeneracy
            );
            continue;
        }
        let res = steady_state(&liouvillian(&lab), NULL_SPACE_TOL)?;
        let rho = res.unique_state()?;
        let target = local_unitary(r0).dagger().apply(&target_state(r0));
        println!(
            "mu = {mu:>5}: Δ = {:.4}, Λ = {:.4}, gap = {:.3e}, C = {:.6}, F = {:.10}",
            drive.delta,
            drive.lambda,
            spec.gap.unwrap(),
            concurrence(rho)?,
            fidelity(rho, &target)?
        );
    }
    Ok(())
}
