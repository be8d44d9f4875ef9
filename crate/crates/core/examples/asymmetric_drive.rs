//! Unequal couplings `σ₋⁽¹⁾ + η σ₋⁽²⁾`: solve for the drives that make the
//! target dark and stationary, and see where no solution exists.

use synthsqueeze::lindblad::NULL_SPACE_TOL;
use synthsqueeze::schemes::{collective_loss, solve_asymmetric_drive, Frame};
use synthsqueeze::{concurrence, liouvillian, purity, steady_state, Error};

fn main() -> synthsqueeze::Result<()> {
    for eta in [0.5, 0.8, 1.25, 2.0] {
        for r in [0.25, 0.5, 1.0] {
            match solve_asymmetric_drive(r, 1.0, eta) {
                Ok(d) => {
                    let model = collective_loss(Frame::Lab, &d, 1.0)?;
                    let res = steady_state(&liouvillian(&model), NULL_SPACE_TOL)?;
                    let rho = res.unique_state()?;
                    println!(
                        "eta = {eta:<4} r = {r:<4}: Δ = {:+.5}, Λ = {:.5}, ε = {:+.5}, C = {:.5}, purity = {:.10}",
                        d.delta,
                        d.lambda,
                        d.epsilon,
                        concurrence(rho)?,
                        purity(rho)
                    );
                }
                Err(Error::Unreachable(msg)) => println!("eta = {eta:<4} r = {r:<4}: {msg}"),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}
