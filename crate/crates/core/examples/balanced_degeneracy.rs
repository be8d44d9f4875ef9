//! Equal red and blue sidebands leave a two-dimensional family of steady
//! states; flipping one qubit's sidebands makes the singlet stationary.

use synthsqueeze::lindblad::NULL_SPACE_TOL;
use synthsqueeze::schemes::{balanced, balanced_flipped, werner_state};
use synthsqueeze::{concurrence, liouvillian, purity, steady_state, Ket, C64};

fn main() -> synthsqueeze::Result<()> {
    let model = balanced(1.0, 1.0, 1.0)?;
    let res = steady_state(&liouvillian(&model), NULL_SPACE_TOL)?;
    println!("balanced model: steady-state degeneracy {}", res.degeneracy);
    for nu in [-1.0 / 3.0, 0.0, 1.0 / 3.0, 1.0] {
        let rho = werner_state(nu)?;
        println!(
            "  ν = {nu:+.3}: |L(ρ)| = {:.1e}, C = {:.4}, purity = {:.4}",
            model.apply(rho.as_operator()).max_abs(),
            concurrence(&rho)?,
            purity(&rho)
        );
    }
    let z = C64::new(0.0, 0.0);
    let singlet = Ket::two_qubit(z, C64::new(1.0, 0.0), C64::new(-1.0, 0.0), z)?;
    let flipped = balanced_flipped(1.0, 1.0, 1.0)?;
    println!(
        "flipped model: |L(singlet)| = {:.1e}",
        flipped.apply(singlet.projector().as_operator()).max_abs()
    );
    Ok(())
}
