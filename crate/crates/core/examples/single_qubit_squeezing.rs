//! A qubit in a squeezed bath relaxes to a mixed state with squeezed
//! transverse decay rates `½e^{±2r}`.

use synthsqueeze::schemes::single_qubit_squeezed;
use synthsqueeze::{liouvillian, purity, spectrum};

fn main() -> synthsqueeze::Result<()> {
    for r in [0.0, 0.5, 1.0] {
        let res = spectrum(&liouvillian(&single_qubit_squeezed(1.0, r)?))?;
        let rho = res.unique_state()?;
        let rates: Vec<String> = res
            .eigenvalues
            .iter()
            .map(|z| format!("{:.4}", z.re))
            .collect();
        println!(
            "r = {r:.1}: purity {:.4}, populations {:?}, eigenvalues [{}]",
            purity(rho),
            rho.populations(),
            rates.join(", ")
        );
    }
    Ok(())
}
