//! Finite temperature: concurrence and purity of the stabilized state for a
//! 6 GHz qubit pair, and where the concurrence drops below 0.9.

use synthsqueeze::experiments::{crossing, default_temperature_grid, sweep_temperature};

fn main() -> synthsqueeze::Result<()> {
    let table = sweep_temperature(1.0, 1.0, 6.0, &default_temperature_grid())?;
    for rec in table.records().iter().step_by(6) {
        println!(
            "T = {:>6.1} mK  n_th = {:.3e}  C = {:.5}  purity = {:.5}",
            1e3 * rec.get("T_K").unwrap(),
            rec.get("n_th").unwrap(),
            rec.get("concurrence").unwrap(),
            rec.get("purity").unwrap()
        );
    }
    let t = table.column("T_K").unwrap();
    let c = table.column("concurrence").unwrap();
    if let Some(x) = crossing(&t, &c, 0.9) {
        println!("concurrence falls below 0.9 at {:.1} mK", 1e3 * x);
    }
    Ok(())
}
