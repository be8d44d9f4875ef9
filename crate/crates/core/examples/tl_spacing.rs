//! Qubits on a transmission line: a spacing error `δl` leaks entanglement, and
//! the best squeezing drops accordingly. Writes the sweep as CSV to stdout.

use std::path::Path;

use synthsqueeze::cli::write_csv;
use synthsqueeze::experiments::{default_spacing_grid, sweep_spacing};

fn main() -> synthsqueeze::Result<()> {
    let grid: Vec<f64> = default_spacing_grid().into_iter().step_by(4).collect();
    let table = sweep_spacing(&grid, (0.05, 4.0))?;
    write_csv(&table, Path::new("-"))
}
