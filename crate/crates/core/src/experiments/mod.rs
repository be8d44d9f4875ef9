//! Parameter sweeps. Each returns a [`SweepTable`] with a fixed column schema.
//!
//! Points are evaluated in parallel on the current rayon pool and collected in
//! grid order, so results do not depend on the thread count.

mod elimination;
mod gap;
mod spacing;
mod temperature;

pub use elimination::{validate_elimination, validate_elimination_with, ElimOptions, ELIM_COLUMNS};
pub use gap::{
    default_mu_grid, gap_vs_r, log_grid, sweep_gap_vs_mu, GAP_MU_COLUMNS, GAP_R_COLUMNS,
};
pub use spacing::{default_spacing_grid, sweep_spacing, SPACING_COLUMNS, TL_K1};
pub use temperature::{
    default_temperature_grid, fit_r_for_concurrence, sweep_temperature, TEMPERATURE_COLUMNS,
};

use crate::error::{Error, Result};

/// One parameter point: values in schema order.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    fields: Vec<(String, f64)>,
}

impl SweepRecord {
    pub fn new<S: Into<String>>(fields: Vec<(S, f64)>) -> Self {
        Self {
            fields: fields.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    pub fn get(&self, column: &str) -> Option<f64> {
        self.fields
            .iter()
            .find(|(k, _)| k == column)
            .map(|(_, v)| *v)
    }

    pub fn fields(&self) -> &[(String, f64)] {
        &self.fields
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.fields.iter().map(|(_, v)| *v)
    }
}

/// Records sharing one schema.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    columns: Vec<String>,
    records: Vec<SweepRecord>,
}

impl SweepTable {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: SweepRecord) -> Result<()> {
        let matches = record.fields.len() == self.columns.len()
            && record
                .fields
                .iter()
                .zip(&self.columns)
                .all(|((k, _), c)| k == c);
        if !matches {
            let names: Vec<&str> = record.fields.iter().map(|(k, _)| k.as_str()).collect();
            return Err(Error::InvalidArgument(format!(
                "record columns {names:?} do not match schema {:?}",
                self.columns
            )));
        }
        if let Some((k, v)) = record.fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Numerical(format!("column {k} is not finite ({v})")));
        }
        self.records.push(record);
        Ok(())
    }

    pub fn from_records<S: AsRef<str>>(columns: &[S], records: Vec<SweepRecord>) -> Result<Self> {
        let mut t = Self::new(columns);
        for r in records {
            t.push(r)?;
        }
        Ok(t)
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn records(&self) -> &[SweepRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// One column as a vector.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.records.iter().map(|r| r.fields[idx].1).collect())
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs.iter().zip(ys).map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// First `x` where `y` crosses `level`, by linear interpolation.
pub fn crossing(xs: &[f64], ys: &[f64], level: f64) -> Option<f64> {
    for i in 1..xs.len().min(ys.len()) {
        let (y0, y1) = (ys[i - 1] - level, ys[i] - level);
        if y0 == 0.0 {
            return Some(xs[i - 1]);
        }
        if y0 * y1 < 0.0 || y1 == 0.0 {
            return Some(xs[i - 1] + (xs[i] - xs[i - 1]) * y0 / (y0 - y1));
        }
    }
    None
}

fn check_ascending(name: &str, grid: &[f64]) -> Result<()> {
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "{name} grid has non-finite values"
        )));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "{name} grid must be strictly ascending"
        )));
    }
    Ok(())
}

/// `start, start+step, …` up to `stop` inclusive, computed by index to avoid drift.
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|k| start + k as f64 * step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_enforces_schema() {
        let mut t = SweepTable::new(&["a", "b"]);
        t.push(SweepRecord::new(vec![("a", 1.0), ("b", 2.0)]))
            .unwrap();
        assert!(t
            .push(SweepRecord::new(vec![("b", 1.0), ("a", 2.0)]))
            .is_err());
        assert!(t
            .push(SweepRecord::new(vec![("a", f64::NAN), ("b", 2.0)]))
            .is_err());
        assert_eq!(t.column("b").unwrap(), vec![2.0]);
    }

    #[test]
    fn slope_of_power_law() {
        let xs: Vec<f64> = (1..10).map(|k| k as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x * x).collect();
        assert!((loglog_slope(&xs, &ys) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn crossing_interpolates() {
        let c = crossing(&[0.0, 1.0, 2.0], &[1.0, 0.8, 0.4], 0.6).unwrap();
        assert!((c - 1.5).abs() < 1e-12);
        assert!(crossing(&[0.0, 1.0], &[1.0, 0.9], 0.5).is_none());
    }

    #[test]
    fn linear_grid_hits_endpoint() {
        let g = linear_grid(0.0, 0.15, 0.0025);
        assert_eq!(g.len(), 61);
        assert!((g[60] - 0.15).abs() < 1e-15);
    }
}
