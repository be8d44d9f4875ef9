use std::f64::consts::FRAC_PI_2;

use super::{on, require};
use crate::error::Result;
use crate::lindblad::LindbladModel;
use crate::operator::{Operator, Pauli};

/// Two qubits on a transmission line with spacing error `dl`. Wavevectors
/// `k1`, `k2` are in inverse length units of `dl`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TLParams {
    pub r: f64,
    pub k1: f64,
    pub k2: f64,
    pub dl: f64,
}

impl TLParams {
    pub fn new(r: f64, k1: f64, k2: f64, dl: f64) -> Result<Self> {
        require(r >= 0.0 && r.is_finite(), || {
            format!("r must be >= 0, got {r}")
        })?;
        require(k1 > 0.0 && k2 > 0.0, || {
            format!("wavevectors must be > 0, got {k1}, {k2}")
        })?;
        require(dl.is_finite(), || format!("dl must be finite, got {dl}"))?;
        for (name, k) in [("k1", k1), ("k2", k2)] {
            require((k * dl).abs() < FRAC_PI_2, || {
                format!(
                    "|{name}·dl| = {} must stay below π/2 to keep rates positive",
                    (k * dl).abs()
                )
            })?;
        }
        Ok(Self { r, k1, k2, dl })
    }

    /// Pairing amplitude `sinh r cosh r (sin k₁δl + sin k₂δl)`.
    pub fn lambda_pair(&self) -> f64 {
        self.r.sinh() * self.r.cosh() * ((self.k1 * self.dl).sin() + (self.k2 * self.dl).sin())
    }
}

/// Transmission-line model in units `ḡ²/v_g = 1`. Zero-rate channels are dropped.
pub fn tl_model(p: &TLParams, include_hamiltonian: bool) -> Result<LindbladModel> {
    let p = TLParams::new(p.r, p.k1, p.k2, p.dl)?;
    let (c, s) = (p.r.cosh(), p.r.sinh());
    let pair = &on(Pauli::Minus, 0) * &on(Pauli::Minus, 1);
    let h = if include_hamiltonian {
        (&pair + &pair.dagger()).scaled(p.lambda_pair())
    } else {
        Operator::zeros(&[2, 2])
    };
    let j1 = on(Pauli::Minus, 0).scaled(c) + on(Pauli::Plus, 1).scaled(s);
    let j2 = on(Pauli::Minus, 1).scaled(c) + on(Pauli::Plus, 0).scaled(s);
    let (x1, x2) = (p.k1 * p.dl, p.k2 * p.dl);
    let local1 = 4.0 * (x1 / 2.0).sin().powi(2);
    let local2 = 4.0 * (x2 / 2.0).sin().powi(2);
    let jumps = vec![
        (2.0 * x1.cos(), j1),
        (2.0 * x2.cos(), j2),
        (local1 * c * c, on(Pauli::Minus, 0)),
        (local1 * s * s, on(Pauli::Plus, 1)),
        (local2 * c * c, on(Pauli::Minus, 1)),
        (local2 * s * s, on(Pauli::Plus, 0)),
    ];
    LindbladModel::new(
        h,
        jumps.into_iter().filter(|(rate, _)| *rate != 0.0).collect(),
    )
}
