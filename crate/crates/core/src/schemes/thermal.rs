use super::{on, require};
use crate::error::Result;
use crate::lindblad::LindbladModel;
use crate::operator::Pauli;

/// `h · 1 GHz / k_B` in kelvin.
pub const HF_OVER_KB_PER_GHZ: f64 = 0.047_992_430_73;

/// Thermal occupation `1/(e^{hf/k_B T} − 1)`; zero at `T = 0`.
pub fn bose_einstein(freq_ghz: f64, t_kelvin: f64) -> Result<f64> {
    require(freq_ghz > 0.0 && freq_ghz.is_finite(), || {
        format!("frequency must be > 0 GHz, got {freq_ghz}")
    })?;
    require(t_kelvin >= 0.0 && t_kelvin.is_finite(), || {
        format!("temperature must be >= 0 K, got {t_kelvin}")
    })?;
    if t_kelvin == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (HF_OVER_KB_PER_GHZ * freq_ghz / t_kelvin).exp_m1())
}

/// Two-mode squeezed dissipation with a thermal bath of occupation `n_th`.
pub fn thermal_tms(r: f64, gamma: f64, n_th: f64) -> Result<LindbladModel> {
    require(gamma > 0.0, || format!("Gamma must be > 0, got {gamma}"))?;
    require(n_th >= 0.0 && n_th.is_finite(), || {
        format!("n_th must be >= 0, got {n_th}")
    })?;
    let (c, s) = (r.cosh(), r.sinh());
    let ja = on(Pauli::Minus, 0).scaled(c) + on(Pauli::Plus, 1).scaled(s);
    let jb = on(Pauli::Plus, 0).scaled(s) + on(Pauli::Minus, 1).scaled(c);
    let up = gamma * (1.0 + n_th);
    let down = gamma * n_th;
    LindbladModel::dissipative(
        &[2, 2],
        vec![
            (up, ja.clone()),
            (down, ja.dagger()),
            (up, jb.clone()),
            (down, jb.dagger()),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindblad::{liouvillian, steady_state, NULL_SPACE_TOL};
    use crate::metrics::concurrence;
    use crate::schemes::ideal_tms;

    #[test]
    fn occupation_values() {
        assert_eq!(bose_einstein(6.0, 0.0).unwrap(), 0.0);
        assert!((6.0 * HF_OVER_KB_PER_GHZ - 0.287954).abs() < 1e-6);
        let n = bose_einstein(6.0, 0.070).unwrap();
        assert!((n - 0.01662).abs() < 1e-5, "{n}");
        assert!(bose_einstein(0.0, 0.1).is_err());
    }

    #[test]
    fn occupation_increases_with_temperature() {
        let mut prev = 0.0;
        for k in 1..100 {
            let n = bose_einstein(6.0, 0.005 * k as f64).unwrap();
            assert!(n > prev);
            prev = n;
        }
    }

    #[test]
    fn zero_temperature_is_ideal() {
        let a = liouvillian(&thermal_tms(1.0, 1.0, 0.0).unwrap());
        let b = liouvillian(&ideal_tms(1.0, 1.0, 1.0).unwrap());
        assert!(a.max_abs_diff(&b) < 1e-15);
        let ss = steady_state(&a, NULL_SPACE_TOL).unwrap();
        let c = concurrence(&ss.steady_states[0]).unwrap();
        assert!((c - 2f64.tanh()).abs() < 1e-8);
    }

    #[test]
    fn concurrence_drops_with_occupation() {
        let mut prev = f64::INFINITY;
        for n in [0.0, 0.01, 0.05, 0.1] {
            let l = liouvillian(&thermal_tms(1.0, 1.0, n).unwrap());
            let c =
                concurrence(&steady_state(&l, NULL_SPACE_TOL).unwrap().steady_states[0]).unwrap();
            assert!(c < prev, "n={n}: {c}");
            prev = c;
        }
    }
}
