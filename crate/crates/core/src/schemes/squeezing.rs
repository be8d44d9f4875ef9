use super::{on, require};
use crate::error::{Error, Result};
use crate::lindblad::LindbladModel;
use crate::operator::{annihilator, embed, pauli, DensityMatrix, Ket, Operator, Pauli, C64};

/// Modulated qubit-cavity coupling: squeezing `r`, modulation scale `alpha`,
/// bare coupling `g_bar`, cavity decay `kappa`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeParams {
    pub r: f64,
    pub alpha: f64,
    pub g_bar: f64,
    pub kappa: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, alpha: f64, g_bar: f64, kappa: f64) -> Result<Self> {
        require(r >= 0.0 && r.is_finite(), || {
            format!("r must be >= 0, got {r}")
        })?;
        require(alpha >= 0.0 && alpha.is_finite(), || {
            format!("alpha must be >= 0, got {alpha}")
        })?;
        require(g_bar >= 0.0 && g_bar.is_finite(), || {
            format!("g_bar must be >= 0, got {g_bar}")
        })?;
        require(kappa > 0.0 && kappa.is_finite(), || {
            format!("kappa must be > 0, got {kappa}")
        })?;
        Ok(Self {
            r,
            alpha,
            g_bar,
            kappa,
        })
    }

    /// Effective qubit decay `4 ḡ² α² / κ` after eliminating the cavity.
    pub fn gamma(&self) -> f64 {
        4.0 * self.g_bar * self.g_bar * self.alpha * self.alpha / self.kappa
    }

    /// `(α₋, α₊) = α (cosh r, sinh r)`.
    pub fn sideband_amplitudes(&self) -> (f64, f64) {
        (self.alpha * self.r.cosh(), self.alpha * self.r.sinh())
    }
}

/// Red and blue sideband amplitudes `(α₋, α₊, β₋, β₊)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Amplitudes {
    pub alpha_minus: C64,
    pub alpha_plus: C64,
    pub beta_minus: C64,
    pub beta_plus: C64,
}

impl Amplitudes {
    /// The choice that reproduces two-mode squeezed dissipation.
    pub fn tms(alpha: f64, r: f64) -> Self {
        let c = C64::new(alpha * r.cosh(), 0.0);
        let s = C64::new(alpha * r.sinh(), 0.0);
        Self {
            alpha_minus: c,
            alpha_plus: s,
            beta_minus: c,
            beta_plus: s,
        }
    }
}

/// `γ D[cosh r σ₋ + sinh r σ₊]`.
pub fn single_qubit_squeezed(gamma: f64, r: f64) -> Result<LindbladModel> {
    require(gamma > 0.0, || format!("gamma must be > 0, got {gamma}"))?;
    require(r >= 0.0, || format!("r must be >= 0, got {r}"))?;
    let j = pauli(Pauli::Minus).scaled(r.cosh()) + pauli(Pauli::Plus).scaled(r.sinh());
    LindbladModel::dissipative(&[2], vec![(gamma, j)])
}

/// Two-mode squeezed dissipation on two qubits.
pub fn ideal_tms(r: f64, gamma1: f64, gamma2: f64) -> Result<LindbladModel> {
    require(gamma1 > 0.0 && gamma2 > 0.0, || {
        format!("rates must be > 0, got {gamma1}, {gamma2}")
    })?;
    let (c, s) = (r.cosh(), r.sinh());
    let ja = on(Pauli::Minus, 0).scaled(c) + on(Pauli::Plus, 1).scaled(s);
    let jb = on(Pauli::Plus, 0).scaled(s) + on(Pauli::Minus, 1).scaled(c);
    LindbladModel::dissipative(&[2, 2], vec![(gamma1, ja), (gamma2, jb)])
}

/// `(cosh r |00⟩ − sinh r |11⟩) / √cosh 2r`, the dark state of [`ideal_tms`].
pub fn tms_state(r: f64) -> Ket {
    let z = C64::new(0.0, 0.0);
    Ket::two_qubit(C64::new(r.cosh(), 0.0), z, z, C64::new(-r.sinh(), 0.0))
        .expect("nonzero amplitudes")
}

/// Reduced two-qubit model after eliminating both cavities. With `flipped`
/// the roles of raising and lowering on qubit 2 are exchanged.
pub fn synthetic_reduced(
    p: &SqueezeParams,
    amps: &Amplitudes,
    flipped: bool,
) -> Result<LindbladModel> {
    let rate = 4.0 * p.g_bar * p.g_bar / p.kappa;
    let (lower2, raise2) = if flipped {
        (Pauli::Plus, Pauli::Minus)
    } else {
        (Pauli::Minus, Pauli::Plus)
    };
    let ja = on(Pauli::Minus, 0).scaled(amps.alpha_minus) + on(raise2, 1).scaled(amps.alpha_plus);
    let jb = on(Pauli::Plus, 0).scaled(amps.beta_plus) + on(lower2, 1).scaled(amps.beta_minus);
    LindbladModel::dissipative(&[2, 2], vec![(rate, ja), (rate, jb)])
}

/// Equal red and blue sidebands: rate `4 m̄ ḡ²/κ` on `σ₋⁽¹⁾+σ₊⁽²⁾` and `σ₊⁽¹⁾+σ₋⁽²⁾`.
pub fn balanced(m_bar: f64, g_bar: f64, kappa: f64) -> Result<LindbladModel> {
    require(m_bar >= 0.0, || format!("m_bar must be >= 0, got {m_bar}"))?;
    require(kappa > 0.0, || format!("kappa must be > 0, got {kappa}"))?;
    let rate = 4.0 * m_bar * g_bar * g_bar / kappa;
    let j1 = on(Pauli::Minus, 0) + on(Pauli::Plus, 1);
    let j2 = on(Pauli::Plus, 0) + on(Pauli::Minus, 1);
    LindbladModel::dissipative(&[2, 2], vec![(rate, j1), (rate, j2)])
}

/// [`balanced`] with qubit 2 flipped: jumps `σ₋⁽¹⁾+σ₋⁽²⁾` and `σ₊⁽¹⁾+σ₊⁽²⁾`.
/// Conserves total angular momentum, so the singlet is stationary.
pub fn balanced_flipped(m_bar: f64, g_bar: f64, kappa: f64) -> Result<LindbladModel> {
    require(m_bar >= 0.0, || format!("m_bar must be >= 0, got {m_bar}"))?;
    require(kappa > 0.0, || format!("kappa must be > 0, got {kappa}"))?;
    let rate = 4.0 * m_bar * g_bar * g_bar / kappa;
    let j1 = on(Pauli::Minus, 0) + on(Pauli::Minus, 1);
    let j2 = on(Pauli::Plus, 0) + on(Pauli::Plus, 1);
    LindbladModel::dissipative(&[2, 2], vec![(rate, j1), (rate, j2)])
}

/// `ν |Φ⁻⟩⟨Φ⁻| + (1−ν) I/4` for `−1/3 ≤ ν ≤ 1`.
pub fn werner_state(nu: f64) -> Result<DensityMatrix> {
    require((-1.0 / 3.0 - 1e-12..=1.0 + 1e-12).contains(&nu), || {
        format!("nu must lie in [-1/3, 1], got {nu}")
    })?;
    let z = C64::new(0.0, 0.0);
    let phi = Ket::two_qubit(C64::new(1.0, 0.0), z, z, C64::new(-1.0, 0.0))?;
    let m = phi.projector().matrix() * C64::new(nu, 0.0)
        + DensityMatrix::maximally_mixed(&[2, 2]).matrix() * C64::new(1.0 - nu, 0.0);
    DensityMatrix::new(Operator::new(m, vec![2, 2])?)
}

/// Qubit coupled to a lossy cavity before elimination, on dims `[2, n_fock]`.
/// `H = ḡ a†(α₊σ₊ + α₋σ₋) + h.c.`, jump `(κ, a)`.
pub fn qubit_cavity_full(
    p: &SqueezeParams,
    alpha_plus: C64,
    alpha_minus: C64,
    n_fock: usize,
) -> Result<LindbladModel> {
    require(n_fock >= 4, || format!("n_fock must be >= 4, got {n_fock}"))?;
    let dims = [2, n_fock];
    let a = embed(&annihilator(n_fock)?, 1, &dims)?;
    let sp = embed(&pauli(Pauli::Plus), 0, &dims)?;
    let sm = embed(&pauli(Pauli::Minus), 0, &dims)?;
    let coupling = &a.dagger() * &(sp.scaled(alpha_plus) + sm.scaled(alpha_minus));
    let h = (&coupling + &coupling.dagger()).scaled(p.g_bar);
    LindbladModel::new(h, vec![(p.kappa, a)])
}

/// Mean-field relaxation rate of the large-spin model,
/// `(16 S ḡ² α²/κ)(1 − sinh²r / 2S)`.
pub fn hp_mean_field_rate(s: f64, g_bar: f64, alpha: f64, kappa: f64, r: f64) -> Result<f64> {
    require(s > 0.0, || format!("S must be > 0, got {s}"))?;
    require(kappa > 0.0, || format!("kappa must be > 0, got {kappa}"))?;
    let sh2 = r.sinh().powi(2);
    if sh2 > 2.0 * s {
        return Err(Error::InvalidArgument(format!(
            "mean field breaks down: sinh²r = {sh2:.4} exceeds 2S = {}",
            2.0 * s
        )));
    }
    Ok(16.0 * s * g_bar * g_bar * alpha * alpha / kappa * (1.0 - sh2 / (2.0 * s)))
}
