//! Entanglement and state-quality measures.

use crate::error::{Error, Result};
use crate::operator::{kron, pauli, CMatrix, DensityMatrix, Ket, Operator, Pauli, C64};

/// Eigenvalues of ρ below this fraction of the largest are treated as zero.
const RANK_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct MetricSet {
    pub concurrence: f64,
    pub purity: f64,
    pub fidelity_to_target: Option<f64>,
}

impl MetricSet {
    pub fn of(rho: &DensityMatrix, target: Option<&Ket>) -> Result<Self> {
        Ok(Self {
            concurrence: concurrence(rho)?,
            purity: purity(rho),
            fidelity_to_target: target.map(|t| fidelity(rho, t)).transpose()?,
        })
    }
}

/// Wootters concurrence of a two-qubit state.
///
/// With `ρ = A A†`, the Wootters λᵢ are the singular values of `Aᵀ (σy⊗σy) A`.
/// Working with singular values avoids square roots of tiny eigenvalues, which
/// would cost eight digits on pure states.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "concurrence needs dims [2, 2], got {:?}",
            rho.dims()
        )));
    }
    let m = rho.matrix();
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let w_max = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..4)
        .filter(|&i| eig.eigenvalues[i] > RANK_TOL * w_max)
        .collect();
    let a = CMatrix::from_fn(4, keep.len(), |row, col| {
        let i = keep[col];
        eig.eigenvectors[(row, i)] * eig.eigenvalues[i].sqrt()
    });
    let yy = kron(&pauli(Pauli::Y), &pauli(Pauli::Y));
    let tau = a.transpose() * yy.matrix() * &a;
    let mut lambdas: Vec<f64> = tau.singular_values().iter().copied().collect();
    lambdas.resize(4.max(lambdas.len()), 0.0);
    lambdas.sort_by(|x, y| y.total_cmp(x));
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// `Tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn fidelity(rho: &DensityMatrix, target: &Ket) -> Result<f64> {
    if rho.dims() != target.dims() {
        return Err(Error::DimensionMismatch(format!(
            "state dims {:?} vs target dims {:?}",
            rho.dims(),
            target.dims()
        )));
    }
    let psi = target.amplitudes();
    Ok(psi.dotc(&(rho.matrix() * psi)).re)
}

/// `½ Tr|ρ − σ|`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dims() != sigma.dims() {
        return Err(Error::DimensionMismatch(format!(
            "dims {:?} vs {:?}",
            rho.dims(),
            sigma.dims()
        )));
    }
    let diff = Operator::new(rho.matrix() - sigma.matrix(), rho.dims().to_vec())?;
    Ok(0.5
        * diff
            .hermitian_eigenvalues()
            .iter()
            .map(|x| x.abs())
            .sum::<f64>())
}
