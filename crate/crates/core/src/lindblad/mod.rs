//! Lindblad models, their column-stacked Liouvillians, and what can be
//! extracted from them.
//!
//! Vectorization stacks columns: `vec(A X B) = (Bᵀ ⊗ A) vec(X)`. Because the
//! dense matrices are stored column-major, `vec(X)` is just the backing slice.

mod evolve;
mod spectral;

pub use evolve::{default_dt, evolve, evolve_with, EvolveOptions, Trajectory};
pub use spectral::{
    eigenspectrum, spectrum, steady_state, SpectralResult, MAX_SPECTRUM_DIM, NULL_SPACE_TOL,
    SPECTRUM_ZERO_TOL,
};

use crate::error::{Error, Result};
use crate::operator::{kron_matrix, CMatrix, CVector, Operator, C64};

/// One dissipation channel `rate · D[op]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jump {
    pub rate: f64,
    pub op: Operator,
}

/// Hamiltonian plus weighted jump operators, all on the same factor dims.
#[derive(Clone, Debug, PartialEq)]
pub struct LindbladModel {
    hamiltonian: Operator,
    jumps: Vec<Jump>,
}

impl LindbladModel {
    pub fn new(hamiltonian: Operator, jumps: Vec<(f64, Operator)>) -> Result<Self> {
        let dims = hamiltonian.dims().to_vec();
        let mut out = Vec::with_capacity(jumps.len());
        for (k, (rate, op)) in jumps.into_iter().enumerate() {
            if op.dims() != dims.as_slice() {
                return Err(Error::DimensionMismatch(format!(
                    "jump {k} has dims {:?}, Hamiltonian has {:?}",
                    op.dims(),
                    dims
                )));
            }
            if !(rate >= 0.0) || !rate.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "jump {k} has rate {rate}; rates must be finite and nonnegative"
                )));
            }
            out.push(Jump { rate, op });
        }
        Ok(Self {
            hamiltonian,
            jumps: out,
        })
    }

    /// Purely dissipative model.
    pub fn dissipative(dims: &[usize], jumps: Vec<(f64, Operator)>) -> Result<Self> {
        Self::new(Operator::zeros(dims), jumps)
    }

    pub fn hamiltonian(&self) -> &Operator {
        &self.hamiltonian
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn dims(&self) -> &[usize] {
        self.hamiltonian.dims()
    }

    pub fn hilbert_dim(&self) -> usize {
        self.hamiltonian.side()
    }

    /// The same dynamics seen in the frame `ρ → U ρ U†`.
    pub fn conjugated_by(&self, u: &Operator) -> LindbladModel {
        LindbladModel {
            hamiltonian: self.hamiltonian.conjugated_by(u),
            jumps: self
                .jumps
                .iter()
                .map(|j| Jump {
                    rate: j.rate,
                    op: j.op.conjugated_by(u),
                })
                .collect(),
        }
    }

    pub fn with_hamiltonian(&self, hamiltonian: Operator) -> Result<LindbladModel> {
        Self::new(
            hamiltonian,
            self.jumps.iter().map(|j| (j.rate, j.op.clone())).collect(),
        )
    }

    /// `L(ρ)` evaluated directly on a matrix.
    pub fn apply(&self, rho: &Operator) -> Operator {
        let gen = Generator::new(self);
        let out = gen.apply(rho.matrix());
        Operator::new(out, rho.dims().to_vec()).expect("generator preserves shape")
    }

    /// Rough upper bound on the Liouvillian's operator norm.
    pub fn norm_estimate(&self) -> f64 {
        let h = self.hamiltonian.norm_sqr().sqrt();
        let d: f64 = self
            .jumps
            .iter()
            .map(|j| 2.0 * j.rate * j.op.norm_sqr())
            .sum();
        2.0 * h + d
    }
}

/// `ρ̇ = -i(H_eff ρ - ρ H_eff†) + Σ γ J ρ J†` with `H_eff = H - (i/2) Σ γ J†J`.
pub(crate) struct Generator {
    h_eff: CMatrix,
    h_eff_adj: CMatrix,
    jumps: Vec<(f64, CMatrix, CMatrix)>,
}

impl Generator {
    pub(crate) fn new(model: &LindbladModel) -> Self {
        let mut h_eff = model.hamiltonian.matrix().clone();
        let half_i = C64::new(0.0, 0.5);
        let mut jumps = Vec::new();
        for j in &model.jumps {
            if j.rate == 0.0 {
                continue;
            }
            let m = j.op.matrix();
            let md = m.adjoint();
            h_eff -= (&md * m) * (half_i * j.rate);
            jumps.push((j.rate, m.clone(), md));
        }
        let h_eff_adj = h_eff.adjoint();
        Self {
            h_eff,
            h_eff_adj,
            jumps,
        }
    }

    pub(crate) fn apply(&self, rho: &CMatrix) -> CMatrix {
        let minus_i = C64::new(0.0, -1.0);
        let mut out = (&self.h_eff * rho - rho * &self.h_eff_adj) * minus_i;
        for (rate, j, jd) in &self.jumps {
            out += (j * rho * jd) * C64::new(*rate, 0.0);
        }
        out
    }
}

/// Column-stacked Liouvillian of side `D²`.
#[derive(Clone, Debug, PartialEq)]
pub struct Superoperator {
    matrix: CMatrix,
    dims: Vec<usize>,
}

impl Superoperator {
    pub fn new(matrix: CMatrix, dims: Vec<usize>) -> Result<Self> {
        let d: usize = dims.iter().product();
        if matrix.nrows() != d * d || matrix.ncols() != d * d {
            return Err(Error::DimensionMismatch(format!(
                "superoperator of shape {:?} for Hilbert dimension {d}",
                matrix.shape()
            )));
        }
        Ok(Self { matrix, dims })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn hilbert_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn apply(&self, rho: &Operator) -> Operator {
        assert_eq!(rho.dims(), self.dims.as_slice());
        let v = &self.matrix * vectorize(rho.matrix());
        Operator::new(unvectorize(&v, self.hilbert_dim()), self.dims.clone())
            .expect("superoperator preserves shape")
    }

    /// The superoperator acting on `U ρ U†`: `(conj(U) ⊗ U) L (Uᵀ ⊗ U†)`.
    pub fn conjugated_by(&self, u: &Operator) -> Superoperator {
        let left = kron_matrix(&u.matrix().map(|z| z.conj()), u.matrix());
        let right = left.adjoint();
        Superoperator {
            matrix: &left * &self.matrix * right,
            dims: self.dims.clone(),
        }
    }

    pub fn max_abs_diff(&self, other: &Superoperator) -> f64 {
        crate::operator::max_abs_diff(&self.matrix, &other.matrix)
    }

    pub fn scaled(&self, c: f64) -> Superoperator {
        Superoperator {
            matrix: &self.matrix * C64::new(c, 0.0),
            dims: self.dims.clone(),
        }
    }
}

pub fn vectorize(x: &CMatrix) -> CVector {
    CVector::from_column_slice(x.as_slice())
}

pub fn unvectorize(v: &CVector, d: usize) -> CMatrix {
    assert_eq!(v.len(), d * d, "vector length is not d²");
    CMatrix::from_column_slice(d, d, v.as_slice())
}

/// `L = -i(I⊗H - Hᵀ⊗I) + Σ γ [conj(J)⊗J - ½ I⊗J†J - ½ (J†J)ᵀ⊗I]`.
pub fn liouvillian(model: &LindbladModel) -> Superoperator {
    let d = model.hilbert_dim();
    let id = CMatrix::identity(d, d);
    let h = model.hamiltonian.matrix();
    let minus_i = C64::new(0.0, -1.0);
    let mut l = (kron_matrix(&id, h) - kron_matrix(&h.transpose(), &id)) * minus_i;
    for j in &model.jumps {
        if j.rate == 0.0 {
            continue;
        }
        let m = j.op.matrix();
        let jdj = m.adjoint() * m;
        let term = kron_matrix(&m.map(|z| z.conj()), m)
            - kron_matrix(&id, &jdj) * C64::new(0.5, 0.0)
            - kron_matrix(&jdj.transpose(), &id) * C64::new(0.5, 0.0);
        l += term * C64::new(j.rate, 0.0);
    }
    Superoperator {
        matrix: l,
        dims: model.dims().to_vec(),
    }
}
