//! Dense complex operators on small tensor-product Hilbert spaces.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Index of `|e⟩` in a qubit factor.
pub const EXCITED: usize = 0;
/// Index of `|g⟩` in a qubit factor.
pub const GROUND: usize = 1;

const DENSITY_TOL: f64 = 1e-10;

/// Square complex matrix tagged with the dimensions of its tensor factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    matrix: CMatrix,
    dims: Vec<usize>,
}

impl Operator {
    pub fn new(matrix: CMatrix, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "operator matrix is {}x{}, not square",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let product: usize = dims.iter().product();
        if dims.is_empty() || product != matrix.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "dims {:?} do not multiply to side length {}",
                dims,
                matrix.nrows()
            )));
        }
        if matrix
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidArgument(
                "operator has non-finite entries".into(),
            ));
        }
        Ok(Self { matrix, dims })
    }

    /// Single-factor operator from a square matrix.
    pub fn from_matrix(matrix: CMatrix) -> Result<Self> {
        let n = matrix.nrows();
        Self::new(matrix, vec![n])
    }

    /// Builds a single-factor operator from row-major real entries.
    pub fn from_real_rows(n: usize, rows: &[f64]) -> Self {
        assert_eq!(rows.len(), n * n);
        let m = CMatrix::from_row_iterator(n, n, rows.iter().map(|&x| C64::new(x, 0.0)));
        Self {
            matrix: m,
            dims: vec![n],
        }
    }

    pub fn identity(dims: &[usize]) -> Self {
        let d = dims.iter().product();
        Self {
            matrix: CMatrix::identity(d, d),
            dims: dims.to_vec(),
        }
    }

    pub fn zeros(dims: &[usize]) -> Self {
        let d = dims.iter().product();
        Self {
            matrix: CMatrix::zeros(d, d),
            dims: dims.to_vec(),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn side(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn dagger(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            dims: self.dims.clone(),
        }
    }

    /// Elementwise complex conjugate (not transposed).
    pub fn conj(&self) -> Self {
        Self {
            matrix: self.matrix.map(|z| z.conj()),
            dims: self.dims.clone(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            matrix: self.matrix.transpose(),
            dims: self.dims.clone(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn kron(&self, other: &Operator) -> Operator {
        kron(self, other)
    }

    /// `U A U†`.
    pub fn conjugated_by(&self, u: &Operator) -> Operator {
        self.assert_same_dims(u);
        Self {
            matrix: &u.matrix * &self.matrix * u.matrix.adjoint(),
            dims: self.dims.clone(),
        }
    }

    pub fn commutator(&self, other: &Operator) -> Operator {
        self * other - other * self
    }

    pub fn scaled(&self, c: impl Into<C64>) -> Operator {
        let c = c.into();
        Self {
            matrix: &self.matrix * c,
            dims: self.dims.clone(),
        }
    }

    pub fn apply(&self, ket: &Ket) -> Ket {
        self.assert_same_dims_ket(ket);
        Ket {
            amplitudes: &self.matrix * &ket.amplitudes,
            dims: self.dims.clone(),
        }
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        self.assert_same_dims(other);
        max_abs_diff(&self.matrix, &other.matrix)
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Squared Frobenius norm.
    pub fn norm_sqr(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        max_abs_diff(&self.matrix, &self.matrix.adjoint()) <= tol
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = (&self.matrix + self.matrix.adjoint()) * C64::new(0.5, 0.0);
        let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    fn assert_same_dims(&self, other: &Operator) {
        assert_eq!(
            self.dims, other.dims,
            "operator dims {:?} and {:?} differ",
            self.dims, other.dims
        );
    }

    fn assert_same_dims_ket(&self, ket: &Ket) {
        assert_eq!(
            self.dims, ket.dims,
            "operator dims {:?} and ket dims {:?} differ",
            self.dims, ket.dims
        );
    }
}

pub(crate) fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator dims={:?}", self.dims)?;
        for i in 0..self.side() {
            for j in 0..self.side() {
                let z = self.matrix[(i, j)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn add(self, rhs: &'a Operator) -> Operator {
        self.assert_same_dims(rhs);
        Operator {
            matrix: &self.matrix + &rhs.matrix,
            dims: self.dims.clone(),
        }
    }
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        &self + &rhs
    }
}

impl AddAssign<&Operator> for Operator {
    fn add_assign(&mut self, rhs: &Operator) {
        self.assert_same_dims(rhs);
        self.matrix += &rhs.matrix;
    }
}

impl<'a> Sub<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn sub(self, rhs: &'a Operator) -> Operator {
        self.assert_same_dims(rhs);
        Operator {
            matrix: &self.matrix - &rhs.matrix,
            dims: self.dims.clone(),
        }
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn mul(self, rhs: &'a Operator) -> Operator {
        self.assert_same_dims(rhs);
        Operator {
            matrix: &self.matrix * &rhs.matrix,
            dims: self.dims.clone(),
        }
    }
}

impl Mul for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        &self * &rhs
    }
}

impl Mul<&Operator> for f64 {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        rhs.scaled(self)
    }
}

impl Mul<Operator> for f64 {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        rhs.scaled(self)
    }
}

impl Mul<&Operator> for C64 {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        rhs.scaled(self)
    }
}

impl Mul<Operator> for C64 {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        rhs.scaled(self)
    }
}

impl Neg for Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scaled(-1.0)
    }
}

/// Named single-qubit operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
    Plus,
    Minus,
    Identity,
}

impl FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Pauli::X),
            "y" => Ok(Pauli::Y),
            "z" => Ok(Pauli::Z),
            "plus" | "+" => Ok(Pauli::Plus),
            "minus" | "-" => Ok(Pauli::Minus),
            "identity" | "i" => Ok(Pauli::Identity),
            other => Err(Error::InvalidArgument(format!(
                "unknown Pauli operator '{other}'"
            ))),
        }
    }
}

/// Qubit operator in the `(|e⟩, |g⟩)` basis. `σ+` maps `|g⟩` to `|e⟩`.
pub fn pauli(which: Pauli) -> Operator {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let entries = match which {
        Pauli::X => [z, one, one, z],
        Pauli::Y => [z, -i, i, z],
        Pauli::Z => [one, z, z, -one],
        Pauli::Plus => [z, one, z, z],
        Pauli::Minus => [z, z, one, z],
        Pauli::Identity => [one, z, z, one],
    };
    Operator {
        matrix: CMatrix::from_row_slice(2, 2, &entries),
        dims: vec![2],
    }
}

/// Truncated bosonic lowering operator on `n_fock` levels.
pub fn annihilator(n_fock: usize) -> Result<Operator> {
    if n_fock < 2 {
        return Err(Error::InvalidArgument(format!(
            "Fock truncation must be at least 2, got {n_fock}"
        )));
    }
    let mut m = CMatrix::zeros(n_fock, n_fock);
    for n in 1..n_fock {
        m[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    Ok(Operator {
        matrix: m,
        dims: vec![n_fock],
    })
}

/// Tensor product; the result's dims are `a.dims ++ b.dims`.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    Operator {
        matrix: kron_matrix(&a.matrix, &b.matrix),
        dims,
    }
}

pub(crate) fn kron_matrix(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for j in 0..ac {
        for i in 0..ar {
            let aij = a[(i, j)];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for q in 0..bc {
                for p in 0..br {
                    out[(i * br + p, j * bc + q)] = aij * b[(p, q)];
                }
            }
        }
    }
    out
}

/// Places `op` on factor `site` of a product space with the given dims.
pub fn embed(op: &Operator, site: usize, dims: &[usize]) -> Result<Operator> {
    if site >= dims.len() {
        return Err(Error::InvalidArgument(format!(
            "site {site} out of range for {} factors",
            dims.len()
        )));
    }
    if op.side() != dims[site] {
        return Err(Error::DimensionMismatch(format!(
            "operator of side {} cannot act on factor {site} of dimension {}",
            op.side(),
            dims[site]
        )));
    }
    let left: usize = dims[..site].iter().product();
    let right: usize = dims[site + 1..].iter().product();
    let m = kron_matrix(
        &kron_matrix(&CMatrix::identity(left, left), &op.matrix),
        &CMatrix::identity(right, right),
    );
    Ok(Operator {
        matrix: m,
        dims: dims.to_vec(),
    })
}

pub fn dagger(a: &Operator) -> Operator {
    a.dagger()
}

/// Mixed-radix digits of `index` for the given dims (first factor most significant).
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

/// Reduced density matrix on the factors listed in `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.dims();
    if keep.is_empty() {
        return Err(Error::InvalidArgument(
            "partial trace needs at least one kept factor".into(),
        ));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || kept.iter().any(|&k| k >= dims.len()) {
        return Err(Error::InvalidArgument(format!(
            "invalid keep set {keep:?} for {} factors",
            dims.len()
        )));
    }
    let kept_dims: Vec<usize> = kept.iter().map(|&k| dims[k]).collect();
    let dk: usize = kept_dims.iter().product();
    let d = rho.op.side();
    let traced: Vec<bool> = (0..dims.len()).map(|k| !kept.contains(&k)).collect();

    let mut di = vec![0; dims.len()];
    let mut dj = vec![0; dims.len()];
    let reduced_index =
        |ds: &[usize]| -> usize { kept.iter().fold(0, |acc, &k| acc * dims[k] + ds[k]) };
    let mut out = CMatrix::zeros(dk, dk);
    let m = rho.matrix();
    for i in 0..d {
        digits(i, dims, &mut di);
        for j in 0..d {
            digits(j, dims, &mut dj);
            if (0..dims.len()).all(|k| !traced[k] || di[k] == dj[k]) {
                out[(reduced_index(&di), reduced_index(&dj))] += m[(i, j)];
            }
        }
    }
    Ok(DensityMatrix {
        op: Operator {
            matrix: out,
            dims: kept_dims,
        },
    })
}

/// Pure state vector with factor dims.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    amplitudes: CVector,
    dims: Vec<usize>,
}

impl Ket {
    /// Normalizes the amplitudes; errors on a zero vector.
    pub fn new(amplitudes: CVector, dims: Vec<usize>) -> Result<Self> {
        let d: usize = dims.iter().product();
        if amplitudes.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for dims {:?}",
                amplitudes.len(),
                dims
            )));
        }
        let norm = amplitudes.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidArgument(
                "ket has zero or non-finite norm".into(),
            ));
        }
        Ok(Self {
            amplitudes: amplitudes / C64::new(norm, 0.0),
            dims,
        })
    }

    /// Computational basis state from per-factor indices.
    pub fn basis(dims: &[usize], indices: &[usize]) -> Result<Self> {
        if dims.len() != indices.len() || indices.iter().zip(dims).any(|(i, d)| i >= d) {
            return Err(Error::InvalidArgument(format!(
                "basis indices {indices:?} invalid for dims {dims:?}"
            )));
        }
        let d: usize = dims.iter().product();
        let flat = indices.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i);
        let mut v = CVector::zeros(d);
        v[flat] = C64::new(1.0, 0.0);
        Ok(Self {
            amplitudes: v,
            dims: dims.to_vec(),
        })
    }

    /// Two-qubit ket from amplitudes on `|00⟩, |01⟩, |10⟩, |11⟩` where `0` is ground.
    pub fn two_qubit(c00: C64, c01: C64, c10: C64, c11: C64) -> Result<Self> {
        let q = |a: usize| if a == 0 { GROUND } else { EXCITED };
        let mut v = CVector::zeros(4);
        for (bits, c) in [((0, 0), c00), ((0, 1), c01), ((1, 0), c10), ((1, 1), c11)] {
            v[q(bits.0) * 2 + q(bits.1)] += c;
        }
        Self::new(v, vec![2, 2])
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn inner(&self, other: &Ket) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn kron(&self, other: &Ket) -> Ket {
        let a = &self.amplitudes;
        let b = &other.amplitudes;
        let mut v = CVector::zeros(a.len() * b.len());
        for i in 0..a.len() {
            for j in 0..b.len() {
                v[i * b.len() + j] = a[i] * b[j];
            }
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Ket {
            amplitudes: v,
            dims,
        }
    }

    /// Max elementwise distance after removing the global phase.
    pub fn distance_up_to_phase(&self, other: &Ket) -> f64 {
        let overlap = other.inner(self);
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b * phase).norm())
            .fold(0.0, f64::max)
    }

    pub fn projector(&self) -> DensityMatrix {
        let v = &self.amplitudes;
        DensityMatrix {
            op: Operator {
                matrix: v * v.adjoint(),
                dims: self.dims.clone(),
            },
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: Operator,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity to within 1e-10.
    pub fn new(op: Operator) -> Result<Self> {
        let herm = max_abs_diff(op.matrix(), &op.matrix().adjoint());
        if herm > DENSITY_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = op.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, not 1")));
        }
        let min_ev = op.hermitian_eigenvalues()[0];
        if min_ev < -DENSITY_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_ev:.3e}"
            )));
        }
        Ok(Self { op })
    }

    /// Skips validation. Used for RK4 iterates, which are only approximately positive.
    pub(crate) fn new_unchecked(op: Operator) -> Self {
        Self { op }
    }

    pub fn maximally_mixed(dims: &[usize]) -> Self {
        let d: usize = dims.iter().product();
        Self {
            op: Operator::identity(dims).scaled(1.0 / d as f64),
        }
    }

    /// Product state `ρ₁ ⊗ ρ₂`.
    pub fn kron(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            op: kron(&self.op, &other.op),
        }
    }

    /// `U ρ U†`.
    pub fn conjugated_by(&self, u: &Operator) -> DensityMatrix {
        DensityMatrix {
            op: self.op.conjugated_by(u),
        }
    }

    pub fn as_operator(&self) -> &Operator {
        &self.op
    }

    pub fn into_operator(self) -> Operator {
        self.op
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    pub fn dims(&self) -> &[usize] {
        self.op.dims()
    }

    pub fn trace(&self) -> C64 {
        self.op.trace()
    }

    /// Diagonal of ρ (real parts).
    pub fn populations(&self) -> Vec<f64> {
        self.op.matrix().diagonal().iter().map(|z| z.re).collect()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.op.hermitian_eigenvalues()
    }
}

impl From<&Ket> for DensityMatrix {
    fn from(ket: &Ket) -> Self {
        ket.projector()
    }
}
