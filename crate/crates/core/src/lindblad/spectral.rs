use nalgebra::{Schur, SVD};

use super::{unvectorize, vectorize, Superoperator};
use crate::error::{Error, Result};
use crate::operator::{CMatrix, DensityMatrix, Operator, C64};

/// Singular values below this fraction of the largest one span the null space.
pub const NULL_SPACE_TOL: f64 = 1e-12;
/// Eigenvalues with `|Re λ| ≤ SPECTRUM_ZERO_TOL · max(1, max|λ|)` count as stationary.
pub const SPECTRUM_ZERO_TOL: f64 = 1e-11;
/// Largest Hilbert dimension accepted by [`spectrum`].
pub const MAX_SPECTRUM_DIM: usize = 8;

/// Per-dimension iteration cap for the QR and SVD sweeps.
const MAX_ITER_PER_DIM: usize = 1000;
const SCHUR_ATTEMPTS: usize = 6;

/// Most negative eigenvalue that Hermitization may clip to zero.
const CLIP_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct SpectralResult {
    /// Sorted by descending real part. Empty when produced by [`steady_state`].
    pub eigenvalues: Vec<C64>,
    /// Smallest nonzero `|Re λ|` (the dissipative gap), if the spectrum was computed.
    pub gap: Option<f64>,
    pub steady_states: Vec<DensityMatrix>,
    pub degeneracy: usize,
}

impl SpectralResult {
    /// The steady state when it is unique.
    pub fn unique_state(&self) -> Result<&DensityMatrix> {
        if self.steady_states.len() == 1 {
            Ok(&self.steady_states[0])
        } else {
            Err(Error::Numerical(format!(
                "steady state is {}-fold degenerate",
                self.steady_states.len()
            )))
        }
    }
}

/// Null space of the Liouvillian via SVD.
///
/// For a unique steady state the null vector is reshaped, trace-normalized and
/// Hermitized. For a degenerate null space the result holds `degeneracy`
/// linearly independent density matrices obtained by projecting probe states
/// onto the stationary subspace.
pub fn steady_state(superop: &Superoperator, tol: f64) -> Result<SpectralResult> {
    let d = superop.hilbert_dim();
    let n = d * d;
    let svd = SVD::try_new(
        superop.matrix().clone(),
        true,
        true,
        f64::EPSILON,
        MAX_ITER_PER_DIM * n,
    )
    .ok_or_else(|| Error::NotConverged {
        what: "SVD of the Liouvillian".into(),
        iterations: MAX_ITER_PER_DIM * n,
    })?;
    let u = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested V^T");

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let smax = svd.singular_values[order[0]];
    let threshold = tol * smax;
    let null: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&k| smax == 0.0 || svd.singular_values[k] < threshold)
        .collect();
    if null.is_empty() {
        let smin = svd.singular_values[order[n - 1]];
        return Err(Error::Numerical(format!(
            "no null singular value (smallest {smin:.3e}, threshold {threshold:.3e})"
        )));
    }

    let dims = superop.dims().to_vec();
    let right: Vec<nalgebra::DVector<C64>> = null
        .iter()
        .map(|&k| v_t.row(k).adjoint().into_owned())
        .collect();

    let states = if right.len() == 1 {
        vec![finalize_state(unvectorize(&right[0], d), &dims)?]
    } else {
        let left: Vec<nalgebra::DVector<C64>> =
            null.iter().map(|&k| u.column(k).into_owned()).collect();
        degenerate_states(&right, &left, d, &dims)?
    };

    Ok(SpectralResult {
        eigenvalues: Vec::new(),
        gap: None,
        steady_states: states,
        degeneracy: null.len(),
    })
}

fn degenerate_states(
    right: &[nalgebra::DVector<C64>],
    left: &[nalgebra::DVector<C64>],
    d: usize,
    dims: &[usize],
) -> Result<Vec<DensityMatrix>> {
    let k = right.len();
    let v = CMatrix::from_columns(right);
    let w = CMatrix::from_columns(left);
    let pairing = w.adjoint() * &v;
    let inv = pairing
        .try_inverse()
        .ok_or_else(|| Error::Numerical("stationary subspace is not semisimple".into()))?;
    // Spectral projector onto the null space along the range.
    let projector = &v * inv * w.adjoint();

    let mut chosen: Vec<nalgebra::DVector<C64>> = Vec::new();
    let mut states = Vec::new();
    for probe in probe_states(d) {
        let image = &projector * vectorize(&probe);
        let mut residual = image.clone();
        for q in &chosen {
            let c = q.dotc(&residual);
            residual -= q * c;
        }
        let rn = residual.norm();
        if rn > 1e-6 * image.norm().max(1e-300) && rn > 1e-10 {
            chosen.push(residual / C64::new(rn, 0.0));
            states.push(finalize_state(unvectorize(&image, d), dims)?);
            if states.len() == k {
                return Ok(states);
            }
        }
    }
    Err(Error::Numerical(format!(
        "found only {} of {k} independent steady states",
        states.len()
    )))
}

/// Basis projectors followed by real and imaginary two-level superpositions.
fn probe_states(d: usize) -> Vec<CMatrix> {
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        let mut m = CMatrix::zeros(d, d);
        m[(i, i)] = C64::new(1.0, 0.0);
        out.push(m);
    }
    for phase in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
        for i in 0..d {
            for j in i + 1..d {
                let mut m = CMatrix::zeros(d, d);
                m[(i, i)] = C64::new(0.5, 0.0);
                m[(j, j)] = C64::new(0.5, 0.0);
                m[(i, j)] = phase.conj() * 0.5;
                m[(j, i)] = phase * 0.5;
                out.push(m);
            }
        }
    }
    out
}

/// Trace-normalize, Hermitize, and clip tiny negative eigenvalues.
fn finalize_state(m: CMatrix, dims: &[usize]) -> Result<DensityMatrix> {
    let tr = m.trace();
    if tr.norm() < 1e-12 * m.norm() {
        return Err(Error::Numerical(
            "steady-state null vector is traceless".into(),
        ));
    }
    let m = m / tr;
    let mut h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.clone().symmetric_eigen();
    let min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min < -CLIP_TOL {
        return Err(Error::Numerical(format!(
            "steady state has eigenvalue {min:.3e} below -{CLIP_TOL:e}"
        )));
    }
    if min < 0.0 {
        let clipped = eig.eigenvalues.map(|x| C64::new(x.max(0.0), 0.0));
        let vecs = &eig.eigenvectors;
        h = vecs * CMatrix::from_diagonal(&clipped) * vecs.adjoint();
        let t = h.trace();
        h /= t;
        h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
    }
    DensityMatrix::new(Operator::new(h, dims.to_vec())?)
}

/// Full eigendecomposition of a Liouvillian on at most [`MAX_SPECTRUM_DIM`] levels,
/// plus its steady states.
pub fn spectrum(superop: &Superoperator) -> Result<SpectralResult> {
    let mut res = eigenspectrum(superop)?;
    res.steady_states = steady_state(superop, NULL_SPACE_TOL)?.steady_states;
    Ok(res)
}

/// Eigenvalues, gap and degeneracy only; `steady_states` is left empty.
///
/// Use this when the gap is tiny: the null vector is then ill-conditioned
/// even though the eigenvalues are not.
pub fn eigenspectrum(superop: &Superoperator) -> Result<SpectralResult> {
    let d = superop.hilbert_dim();
    if d > MAX_SPECTRUM_DIM {
        return Err(Error::TooLarge {
            dim: d,
            max: MAX_SPECTRUM_DIM,
        });
    }
    let eigenvalues = eigenvalues(superop.matrix())?;
    let scale = eigenvalues.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let zero_tol = SPECTRUM_ZERO_TOL * scale;
    if let Some(bad) = eigenvalues.iter().find(|z| z.re > zero_tol) {
        return Err(Error::Numerical(format!(
            "Liouvillian eigenvalue {bad} has positive real part"
        )));
    }
    let degeneracy = eigenvalues
        .iter()
        .filter(|z| z.re.abs() <= zero_tol)
        .count();
    if degeneracy == 0 {
        return Err(Error::Numerical("no stationary eigenvalue found".into()));
    }
    let gap = eigenvalues
        .iter()
        .map(|z| z.re.abs())
        .filter(|&x| x > zero_tol)
        .min_by(f64::total_cmp);
    Ok(SpectralResult {
        eigenvalues,
        gap,
        steady_states: Vec::new(),
        degeneracy,
    })
}

/// Eigenvalues of a general complex matrix, sorted by descending real part.
///
/// The QR deflation test is relative to the diagonal, so clusters of exact
/// zeros never deflate; the spectrum is shifted into the right half-plane
/// first. Shifted QR can still stall on the highly degenerate spectra of
/// Liouvillians, in which case the matrix is rotated by a fixed unitary and
/// the decomposition restarted.
fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    let n = m.nrows();
    let row_sum = (0..n)
        .map(|i| m.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let max_iter = MAX_ITER_PER_DIM * n.max(1);
    for attempt in 0..SCHUR_ATTEMPTS {
        let shift = (1.5 + 0.37 * attempt as f64) * row_sum.max(1.0);
        let mut a = m + CMatrix::identity(n, n) * C64::new(shift, 0.0);
        if attempt > 0 {
            let q = scrambler(n, attempt);
            a = q.adjoint() * a * q;
        }
        let Some(schur) = Schur::try_new(a, f64::EPSILON, max_iter) else {
            continue;
        };
        let Some(ev) = schur.eigenvalues() else {
            continue;
        };
        let mut out: Vec<C64> = ev.iter().map(|z| z - shift).collect();
        out.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
        return Ok(out);
    }
    Err(Error::NotConverged {
        what: format!("Schur decomposition ({SCHUR_ATTEMPTS} restarts)"),
        iterations: max_iter,
    })
}

/// Deterministic dense unitary: Q factor of a fixed pseudo-random matrix.
fn scrambler(n: usize, seed: usize) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |i, j| {
        let t = (i * n + j + 1) as f64 * (0.7548776662 + seed as f64 * 0.5698402910);
        C64::new((t * 12.9898).sin(), (t * 78.233).cos())
    });
    g.qr().q()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindblad::{liouvillian, LindbladModel};
    use crate::operator::{embed, pauli, Ket, Pauli, GROUND};

    fn amplitude_damping(gamma: f64) -> LindbladModel {
        LindbladModel::dissipative(&[2], vec![(gamma, pauli(Pauli::Minus))]).unwrap()
    }

    #[test]
    fn amplitude_damping_spectrum() {
        let res = spectrum(&liouvillian(&amplitude_damping(1.0))).unwrap();
        let expected = [0.0, -0.5, -0.5, -1.0];
        for (z, e) in res.eigenvalues.iter().zip(expected) {
            assert!((z.re - e).abs() < 1e-12 && z.im.abs() < 1e-12, "{z}");
        }
        assert!((res.gap.unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(res.degeneracy, 1);
    }

    #[test]
    fn squeezed_bath_transverse_rates() {
        // D[cosh σ- + sinh σ+] with γ=1, r=1: transverse rates e^{±2r}/2.
        let r: f64 = 1.0;
        let j = pauli(Pauli::Minus).scaled(r.cosh()) + pauli(Pauli::Plus).scaled(r.sinh());
        let model = LindbladModel::dissipative(&[2], vec![(1.0, j)]).unwrap();
        let res = spectrum(&liouvillian(&model)).unwrap();
        let re: Vec<f64> = res.eigenvalues.iter().map(|z| z.re).collect();
        let fast = -0.5 * (2.0 * r).exp();
        let slow = -0.5 * (-2.0 * r).exp();
        assert!(re.iter().any(|x| (x - fast).abs() < 1e-10), "{re:?}");
        assert!(re.iter().any(|x| (x - slow).abs() < 1e-10), "{re:?}");
        assert!((fast + 3.6945).abs() < 1e-4 && (slow + 0.06767).abs() < 1e-5);
    }

    #[test]
    fn pure_decay_relaxes_to_ground() {
        let res = steady_state(&liouvillian(&amplitude_damping(2.0)), NULL_SPACE_TOL).unwrap();
        assert_eq!(res.degeneracy, 1);
        let g = Ket::basis(&[2], &[GROUND]).unwrap().projector();
        assert!(
            res.steady_states[0]
                .as_operator()
                .max_abs_diff(g.as_operator())
                < 1e-12
        );
    }

    #[test]
    fn decay_on_one_of_two_qubits_is_degenerate() {
        let dims = [2, 2];
        let j = embed(&pauli(Pauli::Minus), 0, &dims).unwrap();
        let model = LindbladModel::dissipative(&dims, vec![(1.0, j)]).unwrap();
        let res = steady_state(&liouvillian(&model), NULL_SPACE_TOL).unwrap();
        // the untouched qubit keeps its full 2x2 block
        assert_eq!(res.degeneracy, 4);
        assert_eq!(res.steady_states.len(), 4);
        for s in &res.steady_states {
            assert!((s.trace().re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_liouvillian_is_fully_stationary() {
        let model = LindbladModel::dissipative(&[2], vec![]).unwrap();
        let res = spectrum(&liouvillian(&model)).unwrap();
        assert_eq!(res.degeneracy, 4);
        assert!(res.gap.is_none());
    }

    #[test]
    fn spectrum_rejects_large_systems() {
        let model = LindbladModel::dissipative(&[2, 2, 3], vec![]).unwrap();
        match spectrum(&liouvillian(&model)) {
            Err(Error::TooLarge { dim: 12, max: 8 }) => {}
            other => panic!("expected TooLarge, got {other:?}"),
        }
    }
}
