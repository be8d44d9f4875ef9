//! Collective loss plus local Rabi drives, in the lab frame and in the rotated
//! frame where it looks like two-mode squeezed dissipation.

use std::str::FromStr;

use super::{on, require};
use crate::error::{Error, Result};
use crate::lindblad::LindbladModel;
use crate::operator::{kron, pauli, Ket, Operator, Pauli, C64};

const SOLVER_MAX_ITER: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    Lab,
    Transformed,
    Rwa,
}

impl FromStr for Frame {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lab" => Ok(Frame::Lab),
            "transformed" => Ok(Frame::Transformed),
            "rwa" => Ok(Frame::Rwa),
            other => Err(Error::InvalidArgument(format!(
                "unknown frame '{other}' (expected lab, transformed or rwa)"
            ))),
        }
    }
}

/// Drive parameters for `H = (Δ+ε)/2 σz⁽¹⁾ − (Δ−ε)/2 σz⁽²⁾ + Λ(η σx⁽¹⁾ + σx⁽²⁾)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveParams {
    pub mu: f64,
    pub r0: f64,
    pub eta: f64,
    pub delta: f64,
    pub lambda: f64,
    pub epsilon: f64,
}

impl DriveParams {
    /// Closed form for equal couplings: `Δ = μ e^{−2r}`, `Λ = (μ/2)√(1 − e^{−4r})`.
    pub fn symmetric(r0: f64, mu: f64) -> Result<Self> {
        require(r0 >= 0.0 && r0.is_finite(), || {
            format!("r0 must be >= 0, got {r0}")
        })?;
        require(mu >= 0.0 && mu.is_finite(), || {
            format!("mu must be >= 0, got {mu}")
        })?;
        Ok(Self {
            mu,
            r0,
            eta: 1.0,
            delta: mu * (-2.0 * r0).exp(),
            lambda: 0.5 * mu * (-(-4.0 * r0).exp_m1()).sqrt(),
            epsilon: 0.0,
        })
    }

    pub fn beta_minus(&self) -> f64 {
        self.mu + self.delta + self.epsilon
    }

    pub fn beta_plus(&self) -> f64 {
        self.eta * (self.mu - self.delta + self.epsilon)
    }

    /// `artanh(β₊/β₋)`.
    pub fn squeezing(&self) -> f64 {
        (self.beta_plus() / self.beta_minus()).atanh()
    }

    pub fn lab_hamiltonian(&self) -> Operator {
        on(Pauli::Z, 0).scaled((self.delta + self.epsilon) / 2.0)
            - on(Pauli::Z, 1).scaled((self.delta - self.epsilon) / 2.0)
            + (on(Pauli::X, 0).scaled(self.eta) + on(Pauli::X, 1)).scaled(self.lambda)
    }

    pub fn collective_jump(&self) -> Operator {
        on(Pauli::Minus, 0) + on(Pauli::Minus, 1).scaled(self.eta)
    }

    /// `Δ|00⟩ + Λ(|01⟩ − η|10⟩)`, normalized.
    pub fn lab_dark_state(&self) -> Result<Ket> {
        let z = C64::new(0.0, 0.0);
        Ket::two_qubit(
            C64::new(self.delta, 0.0),
            C64::new(self.lambda, 0.0),
            C64::new(-self.eta * self.lambda, 0.0),
            z,
        )
    }

    /// Residuals of the three defining equations for `Δ`, `Λ` and `ε`.
    pub fn residuals(&self) -> [f64; 3] {
        let (mu, eta, d, l, e) = (self.mu, self.eta, self.delta, self.lambda, self.epsilon);
        let c = detuning_ratio(self.r0, eta);
        [
            d - c * (mu + e),
            l - 0.5 * (mu * mu - (d - e).powi(2)).max(0.0).sqrt(),
            e * d - l * l * (1.0 - eta * eta),
        ]
    }

    /// Local unitary taking the lab frame to the frame with `H' = (μ/2)(σz⁽¹⁾ − σz⁽²⁾)`.
    pub fn frame_unitary(&self) -> Operator {
        if self.eta == 1.0 {
            local_unitary(self.r0)
        } else {
            asymmetric_unitary(self)
        }
    }
}

/// `−(e^{2r} − 1 − η(1+e^{2r})) / (e^{2r} − 1 + η(1+e^{2r}))`.
fn detuning_ratio(r: f64, eta: f64) -> f64 {
    let a = (2.0 * r).exp_m1();
    let b = eta * (1.0 + (2.0 * r).exp());
    (b - a) / (a + b)
}

/// Dark states of `σ₋⁽¹⁾ + σ₋⁽²⁾`: `√(1−α²)|00⟩ + e^{iφ} α (|01⟩ − |10⟩)/√2`.
pub fn dark_state(alpha: f64, phi: f64) -> Result<Ket> {
    require((0.0..=1.0).contains(&alpha), || {
        format!("alpha must lie in [0, 1], got {alpha}")
    })?;
    let z = C64::new(0.0, 0.0);
    let a = C64::from_polar(alpha / 2f64.sqrt(), phi);
    Ket::two_qubit(C64::new((1.0 - alpha * alpha).sqrt(), 0.0), a, -a, z)
}

/// `(cosh r |00⟩ + sinh r |11⟩) / √cosh 2r`, the image of the dark state
/// with `α = √tanh 2r` under [`local_unitary`].
pub fn target_state(r: f64) -> Ket {
    let z = C64::new(0.0, 0.0);
    Ket::two_qubit(C64::new(r.cosh(), 0.0), z, z, C64::new(r.sinh(), 0.0))
        .expect("nonzero amplitudes")
}

/// `θ` with `cos θ = e^{−2r}`.
pub fn rotation_angle(r: f64) -> f64 {
    (-2.0 * r).exp().acos()
}

/// `exp(i a σy / 2)`.
pub fn y_rotation(angle: f64) -> Operator {
    let (s, c) = (angle / 2.0).sin_cos();
    pauli(Pauli::Identity).scaled(c) + pauli(Pauli::Y).scaled(C64::new(0.0, s))
}

/// `U[r] = exp(+iθσy/2) ⊗ exp(−iθσy/2)`.
pub fn local_unitary(r: f64) -> Operator {
    let theta = rotation_angle(r);
    kron(&y_rotation(theta), &y_rotation(-theta))
}

/// Rotated collective jump for equal couplings: `[J′₁, J′₂, J′_Z]`.
pub fn symmetric_primed_jumps(r0: f64) -> [Operator; 3] {
    let pre = (-r0).exp();
    let (c, s) = (r0.cosh(), r0.sinh());
    let j1 = (on(Pauli::Minus, 0).scaled(c) - on(Pauli::Plus, 1).scaled(s)).scaled(pre);
    let j2 = (on(Pauli::Minus, 1).scaled(c) - on(Pauli::Plus, 0).scaled(s)).scaled(pre);
    let jz = (on(Pauli::Z, 0) - on(Pauli::Z, 1)).scaled(0.5 * (-(-4.0 * r0).exp_m1()).sqrt());
    [j1, j2, jz]
}

/// Largest entry of `U J U† − (J′₁ + J′₂ + J′_Z)` for equal couplings.
pub fn dissipator_identity_check(r0: f64) -> f64 {
    let u = local_unitary(r0);
    let j = on(Pauli::Minus, 0) + on(Pauli::Minus, 1);
    let [j1, j2, jz] = symmetric_primed_jumps(r0);
    j.conjugated_by(&u).max_abs_diff(&(j1 + j2 + jz))
}

/// `exp(iθ₁σy/2) ⊗ exp(iθ₂σy/2)` with `θ₁ = atan2(2ηΛ, Δ+ε)`, `θ₂ = atan2(−2Λ, Δ−ε)`.
pub fn asymmetric_unitary(d: &DriveParams) -> Operator {
    let t1 = (2.0 * d.eta * d.lambda).atan2(d.delta + d.epsilon);
    let t2 = (-2.0 * d.lambda).atan2(d.delta - d.epsilon);
    kron(&y_rotation(t1), &y_rotation(t2))
}

/// Rotated collective jump for general couplings: `[J′₁, J′₂, J′_Z]`.
pub fn asymmetric_primed_jumps(d: &DriveParams) -> Result<[Operator; 3]> {
    require(d.mu > 0.0, || {
        "mu must be > 0 for the rotated operators".into()
    })?;
    let (bm, bp) = (d.beta_minus(), d.beta_plus());
    let jz = (on(Pauli::Z, 0) - on(Pauli::Z, 1)).scaled(d.eta * d.lambda / d.mu);
    let j1 = (on(Pauli::Minus, 0).scaled(bm) - on(Pauli::Plus, 1).scaled(bp)).scaled(0.5 / d.mu);
    let c2 = if d.lambda > 0.0 {
        ((d.mu - d.epsilon).powi(2) - d.delta * d.delta)
            / (8.0 * d.eta * d.mu * d.lambda * d.lambda)
    } else {
        // undriven: the frame is trivial and J′₂ reduces to η σ₋⁽²⁾
        d.eta / bm
    };
    let j2 = (on(Pauli::Minus, 1).scaled(bm) - on(Pauli::Plus, 0).scaled(bp)).scaled(c2);
    Ok([j1, j2, jz])
}

/// Collective loss `Γ D[σ₋⁽¹⁾ + η σ₋⁽²⁾]` with drives `d`, in the requested frame.
pub fn collective_loss(frame: Frame, d: &DriveParams, gamma: f64) -> Result<LindbladModel> {
    require(gamma > 0.0, || format!("Gamma must be > 0, got {gamma}"))?;
    require(d.eta > 0.0, || format!("eta must be > 0, got {}", d.eta))?;
    if frame == Frame::Lab {
        return LindbladModel::new(d.lab_hamiltonian(), vec![(gamma, d.collective_jump())]);
    }
    let h = (on(Pauli::Z, 0) - on(Pauli::Z, 1)).scaled(d.mu / 2.0);
    let [j1, j2, jz] = if d.eta == 1.0 {
        symmetric_primed_jumps(d.r0)
    } else {
        asymmetric_primed_jumps(d)?
    };
    match frame {
        Frame::Transformed => LindbladModel::new(h, vec![(gamma, j1 + j2 + jz)]),
        _ => LindbladModel::new(h, vec![(gamma, j1), (gamma, j2), (gamma, jz)]),
    }
}

/// Drive parameters that stabilize a state of squeezing `r` under collective
/// loss with coupling asymmetry `eta`.
///
/// The coupled equations are solved by damped substitution in `ε`. For
/// `η ≠ 1` only `r < artanh(min(η, 1/η))` is reachable; beyond that the
/// dark space of the collective jump cannot hold enough entanglement.
pub fn solve_asymmetric_drive(r: f64, mu: f64, eta: f64) -> Result<DriveParams> {
    require(r >= 0.0 && r.is_finite(), || {
        format!("r must be >= 0, got {r}")
    })?;
    require(mu > 0.0 && mu.is_finite(), || {
        format!("mu must be > 0, got {mu}")
    })?;
    require(eta > 0.0 && eta.is_finite(), || {
        format!("eta must be > 0, got {eta}")
    })?;
    if eta != 1.0 {
        let r_max = eta.min(1.0 / eta).atanh();
        if r >= r_max {
            return Err(Error::Unreachable(format!(
                "r = {r} needs more entanglement than the dark space of the collective jump allows \
                 for eta = {eta} (r < {r_max:.6})"
            )));
        }
    }
    let c = detuning_ratio(r, eta);
    let eval = |eps: f64| -> Option<(f64, f64, f64)> {
        let delta = c * (mu + eps);
        if delta == 0.0 || !delta.is_finite() {
            return None;
        }
        let mut rad = mu * mu - (delta - eps).powi(2);
        if rad < 0.0 {
            if rad < -1e-12 * mu * mu {
                return None;
            }
            rad = 0.0;
        }
        let lambda = 0.5 * rad.sqrt();
        Some((delta, lambda, lambda * lambda * (1.0 - eta * eta) / delta))
    };

    let mut eps = 0.0;
    let (mut delta, mut lambda, mut next) = eval(eps)
        .ok_or_else(|| Error::Numerical("detuning vanishes at the starting point".into()))?;
    let mut residual = (next - eps).abs();
    let mut omega = 1.0;
    let mut converged = false;
    for _ in 0..SOLVER_MAX_ITER {
        if residual < 1e-12 * mu {
            converged = true;
            break;
        }
        let trial = eps + omega * (next - eps);
        match eval(trial) {
            Some((d, l, f)) if (f - trial).abs() < residual => {
                eps = trial;
                delta = d;
                lambda = l;
                next = f;
                residual = (f - trial).abs();
            }
            _ => {
                omega *= 0.5;
                if omega < 1e-14 {
                    break;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NotConverged {
            what: format!("drive parameters for r = {r}, eta = {eta}"),
            iterations: SOLVER_MAX_ITER,
        });
    }

    let params = DriveParams {
        mu,
        r0: r,
        eta,
        delta,
        lambda,
        epsilon: eps,
    };
    let r_back = params.squeezing();
    if !((r_back - r).abs() <= 1e-8) {
        return Err(Error::Numerical(format!(
            "solved drive reproduces r = {r_back}, not {r}"
        )));
    }
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindblad::{liouvillian, spectrum, steady_state, NULL_SPACE_TOL};
    use crate::metrics::{fidelity, purity};
    use crate::operator::GROUND;

    #[test]
    fn dark_state_endpoints() {
        let gg = Ket::basis(&[2, 2], &[GROUND, GROUND]).unwrap();
        assert!(dark_state(0.0, 0.3).unwrap().distance_up_to_phase(&gg) < 1e-15);
        assert!(dark_state(1.1, 0.0).is_err());
    }

    #[test]
    fn dark_states_are_dark() {
        let j = on(Pauli::Minus, 0) + on(Pauli::Minus, 1);
        for (a, p) in [(0.3, 0.0), (0.9, 1.2), (1.0, -0.4)] {
            assert!(j.apply(&dark_state(a, p).unwrap()).norm() < 1e-14);
        }
    }

    #[test]
    fn local_unitary_maps_dark_state_to_target() {
        let alpha = 2f64.tanh().sqrt();
        assert!((alpha - 0.98185).abs() < 1e-5);
        let mapped = local_unitary(1.0).apply(&dark_state(alpha, 0.0).unwrap());
        let diff = (mapped.amplitudes() - target_state(1.0).amplitudes()).camax();
        assert!(diff < 1e-12, "{diff}");
        assert!((rotation_angle(1.0).cos() - 0.135335).abs() < 1e-6);
    }

    #[test]
    fn decomposition_identity() {
        for r0 in [0.0, 0.5, 1.0, 3.0] {
            assert!(dissipator_identity_check(r0) < 1e-12, "r0={r0}");
        }
    }

    #[test]
    fn symmetric_drive_closed_form() {
        let d = DriveParams::symmetric(1.0, 1.0).unwrap();
        assert!((d.delta - 0.135335).abs() < 1e-6);
        assert!((d.lambda - 0.5 * (-(-4f64).exp_m1()).sqrt()).abs() < 1e-15);
        assert!((d.lambda - 0.495402).abs() < 5e-6);
        let s = solve_asymmetric_drive(1.0, 1.0, 1.0).unwrap();
        assert!((s.delta - d.delta).abs() < 1e-10);
        assert!((s.lambda - d.lambda).abs() < 1e-10);
        assert_eq!(s.epsilon, 0.0);
    }

    #[test]
    fn zero_squeezing_needs_no_drive() {
        let s = solve_asymmetric_drive(0.0, 1.0, 0.5).unwrap();
        assert!(s.lambda.abs() < 1e-12 && s.epsilon.abs() < 1e-12);
        assert!((s.delta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn asymmetric_solution_is_dark_and_stationary() {
        for eta in [0.5, 2.0] {
            let d = solve_asymmetric_drive(0.5, 1.0, eta).unwrap();
            for res in d.residuals() {
                assert!(res.abs() < 1e-10, "eta={eta}: {:?}", d.residuals());
            }
            let phi = d.lab_dark_state().unwrap();
            assert!(d.collective_jump().apply(&phi).norm() < 1e-9);
            let h_phi = d.lab_hamiltonian().apply(&phi);
            let e = phi.inner(&h_phi);
            let dev = (h_phi.amplitudes() - phi.amplitudes() * e).camax();
            assert!(dev < 1e-9, "eta={eta}: {dev}");
        }
    }

    #[test]
    fn unreachable_squeezing_is_reported() {
        for eta in [0.5, 2.0] {
            match solve_asymmetric_drive(1.0, 1.0, eta) {
                Err(Error::Unreachable(_)) => {}
                other => panic!("expected Unreachable, got {other:?}"),
            }
        }
    }

    #[test]
    fn asymmetric_frame_operators() {
        for eta in [0.5, 2.0] {
            let d = solve_asymmetric_drive(0.4, 1.3, eta).unwrap();
            let u = asymmetric_unitary(&d);
            let h = d.lab_hamiltonian().conjugated_by(&u);
            let target = (on(Pauli::Z, 0) - on(Pauli::Z, 1)).scaled(d.mu / 2.0);
            assert!(h.max_abs_diff(&target) < 1e-12);
            let [j1, j2, jz] = asymmetric_primed_jumps(&d).unwrap();
            let j = d.collective_jump().conjugated_by(&u);
            assert!(j.max_abs_diff(&(j1 + j2 + jz)) < 1e-12);
        }
    }

    #[test]
    fn lab_and_transformed_frames_agree() {
        let d = DriveParams::symmetric(1.0, 10.0).unwrap();
        let lab = collective_loss(Frame::Lab, &d, 1.0).unwrap();
        let xf = collective_loss(Frame::Transformed, &d, 1.0).unwrap();
        let moved = liouvillian(&lab.conjugated_by(&local_unitary(1.0)));
        assert!(moved.max_abs_diff(&liouvillian(&xf)) < 1e-10);
    }

    #[test]
    fn lab_frame_steady_state() {
        let d = DriveParams::symmetric(1.0, 10.0).unwrap();
        let lab = collective_loss(Frame::Lab, &d, 1.0).unwrap();
        let ss = steady_state(&liouvillian(&lab), NULL_SPACE_TOL).unwrap();
        assert_eq!(ss.degeneracy, 1);
        let target = local_unitary(1.0).dagger().apply(&target_state(1.0));
        assert!(fidelity(&ss.steady_states[0], &target).unwrap() >= 1.0 - 1e-8);
    }

    #[test]
    fn undriven_collective_loss_is_degenerate() {
        let d = DriveParams::symmetric(1.0, 0.0).unwrap();
        let lab = collective_loss(Frame::Lab, &d, 1.0).unwrap();
        let ss = steady_state(&liouvillian(&lab), NULL_SPACE_TOL).unwrap();
        assert!(ss.degeneracy > 1);
    }

    #[test]
    fn rwa_keeps_target() {
        let d = DriveParams::symmetric(1.0, 10.0).unwrap();
        let rwa = collective_loss(Frame::Rwa, &d, 1.0).unwrap();
        let res = spectrum(&liouvillian(&rwa)).unwrap();
        assert_eq!(res.degeneracy, 1);
        let f = fidelity(&res.steady_states[0], &target_state(1.0)).unwrap();
        assert!(f >= 1.0 - 1e-6);
        assert!(purity(&res.steady_states[0]) > 1.0 - 1e-6);
    }
}
