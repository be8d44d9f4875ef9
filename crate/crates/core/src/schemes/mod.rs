//! Model builders. Every builder returns a [`LindbladModel`] whose rates are in
//! units of the scheme's reference rate.
//!
//! Two-qubit operators act on dims `[2, 2]`; qubit 1 is the first factor.
//!
//! [`LindbladModel`]: crate::lindblad::LindbladModel

mod collective;
mod squeezing;
mod thermal;
mod transmission;

pub use collective::{
    asymmetric_primed_jumps, asymmetric_unitary, collective_loss, dark_state,
    dissipator_identity_check, local_unitary, rotation_angle, solve_asymmetric_drive,
    symmetric_primed_jumps, target_state, y_rotation, DriveParams, Frame,
};
pub use squeezing::{
    balanced, balanced_flipped, hp_mean_field_rate, ideal_tms, qubit_cavity_full,
    single_qubit_squeezed, synthetic_reduced, tms_state, werner_state, Amplitudes, SqueezeParams,
};
pub use thermal::{bose_einstein, thermal_tms, HF_OVER_KB_PER_GHZ};
pub use transmission::{tl_model, TLParams};

use crate::operator::{embed, pauli, Operator, Pauli};

/// Single-qubit operator on `site` of a two-qubit register.
pub(crate) fn on(which: Pauli, site: usize) -> Operator {
    embed(&pauli(which), site, &[2, 2]).expect("site is 0 or 1")
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> crate::Result<()> {
    if cond {
        Ok(())
    } else {
        Err(crate::Error::InvalidArgument(msg()))
    }
}
