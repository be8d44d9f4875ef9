use super::{Generator, LindbladModel};
use crate::error::{Error, Result};
use crate::operator::{max_abs_diff, CMatrix, DensityMatrix, Operator, C64};

/// Trace drift beyond this aborts the integration.
const MAX_TRACE_DRIFT: f64 = 1e-6;

/// Sampled trajectory `(t, ρ(t))`, including `t = 0`.
pub type Trajectory = Vec<(f64, DensityMatrix)>;

#[derive(Clone, Debug)]
pub struct EvolveOptions {
    pub t_final: f64,
    /// Step size; `None` picks [`default_dt`].
    pub dt: Option<f64>,
    /// Keep every `stride`-th step (the final time is always kept).
    pub stride: usize,
    /// Rerun at `dt/2` and fail if the final states differ by more than this.
    pub convergence_tol: Option<f64>,
}

impl EvolveOptions {
    pub fn new(t_final: f64) -> Self {
        Self {
            t_final,
            dt: None,
            stride: 1,
            convergence_tol: None,
        }
    }

    pub fn dt(mut self, dt: f64) -> Self {
        self.dt = Some(dt);
        self
    }

    pub fn stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }

    pub fn check_convergence(mut self, tol: f64) -> Self {
        self.convergence_tol = Some(tol);
        self
    }
}

/// `0.02 / ‖L‖`, with the norm estimated from the model's operators.
pub fn default_dt(model: &LindbladModel) -> f64 {
    let n = model.norm_estimate();
    if n > 0.0 {
        0.02 / n
    } else {
        1.0
    }
}

/// Fixed-step RK4 returning every step.
pub fn evolve(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    t_final: f64,
    dt: f64,
) -> Result<Trajectory> {
    evolve_with(model, rho0, &EvolveOptions::new(t_final).dt(dt))
}

pub fn evolve_with(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    opts: &EvolveOptions,
) -> Result<Trajectory> {
    if rho0.dims() != model.dims() {
        return Err(Error::DimensionMismatch(format!(
            "initial state dims {:?} vs model dims {:?}",
            rho0.dims(),
            model.dims()
        )));
    }
    if !(opts.t_final >= 0.0) || !opts.t_final.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "t_final must be finite and nonnegative, got {}",
            opts.t_final
        )));
    }
    let dt = opts.dt.unwrap_or_else(|| default_dt(model));
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "dt must be positive, got {dt}"
        )));
    }
    if opts.stride == 0 {
        return Err(Error::InvalidArgument("stride must be at least 1".into()));
    }
    let gen = Generator::new(model);
    let traj = integrate(&gen, rho0, opts.t_final, dt, opts.stride)?;

    if let Some(tol) = opts.convergence_tol {
        let fine = integrate(&gen, rho0, opts.t_final, dt / 2.0, usize::MAX)?;
        let coarse = traj.last().expect("trajectory holds t = 0");
        let fine = fine.last().expect("trajectory holds t = 0");
        let diff = max_abs_diff(coarse.1.matrix(), fine.1.matrix());
        if diff > tol {
            return Err(Error::NotConverged {
                what: format!("RK4 at dt = {dt:e} (halving changes the final state by {diff:.3e})"),
                iterations: 2,
            });
        }
    }
    Ok(traj)
}

fn integrate(
    gen: &Generator,
    rho0: &DensityMatrix,
    t_final: f64,
    dt: f64,
    stride: usize,
) -> Result<Trajectory> {
    let steps = if t_final == 0.0 {
        0
    } else {
        (t_final / dt).ceil().max(1.0) as usize
    };
    let h = if steps == 0 {
        0.0
    } else {
        t_final / steps as f64
    };
    let dims = rho0.dims().to_vec();
    let mut rho: CMatrix = rho0.matrix().clone();
    let mut out = vec![(0.0, rho0.clone())];
    let half = C64::new(h / 2.0, 0.0);
    let full = C64::new(h, 0.0);
    let sixth = C64::new(h / 6.0, 0.0);
    let two = C64::new(2.0, 0.0);

    for n in 1..=steps {
        let k1 = gen.apply(&rho);
        let k2 = gen.apply(&(&rho + &k1 * half));
        let k3 = gen.apply(&(&rho + &k2 * half));
        let k4 = gen.apply(&(&rho + &k3 * full));
        rho += (k1 + (k2 + k3) * two + k4) * sixth;

        let drift = (rho.trace() - C64::new(1.0, 0.0)).norm();
        let t = n as f64 * h;
        if drift > MAX_TRACE_DRIFT || !drift.is_finite() {
            return Err(Error::Numerical(format!(
                "trace drifted by {drift:.3e} at t = {t}; use a smaller dt than {h:e}"
            )));
        }
        if n % stride == 0 || n == steps {
            let op = Operator::new(rho.clone(), dims.clone())?;
            out.push((t, DensityMatrix::new_unchecked(op)));
        }
    }
    Ok(out)
}
