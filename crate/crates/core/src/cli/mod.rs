//! Command-line front end. [`run`] parses argv, dispatches one subcommand and
//! returns the process exit code: 0 on success, 1 for usage errors, 2 for
//! numerical or I/O failures.

mod keys;
mod output;

pub use output::{format_csv, format_e12, format_json, table_to_json, write_csv, write_json};

use std::ffi::OsString;
use std::path::Path;

use clap::{Arg, ArgAction, ArgMatches, Command};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::experiments::{
    log_grid, sweep_gap_vs_mu, sweep_spacing, sweep_temperature, validate_elimination_with,
    ElimOptions, SweepRecord, SweepTable,
};
use crate::lindblad::{
    eigenspectrum, evolve_with, liouvillian, steady_state, EvolveOptions, LindbladModel,
    NULL_SPACE_TOL,
};
use crate::metrics::{concurrence, purity, MetricSet};
use crate::operator::{DensityMatrix, Ket, C64, EXCITED, GROUND};
use crate::schemes::{
    asymmetric_unitary, balanced, balanced_flipped, collective_loss, ideal_tms, local_unitary,
    qubit_cavity_full, single_qubit_squeezed, solve_asymmetric_drive, synthetic_reduced,
    target_state, thermal_tms, tl_model, tms_state, Amplitudes, DriveParams, Frame, SqueezeParams,
    TLParams,
};
use keys::{Config, Format, Subcommand};

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() || matches!(e, Error::Io(_)) {
            CliError::Failure(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

enum Output {
    Json(Value),
    Table(SweepTable),
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let matches = match command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&matches) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn command() -> Command {
    let mut cmd = Command::new("synthsqueeze")
        .about("Steady states, spectra and sweeps for synthetic squeezed dissipation")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for sub in keys::SUBCOMMANDS {
        let mut c = Command::new(sub.name).about(sub.about);
        for key in keys::accepted_keys(sub) {
            let help = match (key.default, sub.uses_scheme && is_scheme_key(key.name)) {
                (_, true) => key.help.to_string(),
                (Some(d), false) => format!("{} [default: {d}]", key.help),
                (None, false) if key.name == "format" => {
                    let d = if sub.default_format == Format::Csv {
                        "csv"
                    } else {
                        "json"
                    };
                    format!("{} [default: {d}]", key.help)
                }
                (None, false) if is_optional(key.name) => key.help.to_string(),
                (None, false) => format!("{} [required]", key.help),
            };
            c = c.arg(
                Arg::new(key.name)
                    .long(key.name)
                    .value_name(key.kind.value_name())
                    .action(ArgAction::Set)
                    .help(help),
            );
        }
        if sub.uses_scheme {
            c = c.after_help(scheme_help());
        }
        cmd = cmd.subcommand(c);
    }
    cmd
}

fn is_scheme_key(name: &str) -> bool {
    keys::SCHEME_KEYS.iter().any(|k| k.name == name)
}

fn is_optional(name: &str) -> bool {
    matches!(name, "config" | "threads" | "dt" | "n_fock")
}

fn scheme_help() -> String {
    let mut s = String::from("Schemes (key [default], * = required):\n");
    for spec in keys::SCHEMES {
        let ks: Vec<String> = spec
            .keys
            .iter()
            .map(|(k, d)| match d {
                Some(d) => format!("{k} [{d}]"),
                None => format!("{k}*"),
            })
            .collect();
        s.push_str(&format!(
            "  {:<22} {}\n  {:<22}   {}\n",
            spec.name,
            spec.about,
            "",
            ks.join(", ")
        ));
    }
    s
}

fn execute(matches: &ArgMatches) -> Result<(), CliError> {
    let (name, sub_matches) = matches.subcommand().expect("subcommand is required");
    let sub = keys::subcommand(name).expect("registered subcommand");
    let cfg = build_config(sub, sub_matches)?;

    let format = match cfg.contains("format") {
        true => match cfg.text("format")? {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown format '{other}' (csv or json)"
                )))
            }
        },
        false => sub.default_format,
    };
    let threads = match cfg.opt_integer("threads")? {
        Some(n) => Some(n),
        None => match std::env::var("SYNTHSQUEEZE_THREADS") {
            Ok(v) if !v.trim().is_empty() => Some(v.trim().parse().map_err(|_| {
                CliError::Usage(format!(
                    "SYNTHSQUEEZE_THREADS must be an integer, got '{v}'"
                ))
            })?),
            _ => None,
        },
    };

    let result = match threads {
        Some(0) => return Err(CliError::Usage("threads must be >= 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Failure(format!("thread pool: {e}")))?
            .install(|| dispatch(sub, &cfg, format)),
        None => dispatch(sub, &cfg, format),
    }?;

    let bytes = match (result, format) {
        (Output::Table(t), Format::Csv) => format_csv(&t),
        (Output::Table(t), Format::Json) => format_json(&table_to_json(&t)),
        (Output::Json(v), Format::Json) => format_json(&v),
        (Output::Json(_), Format::Csv) => {
            return Err(CliError::Usage(format!("{} writes JSON only", sub.name)));
        }
    };
    let out = cfg.text("out")?;
    output::write_bytes(Path::new(out), bytes.as_bytes()).map_err(CliError::from)
}

/// Config file first, then flags, then defaults. Scheme keys are checked
/// against the chosen scheme.
fn build_config(sub: &Subcommand, m: &ArgMatches) -> Result<Config, CliError> {
    let accepted = keys::accepted_keys(sub);
    let mut cfg = Config::new(&accepted);
    if let Some(path) = m.get_one::<String>("config") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
        cfg.load_json(&text, path)?;
    }
    for key in &accepted {
        if key.name == "config" {
            continue;
        }
        if let Some(v) = m.get_one::<String>(key.name) {
            cfg.set(key.name, v.clone())?;
        }
    }
    for key in sub.keys.iter().chain(keys::COMMON_KEYS) {
        if let Some(d) = key.default {
            cfg.set_default(key.name, d);
        }
    }
    if sub.uses_scheme {
        let scheme = cfg.text("scheme")?.to_string();
        let spec = keys::scheme_spec(&scheme).ok_or_else(|| {
            let names: Vec<&str> = keys::SCHEMES.iter().map(|s| s.name).collect();
            CliError::Usage(format!(
                "unknown scheme '{scheme}' (expected one of {})",
                names.join(", ")
            ))
        })?;
        let stray: Vec<&str> = cfg
            .present()
            .filter(|k| {
                is_scheme_key(k) && *k != "scheme" && !spec.keys.iter().any(|(n, _)| n == k)
            })
            .filter(|k| !sub.keys.iter().any(|s| s.name == *k))
            .collect();
        if let Some(k) = stray.first() {
            return Err(CliError::Usage(format!(
                "key '{k}' does not apply to scheme '{scheme}'"
            )));
        }
        for (k, d) in spec.keys {
            match d {
                Some(d) => cfg.set_default(k, d),
                None if !cfg.contains(k) => {
                    return Err(CliError::Usage(format!(
                        "scheme '{scheme}' requires key '{k}'"
                    )));
                }
                None => {}
            }
        }
    }
    Ok(cfg)
}

fn dispatch(sub: &Subcommand, cfg: &Config, format: Format) -> Result<Output, CliError> {
    match sub.name {
        "steady" => cmd_steady(cfg),
        "gap" => cmd_gap(cfg),
        "spectrum" => cmd_spectrum(cfg, format),
        "evolve" => cmd_evolve(cfg),
        "sweep-temp" => cmd_sweep_temp(cfg),
        "sweep-gap" => cmd_sweep_gap(cfg),
        "sweep-spacing" => cmd_sweep_spacing(cfg),
        "gap-vs-r" => cmd_gap_vs_r(cfg),
        "validate-elim" => cmd_validate_elim(cfg),
        "solve-drive" => cmd_solve_drive(cfg),
        other => unreachable!("unhandled subcommand {other}"),
    }
}

struct Built {
    name: String,
    model: LindbladModel,
    target: Option<Ket>,
}

fn build_scheme(cfg: &Config) -> Result<Built, CliError> {
    let name = cfg.text("scheme")?.to_string();
    let (model, target) = match name.as_str() {
        "single-qubit-squeezed" => (
            single_qubit_squeezed(cfg.number("gamma")?, cfg.number("r")?)?,
            None,
        ),
        "ideal-tms" => {
            let r = cfg.number("r")?;
            (
                ideal_tms(r, cfg.number("gamma1")?, cfg.number("gamma2")?)?,
                Some(tms_state(r)),
            )
        }
        "synthetic-reduced" => {
            let p = SqueezeParams::new(0.0, 1.0, cfg.number("g_bar")?, cfg.number("kappa")?)?;
            let amps = Amplitudes {
                alpha_minus: C64::new(cfg.number("alpha_minus")?, 0.0),
                alpha_plus: C64::new(cfg.number("alpha_plus")?, 0.0),
                beta_minus: C64::new(cfg.number("beta_minus")?, 0.0),
                beta_plus: C64::new(cfg.number("beta_plus")?, 0.0),
            };
            (synthetic_reduced(&p, &amps, cfg.flag("flipped")?)?, None)
        }
        "balanced" => {
            let (m, g, k) = (
                cfg.number("m_bar")?,
                cfg.number("g_bar")?,
                cfg.number("kappa")?,
            );
            let model = if cfg.flag("flipped")? {
                balanced_flipped(m, g, k)?
            } else {
                balanced(m, g, k)?
            };
            (model, None)
        }
        "thermal-tms" => {
            let r = cfg.number("r")?;
            (
                thermal_tms(r, cfg.number("gamma")?, cfg.number("n_th")?)?,
                Some(tms_state(r)),
            )
        }
        "qubit-cavity" => {
            let p = SqueezeParams::new(0.0, 1.0, cfg.number("g_bar")?, cfg.number("kappa")?)?;
            let model = qubit_cavity_full(
                &p,
                C64::new(cfg.number("alpha_plus")?, 0.0),
                C64::new(cfg.number("alpha_minus")?, 0.0),
                cfg.integer("n_fock")?,
            )?;
            (model, None)
        }
        "collective-loss" => {
            let frame: Frame = cfg.text("frame")?.parse()?;
            let (r0, mu, eta) = (cfg.number("r0")?, cfg.number("mu")?, cfg.number("eta")?);
            let d = if eta == 1.0 {
                DriveParams::symmetric(r0, mu)?
            } else {
                solve_asymmetric_drive(r0, mu, eta)?
            };
            let model = collective_loss(frame, &d, cfg.number("gamma")?)?;
            let target = match (eta == 1.0, frame) {
                (true, Frame::Lab) => local_unitary(r0).dagger().apply(&target_state(r0)),
                (true, _) => target_state(r0),
                (false, Frame::Lab) => d.lab_dark_state()?,
                (false, _) => asymmetric_unitary(&d).apply(&d.lab_dark_state()?),
            };
            (model, Some(target))
        }
        "tl" => {
            let k1 = crate::experiments::TL_K1;
            let p = TLParams::new(
                cfg.number("r")?,
                k1,
                cfg.number("k2_over_k1")? * k1,
                cfg.number("dl")?,
            )?;
            (tl_model(&p, cfg.flag("include_h")?)?, Some(tms_state(p.r)))
        }
        other => unreachable!("scheme {other} was validated"),
    };
    Ok(Built {
        name,
        model,
        target,
    })
}

fn populations(rho: &DensityMatrix) -> Value {
    Value::Array(rho.populations().into_iter().map(output::number).collect())
}

fn state_summary(
    rho: &DensityMatrix,
    target: Option<&Ket>,
) -> Result<Map<String, Value>, CliError> {
    let mut obj = Map::new();
    if rho.dims() == [2, 2] {
        let m = MetricSet::of(rho, target)?;
        obj.insert("concurrence".into(), output::number(m.concurrence));
        if let Some(f) = m.fidelity_to_target {
            obj.insert("fidelity_to_target".into(), output::number(f));
        }
    } else if let Some(t) = target {
        obj.insert(
            "fidelity_to_target".into(),
            output::number(crate::metrics::fidelity(rho, t)?),
        );
    }
    obj.insert("purity".into(), output::number(purity(rho)));
    obj.insert("populations".into(), populations(rho));
    Ok(obj)
}

fn cmd_steady(cfg: &Config) -> Result<Output, CliError> {
    let b = build_scheme(cfg)?;
    let res = steady_state(&liouvillian(&b.model), NULL_SPACE_TOL)?;
    let mut obj = Map::new();
    obj.insert("scheme".into(), json!(b.name));
    obj.insert("degeneracy".into(), json!(res.degeneracy));
    if res.degeneracy == 1 {
        obj.extend(state_summary(&res.steady_states[0], b.target.as_ref())?);
    }
    let states = res
        .steady_states
        .iter()
        .map(|s| state_summary(s, b.target.as_ref()).map(Value::Object))
        .collect::<Result<Vec<_>, _>>()?;
    obj.insert("states".into(), Value::Array(states));
    Ok(Output::Json(Value::Object(obj)))
}

fn cmd_gap(cfg: &Config) -> Result<Output, CliError> {
    let b = build_scheme(cfg)?;
    let res = eigenspectrum(&liouvillian(&b.model))?;
    let gap = res.gap.map_or(Value::Null, output::number);
    Ok(Output::Json(
        json!({ "scheme": b.name, "degeneracy": res.degeneracy, "gap": gap }),
    ))
}

fn cmd_spectrum(cfg: &Config, format: Format) -> Result<Output, CliError> {
    let b = build_scheme(cfg)?;
    let res = eigenspectrum(&liouvillian(&b.model))?;
    Ok(match format {
        Format::Csv => {
            let records = res
                .eigenvalues
                .iter()
                .map(|l| SweepRecord::new(vec![("re", l.re), ("im", l.im)]))
                .collect();
            Output::Table(SweepTable::from_records(&["re", "im"], records)?)
        }
        Format::Json => {
            let eig: Vec<Value> = res
                .eigenvalues
                .iter()
                .map(|l| json!({ "re": output::number(l.re), "im": output::number(l.im) }))
                .collect();
            Output::Json(json!({ "scheme": b.name, "eigenvalues": eig }))
        }
    })
}

fn initial_state(kind: &str, dims: &[usize]) -> Result<DensityMatrix, CliError> {
    let pick = |qubit: usize| -> Vec<usize> {
        dims.iter()
            .map(|&d| if d == 2 { qubit } else { 0 })
            .collect()
    };
    Ok(match kind {
        "ground" => Ket::basis(dims, &pick(GROUND))?.projector(),
        "excited" => Ket::basis(dims, &pick(EXCITED))?.projector(),
        "mixed" => DensityMatrix::maximally_mixed(dims),
        other => {
            return Err(CliError::Usage(format!(
                "unknown initial state '{other}' (ground, excited or mixed)"
            )))
        }
    })
}

fn cmd_evolve(cfg: &Config) -> Result<Output, CliError> {
    let b = build_scheme(cfg)?;
    let dims = b.model.dims().to_vec();
    let rho0 = initial_state(cfg.text("initial")?, &dims)?;
    let mut opts = EvolveOptions::new(cfg.number("t_final")?).stride(cfg.integer("stride")?);
    if let Some(dt) = cfg.opt_number("dt")? {
        opts = opts.dt(dt);
    }
    let traj = evolve_with(&b.model, &rho0, &opts)?;

    let two_qubit = dims == [2, 2];
    let d = b.model.hilbert_dim();
    let mut columns = vec!["t".to_string(), "purity".to_string()];
    columns.extend((0..d).map(|i| format!("pop_{i}")));
    if two_qubit {
        columns.push("concurrence".into());
    }
    let mut table = SweepTable::new(&columns);
    for (t, rho) in &traj {
        let mut fields = vec![("t".to_string(), *t), ("purity".to_string(), purity(rho))];
        fields.extend(
            rho.populations()
                .into_iter()
                .enumerate()
                .map(|(i, p)| (format!("pop_{i}"), p)),
        );
        if two_qubit {
            fields.push(("concurrence".into(), concurrence(rho)?));
        }
        table.push(SweepRecord::new(fields))?;
    }
    Ok(Output::Table(table))
}

fn cmd_sweep_temp(cfg: &Config) -> Result<Output, CliError> {
    let grid = crate::experiments::linear_grid(0.0, cfg.number("T_max")?, positive(cfg, "T_step")?);
    Ok(Output::Table(sweep_temperature(
        cfg.number("r")?,
        cfg.number("gamma")?,
        cfg.number("freq_GHz")?,
        &grid,
    )?))
}

fn cmd_sweep_gap(cfg: &Config) -> Result<Output, CliError> {
    let (lo, hi) = (positive(cfg, "mu_min")?, positive(cfg, "mu_max")?);
    let ppd = cfg.integer("points_per_decade")?;
    if hi < lo || ppd == 0 {
        return Err(CliError::Usage(
            "need mu_min <= mu_max and points_per_decade >= 1".into(),
        ));
    }
    let grid = log_grid(lo, hi, ppd);
    Ok(Output::Table(sweep_gap_vs_mu(
        &cfg.list("r_list")?,
        &grid,
        cfg.number("eta")?,
    )?))
}

fn cmd_sweep_spacing(cfg: &Config) -> Result<Output, CliError> {
    let (dl_max, dl_step) = (cfg.number("dl_max")?, positive(cfg, "dl_step")?);
    let grid = crate::experiments::linear_grid(0.0, dl_max, dl_step);
    let bounds = (cfg.number("r_lo")?, cfg.number("r_hi")?);
    Ok(Output::Table(sweep_spacing(&grid, bounds)?))
}

fn cmd_gap_vs_r(cfg: &Config) -> Result<Output, CliError> {
    let grid = crate::experiments::linear_grid(
        cfg.number("r_min")?,
        cfg.number("r_max")?,
        positive(cfg, "r_step")?,
    );
    Ok(Output::Table(crate::experiments::gap_vs_r(&grid)?))
}

fn cmd_validate_elim(cfg: &Config) -> Result<Output, CliError> {
    let mut opts = ElimOptions::new(cfg.number("r")?, cfg.number("t_final_over_gamma")?);
    opts.n_fock = cfg.opt_integer("n_fock")?;
    Ok(Output::Table(validate_elimination_with(
        &cfg.list("ratios")?,
        &opts,
    )?))
}

fn cmd_solve_drive(cfg: &Config) -> Result<Output, CliError> {
    let (r, mu, eta) = (cfg.number("r")?, cfg.number("mu")?, cfg.number("eta")?);
    let d = if eta == 1.0 {
        DriveParams::symmetric(r, mu)?
    } else {
        solve_asymmetric_drive(r, mu, eta)?
    };
    let n = output::number;
    Ok(Output::Json(json!({
        "r": n(r),
        "mu": n(d.mu),
        "eta": n(d.eta),
        "delta": n(d.delta),
        "lambda": n(d.lambda),
        "epsilon": n(d.epsilon),
        "beta_minus": n(d.beta_minus()),
        "beta_plus": n(d.beta_plus()),
    })))
}

fn positive(cfg: &Config, key: &str) -> Result<f64, CliError> {
    let x = cfg.number(key)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("key '{key}' must be > 0, got {x}")))
    }
}
