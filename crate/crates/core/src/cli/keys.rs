use std::collections::BTreeMap;

use super::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Number,
    Integer,
    Text,
    List,
    Flag,
}

impl Kind {
    pub(crate) fn value_name(self) -> &'static str {
        match self {
            Kind::Number => "X",
            Kind::Integer => "N",
            Kind::Text => "NAME",
            Kind::List => "X,Y,..",
            Kind::Flag => "true|false",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Key {
    pub name: &'static str,
    pub kind: Kind,
    pub default: Option<&'static str>,
    pub help: &'static str,
}

const fn key(
    name: &'static str,
    kind: Kind,
    default: Option<&'static str>,
    help: &'static str,
) -> Key {
    Key {
        name,
        kind,
        default,
        help,
    }
}

use Kind::*;

/// Keys shared by every scheme. Which ones apply, and their defaults, depend on the scheme.
pub(crate) const SCHEME_KEYS: &[Key] = &[
    key("scheme", Text, None, "model to build (see list below)"),
    key("r", Number, None, "squeezing parameter (dimensionless)"),
    key("gamma", Number, None, "reference rate (sets the rate unit)"),
    key(
        "gamma1",
        Number,
        None,
        "rate of the first squeezing channel (reference-rate units)",
    ),
    key(
        "gamma2",
        Number,
        None,
        "rate of the second squeezing channel (reference-rate units)",
    ),
    key(
        "g_bar",
        Number,
        None,
        "bare qubit-cavity coupling (rate units)",
    ),
    key("kappa", Number, None, "cavity decay rate (rate units)"),
    key(
        "alpha_minus",
        Number,
        None,
        "red-sideband amplitude (dimensionless)",
    ),
    key(
        "alpha_plus",
        Number,
        None,
        "blue-sideband amplitude (dimensionless)",
    ),
    key(
        "beta_minus",
        Number,
        None,
        "second-cavity red-sideband amplitude (dimensionless)",
    ),
    key(
        "beta_plus",
        Number,
        None,
        "second-cavity blue-sideband amplitude (dimensionless)",
    ),
    key(
        "flipped",
        Flag,
        None,
        "exchange raising and lowering on qubit 2",
    ),
    key(
        "m_bar",
        Number,
        None,
        "balanced modulation strength (dimensionless)",
    ),
    key("n_th", Number, None, "thermal bath occupation (photons)"),
    key("n_fock", Integer, None, "cavity Fock-space cutoff (levels)"),
    key("frame", Text, None, "lab, transformed or rwa"),
    key(
        "r0",
        Number,
        None,
        "target squeezing parameter (dimensionless)",
    ),
    key("mu", Number, None, "drive energy gap (units of gamma)"),
    key(
        "eta",
        Number,
        None,
        "coupling asymmetry of qubit 2 (dimensionless)",
    ),
    key(
        "dl",
        Number,
        None,
        "qubit spacing error (fraction of the lower-frequency wavelength)",
    ),
    key(
        "k2_over_k1",
        Number,
        None,
        "ratio of the two wavevectors (dimensionless)",
    ),
    key("include_h", Flag, None, "keep the pairing Hamiltonian"),
];

pub(crate) struct SchemeSpec {
    pub name: &'static str,
    pub about: &'static str,
    /// Applicable keys and their defaults; `None` marks a required key.
    pub keys: &'static [(&'static str, Option<&'static str>)],
}

pub(crate) const SCHEMES: &[SchemeSpec] = &[
    SchemeSpec {
        name: "single-qubit-squeezed",
        about: "one qubit in a squeezed bath",
        keys: &[("r", None), ("gamma", Some("1"))],
    },
    SchemeSpec {
        name: "ideal-tms",
        about: "two qubits under two-mode squeezed dissipation",
        keys: &[("r", None), ("gamma1", Some("1")), ("gamma2", Some("1"))],
    },
    SchemeSpec {
        name: "synthetic-reduced",
        about: "two qubits after eliminating two modulated cavities",
        keys: &[
            ("g_bar", Some("1")),
            ("kappa", Some("1")),
            ("alpha_minus", None),
            ("alpha_plus", None),
            ("beta_minus", None),
            ("beta_plus", None),
            ("flipped", Some("false")),
        ],
    },
    SchemeSpec {
        name: "balanced",
        about: "equal red and blue sidebands (degenerate steady state)",
        keys: &[
            ("m_bar", Some("1")),
            ("g_bar", Some("1")),
            ("kappa", Some("1")),
            ("flipped", Some("false")),
        ],
    },
    SchemeSpec {
        name: "thermal-tms",
        about: "two-mode squeezed dissipation with a thermal bath",
        keys: &[("r", None), ("gamma", Some("1")), ("n_th", None)],
    },
    SchemeSpec {
        name: "qubit-cavity",
        about: "one qubit coupled to a lossy cavity before elimination",
        keys: &[
            ("g_bar", Some("1")),
            ("kappa", None),
            ("alpha_plus", None),
            ("alpha_minus", None),
            ("n_fock", Some("8")),
        ],
    },
    SchemeSpec {
        name: "collective-loss",
        about: "collective loss plus local Rabi drives",
        keys: &[
            ("frame", Some("lab")),
            ("r0", None),
            ("mu", None),
            ("eta", Some("1")),
            ("gamma", Some("1")),
        ],
    },
    SchemeSpec {
        name: "tl",
        about: "two qubits on a transmission line with a spacing error",
        keys: &[
            ("r", None),
            ("dl", None),
            ("k2_over_k1", Some("1.5")),
            ("include_h", Some("true")),
        ],
    },
];

pub(crate) fn scheme_spec(name: &str) -> Option<&'static SchemeSpec> {
    SCHEMES.iter().find(|s| s.name == name)
}

pub(crate) const COMMON_KEYS: &[Key] = &[
    key(
        "config",
        Text,
        None,
        "JSON file of key/value pairs; flags take precedence",
    ),
    key("out", Text, Some("-"), "output path, - for stdout"),
    key("format", Text, None, "csv or json"),
    key(
        "threads",
        Integer,
        None,
        "worker threads (falls back to SYNTHSQUEEZE_THREADS)",
    ),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Format {
    Csv,
    Json,
}

pub(crate) struct Subcommand {
    pub name: &'static str,
    pub about: &'static str,
    pub keys: &'static [Key],
    pub uses_scheme: bool,
    pub default_format: Format,
}

pub(crate) const SUBCOMMANDS: &[Subcommand] = &[
    Subcommand {
        name: "steady",
        about: "Steady state of a scheme and its metrics",
        keys: &[],
        uses_scheme: true,
        default_format: Format::Json,
    },
    Subcommand {
        name: "gap",
        about: "Dissipative gap of a scheme (Hilbert dimension at most 8)",
        keys: &[],
        uses_scheme: true,
        default_format: Format::Json,
    },
    Subcommand {
        name: "spectrum",
        about: "Liouvillian eigenvalues of a scheme (Hilbert dimension at most 8)",
        keys: &[],
        uses_scheme: true,
        default_format: Format::Json,
    },
    Subcommand {
        name: "evolve",
        about: "RK4 trajectory of a scheme from a simple initial state",
        keys: &[
            key("initial", Text, Some("ground"), "ground, excited or mixed"),
            key("t_final", Number, None, "final time (inverse rate units)"),
            key(
                "dt",
                Number,
                None,
                "step size (inverse rate units) [default: 0.02/|L|]",
            ),
            key("stride", Integer, Some("1"), "keep every N-th step"),
        ],
        uses_scheme: true,
        default_format: Format::Csv,
    },
    Subcommand {
        name: "sweep-temp",
        about: "Concurrence and purity vs bath temperature",
        keys: &[
            key(
                "r",
                Number,
                Some("1"),
                "squeezing parameter (dimensionless)",
            ),
            key("gamma", Number, Some("1"), "reference rate"),
            key("freq_GHz", Number, Some("6"), "qubit frequency (GHz)"),
            key("T_max", Number, Some("0.15"), "highest temperature (K)"),
            key("T_step", Number, Some("0.0025"), "temperature step (K)"),
        ],
        uses_scheme: false,
        default_format: Format::Csv,
    },
    Subcommand {
        name: "sweep-gap",
        about: "Collective-loss dissipative gap vs drive energy",
        keys: &[
            key(
                "r_list",
                List,
                Some("0.5,1,1.5"),
                "squeezing parameters (dimensionless)",
            ),
            key(
                "eta",
                Number,
                Some("1"),
                "coupling asymmetry (dimensionless)",
            ),
            key(
                "mu_min",
                Number,
                Some("1e-3"),
                "smallest mu (units of gamma)",
            ),
            key("mu_max", Number, Some("1e2"), "largest mu (units of gamma)"),
            key("points_per_decade", Integer, Some("11"), "grid density"),
        ],
        uses_scheme: false,
        default_format: Format::Csv,
    },
    Subcommand {
        name: "sweep-spacing",
        about: "Optimal concurrence vs transmission-line spacing error",
        keys: &[
            key(
                "dl_max",
                Number,
                Some("0.02"),
                "largest spacing error (fraction of wavelength)",
            ),
            key(
                "dl_step",
                Number,
                Some("5e-4"),
                "spacing-error step (fraction of wavelength)",
            ),
            key("r_lo", Number, Some("0.05"), "lower squeezing bound"),
            key("r_hi", Number, Some("4"), "upper squeezing bound"),
        ],
        uses_scheme: false,
        default_format: Format::Csv,
    },
    Subcommand {
        name: "gap-vs-r",
        about: "Two-mode squeezed dissipation gap vs squeezing",
        keys: &[
            key("r_min", Number, Some("0.5"), "first squeezing parameter"),
            key("r_max", Number, Some("3"), "last squeezing parameter"),
            key("r_step", Number, Some("0.25"), "squeezing step"),
        ],
        uses_scheme: false,
        default_format: Format::Csv,
    },
    Subcommand {
        name: "validate-elim",
        about: "Qubit-cavity dynamics vs the eliminated single-qubit model",
        keys: &[
            key(
                "ratios",
                List,
                Some("5,10,20,50"),
                "kappa / (g_bar max|alpha|) values",
            ),
            key(
                "r",
                Number,
                Some("1"),
                "squeezing parameter (dimensionless)",
            ),
            key(
                "t_final_over_gamma",
                Number,
                Some("5"),
                "duration (units of 1/gamma)",
            ),
            key(
                "n_fock",
                Integer,
                None,
                "fixed Fock cutoff [default: automatic, at most 12]",
            ),
        ],
        uses_scheme: false,
        default_format: Format::Csv,
    },
    Subcommand {
        name: "solve-drive",
        about: "Drive parameters for a target squeezing under collective loss",
        keys: &[
            key(
                "r",
                Number,
                None,
                "target squeezing parameter (dimensionless)",
            ),
            key("mu", Number, None, "drive energy gap (rate units)"),
            key(
                "eta",
                Number,
                Some("1"),
                "coupling asymmetry (dimensionless)",
            ),
        ],
        uses_scheme: false,
        default_format: Format::Json,
    },
];

pub(crate) fn subcommand(name: &str) -> Option<&'static Subcommand> {
    SUBCOMMANDS.iter().find(|s| s.name == name)
}

/// All keys a subcommand accepts, scheme keys included.
pub(crate) fn accepted_keys(sub: &Subcommand) -> Vec<&'static Key> {
    let mut keys: Vec<&'static Key> = COMMON_KEYS.iter().collect();
    keys.extend(sub.keys.iter());
    if sub.uses_scheme {
        keys.extend(SCHEME_KEYS.iter());
    }
    keys
}

/// Merged key/value configuration for one invocation.
#[derive(Debug, Default)]
pub(crate) struct Config {
    values: BTreeMap<&'static str, String>,
    kinds: BTreeMap<&'static str, Kind>,
}

impl Config {
    pub(crate) fn new(keys: &[&'static Key]) -> Self {
        Self {
            values: BTreeMap::new(),
            kinds: keys.iter().map(|k| (k.name, k.kind)).collect(),
        }
    }

    fn canonical(&self, name: &str) -> Option<&'static str> {
        self.kinds.keys().find(|k| **k == name).copied()
    }

    pub(crate) fn set(&mut self, name: &str, value: String) -> Result<(), CliError> {
        let key = self
            .canonical(name)
            .ok_or_else(|| CliError::Usage(format!("unknown key '{name}'")))?;
        self.values.insert(key, value);
        Ok(())
    }

    pub(crate) fn set_default(&mut self, name: &'static str, value: &str) {
        self.values.entry(name).or_insert_with(|| value.to_string());
    }

    pub(crate) fn contains(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub(crate) fn present(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.values.keys().copied()
    }

    /// Loads a flat JSON object. Arrays become comma-separated lists.
    pub(crate) fn load_json(&mut self, text: &str, origin: &str) -> Result<(), CliError> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("{origin}: invalid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| CliError::Usage(format!("{origin}: expected a JSON object")))?;
        for (k, v) in obj {
            if k == "config" {
                return Err(CliError::Usage(format!(
                    "{origin}: key 'config' cannot be nested"
                )));
            }
            let text = json_scalar(v).ok_or_else(|| {
                CliError::Usage(format!("{origin}: key '{k}' has an unsupported value {v}"))
            })?;
            self.set(k, text)
                .map_err(|_| CliError::Usage(format!("{origin}: unknown key '{k}'")))?;
        }
        Ok(())
    }

    fn raw(&self, name: &str) -> Result<&str, CliError> {
        self.values
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| CliError::Usage(format!("missing required key '{name}'")))
    }

    pub(crate) fn text(&self, name: &str) -> Result<&str, CliError> {
        self.raw(name)
    }

    pub(crate) fn number(&self, name: &str) -> Result<f64, CliError> {
        parse_number(name, self.raw(name)?)
    }

    pub(crate) fn opt_number(&self, name: &str) -> Result<Option<f64>, CliError> {
        self.values
            .get(name)
            .map(|v| parse_number(name, v))
            .transpose()
    }

    pub(crate) fn integer(&self, name: &str) -> Result<usize, CliError> {
        let v = self.raw(name)?;
        v.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "key '{name}': expected a nonnegative integer, got '{v}'"
            ))
        })
    }

    pub(crate) fn opt_integer(&self, name: &str) -> Result<Option<usize>, CliError> {
        if self.contains(name) {
            self.integer(name).map(Some)
        } else {
            Ok(None)
        }
    }

    pub(crate) fn list(&self, name: &str) -> Result<Vec<f64>, CliError> {
        self.raw(name)?
            .split(',')
            .map(|s| parse_number(name, s))
            .collect()
    }

    pub(crate) fn flag(&self, name: &str) -> Result<bool, CliError> {
        match self.raw(name)?.trim() {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            other => Err(CliError::Usage(format!(
                "key '{name}': expected true or false, got '{other}'"
            ))),
        }
    }
}

fn parse_number(name: &str, v: &str) -> Result<f64, CliError> {
    let x: f64 = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("key '{name}': expected a number, got '{v}'")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!(
            "key '{name}': value must be finite"
        )))
    }
}

fn json_scalar(v: &serde_json::Value) -> Option<String> {
    use serde_json::Value;
    match v {
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Array(items) => items
            .iter()
            .map(|x| match x {
                Value::Number(n) => Some(n.to_string()),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(|parts| parts.join(",")),
        _ => None,
    }
}
