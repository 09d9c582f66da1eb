use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qboson_alcove::fock::Partition;
use qboson_alcove::{ContinuumParams, ModelParams, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "qboson-alcove", version, about = "Bethe Ansatz spectra, wave functions and checks for the open q-boson chain and the alcove Laplacian")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Use the lattice model (default).
    #[arg(long, conflicts_with = "continuum")]
    pub lattice: bool,
    /// Use the continuum model on the alcove.
    #[arg(long)]
    pub continuum: bool,
    /// Parameter assignments such as `n=2 m=3 t=0.5 a_plus=0.3 a_minus=-0.4 g=1`.
    #[arg(value_name = "KEY=VALUE")]
    pub assignments: Vec<String>,
    /// Restrict to these partitions, e.g. `--lambda 2,1 --lambda 1,0`.
    #[arg(long = "lambda", value_name = "PARTS")]
    pub lambdas: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; defaults to stdout, or to `$QBOSON_OUT_DIR/<command>.<ext>` when that is set.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub solver_tol: Option<f64>,
    #[arg(long)]
    pub identity_tol: Option<f64>,
    #[arg(long)]
    pub singularity_floor: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral points, energies, Bethe residuals and bound checks.
    Spectrum {
        #[command(flatten)]
        common: Common,
    },
    /// Gram matrix of the Bethe wave functions.
    Gram {
        #[command(flatten)]
        common: Common,
        /// Largest admissible off-diagonal correlation.
        #[arg(long)]
        orthogonality_tol: Option<f64>,
    },
    /// Structural checks of the lattice operators.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Check family name, or `all`.
        #[arg(long, default_value = "all")]
        check: String,
    },
    /// Lattice-to-continuum convergence table.
    Converge {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        m_list: Vec<usize>,
        /// Smallest admissible ratio of consecutive deviations.
        #[arg(long, default_value_t = 1.5)]
        min_ratio: f64,
        /// Largest admissible final deviation.
        #[arg(long, default_value_t = 0.02)]
        final_tol: f64,
    },
    /// Tabulated wave function at one spectral point.
    Wavefn {
        #[command(flatten)]
        common: Common,
        /// Grid resolution for continuum samples.
        #[arg(long, default_value_t = 8)]
        resolution: usize,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Self::Spectrum { common }
            | Self::Gram { common, .. }
            | Self::Verify { common, .. }
            | Self::Converge { common, .. }
            | Self::Wavefn { common, .. } => common,
        }
    }
}

/// Invalid command-line input.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<qboson_alcove::Error> for ConfigError {
    fn from(e: qboson_alcove::Error) -> Self {
        Self(e.to_string())
    }
}

const KEYS: [&str; 9] = ["n", "m", "q", "t", "a_plus", "a_minus", "g", "g_plus", "g_minus"];

/// Model selected on the command line.
#[derive(Debug, Clone)]
pub enum Model {
    Lattice(ModelParams<f64>),
    /// Continuum couplings and the largest part used when listing partitions.
    Continuum(ContinuumParams<f64>, usize),
}

/// Validated configuration of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: Model,
    pub lambdas: Vec<Partition>,
    pub tol: Tolerances,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn parse_assignments(items: &[String]) -> Result<BTreeMap<String, f64>, ConfigError> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("expected KEY=VALUE, got `{item}`")))?;
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError(format!("unknown parameter `{k}`; expected one of {}", KEYS.join(", "))));
        }
        let value: f64 = v.trim().parse().map_err(|_| ConfigError(format!("`{v}` is not a number")))?;
        if out.insert(key.clone(), value).is_some() {
            return Err(ConfigError(format!("parameter `{key}` given twice")));
        }
    }
    Ok(out)
}

fn count(values: &BTreeMap<String, f64>, key: &str, default: usize) -> Result<usize, ConfigError> {
    match values.get(key) {
        None => Ok(default),
        Some(&v) if v >= 0.0 && v.fract() == 0.0 => Ok(v as usize),
        Some(v) => Err(ConfigError(format!("{key} = {v} must be a nonnegative integer"))),
    }
}

pub fn parse_partition(s: &str) -> Result<Partition, ConfigError> {
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| ConfigError(format!("bad partition `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(parts)?)
}

impl RunConfig {
    pub fn from_common(c: &Common) -> Result<Self, ConfigError> {
        let values = parse_assignments(&c.assignments)?;
        let n = count(&values, "n", 2)?;
        let m = count(&values, "m", 3)?;
        let get = |k: &str, d: f64| values.get(k).copied().unwrap_or(d);
        let model = if c.continuum {
            for k in ["q", "t", "a_plus", "a_minus"] {
                if values.contains_key(k) {
                    return Err(ConfigError(format!("`{k}` is a lattice parameter")));
                }
            }
            Model::Continuum(ContinuumParams::new(n, get("g", 1.0), get("g_plus", 1.0), get("g_minus", 1.0))?, m)
        } else {
            for k in ["g", "g_plus", "g_minus"] {
                if values.contains_key(k) {
                    return Err(ConfigError(format!("`{k}` is a continuum parameter")));
                }
            }
            let (ap, am) = (get("a_plus", 0.3), get("a_minus", -0.4));
            let p = match (values.get("q"), values.get("t")) {
                (Some(_), Some(_)) => return Err(ConfigError("give q or t, not both".into())),
                (None, Some(&t)) => ModelParams::from_t(m, n, t, ap, am)?,
                (q, None) => ModelParams::new(m, n, q.copied().unwrap_or(0.6), ap, am)?,
            };
            Model::Lattice(p)
        };
        let mut tol = Tolerances::default();
        if let Some(v) = c.solver_tol {
            tol.solver_tol = v;
        }
        if let Some(v) = c.identity_tol {
            tol.identity_tol = v;
        }
        if let Some(v) = c.singularity_floor {
            tol.singularity_floor = v;
        }
        tol.validate()?;
        let lambdas = c.lambdas.iter().map(|s| parse_partition(s)).collect::<Result<Vec<_>, _>>()?;
        for lam in &lambdas {
            if lam.len() != n {
                return Err(ConfigError(format!("{lam} does not have n = {n} parts")));
            }
            if matches!(model, Model::Lattice(_)) && !lam.fits(m) {
                return Err(ConfigError(format!("{lam} has a part above m = {m}")));
            }
        }
        Ok(Self { model, lambdas, tol, format: c.format, output: c.output.clone() })
    }

    pub fn n(&self) -> usize {
        match &self.model {
            Model::Lattice(p) => p.n(),
            Model::Continuum(c, _) => c.n(),
        }
    }

    /// Requested partitions, or every partition in `Λ_{n,m}`.
    pub fn labels(&self) -> Vec<Partition> {
        if !self.lambdas.is_empty() {
            return self.lambdas.clone();
        }
        let (n, m) = match &self.model {
            Model::Lattice(p) => (p.n(), p.m()),
            Model::Continuum(c, m) => (c.n(), *m),
        };
        qboson_alcove::fock::enumerate_sector(n, m).states().to_vec()
    }
}
