use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noisy::{Engine, NoiseModel, Symmetry};
use crate::vqe::VqeConfig;

/// How each state's energy is obtained.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "vqe")]
    Vqe,
    #[serde(rename = "adapt")]
    Adapt,
    #[serde(rename = "noisy")]
    Noisy,
    #[serde(rename = "noisy+pmsv")]
    NoisyPmsv,
}

impl Mode {
    pub fn is_noisy(self) -> bool {
        matches!(self, Mode::Noisy | Mode::NoisyPmsv)
    }

    pub fn label(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Vqe => "vqe",
            Mode::Adapt => "adapt",
            Mode::Noisy => "noisy",
            Mode::NoisyPmsv => "noisy+pmsv",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Config(format!("unknown mode `{s}`")))
    }
}

/// Integral files of the three stationary points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Trio {
    #[serde(rename = "R")]
    pub r: PathBuf,
    #[serde(rename = "TS")]
    pub ts: PathBuf,
    #[serde(rename = "P1")]
    pub p1: PathBuf,
}

impl Trio {
    pub fn labeled(&self) -> [(&'static str, &Path); 3] {
        [("R", &self.r), ("TS", &self.ts), ("P1", &self.p1)]
    }

    fn resolve(&mut self, base: &Path) {
        for p in [&mut self.r, &mut self.ts, &mut self.p1] {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }
}

/// Ansatz used by the `vqe` and noisy modes.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PoolChoice {
    /// Spin-adapted UCCSD pool after removing symmetry-forbidden excitations.
    #[default]
    Filtered,
    Full,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AdaptSettings {
    pub grad_threshold: f64,
    pub max_rounds: usize,
}

impl Default for AdaptSettings {
    fn default() -> Self {
        AdaptSettings {
            grad_threshold: crate::ansatz::DEFAULT_GRAD_THRESHOLD,
            max_rounds: 50,
        }
    }
}

/// One run, serialized as JSON. Relative paths resolve against the file's directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub states: Trio,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub pool: PoolChoice,
    #[serde(default)]
    pub noise: NoiseModel,
    #[serde(default)]
    pub engine: Engine,
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default = "default_experiments")]
    pub experiments: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    #[serde(default)]
    pub vqe: VqeConfig,
    #[serde(default)]
    pub adapt: AdaptSettings,
    /// Post-selection symmetries; spin and particle parities of the reference when absent.
    #[serde(default)]
    pub symmetries: Option<Vec<Symmetry>>,
    #[serde(default = "default_budgets")]
    pub shot_budgets: Vec<u64>,
    /// Additional active spaces for the space sweep.
    #[serde(default)]
    pub spaces: Vec<Trio>,
}

fn default_mode() -> Mode {
    Mode::Exact
}

fn default_shots() -> u64 {
    100_000
}

fn default_experiments() -> usize {
    100
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

fn default_budgets() -> Vec<u64> {
    vec![1_000, 10_000, 30_000, 100_000]
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub mode: Option<Mode>,
    pub seed: Option<u64>,
    pub shots: Option<u64>,
    pub experiments: Option<usize>,
    pub out: Option<PathBuf>,
    pub mitigate: bool,
}

impl RunConfig {
    pub fn new(states: Trio) -> Self {
        RunConfig {
            states,
            mode: default_mode(),
            pool: PoolChoice::default(),
            noise: NoiseModel::default(),
            engine: Engine::default(),
            shots: default_shots(),
            experiments: default_experiments(),
            seed: 0,
            out: default_out(),
            vqe: VqeConfig::default(),
            adapt: AdaptSettings::default(),
            symmetries: None,
            shot_budgets: default_budgets(),
            spaces: Vec::new(),
        }
    }

    pub fn from_json(text: &str, base: &Path) -> Result<Self> {
        let mut c: RunConfig = serde_json::from_str(text)?;
        c.states.resolve(base);
        if c.out.is_relative() {
            c.out = base.join(&c.out);
        }
        for t in &mut c.spaces {
            t.resolve(base);
        }
        Ok(c)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_json(&text, base)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(m) = o.mode {
            self.mode = m;
        }
        if o.mitigate && self.mode == Mode::Noisy {
            self.mode = Mode::NoisyPmsv;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(s) = o.shots {
            self.shots = s;
        }
        if let Some(e) = o.experiments {
            self.experiments = e;
        }
        if let Some(out) = &o.out {
            self.out = out.clone();
        }
    }

    pub fn validate(&self) -> Result<()> {
        for trio in std::iter::once(&self.states).chain(&self.spaces) {
            for (label, p) in trio.labeled() {
                if !p.is_file() {
                    return Err(Error::Config(format!(
                        "{label} integrals not found at {}",
                        p.display()
                    )));
                }
            }
        }
        self.vqe.validate()?;
        if self.mode.is_noisy() {
            self.noise.validate()?;
            if self.shots == 0 {
                return Err(Error::ZeroShots);
            }
            if self.experiments < 2 {
                return Err(Error::Config(
                    "noisy modes need at least 2 experiments".into(),
                ));
            }
        }
        if !(self.adapt.grad_threshold > 0.0) {
            return Err(Error::Config(
                "adapt.grad_threshold must be positive".into(),
            ));
        }
        Ok(())
    }
}
