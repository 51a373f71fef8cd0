//! Run configuration: flags and `key = value` files merged into a validated
//! [`RunConfig`].

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::path::{Path, PathBuf};

use clap::Args;
use qwalk::entanglement::{linspace, periodic_grid, SweepGrid};
use qwalk::{Boundary, CoinParams, DcaParams, InitialCondition, LatticeSpec, SplitStepParams, Walk};

use crate::CliError;

/// Every key accepted in a config file; flag names are the same with `-`.
pub const KEYS: &[&str] = &[
    "walk", "theta", "theta1", "theta2", "xi", "phi1", "phi2", "delta1", "delta2", "alpha", "beta", "omega_p",
    "omega_a", "x0", "k", "k_range", "steps", "lattice", "boundary", "history", "grid", "axes", "range1", "range2",
    "out", "jobs",
];

const WALK_KEYS: &[&str] =
    &["walk", "theta", "theta1", "theta2", "xi", "phi1", "phi2", "delta1", "delta2", "alpha", "beta"];
const INIT_KEYS: &[&str] = &["omega_p", "omega_a", "x0"];
const IO_KEYS: &[&str] = &["out", "jobs"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Walk,
    Spectrum,
    Zitter,
    Entropy,
    Sweep,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Walk => "walk",
            Mode::Spectrum => "spectrum",
            Mode::Zitter => "zitter",
            Mode::Entropy => "entropy",
            Mode::Sweep => "sweep",
        }
    }
}

/// Options shared by every subcommand. Values are kept as text so that file
/// entries and flags go through the same parsers.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Optional `key = value` file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// conventional, splitstep or dca.
    #[arg(long)]
    pub walk: Option<String>,
    /// Conventional coin angle, or DCA angle with alpha = cos, beta = sin.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta2: Option<String>,
    /// Global coin phase.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Polar angle of the initial coin state, in [0, pi].
    #[arg(long = "omega-p", allow_hyphen_values = true)]
    pub omega_p: Option<String>,
    /// Azimuthal angle of the initial coin state.
    #[arg(long = "omega-a", allow_hyphen_values = true)]
    pub omega_a: Option<String>,
    /// Starting site.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    /// Momentum for `zitter`.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Momentum range `min:max` for `spectrum`.
    #[arg(long = "k-range", allow_hyphen_values = true)]
    pub k_range: Option<String>,
    #[arg(long)]
    pub steps: Option<String>,
    /// Lattice half-width; the lattice has 2L+1 sites.
    #[arg(long)]
    pub lattice: Option<String>,
    /// truncated or periodic.
    #[arg(long)]
    pub boundary: Option<String>,
    /// Write the distribution after every step, not just the last one.
    #[arg(long)]
    pub history: bool,
    /// Points per axis, `N` or `NxM`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Sweep axes for `sweep`: omega (initial state) or coin (theta1 x theta2).
    #[arg(long)]
    pub axes: Option<String>,
    /// First sweep axis range `min:max`.
    #[arg(long, allow_hyphen_values = true)]
    pub range1: Option<String>,
    /// Second sweep axis range `min:max`.
    #[arg(long, allow_hyphen_values = true)]
    pub range2: Option<String>,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<String>,
    /// Worker threads for grid sweeps.
    #[arg(long)]
    pub jobs: Option<String>,
}

impl Flags {
    fn entries(&self) -> Vec<(&'static str, String)> {
        let opt = [
            ("walk", &self.walk),
            ("theta", &self.theta),
            ("theta1", &self.theta1),
            ("theta2", &self.theta2),
            ("xi", &self.xi),
            ("phi1", &self.phi1),
            ("phi2", &self.phi2),
            ("delta1", &self.delta1),
            ("delta2", &self.delta2),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("omega_p", &self.omega_p),
            ("omega_a", &self.omega_a),
            ("x0", &self.x0),
            ("k", &self.k),
            ("k_range", &self.k_range),
            ("steps", &self.steps),
            ("lattice", &self.lattice),
            ("boundary", &self.boundary),
            ("grid", &self.grid),
            ("axes", &self.axes),
            ("range1", &self.range1),
            ("range2", &self.range2),
            ("out", &self.out),
            ("jobs", &self.jobs),
        ];
        let mut out: Vec<_> = opt.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k, v))).collect();
        if self.history {
            out.push(("history", "true".into()));
        }
        out
    }
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Unvalidated `key -> text` settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig(BTreeMap<String, String>);

impl RawConfig {
    /// Parses `key = value` lines. `#` starts a comment; keys may use `-` or `_`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| config_err(format!("line {}: expected key = value", n + 1)))?;
            let key = key.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(config_err(format!("line {}: unknown key '{key}'", n + 1)));
            }
            if map.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(config_err(format!("line {}: duplicate key '{key}'", n + 1)));
            }
        }
        Ok(Self(map))
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// File entries (if any) overridden by flags.
    pub fn from_flags(flags: &Flags) -> Result<Self, CliError> {
        let mut raw = match &flags.config {
            Some(p) => Self::from_file(p)?,
            None => Self::default(),
        };
        for (k, v) in flags.entries() {
            raw.0.insert(k.to_string(), v);
        }
        Ok(raw)
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.0.insert(key.to_string(), value.to_string());
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn has(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }

    fn angle(&self, key: &str, default: f64) -> Result<f64, CliError> {
        self.get(key).map_or(Ok(default), |v| parse_angle(v).map_err(|e| config_err(format!("{key}: {e}"))))
    }

    fn count(&self, key: &str, default: usize) -> Result<usize, CliError> {
        self.get(key).map_or(Ok(default), |v| {
            v.parse().map_err(|_| config_err(format!("{key}: expected a non-negative integer, got '{v}'")))
        })
    }

    fn range(&self, key: &str, default: (f64, f64)) -> Result<(f64, f64), CliError> {
        self.get(key).map_or(Ok(default), |v| parse_range(v).map_err(|e| config_err(format!("{key}: {e}"))))
    }

    /// Rejects keys that are set but mean nothing for this run.
    fn only(&self, context: &str, allowed: &[&[&str]]) -> Result<(), CliError> {
        for key in self.0.keys() {
            if !allowed.iter().any(|set| set.contains(&key.as_str())) {
                return Err(config_err(format!("'{}' does not apply to {context}", key.replace('_', "-"))));
            }
        }
        Ok(())
    }
}

/// Parses `1.2`, `pi`, `-pi`, `0.25pi`, `3pi/4` or `1/3`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let bad = || format!("cannot parse angle '{s}'");
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let mut v = match num.strip_suffix("pi") {
        Some(coef) => {
            let c = match coef.trim() {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            c * PI
        }
        None => num.parse::<f64>().map_err(|_| bad())?,
    };
    if let Some(d) = den {
        let d: f64 = d.parse().map_err(|_| bad())?;
        if d == 0.0 {
            return Err(format!("division by zero in '{s}'"));
        }
        v /= d;
    }
    if !v.is_finite() {
        return Err(format!("angle '{s}' is not finite"));
    }
    Ok(v)
}

/// Parses `min:max` with angle notation on both ends.
pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected min:max, got '{s}'"))?;
    let (a, b) = (parse_angle(a)?, parse_angle(b)?);
    if b < a {
        return Err(format!("range '{s}' has max below min"));
    }
    Ok((a, b))
}

/// Parses `N` or `NxM`, each at least 1.
pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let one = |v: &str| match v.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("grid size '{v}' must be a positive integer")),
    };
    match s.split_once(['x', 'X']) {
        Some((a, b)) => Ok((one(a)?, one(b)?)),
        None => one(s).map(|n| (n, n)),
    }
}

/// What a run computes; every variant is fully validated.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Walk { walk: Walk, init: InitialCondition, steps: usize, lattice: LatticeSpec, history: bool },
    Spectrum { theta1: f64, theta2: f64, momenta: Vec<f64> },
    Zitter { theta1: Vec<f64>, theta2: Vec<f64>, k: f64 },
    Entropy { walk: Walk, init: InitialCondition, steps: usize },
    Sweep { grid: SweepGrid, steps: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub task: Task,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn from_flags(mode: Mode, flags: &Flags) -> Result<Self, CliError> {
        Self::from_raw(mode, &RawConfig::from_flags(flags)?)
    }

    pub fn from_raw(mode: Mode, raw: &RawConfig) -> Result<Self, CliError> {
        let task = match mode {
            Mode::Walk => walk_task(raw)?,
            Mode::Spectrum => {
                raw.only("spectrum", &[&["theta1", "theta2", "k_range", "grid"], IO_KEYS])?;
                let (n, _) = grid(raw, 201)?;
                let (lo, hi) = raw.range("k_range", (-PI, PI))?;
                Task::Spectrum {
                    theta1: raw.angle("theta1", 0.0)?,
                    theta2: raw.angle("theta2", FRAC_PI_4)?,
                    momenta: linspace(lo, hi, n),
                }
            }
            Mode::Zitter => {
                raw.only("zitter", &[&["k", "grid", "range1", "range2"], IO_KEYS])?;
                let (n1, n2) = grid(raw, 101)?;
                let (a1, b1) = raw.range("range1", (0.0, PI))?;
                let (a2, b2) = raw.range("range2", (0.0, PI))?;
                Task::Zitter { theta1: linspace(a1, b1, n1), theta2: linspace(a2, b2, n2), k: raw.angle("k", 0.0)? }
            }
            Mode::Entropy => {
                raw.only("entropy", &[WALK_KEYS, INIT_KEYS, &["steps"], IO_KEYS])?;
                Task::Entropy { walk: walk_from(raw)?, init: init_from(raw)?, steps: raw.count("steps", 100)? }
            }
            Mode::Sweep => sweep_task(raw)?,
        };
        let jobs = match raw.get("jobs") {
            None => None,
            Some(v) => match v.parse::<usize>() {
                Ok(n) if n >= 1 => Some(n),
                _ => return Err(config_err(format!("jobs: expected a positive integer, got '{v}'"))),
            },
        };
        Ok(Self { mode, task, out: raw.get("out").map(PathBuf::from), jobs })
    }
}

fn grid(raw: &RawConfig, default: usize) -> Result<(usize, usize), CliError> {
    raw.get("grid").map_or(Ok((default, default)), |v| parse_grid(v).map_err(|e| config_err(format!("grid: {e}"))))
}

fn walk_task(raw: &RawConfig) -> Result<Task, CliError> {
    raw.only("walk", &[WALK_KEYS, INIT_KEYS, &["steps", "lattice", "boundary", "history"], IO_KEYS])?;
    let walk = walk_from(raw)?;
    let init = init_from(raw)?;
    let steps = raw.count("steps", 100)?;
    let needed = steps + init.x0.unsigned_abs() as usize;
    let half_width = raw.count("lattice", needed.max(1))?;
    let boundary = match raw.get("boundary").unwrap_or("truncated") {
        "truncated" => Boundary::Truncated,
        "periodic" => Boundary::Periodic,
        other => return Err(config_err(format!("boundary: expected truncated or periodic, got '{other}'"))),
    };
    if init.x0.unsigned_abs() as usize > half_width {
        return Err(config_err(format!("x0 = {} lies outside the lattice of half-width {half_width}", init.x0)));
    }
    if boundary == Boundary::Truncated && needed > half_width {
        return Err(config_err(format!(
            "{steps} steps from x0 = {} need a truncated lattice of half-width at least {needed}, got {half_width}",
            init.x0
        )));
    }
    let lattice = LatticeSpec::new(half_width, boundary)?;
    let history = match raw.get("history") {
        None | Some("false") => false,
        Some("true") => true,
        Some(other) => return Err(config_err(format!("history: expected true or false, got '{other}'"))),
    };
    Ok(Task::Walk { walk, init, steps, lattice, history })
}

fn sweep_task(raw: &RawConfig) -> Result<Task, CliError> {
    let steps = raw.count("steps", 90)?;
    let grid_keys: &[&str] = &["axes", "grid", "range1", "range2", "steps"];
    let grid = match raw.get("axes").unwrap_or("omega") {
        "omega" => {
            raw.only("an omega sweep", &[WALK_KEYS, grid_keys, IO_KEYS])?;
            let (n1, n2) = grid(raw, 16)?;
            let (a1, b1) = raw.range("range1", (0.0, PI))?;
            let omega_a = match raw.get("range2") {
                None => periodic_grid(0.0, TAU, n2),
                Some(_) => {
                    let (a2, b2) = raw.range("range2", (0.0, TAU))?;
                    linspace(a2, b2, n2)
                }
            };
            let omega_p = linspace(a1, b1, n1);
            if omega_p.iter().any(|p| !(0.0..=PI).contains(p)) {
                return Err(config_err("range1: the polar angle must stay within [0, pi]"));
            }
            SweepGrid::InitialState { walk: walk_from(raw)?, omega_p, omega_a }
        }
        "coin" => {
            raw.only("a coin sweep", &[INIT_KEYS, grid_keys, IO_KEYS])?;
            let (n1, n2) = grid(raw, 16)?;
            let (a1, b1) = raw.range("range1", (0.0, PI))?;
            let (a2, b2) = raw.range("range2", (0.0, PI))?;
            SweepGrid::CoinAngles { init: init_from(raw)?, theta1: linspace(a1, b1, n1), theta2: linspace(a2, b2, n2) }
        }
        other => return Err(config_err(format!("axes: expected omega or coin, got '{other}'"))),
    };
    Ok(Task::Sweep { grid, steps })
}

fn init_from(raw: &RawConfig) -> Result<InitialCondition, CliError> {
    let x0 = match raw.get("x0") {
        None => 0,
        Some(v) => v.parse::<i64>().map_err(|_| config_err(format!("x0: expected an integer, got '{v}'")))?,
    };
    InitialCondition::new(raw.angle("omega_p", FRAC_PI_2)?, raw.angle("omega_a", FRAC_PI_2)?, x0)
        .map_err(|e| config_err(e.to_string()))
}

fn walk_from(raw: &RawConfig) -> Result<Walk, CliError> {
    let kind = raw.get("walk").unwrap_or("splitstep");
    let allowed: &[&str] = match kind {
        "conventional" => &["walk", "theta", "xi", "phi1", "delta1"],
        "splitstep" => &["walk", "theta1", "theta2", "xi", "phi1", "phi2", "delta1", "delta2"],
        "dca" => &["walk", "theta", "alpha", "beta"],
        other => return Err(config_err(format!("walk: expected conventional, splitstep or dca, got '{other}'"))),
    };
    if let Some(key) = WALK_KEYS.iter().find(|k| raw.has(k) && !allowed.contains(k)) {
        return Err(config_err(format!("'{}' does not apply to the {kind} walk", key.replace('_', "-"))));
    }
    let xi = raw.angle("xi", 0.0)?;
    Ok(match kind {
        "conventional" => Walk::Conventional(CoinParams::new(
            xi,
            raw.angle("theta", FRAC_PI_4)?,
            raw.angle("phi1", 0.0)?,
            raw.angle("delta1", 0.0)?,
        )),
        "splitstep" => Walk::SplitStep(SplitStepParams::new(
            CoinParams::new(xi, raw.angle("theta1", 0.0)?, raw.angle("phi1", 0.0)?, raw.angle("delta1", 0.0)?),
            CoinParams::new(xi, raw.angle("theta2", FRAC_PI_4)?, raw.angle("phi2", 0.0)?, raw.angle("delta2", 0.0)?),
        )),
        _ => match (raw.has("alpha"), raw.has("beta"), raw.has("theta")) {
            (false, false, _) => Walk::Dca(DcaParams::from_angle(raw.angle("theta", FRAC_PI_4)?)),
            (true, true, false) => Walk::Dca(
                DcaParams::new(raw.angle("alpha", 0.0)?, raw.angle("beta", 0.0)?)
                    .map_err(|e| config_err(e.to_string()))?,
            ),
            (true, true, true) => return Err(config_err("give either theta or alpha and beta for the dca walk")),
            _ => return Err(config_err("alpha and beta must be given together")),
        },
    })
}
