//! Run configuration: a TOML document with `[media]`, `[geometry]`,
//! `[numerics]`, `[inverse]` and `[output]` tables.

use std::path::{Path, PathBuf};

use elastoscat_core::forward::Representation;
use elastoscat_core::geometry::{apple, circle, kite, peanut, BoundaryCurve, RadialTrigCurve};
use elastoscat_core::inverse::ReconstructionConfig;
use elastoscat_core::media::{ElasticMedium, IncidentWave, WaveKind};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    VerifyForward,
    Reconstruct,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    pub media: MediaConfig,
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub numerics: NumericsConfig,
    pub inverse: Option<InverseConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumConfig {
    pub lambda: f64,
    pub mu: f64,
    pub rho: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediaConfig {
    pub omega: f64,
    pub interior: MediumConfig,
    pub exterior: MediumConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Peanut,
    Apple,
    Kite,
    Circle,
    Radial,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Peanut => "peanut",
            Shape::Apple => "apple",
            Shape::Kite => "kite",
            Shape::Circle => "circle",
            Shape::Radial => "radial",
        }
    }
}

/// The boundary. `radius` is used by `circle`; `cos` and `sin` hold the
/// coefficients `a_0..a_m` and `b_1..b_m` of a `radial` curve.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub shape: Shape,
    pub radius: Option<f64>,
    pub cos: Option<Vec<f64>>,
    pub sin: Option<Vec<f64>>,
    /// Point source inside the boundary (forward verification).
    pub z_i: Option<[f64; 2]>,
    /// Point source outside the boundary.
    pub z_e: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepName {
    Combined,
    Single,
    Double,
    Direct,
}

impl RepName {
    pub fn name(self) -> &'static str {
        match self {
            RepName::Combined => "combined",
            RepName::Single => "single",
            RepName::Double => "double",
            RepName::Direct => "direct",
        }
    }

    pub fn representation(self) -> Representation {
        match self {
            RepName::Combined => Representation::Combined,
            RepName::Single => Representation::SingleLayer,
            RepName::Double => Representation::DoubleLayer,
            RepName::Direct => Representation::DirectMethod,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NumericsConfig {
    /// Collocation half-counts of the convergence table, strictly ascending.
    pub n_list: Vec<usize>,
    pub representations: Vec<RepName>,
    /// Observation angles (radians) of the far-field table. Empty means
    /// the `2n` grid angles of each run.
    pub directions: Vec<f64>,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig { n_list: vec![8, 16, 32, 64], representations: vec![RepName::Combined], directions: Vec::new() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Wave {
    P,
    S,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InverseConfig {
    pub n: usize,
    pub m: usize,
    pub lambda0: f64,
    pub decay: f64,
    pub p: f64,
    pub max_iter: usize,
    pub r0: f64,
    /// Number of plane waves, directions `2πl/L`.
    pub illuminations: usize,
    pub wave: Wave,
    pub noise_delta: f64,
    pub seed: u64,
    pub early_stop: bool,
}

impl Default for InverseConfig {
    fn default() -> Self {
        let d = ReconstructionConfig::default();
        InverseConfig {
            n: d.n,
            m: d.m,
            lambda0: d.lambda0,
            decay: d.decay,
            p: d.p,
            max_iter: d.max_iter,
            r0: d.r0,
            illuminations: d.illuminations.len(),
            wave: Wave::P,
            noise_delta: d.noise_delta,
            seed: d.rng_seed,
            early_stop: d.early_stop,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: PathBuf::from("out"), formats: vec![Format::Csv, Format::Json] }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl Overrides {
    /// Canonical text folded into the config hash. The output directory
    /// does not change results and is left out.
    fn canonical(&self) -> String {
        match self.seed {
            Some(s) => format!("seed={s}\n"),
            None => String::new(),
        }
    }
}

/// A parsed and validated configuration together with its SHA-256 hash.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: RunConfig,
    pub hash: String,
    raw: String,
}

impl LoadedConfig {
    pub fn from_path(path: &Path, overrides: &Overrides) -> Result<Self, CliError> {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&raw, overrides)
    }

    pub fn parse(raw: &str, overrides: &Overrides) -> Result<Self, CliError> {
        let mut config: RunConfig =
            toml::from_str(raw).map_err(|e| CliError::Config(e.to_string().trim_end().to_owned()))?;
        if let Some(dir) = &overrides.out {
            config.output.dir = dir.clone();
        }
        if let (Some(seed), Some(inv)) = (overrides.seed, config.inverse.as_mut()) {
            inv.seed = seed;
        }
        let mut h = Sha256::new();
        h.update(raw.as_bytes());
        h.update(overrides.canonical().as_bytes());
        let hash = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        let loaded = LoadedConfig { config, hash, raw: raw.to_owned() };
        loaded.validate()?;
        Ok(loaded)
    }

    /// Error for `field` (a dotted path), with its line when it is
    /// written in the file.
    pub fn field_error(&self, field: &str, reason: impl std::fmt::Display) -> CliError {
        match locate(&self.raw, field) {
            Some(line) => CliError::Config(format!("{field} (line {line}): {reason}")),
            None => CliError::Config(format!("{field}: {reason}")),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let c = &self.config;
        self.media()?;
        self.curve()?;
        if c.output.formats.is_empty() {
            return Err(self.field_error("output.formats", "at least one format is required"));
        }
        match c.mode {
            Mode::VerifyForward => {
                let n = &c.numerics;
                if n.n_list.is_empty() || n.n_list.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(self.field_error("numerics.n_list", "must be non-empty and strictly ascending"));
                }
                if n.n_list[0] < 2 {
                    return Err(self.field_error("numerics.n_list", "every n must be at least 2"));
                }
                if n.representations.is_empty() {
                    return Err(self.field_error("numerics.representations", "at least one representation is required"));
                }
                if n.directions.iter().any(|d| !d.is_finite()) {
                    return Err(self.field_error("numerics.directions", "angles must be finite"));
                }
                let curve = self.curve()?;
                let zi =
                    c.geometry.z_i.ok_or_else(|| self.field_error("geometry.z_i", "required by verify-forward"))?;
                let ze =
                    c.geometry.z_e.ok_or_else(|| self.field_error("geometry.z_e", "required by verify-forward"))?;
                if curve.winding_number(zi).unwrap_or(0) == 0 {
                    return Err(self.field_error("geometry.z_i", "must lie strictly inside the boundary"));
                }
                if curve.winding_number(ze) != Some(0) {
                    return Err(self.field_error("geometry.z_e", "must lie strictly outside the boundary"));
                }
            }
            Mode::Reconstruct => {
                if c.inverse.is_none() {
                    return Err(self.field_error("inverse", "the [inverse] table is required by reconstruct"));
                }
                self.reconstruction()?;
            }
        }
        Ok(())
    }

    pub fn media(&self) -> Result<(ElasticMedium, ElasticMedium), CliError> {
        let m = &self.config.media;
        let make = |name: &str, c: &MediumConfig| {
            ElasticMedium::new(c.lambda, c.mu, c.rho, m.omega)
                .map_err(|e| self.field_error(&format!("media.{name}"), e))
        };
        if m.omega.is_nan() || m.omega <= 0.0 {
            return Err(self.field_error("media.omega", "must be positive"));
        }
        Ok((make("interior", &m.interior)?, make("exterior", &m.exterior)?))
    }

    pub fn curve(&self) -> Result<BoundaryCurve, CliError> {
        let g = &self.config.geometry;
        Ok(match g.shape {
            Shape::Peanut => peanut(),
            Shape::Apple => apple(),
            Shape::Kite => kite(),
            Shape::Circle => {
                let r = g.radius.ok_or_else(|| self.field_error("geometry.radius", "required for a circle"))?;
                if r.is_nan() || r <= 0.0 {
                    return Err(self.field_error("geometry.radius", "must be positive"));
                }
                circle(r)
            }
            Shape::Radial => {
                let a = g.cos.clone().ok_or_else(|| self.field_error("geometry.cos", "required for a radial curve"))?;
                let b = g.sin.clone().unwrap_or_default();
                let r = RadialTrigCurve::new(a, b).map_err(|e| self.field_error("geometry.sin", e))?;
                r.check_positive(1024).map_err(|_| self.field_error("geometry.cos", "radius must stay positive"))?;
                BoundaryCurve::Radial(r)
            }
        })
    }

    pub fn reconstruction(&self) -> Result<ReconstructionConfig, CliError> {
        let inv = self.config.inverse.as_ref().ok_or_else(|| self.field_error("inverse", "missing"))?;
        let kind = match inv.wave {
            Wave::P => WaveKind::P,
            Wave::S => WaveKind::S,
        };
        let count = inv.illuminations;
        let rc = ReconstructionConfig {
            m: inv.m,
            n: inv.n,
            lambda0: inv.lambda0,
            decay: inv.decay,
            p: inv.p,
            max_iter: inv.max_iter,
            r0: inv.r0,
            illuminations: (1..=count)
                .map(|l| IncidentWave::from_angle(kind, 2.0 * std::f64::consts::PI * l as f64 / count as f64))
                .collect(),
            noise_delta: inv.noise_delta,
            rng_seed: inv.seed,
            early_stop: inv.early_stop,
        };
        if inv.max_iter == 0 {
            return Err(self.field_error("inverse.max_iter", "must be at least 1"));
        }
        if let Err(elastoscat_core::Error::InvalidParameter { name, reason }) = rc.validate() {
            return Err(self.field_error(&format!("inverse.{name}"), reason));
        }
        Ok(rc)
    }
}

/// 1-based line of `field` (`key`, `table.key` or a table name) in `raw`.
fn locate(raw: &str, field: &str) -> Option<usize> {
    let (table, key) = match field.rsplit_once('.') {
        Some((t, k)) => (t, k),
        None => ("", field),
    };
    let mut current = String::new();
    for (i, line) in raw.lines().enumerate() {
        let l = line.trim();
        if let Some(h) = l.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
            current = h.trim().to_owned();
            continue;
        }
        if let Some((lhs, _)) = l.split_once('=') {
            if lhs.trim() == key && current == table {
                return Some(i + 1);
            }
        }
    }
    // a table, or a sub-table such as media.interior, under its own header
    let header = format!("[{field}]");
    raw.lines().position(|l| l.trim() == header).map(|i| i + 1)
}
