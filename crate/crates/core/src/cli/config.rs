//! Line-based `key = value` configuration with `--dotted.key value` overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::cavity::{CavityMode, CavityModeSet, PolarizedEnsemble};
use crate::kinetics::ReactionProfile;
use crate::molecule::{MoleculeSpectrum, Transition};
use crate::pasteur::PasteurMaterial;
use crate::quadrature::{OuterScheme, QuadratureConfig};
use crate::thermal::Thermal;

/// Every recognised key with its default, in echo order.
pub const DEFAULTS: &[(&str, &str)] = &[
    ("cavity.chirality", "-0.5"),
    ("cavity.modes", "0.1:0.1:1.0"),
    ("cavity.modes_detailed", ""),
    ("cavity.veff_nm3", "0.2"),
    ("ensemble.d00", "0.2,0,0"),
    ("ensemble.m00", "0,1,0"),
    ("ensemble.n_molecules", "1"),
    ("material.eps_r", "1"),
    ("material.kappa", "0"),
    ("material.mu_r", "1"),
    ("molecule.gap_ev", "2"),
    ("molecule.im_rot_strength", "0.1"),
    ("output.format", "csv"),
    ("output.path", "-"),
    ("quadrature.abs_tol", "1e-14"),
    ("quadrature.inner_cutoff_epsilon", "1e-16"),
    ("quadrature.max_subdivisions", "200"),
    ("quadrature.outer_scheme", "truncated"),
    ("quadrature.rel_tol", "1e-8"),
    ("reaction.barrier_ev", "1.0"),
    ("reaction.curvature_ev_per_a2", "0"),
    ("reaction.mass_amu", "12.0"),
    ("reaction.omega_nu_ev", "0.1"),
    ("sweep.delta_e_mev", "-100:5:100"),
    ("sweep.n_molecules", "1,10,100"),
    ("sweep.z_max", "2.0"),
    ("sweep.z_min", "0.1"),
    ("sweep.z_points", "50"),
    ("sweep.z_spacing", "log"),
    ("thermal.temperature", "300"),
    ("thermal.temperatures", "200,300,400"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Pasteur,
    Cavity,
    Debye,
    Selectivity,
    Tst,
    Verify,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Pasteur,
        Command::Cavity,
        Command::Debye,
        Command::Selectivity,
        Command::Tst,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Pasteur => "pasteur",
            Command::Cavity => "cavity",
            Command::Debye => "debye",
            Command::Selectivity => "selectivity",
            Command::Tst => "tst",
            Command::Verify => "verify",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Where a value came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Origin {
    Default,
    File { path: String, line: usize },
    Flag,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Default => write!(f, "default"),
            Origin::File { path, line } => write!(f, "{path}:{line}"),
            Origin::Flag => write!(f, "command line"),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{0}")]
    Usage(String),

    #[error("unknown key `{key}` ({origin})")]
    UnknownKey { key: String, origin: Origin },

    #[error("{origin}: expected `key = value`, got `{text}`")]
    Syntax { origin: Origin, text: String },

    #[error("invalid value `{value}` for `{key}` ({origin}): {reason}")]
    BadValue {
        key: String,
        value: String,
        origin: Origin,
        reason: String,
    },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Raw resolved key/value map plus provenance.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    values: BTreeMap<String, (String, Origin)>,
}

fn known(key: &str) -> bool {
    DEFAULTS.iter().any(|(k, _)| *k == key)
}

/// Parse `key = value` lines; `#` starts a comment.
pub fn parse_file_text(text: &str, path: &str) -> Result<Vec<(String, String, Origin)>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let origin = Origin::File {
            path: path.to_string(),
            line: i + 1,
        };
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(ConfigError::Syntax {
                origin,
                text: raw.trim().to_string(),
            });
        };
        let key = k.trim();
        if !known(key) {
            return Err(ConfigError::UnknownKey {
                key: key.to_string(),
                origin,
            });
        }
        out.push((key.to_string(), v.trim().to_string(), origin));
    }
    Ok(out)
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let values = DEFAULTS
            .iter()
            .map(|(k, v)| (k.to_string(), (v.to_string(), Origin::Default)))
            .collect();
        Self { command, values }
    }

    /// Apply one setting; the last write wins.
    pub fn set(&mut self, key: &str, value: &str, origin: Origin) -> Result<(), ConfigError> {
        if !known(key) {
            return Err(ConfigError::UnknownKey {
                key: key.to_string(),
                origin,
            });
        }
        self.values.insert(key.to_string(), (value.to_string(), origin));
        Ok(())
    }

    /// `COMMAND [--config FILE] [--dotted.key VALUE | --dotted.key=VALUE]...`.
    /// File values are applied first, flags after, so flags win.
    pub fn from_args<S: AsRef<str>>(args: &[S]) -> Result<Self, ConfigError> {
        let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
        let Some((&first, rest)) = args.split_first() else {
            return Err(ConfigError::Usage("missing command".into()));
        };
        let command = Command::parse(first)
            .ok_or_else(|| ConfigError::Usage(format!("unknown command `{first}`")))?;
        let mut config_file: Option<PathBuf> = None;
        let mut flags = Vec::new();
        let mut it = rest.iter();
        while let Some(&arg) = it.next() {
            let Some(body) = arg.strip_prefix("--") else {
                return Err(ConfigError::Usage(format!("unexpected argument `{arg}`")));
            };
            let (key, value) = match body.split_once('=') {
                Some((k, v)) => (k, v.to_string()),
                None => {
                    let v = it
                        .next()
                        .ok_or_else(|| ConfigError::Usage(format!("missing value for `--{body}`")))?;
                    (body, v.to_string())
                }
            };
            if key == "config" {
                config_file = Some(PathBuf::from(value));
            } else {
                flags.push((key.to_string(), value));
            }
        }
        let mut cfg = Self::new(command);
        if let Some(path) = config_file {
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(&path).map_err(|source| ConfigError::Io {
                path: shown.clone(),
                source,
            })?;
            for (k, v, origin) in parse_file_text(&text, &shown)? {
                cfg.set(&k, &v, origin)?;
            }
        }
        for (k, v) in flags {
            cfg.set(&k, &v, Origin::Flag)?;
        }
        Ok(cfg)
    }

    pub fn raw(&self, key: &str) -> &str {
        &self.values[key].0
    }

    pub fn origin(&self, key: &str) -> &Origin {
        &self.values[key].1
    }

    /// Sorted `(key, value)` pairs of the fully resolved configuration.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, (v, _))| (k.as_str(), v.as_str()))
    }

    fn bad(&self, key: &str, reason: impl Into<String>) -> ConfigError {
        ConfigError::BadValue {
            key: key.to_string(),
            value: self.raw(key).to_string(),
            origin: self.origin(key).clone(),
            reason: reason.into(),
        }
    }

    pub fn f64(&self, key: &str) -> Result<f64, ConfigError> {
        parse_f64(self.raw(key)).map_err(|r| self.bad(key, r))
    }

    pub fn usize(&self, key: &str) -> Result<usize, ConfigError> {
        self.raw(key)
            .parse::<usize>()
            .map_err(|e| self.bad(key, e.to_string()))
    }

    /// A comma list or an inclusive `start:step:stop` grid.
    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, ConfigError> {
        parse_list(self.raw(key)).map_err(|r| self.bad(key, r))
    }

    pub fn vec3(&self, key: &str) -> Result<[f64; 3], ConfigError> {
        let v = self.f64_list(key)?;
        <[f64; 3]>::try_from(v.as_slice()).map_err(|_| self.bad(key, format!("expected 3 components, got {}", v.len())))
    }

    /// Build every physics object, reporting the responsible key on failure.
    pub fn resolve(&self) -> Result<Resolved, ConfigError> {
        let material = PasteurMaterial::new(
            self.f64("material.eps_r")?,
            self.f64("material.mu_r")?,
            self.f64("material.kappa")?,
        )
        .map_err(|e| self.bad("material.kappa", e.to_string()))?;

        let gaps = self.f64_list("molecule.gap_ev")?;
        let strengths = self.f64_list("molecule.im_rot_strength")?;
        if gaps.len() != strengths.len() {
            return Err(self.bad(
                "molecule.im_rot_strength",
                format!("{} strengths for {} gaps", strengths.len(), gaps.len()),
            ));
        }
        let molecule = MoleculeSpectrum::new(
            gaps.iter()
                .zip(&strengths)
                .map(|(&gap_ev, &im_rot_strength)| Transition {
                    gap_ev,
                    im_rot_strength,
                })
                .collect(),
        )
        .map_err(|e| self.bad("molecule.gap_ev", e.to_string()))?;

        let detailed = self.raw("cavity.modes_detailed");
        let modes = if detailed.is_empty() {
            let veff = self.f64("cavity.veff_nm3")?;
            let chirality = self.f64("cavity.chirality")?;
            let list = self
                .f64_list("cavity.modes")?
                .into_iter()
                .map(|omega_ev| CavityMode::new(omega_ev, veff, chirality))
                .collect::<crate::Result<Vec<_>>>()
                .map_err(|e| self.bad("cavity.modes", e.to_string()))?;
            CavityModeSet::new(list).map_err(|e| self.bad("cavity.modes", e.to_string()))?
        } else {
            let list: Vec<CavityMode> =
                serde_json::from_str(detailed).map_err(|e| self.bad("cavity.modes_detailed", e.to_string()))?;
            CavityModeSet::new(list).map_err(|e| self.bad("cavity.modes_detailed", e.to_string()))?
        };

        let n_molecules = self.usize("ensemble.n_molecules")? as u64;
        let ensemble = PolarizedEnsemble::new(self.vec3("ensemble.d00")?, self.vec3("ensemble.m00")?, n_molecules)
            .map_err(|e| self.bad("ensemble.n_molecules", e.to_string()))?;
        let n_sweep = self
            .f64_list("sweep.n_molecules")?
            .into_iter()
            .map(|n| {
                if n >= 1.0 && n.fract() == 0.0 && n < 9.0e15 {
                    Ok(n as u64)
                } else {
                    Err(self.bad("sweep.n_molecules", format!("{n} is not a positive integer")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;

        let thermal = Thermal::from_kelvin(self.f64("thermal.temperature")?)
            .map_err(|e| self.bad("thermal.temperature", e.to_string()))?;
        let temperatures = self.f64_list("thermal.temperatures")?;
        if temperatures.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(self.bad("thermal.temperatures", "temperatures must be finite and > 0 K"));
        }

        let z_min = self.f64("sweep.z_min")?;
        let z_max = self.f64("sweep.z_max")?;
        let z_points = self.usize("sweep.z_points")?;
        if !(z_min > 0.0 && z_max.is_finite() && z_max >= z_min) {
            return Err(self.bad("sweep.z_max", format!("need 0 < z_min <= z_max, got {z_min}, {z_max}")));
        }
        if z_points == 0 {
            return Err(self.bad("sweep.z_points", "at least one point required"));
        }
        let z_grid = match self.raw("sweep.z_spacing") {
            "log" => spaced(z_min.ln(), z_max.ln(), z_points).into_iter().map(f64::exp).collect(),
            "linear" => spaced(z_min, z_max, z_points),
            _ => return Err(self.bad("sweep.z_spacing", "expected `log` or `linear`")),
        };
        let mut z_grid: Vec<f64> = z_grid;
        z_grid[0] = z_min;
        if z_points > 1 {
            z_grid[z_points - 1] = z_max;
        }
        let delta_e_mev = self.f64_list("sweep.delta_e_mev")?;

        let profile = ReactionProfile::new(
            self.f64("reaction.barrier_ev")?,
            self.f64("reaction.omega_nu_ev")?,
            self.f64("reaction.curvature_ev_per_a2")?,
            self.f64("reaction.mass_amu")?,
        )
        .map_err(|e| self.bad("reaction.curvature_ev_per_a2", e.to_string()))?;

        let outer_scheme = match self.raw("quadrature.outer_scheme") {
            "truncated" => OuterScheme::Truncated,
            "mapped" => OuterScheme::Mapped,
            _ => return Err(self.bad("quadrature.outer_scheme", "expected `truncated` or `mapped`")),
        };
        let quadrature = QuadratureConfig {
            rel_tol: self.f64("quadrature.rel_tol")?,
            abs_tol: self.f64("quadrature.abs_tol")?,
            max_subdivisions: self.usize("quadrature.max_subdivisions")?,
            inner_cutoff_epsilon: self.f64("quadrature.inner_cutoff_epsilon")?,
            outer_scheme,
        };
        quadrature
            .validate()
            .map_err(|e| self.bad("quadrature.rel_tol", e.to_string()))?;

        let format = match self.raw("output.format") {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            _ => return Err(self.bad("output.format", "expected `csv` or `json`")),
        };

        Ok(Resolved {
            material,
            molecule,
            modes,
            ensemble,
            n_sweep,
            thermal,
            temperatures,
            z_grid,
            delta_e_mev,
            profile,
            quadrature,
            format,
            output_path: self.raw("output.path").to_string(),
        })
    }
}

/// Validated inputs for every command.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub material: PasteurMaterial,
    pub molecule: MoleculeSpectrum,
    pub modes: CavityModeSet,
    pub ensemble: PolarizedEnsemble,
    pub n_sweep: Vec<u64>,
    pub thermal: Thermal,
    pub temperatures: Vec<f64>,
    /// Heights in units of `z_unit`.
    pub z_grid: Vec<f64>,
    pub delta_e_mev: Vec<f64>,
    pub profile: ReactionProfile,
    pub quadrature: QuadratureConfig,
    pub format: OutputFormat,
    pub output_path: String,
}

fn spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{}` is not a number", s.trim()))?;
    if !v.is_finite() {
        return Err("value must be finite".into());
    }
    Ok(v)
}

/// `a,b,c` or inclusive `start:step:stop`; grid points are `start + i·step`.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty list".into());
    }
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, step, b] = parts.as_slice() else {
            return Err("grid must be start:step:stop".into());
        };
        let (a, step, b) = (parse_f64(a)?, parse_f64(step)?, parse_f64(b)?);
        if step == 0.0 || (b - a) * step < 0.0 {
            return Err("step must be nonzero and point from start to stop".into());
        }
        let count = ((b - a) / step + 1e-9).floor();
        if count > 1e7 {
            return Err("grid has too many points".into());
        }
        return Ok((0..=count as usize).map(|i| a + step * i as f64).collect());
    }
    s.split(',').map(parse_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_sorted_and_resolve() {
        let keys: Vec<&str> = DEFAULTS.iter().map(|(k, _)| *k).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        let r = RunConfig::new(Command::Cavity).resolve().unwrap();
        assert_eq!(r.modes.modes().len(), 10);
        assert_eq!(r.z_grid.len(), 50);
        assert_eq!(r.delta_e_mev.len(), 41);
    }

    #[test]
    fn grids() {
        let g = parse_list("0.1:0.1:1.0").unwrap();
        assert_eq!(g.len(), 10);
        assert!((g[9] - 1.0).abs() < 1e-15);
        assert_eq!(parse_list("-100:5:100").unwrap().len(), 41);
        assert_eq!(parse_list("3:-1:1").unwrap(), vec![3.0, 2.0, 1.0]);
        assert_eq!(parse_list("1, 2,3").unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(parse_list("1:0:2").is_err());
        assert!(parse_list("1:1").is_err());
        assert!(parse_list("a,b").is_err());
        assert!(parse_list("").is_err());
    }

    #[test]
    fn file_parsing() {
        let text = "# comment\nmaterial.kappa = 0.4  # trailing\n\nsweep.z_points=10\n";
        let v = parse_file_text(text, "f").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].1, "0.4");
        let err = parse_file_text("material.kappa = 1\nmaterial.kapa = 2\n", "f").unwrap_err();
        match err {
            ConfigError::UnknownKey { key, origin } => {
                assert_eq!(key, "material.kapa");
                assert_eq!(origin, Origin::File { path: "f".into(), line: 2 });
            }
            other => panic!("{other}"),
        }
        assert!(matches!(parse_file_text("novalue\n", "f"), Err(ConfigError::Syntax { .. })));
    }

    #[test]
    fn flags_and_errors() {
        let c = RunConfig::from_args(&["pasteur", "--material.kappa", "0.2", "--sweep.z_points=5"]).unwrap();
        assert_eq!(c.f64("material.kappa").unwrap(), 0.2);
        assert_eq!(c.usize("sweep.z_points").unwrap(), 5);
        assert!(matches!(RunConfig::from_args(&["bogus"]), Err(ConfigError::Usage(_))));
        assert!(matches!(
            RunConfig::from_args(&["cavity", "--nope", "1"]),
            Err(ConfigError::UnknownKey { .. })
        ));
        assert!(matches!(RunConfig::from_args(&["cavity", "--material.kappa"]), Err(ConfigError::Usage(_))));
        let bad = RunConfig::from_args(&["pasteur", "--material.kappa", "2"]).unwrap();
        let msg = bad.resolve().unwrap_err().to_string();
        assert!(msg.contains("material.kappa"), "{msg}");
    }

    #[test]
    fn detailed_modes() {
        let mut c = RunConfig::new(Command::Cavity);
        c.set(
            "cavity.modes_detailed",
            r#"[{"omega_ev":0.1,"veff_nm3":0.2,"chirality":-0.5},{"omega_ev":0.3,"veff_nm3":0.5,"chirality":0.5}]"#,
            Origin::Flag,
        )
        .unwrap();
        let r = c.resolve().unwrap();
        assert_eq!(r.modes.modes().len(), 2);
        assert_eq!(r.modes.modes()[1].veff_nm3, 0.5);
        c.set("cavity.modes_detailed", r#"[{"omega_ev":0.1}]"#, Origin::Flag).unwrap();
        assert!(c.resolve().is_err());
    }
}
