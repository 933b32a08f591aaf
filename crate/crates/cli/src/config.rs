//! Run configuration: a TOML file with the flat sections `geometry`,
//! `tolerances`, `sampling` and `flags`. Missing keys take defaults; unknown
//! keys are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use gaugeflow_core::{CheckConfig, CycleSpec, Point2, Space, SpecError, StableNodeField};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use toml::Spanned;

/// Optional 1-based source line attached to config errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Line(pub Option<usize>);

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(n) => write!(f, " (line {n})"),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("ConfigParse{line}: {message}")]
    Parse { line: Line, message: String },
    #[error("ConfigValue `{key}`{line}: {message}")]
    Value {
        key: String,
        line: Line,
        message: String,
    },
    #[error("GeometryInvalid `{key}`{line}: {source}")]
    Geometry {
        key: String,
        line: Line,
        #[source]
        source: SpecError,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Geometry {
    pub node1: [f64; 2],
    pub node2: [f64; 2],
    pub rate: f64,
    pub b0: [f64; 2],
    pub b1: [f64; 2],
    pub b2: [f64; 2],
}

impl Default for Geometry {
    fn default() -> Self {
        Geometry {
            node1: [0.0, 0.0],
            node2: [1.0, 0.0],
            rate: 1.0,
            b0: [0.3, 0.0],
            b1: [0.5, 0.0],
            b2: [0.7, 0.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub eq_tol: f64,
    pub witness_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eq_tol: 1e-12,
            witness_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sampling {
    pub t_step: f64,
    pub horizon_periods: u32,
    pub phase_grid: usize,
    pub s_grid: usize,
    pub n_neighbors: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            t_step: 1e-3,
            horizon_periods: 10,
            phase_grid: 10_000,
            s_grid: 100,
            n_neighbors: 50,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Flags {
    pub allow_asymmetric: bool,
    pub single_cycle_contrast: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunConfig {
    pub geometry: Geometry,
    pub tolerances: Tolerances,
    pub sampling: Sampling,
    pub flags: Flags,
    /// Source line of each key that was set explicitly, as `section.key`.
    #[serde(skip)]
    pub lines: BTreeMap<String, usize>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawFile {
    geometry: Option<RawGeometry>,
    tolerances: Option<RawTolerances>,
    sampling: Option<RawSampling>,
    flags: Option<RawFlags>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    node1: Option<Spanned<[f64; 2]>>,
    node2: Option<Spanned<[f64; 2]>>,
    rate: Option<Spanned<f64>>,
    b0: Option<Spanned<[f64; 2]>>,
    b1: Option<Spanned<[f64; 2]>>,
    b2: Option<Spanned<[f64; 2]>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    eq_tol: Option<Spanned<f64>>,
    witness_tol: Option<Spanned<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSampling {
    t_step: Option<Spanned<f64>>,
    horizon_periods: Option<Spanned<i64>>,
    phase_grid: Option<Spanned<i64>>,
    s_grid: Option<Spanned<i64>>,
    n_neighbors: Option<Spanned<i64>>,
    seed: Option<Spanned<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFlags {
    allow_asymmetric: Option<Spanned<bool>>,
    single_cycle_contrast: Option<Spanned<bool>>,
}

struct Filler<'a> {
    text: &'a str,
    lines: BTreeMap<String, usize>,
}

impl Filler<'_> {
    fn line_of(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())]
            .matches('\n')
            .count()
            + 1
    }

    fn take<T: Clone>(&mut self, key: &str, raw: Option<Spanned<T>>, slot: &mut T) {
        if let Some(v) = raw {
            self.lines
                .insert(key.to_string(), self.line_of(v.span().start));
            *slot = v.into_inner();
        }
    }

    fn take_count<T: TryFrom<i64>>(
        &mut self,
        key: &str,
        raw: Option<Spanned<i64>>,
        min: i64,
        slot: &mut T,
    ) -> Result<(), ConfigError> {
        let Some(v) = raw else { return Ok(()) };
        let line = self.line_of(v.span().start);
        self.lines.insert(key.to_string(), line);
        let n = *v.get_ref();
        let out_of_range = || ConfigError::Value {
            key: key.to_string(),
            line: Line(Some(line)),
            message: format!("must be an integer >= {min}, got {n}"),
        };
        if n < min {
            return Err(out_of_range());
        }
        *slot = T::try_from(n).map_err(|_| out_of_range())?;
        Ok(())
    }
}

impl RunConfig {
    /// Parses config text. Defaults fill missing keys; invariants are checked.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let raw: RawFile = toml::from_str(text).map_err(|e| ConfigError::Parse {
            line: Line(
                e.span()
                    .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1),
            ),
            message: e.message().to_string(),
        })?;
        let mut cfg = RunConfig::default();
        let mut f = Filler {
            text,
            lines: BTreeMap::new(),
        };
        if let Some(g) = raw.geometry {
            let d = &mut cfg.geometry;
            f.take("geometry.node1", g.node1, &mut d.node1);
            f.take("geometry.node2", g.node2, &mut d.node2);
            f.take("geometry.rate", g.rate, &mut d.rate);
            f.take("geometry.b0", g.b0, &mut d.b0);
            f.take("geometry.b1", g.b1, &mut d.b1);
            f.take("geometry.b2", g.b2, &mut d.b2);
        }
        if let Some(t) = raw.tolerances {
            f.take("tolerances.eq_tol", t.eq_tol, &mut cfg.tolerances.eq_tol);
            f.take(
                "tolerances.witness_tol",
                t.witness_tol,
                &mut cfg.tolerances.witness_tol,
            );
        }
        if let Some(s) = raw.sampling {
            let d = &mut cfg.sampling;
            f.take("sampling.t_step", s.t_step, &mut d.t_step);
            f.take_count(
                "sampling.horizon_periods",
                s.horizon_periods,
                1,
                &mut d.horizon_periods,
            )?;
            f.take_count("sampling.phase_grid", s.phase_grid, 1, &mut d.phase_grid)?;
            f.take_count("sampling.s_grid", s.s_grid, 1, &mut d.s_grid)?;
            f.take_count("sampling.n_neighbors", s.n_neighbors, 1, &mut d.n_neighbors)?;
            f.take_count("sampling.seed", s.seed, 0, &mut d.seed)?;
        }
        if let Some(fl) = raw.flags {
            f.take(
                "flags.allow_asymmetric",
                fl.allow_asymmetric,
                &mut cfg.flags.allow_asymmetric,
            );
            f.take(
                "flags.single_cycle_contrast",
                fl.single_cycle_contrast,
                &mut cfg.flags.single_cycle_contrast,
            );
        }
        cfg.lines = f.lines;
        cfg.validate()?;
        Ok(cfg)
    }

    fn value_error(&self, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError::Value {
            key: key.to_string(),
            line: Line(self.lines.get(key).copied()),
            message: message.into(),
        }
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let g = &self.geometry;
        for (key, p) in [
            ("geometry.node1", g.node1),
            ("geometry.node2", g.node2),
            ("geometry.b0", g.b0),
            ("geometry.b1", g.b1),
            ("geometry.b2", g.b2),
        ] {
            if !p.iter().all(|c| c.is_finite()) {
                return Err(self.value_error(key, "coordinates must be finite"));
            }
        }
        let positive = [
            ("geometry.rate", g.rate),
            ("tolerances.eq_tol", self.tolerances.eq_tol),
            ("tolerances.witness_tol", self.tolerances.witness_tol),
            ("sampling.t_step", self.sampling.t_step),
        ];
        for (key, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(self.value_error(key, format!("must be finite and > 0, got {v}")));
            }
        }
        Ok(())
    }

    /// Builds the validated cycle configuration.
    pub fn spec(&self) -> Result<CycleSpec, ConfigError> {
        let g = &self.geometry;
        let point = |p: [f64; 2]| Point2::new(p[0], p[1]);
        let geometry_error = |key: String, source: SpecError| ConfigError::Geometry {
            line: Line(self.lines.get(&key).copied()),
            key,
            source,
        };
        let build = || -> Result<CycleSpec, SpecError> {
            let f1 = StableNodeField::new(point(g.node1)?, g.rate)?;
            let f2 = StableNodeField::new(point(g.node2)?, g.rate)?;
            let (b0, b1, b2) = (point(g.b0)?, point(g.b1)?, point(g.b2)?);
            if self.flags.allow_asymmetric {
                CycleSpec::new_allow_asymmetric(f1, f2, b0, b1, b2)
            } else {
                CycleSpec::new(f1, f2, b0, b1, b2)
            }
        };
        build().map_err(|e| match e {
            SpecError::GeometryInvalid(v) => geometry_error(format!("geometry.{}", v.key()), e),
            SpecError::PeriodMismatch { .. } => geometry_error("flags.allow_asymmetric".into(), e),
            SpecError::Flow(_) => geometry_error("geometry".into(), e),
        })
    }

    pub fn space(&self) -> Space {
        if self.flags.single_cycle_contrast {
            Space::SingleCycle
        } else {
            Space::Full
        }
    }

    /// Checker settings derived from this configuration.
    pub fn check_config(&self) -> CheckConfig {
        let s = &self.sampling;
        CheckConfig {
            space: self.space(),
            eq_tol: self.tolerances.eq_tol,
            witness_tol: self.tolerances.witness_tol,
            t_step: s.t_step,
            horizon_periods: s.horizon_periods,
            phase_grid: s.phase_grid,
            s_grid: s.s_grid,
            n_neighbors: s.n_neighbors,
            seed: s.seed,
            ..CheckConfig::default()
        }
    }
}

/// Reads and parses the config file at `path`.
pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    RunConfig::parse(&text)
}
