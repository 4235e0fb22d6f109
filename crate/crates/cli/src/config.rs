//! Scenario configuration: a documented key–value text format.
//!
//! Lines are `key = value`; `#` starts a comment. Unknown keys, type
//! mismatches, and missing required keys are reported with the line or key
//! name. `serialize` emits a canonical form that reparses to an equal
//! config (and feeds the config hash).

use std::collections::BTreeMap;
use std::fmt;

use afield_core::vec3::Vec3;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.line, &self.key) {
            (Some(l), Some(k)) => write!(f, "config line {l}, key `{k}`: {}", self.message),
            (Some(l), None) => write!(f, "config line {l}: {}", self.message),
            (None, Some(k)) => write!(f, "config key `{k}`: {}", self.message),
            (None, None) => write!(f, "config: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn err_key(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { line: None, key: Some(key.to_string()), message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Cauchy,
    Mono,
    Stationary,
    ShockCheck,
    Oracle,
    Compare,
    Examples,
}

impl ScenarioKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioKind::Cauchy => "cauchy",
            ScenarioKind::Mono => "mono",
            ScenarioKind::Stationary => "stationary",
            ScenarioKind::ShockCheck => "shock-check",
            ScenarioKind::Oracle => "oracle",
            ScenarioKind::Compare => "compare",
            ScenarioKind::Examples => "examples",
        }
    }

    fn parse(s: &str) -> Option<ScenarioKind> {
        Some(match s {
            "cauchy" => ScenarioKind::Cauchy,
            "mono" => ScenarioKind::Mono,
            "stationary" => ScenarioKind::Stationary,
            "shock-check" => ScenarioKind::ShockCheck,
            "oracle" => ScenarioKind::Oracle,
            "compare" => ScenarioKind::Compare,
            "examples" => ScenarioKind::Examples,
            _ => return None,
        })
    }
}

/// Built-in source / initial-data menu.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    None,
    GaussianBall,
    UniformBall,
    RotatingBall,
    PointChargeBirth,
    PlaneShock,
    ToroidalBump,
    ToroidalShock,
    CustomGridFile,
}

impl SourceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SourceKind::None => "none",
            SourceKind::GaussianBall => "gaussian-ball",
            SourceKind::UniformBall => "uniform-ball",
            SourceKind::RotatingBall => "rotating-ball",
            SourceKind::PointChargeBirth => "point-charge-birth",
            SourceKind::PlaneShock => "plane-shock",
            SourceKind::ToroidalBump => "toroidal-bump",
            SourceKind::ToroidalShock => "toroidal-shock",
            SourceKind::CustomGridFile => "custom-grid-file",
        }
    }

    fn parse(s: &str) -> Option<SourceKind> {
        Some(match s {
            "none" => SourceKind::None,
            "gaussian-ball" => SourceKind::GaussianBall,
            "uniform-ball" => SourceKind::UniformBall,
            "rotating-ball" => SourceKind::RotatingBall,
            "point-charge-birth" => SourceKind::PointChargeBirth,
            "plane-shock" => SourceKind::PlaneShock,
            "toroidal-bump" => SourceKind::ToroidalBump,
            "toroidal-shock" => SourceKind::ToroidalShock,
            "custom-grid-file" => SourceKind::CustomGridFile,
            _ => return None,
        })
    }
}

/// Evaluation set: a rectilinear grid or an explicit point list.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalSpec {
    Grid { min: Vec3, max: Vec3, dims: [usize; 3] },
    Points(Vec<Vec3>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    pub epsilon: f64,
    pub mu: f64,
    /// Built-in source / initial-data selection with its parameters.
    pub source_kind: SourceKind,
    pub amplitude: f64,
    pub sigma: f64,
    pub radius: f64,
    pub spin: f64,
    pub omega: f64,
    pub source_file: Option<String>,
    /// Front data for shock-check.
    pub front_normal: Vec3,
    pub a_plus_re: Vec3,
    pub a_plus_im: Vec3,
    pub a_minus_re: Vec3,
    pub a_minus_im: Vec3,
    /// Evaluation set and time.
    pub eval: EvalSpec,
    pub time: f64,
    /// Quadrature budget.
    pub sphere_degree: usize,
    pub radial_points: usize,
    /// Oracle grid parameters.
    pub oracle_n: usize,
    pub oracle_box: f64,
    pub oracle_dt: f64,
    /// Previously written table to compare against (optional).
    pub against: Option<String>,
    /// Which paper example to replicate (examples scenario).
    pub example: u32,
    /// Output file names (relative to the output directory).
    pub out_table: String,
    pub out_report: String,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            scenario: ScenarioKind::Examples,
            epsilon: 1.0,
            mu: 1.0,
            source_kind: SourceKind::None,
            amplitude: 1.0,
            sigma: 0.2,
            radius: 1.0,
            spin: 1.0,
            omega: 2.0,
            source_file: None,
            front_normal: Vec3::EZ,
            a_plus_re: Vec3::ZERO,
            a_plus_im: Vec3::ZERO,
            a_minus_re: Vec3::ZERO,
            a_minus_im: Vec3::ZERO,
            eval: EvalSpec::Points(vec![Vec3::new(2.0, 0.0, 0.0)]),
            time: 1.0,
            sphere_degree: 17,
            radial_points: 8,
            oracle_n: 64,
            oracle_box: 8.0,
            oracle_dt: 0.01,
            against: None,
            example: 3,
            out_table: "field.csv".to_string(),
            out_report: "report.json".to_string(),
        }
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    value
        .parse::<f64>()
        .map_err(|_| err_key(key, format!("expected a real number, got `{value}`")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize, ConfigError> {
    value
        .parse::<usize>()
        .map_err(|_| err_key(key, format!("expected a non-negative integer, got `{value}`")))
}

fn parse_vec3(key: &str, value: &str) -> Result<Vec3, ConfigError> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(err_key(key, format!("expected `x,y,z`, got `{value}`")));
    }
    Ok(Vec3::new(
        parse_f64(key, parts[0])?,
        parse_f64(key, parts[1])?,
        parse_f64(key, parts[2])?,
    ))
}

fn parse_dims(key: &str, value: &str) -> Result<[usize; 3], ConfigError> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(err_key(key, format!("expected `nx,ny,nz`, got `{value}`")));
    }
    Ok([
        parse_usize(key, parts[0])?,
        parse_usize(key, parts[1])?,
        parse_usize(key, parts[2])?,
    ])
}

fn parse_points(key: &str, value: &str) -> Result<Vec<Vec3>, ConfigError> {
    let mut points = Vec::new();
    for part in value.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        points.push(parse_vec3(key, part)?);
    }
    if points.is_empty() {
        return Err(err_key(key, "expected at least one `x,y,z` point"));
    }
    Ok(points)
}

/// Parse the documented key–value format into a validated config.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut pairs: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError {
                line: Some(lineno + 1),
                key: None,
                message: format!("expected `key = value`, got `{line}`"),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if pairs.insert(key.clone(), (lineno + 1, value)).is_some() {
            return Err(ConfigError {
                line: Some(lineno + 1),
                key: Some(key),
                message: "duplicate key".into(),
            });
        }
    }

    let mut cfg = ScenarioConfig::default();
    let mut grid_min: Option<Vec3> = None;
    let mut grid_max: Option<Vec3> = None;
    let mut grid_dims: Option<[usize; 3]> = None;
    let mut points: Option<Vec<Vec3>> = None;
    let mut eval_kind: Option<String> = None;
    let mut scenario_seen = false;

    for (key, (lineno, value)) in &pairs {
        let k = key.as_str();
        let v = value.as_str();
        let result: Result<(), ConfigError> = (|| {
            match k {
                "scenario" => {
                    cfg.scenario = ScenarioKind::parse(v).ok_or_else(|| {
                        err_key(k, format!("unknown scenario `{v}` (expected cauchy, mono, stationary, shock-check, oracle, compare or examples)"))
                    })?;
                    scenario_seen = true;
                }
                "medium.epsilon" => cfg.epsilon = parse_f64(k, v)?,
                "medium.mu" => cfg.mu = parse_f64(k, v)?,
                "source.kind" => {
                    cfg.source_kind = SourceKind::parse(v).ok_or_else(|| {
                        err_key(k, format!("unknown source kind `{v}`"))
                    })?;
                }
                "source.amplitude" => cfg.amplitude = parse_f64(k, v)?,
                "source.sigma" => cfg.sigma = parse_f64(k, v)?,
                "source.radius" => cfg.radius = parse_f64(k, v)?,
                "source.spin" => cfg.spin = parse_f64(k, v)?,
                "source.omega" => cfg.omega = parse_f64(k, v)?,
                "source.file" => cfg.source_file = Some(v.to_string()),
                "front.normal" => cfg.front_normal = parse_vec3(k, v)?,
                "front.a_plus.re" => cfg.a_plus_re = parse_vec3(k, v)?,
                "front.a_plus.im" => cfg.a_plus_im = parse_vec3(k, v)?,
                "front.a_minus.re" => cfg.a_minus_re = parse_vec3(k, v)?,
                "front.a_minus.im" => cfg.a_minus_im = parse_vec3(k, v)?,
                "eval.kind" => eval_kind = Some(v.to_string()),
                "eval.grid.min" => grid_min = Some(parse_vec3(k, v)?),
                "eval.grid.max" => grid_max = Some(parse_vec3(k, v)?),
                "eval.grid.dims" => grid_dims = Some(parse_dims(k, v)?),
                "eval.points" => points = Some(parse_points(k, v)?),
                "eval.time" => cfg.time = parse_f64(k, v)?,
                "quadrature.sphere_degree" => cfg.sphere_degree = parse_usize(k, v)?,
                "quadrature.radial_points" => cfg.radial_points = parse_usize(k, v)?,
                "oracle.n" => cfg.oracle_n = parse_usize(k, v)?,
                "oracle.box_length" => cfg.oracle_box = parse_f64(k, v)?,
                "oracle.dt" => cfg.oracle_dt = parse_f64(k, v)?,
                "compare.against" => cfg.against = Some(v.to_string()),
                "example.which" => cfg.example = parse_usize(k, v)? as u32,
                "out.table" => cfg.out_table = v.to_string(),
                "out.report" => cfg.out_report = v.to_string(),
                _ => {
                    return Err(ConfigError {
                        line: Some(*lineno),
                        key: Some(key.clone()),
                        message: "unknown key".into(),
                    })
                }
            }
            Ok(())
        })();
        result.map_err(|mut e| {
            if e.line.is_none() {
                e.line = Some(*lineno);
            }
            e
        })?;
    }

    if !scenario_seen {
        return Err(err_key("scenario", "missing required key"));
    }

    match eval_kind.as_deref() {
        Some("grid") => {
            let min = grid_min.ok_or_else(|| err_key("eval.grid.min", "missing required key"))?;
            let max = grid_max.ok_or_else(|| err_key("eval.grid.max", "missing required key"))?;
            let dims = grid_dims.ok_or_else(|| err_key("eval.grid.dims", "missing required key"))?;
            cfg.eval = EvalSpec::Grid { min, max, dims };
        }
        Some("points") => {
            cfg.eval = EvalSpec::Points(
                points.ok_or_else(|| err_key("eval.points", "missing required key"))?,
            );
        }
        Some(other) => {
            return Err(err_key("eval.kind", format!("expected `grid` or `points`, got `{other}`")))
        }
        None => {
            // keep the default point list when the scenario needs none
            if let Some(pts) = points {
                cfg.eval = EvalSpec::Points(pts);
            }
        }
    }

    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &ScenarioConfig) -> Result<(), ConfigError> {
    if !(cfg.epsilon > 0.0) {
        return Err(err_key("medium.epsilon", "medium.epsilon must be > 0"));
    }
    if !(cfg.mu > 0.0) {
        return Err(err_key("medium.mu", "medium.mu must be > 0"));
    }
    if cfg.sigma <= 0.0 {
        return Err(err_key("source.sigma", "mollification width must be > 0"));
    }
    if cfg.radius <= 0.0 {
        return Err(err_key("source.radius", "support radius must be > 0"));
    }
    if cfg.sphere_degree == 0 || cfg.radial_points == 0 {
        return Err(err_key("quadrature.sphere_degree", "quadrature budgets must be positive"));
    }
    if let EvalSpec::Grid { dims, .. } = &cfg.eval {
        if dims.iter().any(|d| *d == 0) {
            return Err(err_key("eval.grid.dims", "grid dims must be ≥ 1"));
        }
    }
    if cfg.oracle_n < 8 || !cfg.oracle_n.is_power_of_two() {
        return Err(err_key("oracle.n", "oracle grid size must be a power of two ≥ 8"));
    }
    if !(cfg.oracle_dt > 0.0) {
        return Err(err_key("oracle.dt", "oracle step must be > 0"));
    }
    if cfg.scenario == ScenarioKind::Examples && !(1..=3).contains(&cfg.example) {
        return Err(err_key("example.which", "example.which must be 1, 2 or 3"));
    }
    Ok(())
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_vec3(v: Vec3) -> String {
    format!("{},{},{}", fmt_f64(v.x), fmt_f64(v.y), fmt_f64(v.z))
}

/// Canonical serialization; `parse_config(serialize(cfg))` reparses to an
/// equal config, and the config hash is taken over this text.
pub fn serialize(cfg: &ScenarioConfig) -> String {
    let mut out = String::new();
    let mut push = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    };
    push("scenario", cfg.scenario.as_str().to_string());
    push("medium.epsilon", fmt_f64(cfg.epsilon));
    push("medium.mu", fmt_f64(cfg.mu));
    push("source.kind", cfg.source_kind.as_str().to_string());
    push("source.amplitude", fmt_f64(cfg.amplitude));
    push("source.sigma", fmt_f64(cfg.sigma));
    push("source.radius", fmt_f64(cfg.radius));
    push("source.spin", fmt_f64(cfg.spin));
    push("source.omega", fmt_f64(cfg.omega));
    if let Some(f) = &cfg.source_file {
        push("source.file", f.clone());
    }
    push("front.normal", fmt_vec3(cfg.front_normal));
    push("front.a_plus.re", fmt_vec3(cfg.a_plus_re));
    push("front.a_plus.im", fmt_vec3(cfg.a_plus_im));
    push("front.a_minus.re", fmt_vec3(cfg.a_minus_re));
    push("front.a_minus.im", fmt_vec3(cfg.a_minus_im));
    match &cfg.eval {
        EvalSpec::Grid { min, max, dims } => {
            push("eval.kind", "grid".to_string());
            push("eval.grid.min", fmt_vec3(*min));
            push("eval.grid.max", fmt_vec3(*max));
            push("eval.grid.dims", format!("{},{},{}", dims[0], dims[1], dims[2]));
        }
        EvalSpec::Points(pts) => {
            push("eval.kind", "points".to_string());
            let joined: Vec<String> = pts.iter().map(|p| fmt_vec3(*p)).collect();
            push("eval.points", joined.join("; "));
        }
    }
    push("eval.time", fmt_f64(cfg.time));
    push("quadrature.sphere_degree", cfg.sphere_degree.to_string());
    push("quadrature.radial_points", cfg.radial_points.to_string());
    push("oracle.n", cfg.oracle_n.to_string());
    push("oracle.box_length", fmt_f64(cfg.oracle_box));
    push("oracle.dt", fmt_f64(cfg.oracle_dt));
    if let Some(a) = &cfg.against {
        push("compare.against", a.clone());
    }
    push("example.which", cfg.example.to_string());
    push("out.table", cfg.out_table.clone());
    push("out.report", cfg.out_report.clone());
    out
}

/// Hash of the canonical serialization; embedded in tables and reports.
pub fn config_hash(cfg: &ScenarioConfig) -> String {
    let mut hasher = Sha256::new();
    hasher.update(serialize(cfg).as_bytes());
    hex::encode(&hasher.finalize()[..16])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_cauchy_config_fills_defaults() {
        let cfg = parse_config("scenario = cauchy\n").unwrap();
        assert_eq!(cfg.scenario, ScenarioKind::Cauchy);
        assert_eq!(cfg.epsilon, 1.0);
        assert_eq!(cfg.sphere_degree, 17);
    }

    #[test]
    fn rejects_negative_epsilon_by_name() {
        let err = parse_config("scenario = cauchy\nmedium.epsilon = -1\n").unwrap_err();
        assert!(err.to_string().contains("medium.epsilon must be > 0"), "{err}");
    }

    #[test]
    fn rejects_unknown_key_with_line() {
        let err = parse_config("scenario = cauchy\nbogus.key = 3\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(err.to_string().contains("unknown key"));
        assert!(err.to_string().contains("bogus.key"));
    }

    #[test]
    fn rejects_type_mismatch_with_key() {
        let err = parse_config("scenario = oracle\noracle.n = not-a-number\n").unwrap_err();
        assert!(err.to_string().contains("oracle.n"));
        assert!(err.to_string().contains("expected a non-negative integer"));
    }

    #[test]
    fn round_trip_reparses_equal() {
        let text = "\
scenario = mono
medium.epsilon = 2.5
source.kind = rotating-ball
source.radius = 0.75
source.omega = 3.5
eval.kind = points
eval.points = 1,0,0; 0,2,0.5
eval.time = 0.25
";
        let cfg = parse_config(text).unwrap();
        let cfg2 = parse_config(&serialize(&cfg)).unwrap();
        assert_eq!(cfg, cfg2);
        assert_eq!(config_hash(&cfg), config_hash(&cfg2));
    }

    #[test]
    fn grid_eval_requires_all_fields() {
        let err = parse_config("scenario = cauchy\neval.kind = grid\n").unwrap_err();
        assert!(err.to_string().contains("eval.grid.min"));
        assert!(err.to_string().contains("missing required key"));
    }
}
