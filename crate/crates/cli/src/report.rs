//! Structured diagnostics report: one entry per check, CI-friendly.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub config_hash: String,
    pub tolerance_profile: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(scenario: &str, config_hash: &str, profile: &str) -> Report {
        Report {
            scenario: scenario.to_string(),
            config_hash: config_hash.to_string(),
            tolerance_profile: profile.to_string(),
            checks: Vec::new(),
            pass: true,
        }
    }

    /// Record a check where smaller is better (|value| ≤ tolerance).
    pub fn check(&mut self, name: &str, value: f64, tolerance: f64) -> bool {
        let pass = value.abs() <= tolerance && value.is_finite();
        self.checks.push(Check { name: name.to_string(), value, tolerance, pass });
        self.pass &= pass;
        pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Tolerance profiles scale the per-check defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToleranceProfile {
    Strict,
    Default,
    Loose,
}

impl ToleranceProfile {
    pub fn parse(s: &str) -> Option<ToleranceProfile> {
        Some(match s {
            "strict" => ToleranceProfile::Strict,
            "default" => ToleranceProfile::Default,
            "loose" => ToleranceProfile::Loose,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ToleranceProfile::Strict => "strict",
            ToleranceProfile::Default => "default",
            ToleranceProfile::Loose => "loose",
        }
    }

    pub fn factor(&self) -> f64 {
        match self {
            ToleranceProfile::Strict => 0.1,
            ToleranceProfile::Default => 1.0,
            ToleranceProfile::Loose => 10.0,
        }
    }
}
