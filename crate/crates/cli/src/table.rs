//! Field tables: CSV with a metadata comment block, fixed column order,
//! floats at 17 significant digits (byte-deterministic output).

use std::fmt::Write as _;

use afield_core::field::{energy_density, poynting};
use afield_core::medium::Medium;
use afield_core::vec3::{ComplexVec3, Vec3};
use anyhow::{bail, Context, Result};

pub const COLUMNS: &str = "x,y,z,t,re_ax,im_ax,re_ay,im_ay,re_az,im_az,w,px,py,pz";

#[derive(Debug, Clone)]
pub struct FieldRow {
    pub x: Vec3,
    pub t: f64,
    pub a: ComplexVec3,
}

#[derive(Debug, Clone)]
pub struct FieldTable {
    pub scenario: String,
    pub config_hash: String,
    pub epsilon: f64,
    pub mu: f64,
    pub time: f64,
    pub rows: Vec<FieldRow>,
}

fn f(v: f64) -> String {
    format!("{v:.16e}")
}

impl FieldTable {
    pub fn to_csv(&self, medium: &Medium) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# scenario: {}", self.scenario);
        let _ = writeln!(out, "# config_hash: {}", self.config_hash);
        let _ = writeln!(out, "# medium_epsilon: {}", f(self.epsilon));
        let _ = writeln!(out, "# medium_mu: {}", f(self.mu));
        let _ = writeln!(out, "# time: {}", f(self.time));
        let _ = writeln!(out, "{COLUMNS}");
        for row in &self.rows {
            let w = energy_density(&row.a);
            let p = poynting(&row.a, medium);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                f(row.x.x),
                f(row.x.y),
                f(row.x.z),
                f(row.t),
                f(row.a.x.re),
                f(row.a.x.im),
                f(row.a.y.re),
                f(row.a.y.im),
                f(row.a.z.re),
                f(row.a.z.im),
                f(w),
                f(p.x),
                f(p.y),
                f(p.z)
            );
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<FieldTable> {
        let mut scenario = String::new();
        let mut config_hash = String::new();
        let mut epsilon = 1.0;
        let mut mu = 1.0;
        let mut time = 0.0;
        let mut rows = Vec::new();
        let mut header_seen = false;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                let meta = meta.trim();
                if let Some((k, v)) = meta.split_once(':') {
                    let v = v.trim();
                    match k.trim() {
                        "scenario" => scenario = v.to_string(),
                        "config_hash" => config_hash = v.to_string(),
                        "medium_epsilon" => epsilon = v.parse().context("medium_epsilon")?,
                        "medium_mu" => mu = v.parse().context("medium_mu")?,
                        "time" => time = v.parse().context("time")?,
                        _ => {}
                    }
                }
                continue;
            }
            if !header_seen {
                if line != COLUMNS {
                    bail!("line {}: unexpected column header `{line}`", lineno + 1);
                }
                header_seen = true;
                continue;
            }
            let vals: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .with_context(|| format!("line {}: bad number", lineno + 1))?;
            if vals.len() != 14 {
                bail!("line {}: expected 14 columns, got {}", lineno + 1, vals.len());
            }
            rows.push(FieldRow {
                x: Vec3::new(vals[0], vals[1], vals[2]),
                t: vals[3],
                a: ComplexVec3::from_re_im(
                    Vec3::new(vals[4], vals[6], vals[8]),
                    Vec3::new(vals[5], vals[7], vals[9]),
                ),
            });
        }
        if !header_seen {
            bail!("missing column header");
        }
        Ok(FieldTable { scenario, config_hash, epsilon, mu, time, rows })
    }
}
