//! Scenario runners: build the model from the config, evaluate the field,
//! write the table and the diagnostics report.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use afield_core::Complex64;
use rayon::prelude::*;

use afield_core::kernels::green_tensor_apply;
use afield_core::medium::Medium;
use afield_core::quad::QuadratureBudget;
use afield_core::shock::{
    energy_jump_residual, jump_map_rank, jump_residual, surface_densities, transversality_check,
    FrontSpec, FrontSurface,
};
use afield_core::snapshot::FieldSnapshot;
use afield_core::solvers::{
    analytic_example1, analytic_example3, cauchy_solve, example2_reduced, mono_solve,
    sommerfeld_residual, stationary_potentials, stationary_solve,
};
use afield_core::source::{InitialData, MonochromaticSource, SourceModel, StationarySource};
use afield_core::spectral::{audit_snapshot, oracle_compare, AuditRegion, SpectralRun};
use afield_core::vec3::{ComplexVec3, Vec3};
use afield_core::fd;

use crate::config::{config_hash, EvalSpec, ScenarioConfig, ScenarioKind, SourceKind};
use crate::report::{Report, ToleranceProfile};
use crate::table::{FieldRow, FieldTable};

/// Informational entries carry this tolerance (always pass).
const INFO: f64 = 1e300;

pub struct RunOutcome {
    pub report: Report,
    pub table_path: Option<std::path::PathBuf>,
    pub report_path: std::path::PathBuf,
}

pub fn run_scenario(
    cfg: &ScenarioConfig,
    out_dir: &Path,
    profile: ToleranceProfile,
) -> Result<RunOutcome> {
    fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;
    let hash = config_hash(cfg);
    let mut report = Report::new(cfg.scenario.as_str(), &hash, profile.as_str());
    let medium = Medium::new(cfg.epsilon, cfg.mu).map_err(|e| anyhow!("{e}"))?;
    let budget = QuadratureBudget {
        sphere_degree: cfg.sphere_degree,
        radial_points: cfg.radial_points,
        ..Default::default()
    };

    let mut table: Option<FieldTable> = None;
    match cfg.scenario {
        ScenarioKind::Cauchy => {
            table = Some(run_cauchy(cfg, &medium, &budget, &hash, profile, &mut report)?)
        }
        ScenarioKind::Mono => {
            table = Some(run_mono(cfg, &medium, &budget, &hash, profile, &mut report)?)
        }
        ScenarioKind::Stationary => {
            table = Some(run_stationary(cfg, &medium, &budget, &hash, profile, &mut report)?)
        }
        ScenarioKind::ShockCheck => run_shock_check(cfg, &medium, profile, &mut report)?,
        ScenarioKind::Oracle => {
            table = Some(run_oracle(cfg, &medium, &hash, profile, &mut report)?)
        }
        ScenarioKind::Compare => {
            table = Some(run_compare(cfg, &medium, &budget, &hash, profile, &mut report)?)
        }
        ScenarioKind::Examples => {
            table = Some(run_examples(cfg, &medium, &budget, &hash, profile, &mut report)?)
        }
    }

    let table_path = if let Some(t) = &table {
        let path = out_dir.join(&cfg.out_table);
        fs::write(&path, t.to_csv(&medium)).with_context(|| format!("writing {path:?}"))?;
        Some(path)
    } else {
        None
    };
    let report_path = out_dir.join(&cfg.out_report);
    fs::write(&report_path, report.to_json()).with_context(|| format!("writing {report_path:?}"))?;

    Ok(RunOutcome { report, table_path, report_path })
}

fn eval_points(cfg: &ScenarioConfig) -> Vec<Vec3> {
    match &cfg.eval {
        EvalSpec::Points(pts) => pts.clone(),
        EvalSpec::Grid { min, max, dims } => {
            let mut pts = Vec::with_capacity(dims[0] * dims[1] * dims[2]);
            let step = |lo: f64, hi: f64, n: usize, i: usize| {
                if n <= 1 {
                    lo
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            };
            for iz in 0..dims[2] {
                for iy in 0..dims[1] {
                    for ix in 0..dims[0] {
                        pts.push(Vec3::new(
                            step(min.x, max.x, dims[0], ix),
                            step(min.y, max.y, dims[1], iy),
                            step(min.z, max.z, dims[2], iz),
                        ));
                    }
                }
            }
            pts
        }
    }
}

fn initial_data_from(cfg: &ScenarioConfig) -> Result<InitialData> {
    match cfg.source_kind {
        SourceKind::ToroidalBump => Ok(InitialData::toroidal_bump(cfg.amplitude, cfg.radius)),
        SourceKind::ToroidalShock => Ok(InitialData::toroidal_shock(cfg.amplitude, cfg.radius)),
        SourceKind::CustomGridFile => {
            let file = cfg
                .source_file
                .as_ref()
                .ok_or_else(|| anyhow!("source.file is required for custom-grid-file"))?;
            let text = fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
            let table = FieldTable::from_csv(&text)?;
            snapshot_initial_data(&table)
        }
        other => bail!(
            "source kind `{}` is not an initial-data builtin (use toroidal-bump, toroidal-shock or custom-grid-file)",
            other.as_str()
        ),
    }
}

/// Rebuild a rectilinear snapshot from table rows (written in grid order)
/// and wrap it as initial data with trilinear sampling.
fn snapshot_initial_data(table: &FieldTable) -> Result<InitialData> {
    if table.rows.is_empty() {
        bail!("custom grid file has no rows");
    }
    let xs = axis_values(table.rows.iter().map(|r| r.x.x));
    let ys = axis_values(table.rows.iter().map(|r| r.x.y));
    let zs = axis_values(table.rows.iter().map(|r| r.x.z));
    let dims = [xs.len(), ys.len(), zs.len()];
    if dims[0] * dims[1] * dims[2] != table.rows.len() {
        bail!(
            "custom grid file is not a full rectilinear grid: {}×{}×{} ≠ {} rows",
            dims[0],
            dims[1],
            dims[2],
            table.rows.len()
        );
    }
    let origin = Vec3::new(xs[0], ys[0], zs[0]);
    let spacing = Vec3::new(
        if dims[0] > 1 { xs[1] - xs[0] } else { 1.0 },
        if dims[1] > 1 { ys[1] - ys[0] } else { 1.0 },
        if dims[2] > 1 { zs[1] - zs[0] } else { 1.0 },
    );
    let values: Vec<ComplexVec3> = table.rows.iter().map(|r| r.a).collect();
    let snap = FieldSnapshot { dims, origin, spacing, t: table.time, values };
    let support = table
        .rows
        .iter()
        .filter(|r| r.a.norm() > 0.0)
        .map(|r| r.x.norm())
        .fold(0.0f64, f64::max)
        .max(spacing.norm());
    let scale = spacing.x.min(spacing.y).min(spacing.z) * 2.0;
    Ok(InitialData::new(
        move |x| snap.sample(x).unwrap_or(ComplexVec3::ZERO),
        None,
        support,
        scale,
    ))
}

fn axis_values(iter: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut vals: Vec<f64> = iter.collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    vals
}

fn field_rows(points: &[Vec3], t: f64, eval: impl Fn(Vec3) -> Result<ComplexVec3> + Sync) -> Result<Vec<FieldRow>> {
    let rows: Result<Vec<FieldRow>> = points
        .par_iter()
        .map(|&x| Ok(FieldRow { x, t, a: eval(x)? }))
        .collect();
    rows
}

fn run_cauchy(
    cfg: &ScenarioConfig,
    medium: &Medium,
    budget: &QuadratureBudget,
    hash: &str,
    profile: ToleranceProfile,
    report: &mut Report,
) -> Result<FieldTable> {
    let init = initial_data_from(cfg)?;
    let none = SourceModel::zero();
    let t = cfg.time;
    let points = eval_points(cfg);
    let rows = field_rows(&points, t, |x| {
        cauchy_solve(&init, &none, medium, x, t, budget).map_err(|e| anyhow!("{e}"))
    })?;

    // radiation condition: exact zero outside the light cone
    let outside = Vec3::new(0.0, 0.0, init.support_radius() + medium.c() * t + 0.5);
    let v_out = cauchy_solve(&init, &none, medium, outside, t, budget).map_err(|e| anyhow!("{e}"))?;
    report.check("radiation_condition_outside_cone", v_out.norm(), 0.0);

    // uniqueness surrogate: assembly vs reduced sphere formula
    let mut worst = 0.0f64;
    for row in rows.iter().take(4) {
        let reduced = example2_reduced(&init, row.x, t, medium, budget).map_err(|e| anyhow!("{e}"))?;
        let scale = row.a.norm().max(reduced.norm()).max(1e-12);
        worst = worst.max((row.a - reduced).norm() / scale);
    }
    report.check("assembly_vs_reduced_rel", worst, 1e-8 * profile.factor());

    Ok(FieldTable {
        scenario: cfg.scenario.as_str().into(),
        config_hash: hash.into(),
        epsilon: cfg.epsilon,
        mu: cfg.mu,
        time: t,
        rows,
    })
}

fn mono_source(cfg: &ScenarioConfig, medium: &Medium) -> Result<MonochromaticSource> {
    match cfg.source_kind {
        SourceKind::GaussianBall => MonochromaticSource::dipole(
            ComplexVec3::from_re(Vec3::EZ * cfg.amplitude),
            cfg.sigma,
            cfg.omega,
            medium,
        )
        .map_err(|e| anyhow!("{e}")),
        SourceKind::RotatingBall => MonochromaticSource::rotating_ball(
            cfg.amplitude,
            cfg.radius,
            cfg.spin,
            cfg.omega,
            medium,
        )
        .map_err(|e| anyhow!("{e}")),
        other => bail!(
            "source kind `{}` is not a monochromatic builtin (use gaussian-ball or rotating-ball)",
            other.as_str()
        ),
    }
}

fn run_mono(
    cfg: &ScenarioConfig,
    medium: &Medium,
    budget: &QuadratureBudget,
    hash: &str,
    profile: ToleranceProfile,
    report: &mut Report,
) -> Result<FieldTable> {
    let src = mono_source(cfg, medium)?;
    let t = cfg.time;
    let phase = Complex64::new(0.0, -src.omega() * t).exp();
    let points = eval_points(cfg);
    let rows = field_rows(&points, t, |x| {
        Ok(mono_solve(&src, x, medium, budget).map_err(|e| anyhow!("{e}"))? * phase)
    })?;

    // charge amplitude consistency: ρ = −i ω⁻¹ div J by finite differences
    let h = fd::default_step(src.variation_scale());
    let mut worst = 0.0f64;
    for frac in [0.2, 0.5] {
        let x = Vec3::new(frac * src.support_radius(), 0.1 * src.support_radius(), 0.0);
        let div_j = fd::div(|y| src.current(y), x, h);
        let expected = Complex64::new(0.0, -1.0 / src.omega()) * div_j;
        worst = worst.max((src.rho(x) - expected).norm());
    }
    report.check("charge_divergence_consistency", worst, 1e-6 * profile.factor());

    // far-field decay: the Sommerfeld residual falls as 1/R²
    let dir = Vec3::new(0.48, 0.6, 0.64).normalized();
    let r1 = 12.0 * src.support_radius();
    let res1 = sommerfeld_residual(&src, dir * r1, medium, budget).map_err(|e| anyhow!("{e}"))?;
    let res2 =
        sommerfeld_residual(&src, dir * (2.0 * r1), medium, budget).map_err(|e| anyhow!("{e}"))?;
    report.check("sommerfeld_decay_quartering", (4.0 * res2 / res1 - 1.0).abs(), 0.5 * profile.factor());

    Ok(FieldTable {
        scenario: cfg.scenario.as_str().into(),
        config_hash: hash.into(),
        epsilon: cfg.epsilon,
        mu: cfg.mu,
        time: t,
        rows,
    })
}

fn stationary_source(cfg: &ScenarioConfig) -> Result<StationarySource> {
    match cfg.source_kind {
        SourceKind::UniformBall => Ok(StationarySource::uniform_ball(
            Complex64::new(cfg.amplitude, 0.0),
            cfg.radius,
        )),
        SourceKind::RotatingBall => {
            Ok(StationarySource::rotating_ball(cfg.amplitude, cfg.radius, cfg.spin))
        }
        other => bail!(
            "source kind `{}` is not a stationary builtin (use uniform-ball or rotating-ball)",
            other.as_str()
        ),
    }
}

fn run_stationary(
    cfg: &ScenarioConfig,
    medium: &Medium,
    budget: &QuadratureBudget,
    hash: &str,
    profile: ToleranceProfile,
    report: &mut Report,
) -> Result<FieldTable> {
    let src = stationary_source(cfg)?;
    let points = eval_points(cfg);
    let rows = field_rows(&points, 0.0, |x| {
        stationary_solve(&src, x, medium, budget).map_err(|e| anyhow!("{e}"))
    })?;

    // potential form: A = c(∇Φ + i rot Ψ) by differentiating the potentials
    let x = points
        .iter()
        .copied()
        .find(|p| (p.norm() - cfg.radius).abs() > 0.2 * cfg.radius)
        .unwrap_or(Vec3::new(0.0, 0.0, 2.0 * cfg.radius));
    let h = cfg.radius / 60.0;
    let grad_phi = fd::grad4(
        |xx| stationary_potentials(&src, xx, medium, budget).unwrap().0,
        x,
        h,
    );
    let rot_psi = fd::curl4(
        |xx| stationary_potentials(&src, xx, medium, budget).unwrap().1,
        x,
        h,
    );
    let recombined = (grad_phi + rot_psi * Complex64::new(0.0, 1.0)) * medium.c();
    let direct = stationary_solve(&src, x, medium, budget).map_err(|e| anyhow!("{e}"))?;
    let rel = (direct - recombined).norm() / direct.norm().max(1e-12);
    report.check("potential_form_consistency_rel", rel, 2e-3 * profile.factor());

    // built-in ball sources have closed forms
    let closed = analytic_example3(cfg.amplitude, cfg.radius, cfg.spin, x, medium);
    let expect = match cfg.source_kind {
        SourceKind::UniformBall => ComplexVec3::from_re(closed.grad_phi) * medium.c(),
        _ => closed.a_field(medium),
    };
    let rel_closed = (direct - expect).norm() / expect.norm().max(1e-12);
    report.check("closed_form_match_rel", rel_closed, 1e-3 * profile.factor());

    Ok(FieldTable {
        scenario: cfg.scenario.as_str().into(),
        config_hash: hash.into(),
        epsilon: cfg.epsilon,
        mu: cfg.mu,
        time: 0.0,
        rows,
    })
}

fn run_shock_check(
    cfg: &ScenarioConfig,
    medium: &Medium,
    profile: ToleranceProfile,
    report: &mut Report,
) -> Result<()> {
    if cfg.source_kind != SourceKind::PlaneShock && cfg.source_kind != SourceKind::None {
        bail!("shock-check expects source.kind = plane-shock");
    }
    let m = cfg.front_normal;
    let front = FrontSpec::new(
        FrontSurface::Plane { point: Vec3::ZERO, normal: m },
        m,
        ComplexVec3::from_re_im(cfg.a_plus_re, cfg.a_plus_im),
        ComplexVec3::from_re_im(cfg.a_minus_re, cfg.a_minus_im),
    )
    .map_err(|e| anyhow!("{e}"))?;

    let jump = front.jump();
    let scale = jump.norm().max(1e-30);
    if front.is_continuous() {
        report.check("continuous_field", 0.0, INFO);
        return Ok(());
    }
    let tol = 1e-10 * profile.factor();
    report.check("jump_residual_rel", jump_residual(&front).norm() / scale, tol);
    let (te, th) = transversality_check(&front);
    report.check("transversality_electric_rel", te.abs() / scale, tol);
    report.check("transversality_magnetic_rel", th.abs() / scale, tol);
    report.check(
        "energy_jump_residual_rel",
        energy_jump_residual(&front, medium).abs() / (scale * scale),
        tol,
    );
    report.check(
        "jump_map_rank_defect",
        (jump_map_rank(m, 1e-10) as f64 - 2.0).abs(),
        0.0,
    );

    let densities = surface_densities(&front, medium, Vec3::ZERO).map_err(|e| anyhow!("{e}"))?;
    report.check("surface_charge_norm", densities.charge.norm(), INFO);
    report.check("surface_current_norm", densities.current.norm(), INFO);
    report.check(
        "surface_charge_vs_divergence",
        (densities.charge - densities.divergence / medium.c()).norm(),
        1e-14,
    );
    Ok(())
}

fn run_oracle(
    cfg: &ScenarioConfig,
    medium: &Medium,
    hash: &str,
    profile: ToleranceProfile,
    report: &mut Report,
) -> Result<FieldTable> {
    let (mut run, source) = match cfg.source_kind {
        SourceKind::GaussianBall => {
            // driven run from rest: localized conserving current pulse
            let s = SourceModel::gaussian_current_pulse(
                ComplexVec3::from_re(Vec3::EX * cfg.amplitude),
                cfg.sigma,
                cfg.time * 0.4,
                cfg.time * 0.15,
            );
            let grid = afield_core::spectral::PeriodicGrid::zeros(cfg.oracle_n, cfg.oracle_box)
                .map_err(|e| anyhow!("{e}"))?;
            (SpectralRun::from_grid(&grid, medium).map_err(|e| anyhow!("{e}"))?, Some(s))
        }
        _ => {
            let init = initial_data_from(cfg)?;
            (
                SpectralRun::from_initial_data(&init, cfg.oracle_n, cfg.oracle_box, medium)
                    .map_err(|e| anyhow!("{e}"))?,
                None,
            )
        }
    };

    let steps = (cfg.time / cfg.oracle_dt).round().max(1.0) as usize;
    let e0 = run.total_energy();
    let mut work_int = 0.0;
    let mut prev_rate = source
        .as_ref()
        .map(|s| work_rate(&run, s, medium))
        .unwrap_or(0.0);
    for _ in 0..steps {
        run.step(cfg.time / steps as f64, source.as_ref()).map_err(|e| anyhow!("{e}"))?;
        if let Some(s) = &source {
            let rate = work_rate(&run, s, medium);
            work_int += 0.5 * (prev_rate + rate) * (cfg.time / steps as f64);
            prev_rate = rate;
        }
    }
    let e1 = run.total_energy();

    match &source {
        None => {
            let drift = (e1 - e0).abs() / e0.max(1e-300);
            report.check("free_run_energy_drift_rel", drift, 1e-12 * profile.factor());
        }
        Some(s) => {
            let balance = ((e1 - e0) - work_int).abs() / (e1 - e0).abs().max(1e-300);
            report.check("driven_energy_balance_rel", balance, 1e-3 * profile.factor());
            let grid = run.snapshot();
            let rec = audit_snapshot(&grid, s, medium, AuditRegion::WholeBox)
                .map_err(|e| anyhow!("{e}"))?;
            report.check("total_charge_norm", rec.total_charge.norm(), INFO);
        }
    }

    let grid = run.snapshot();
    let snap = grid.to_snapshot();
    let points = eval_points(cfg);
    let rows = field_rows(&points, grid.t, |x| snap.sample(x).map_err(|e| anyhow!("{e}")))?;
    Ok(FieldTable {
        scenario: cfg.scenario.as_str().into(),
        config_hash: hash.into(),
        epsilon: cfg.epsilon,
        mu: cfg.mu,
        time: grid.t,
        rows,
    })
}

fn work_rate(run: &SpectralRun, s: &SourceModel, medium: &Medium) -> f64 {
    let g = run.snapshot();
    let n = g.n;
    let h3 = g.spacing().powi(3);
    let mut w = 0.0;
    for iz in 0..n {
        for iy in 0..n {
            for ix in 0..n {
                let x = g.point(ix, iy, iz);
                let a = g.values[g.index(ix, iy, iz)];
                w += -medium.c() * s.current(x, g.t).dot(a.conj()).re * h3;
            }
        }
    }
    w
}

fn run_compare(
    cfg: &ScenarioConfig,
    medium: &Medium,
    budget: &QuadratureBudget,
    hash: &str,
    profile: ToleranceProfile,
    report: &mut Report,
) -> Result<FieldTable> {
    let init = initial_data_from(cfg)?;
    let none = SourceModel::zero();
    let t = cfg.time;
    let points = eval_points(cfg);
    let rows = field_rows(&points, t, |x| {
        cauchy_solve(&init, &none, medium, x, t, budget).map_err(|e| anyhow!("{e}"))
    })?;
    let table = FieldTable {
        scenario: cfg.scenario.as_str().into(),
        config_hash: hash.into(),
        epsilon: cfg.epsilon,
        mu: cfg.mu,
        time: t,
        rows,
    };

    let mut run = SpectralRun::from_initial_data(&init, cfg.oracle_n, cfg.oracle_box, medium)
        .map_err(|e| anyhow!("{e}"))?;
    run.step(t, None).map_err(|e| anyhow!("{e}"))?;
    let grid = run.snapshot();
    let stats = oracle_compare(
        |x| cauchy_solve(&init, &none, medium, x, t, budget).unwrap_or(ComplexVec3::ZERO),
        &grid,
        &points,
        t,
    )
    .map_err(|e| anyhow!("{e}"))?;
    report.check("oracle_l2_rel", stats.l2_rel, 5e-3 * profile.factor());
    report.check("oracle_max_rel", stats.max_rel, 2e-2 * profile.factor());

    if let Some(path) = &cfg.against {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let saved = FieldTable::from_csv(&text)?;
        if saved.config_hash != hash {
            bail!(
                "config hash mismatch: saved table has {}, this run has {hash} (refusing to compare)",
                saved.config_hash
            );
        }
        if saved.rows.len() != table.rows.len() {
            bail!("saved table has {} rows, this run has {}", saved.rows.len(), table.rows.len());
        }
        let mut worst = 0.0f64;
        for (a, b) in saved.rows.iter().zip(table.rows.iter()) {
            worst = worst.max((a.a - b.a).norm());
        }
        report.check("reproducibility_vs_saved_table", worst, 1e-12 * profile.factor());
    }

    Ok(table)
}

fn run_examples(
    cfg: &ScenarioConfig,
    medium: &Medium,
    budget: &QuadratureBudget,
    hash: &str,
    profile: ToleranceProfile,
    report: &mut Report,
) -> Result<FieldTable> {
    match cfg.example {
        1 => example1(cfg, medium, budget, hash, profile, report),
        2 => example2(cfg, medium, budget, hash, profile, report),
        3 => example3(cfg, medium, budget, hash, profile, report),
        other => bail!("example.which must be 1, 2 or 3, got {other}"),
    }
}

/// Charge born at the origin: the Green-tensor field against the static
/// Coulomb closed form, once the front has passed.
fn example1(
    cfg: &ScenarioConfig,
    medium: &Medium,
    budget: &QuadratureBudget,
    hash: &str,
    profile: ToleranceProfile,
    report: &mut Report,
) -> Result<FieldTable> {
    let q = Complex64::new(4.0 * PI * cfg.amplitude, 0.0);
    let sigma = cfg.sigma;
    let s = SourceModel::born_charge(q, sigma, medium);
    let points: Vec<Vec3> = (0..8)
        .map(|i| Vec3::new(0.0, 0.0, 1.0 + 0.25 * i as f64))
        .collect();
    let t = (points.last().unwrap().norm() + 2.0) / medium.c() + 8.0 * sigma / medium.c();

    let rows = field_rows(&points, t, |x| {
        green_tensor_apply(&s, x, t, medium, budget).map_err(|e| anyhow!("{e}"))
    })?;

    let mut worst = 0.0f64;
    for row in &rows {
        let coulomb = analytic_example1(q, medium, row.x, t).map_err(|e| anyhow!("{e}"))?;
        worst = worst.max((row.a - coulomb).norm() / coulomb.norm());
    }
    // dominated by the O(σ²) differentiation step
    report.check("coulomb_field_match_rel", worst, (sigma * sigma).max(1e-4) * profile.factor());

    let outside = Vec3::new(0.0, 0.0, s.support_radius() + medium.c() * 0.3 + 0.2);
    let early = green_tensor_apply(&s, outside, 0.3, medium, budget).map_err(|e| anyhow!("{e}"))?;
    report.check("outside_light_cone_zero", early.norm(), 0.0);

    Ok(FieldTable {
        scenario: "examples-1".into(),
        config_hash: hash.into(),
        epsilon: cfg.epsilon,
        mu: cfg.mu,
        time: t,
        rows,
    })
}

/// Expanding shock from compact toroidal data: the reduced sphere formula
/// against the assembly, and the front-condition residual of the evolved
/// jump.
fn example2(
    cfg: &ScenarioConfig,
    medium: &Medium,
    budget: &QuadratureBudget,
    hash: &str,
    profile: ToleranceProfile,
    report: &mut Report,
) -> Result<FieldTable> {
    let init = InitialData::toroidal_shock(cfg.amplitude, cfg.radius);
    let none = SourceModel::zero();
    let t = cfg.time;
    let points: Vec<Vec3> = (0..10)
        .map(|i| {
            let ang = 0.35 + 0.25 * i as f64;
            Vec3::new(ang.cos(), ang.sin() * 0.8, 0.6 * (ang * 1.7).sin()).normalized()
                * (cfg.radius + medium.c() * t * 0.55)
        })
        .collect();
    let rows = field_rows(&points, t, |x| {
        cauchy_solve(&init, &none, medium, x, t, budget).map_err(|e| anyhow!("{e}"))
    })?;

    let mut worst_pair = 0.0f64;
    for row in rows.iter().take(4) {
        let reduced = example2_reduced(&init, row.x, t, medium, budget).map_err(|e| anyhow!("{e}"))?;
        let scale = row.a.norm().max(reduced.norm()).max(1e-12);
        worst_pair = worst_pair.max((row.a - reduced).norm() / scale);
    }
    report.check("assembly_vs_reduced_rel", worst_pair, 1e-8 * profile.factor());

    // evolved front jump satisfies the front condition (close-pair sampling)
    let front_radius = cfg.radius + medium.c() * t;
    let dir = Vec3::new(0.6, 0.64, 0.48).normalized();
    let delta = 2e-3 * cfg.radius;
    let ahead = cauchy_solve(&init, &none, medium, dir * (front_radius + delta), t, budget)
        .map_err(|e| anyhow!("{e}"))?;
    let behind = cauchy_solve(&init, &none, medium, dir * (front_radius - delta), t, budget)
        .map_err(|e| anyhow!("{e}"))?;
    let front = FrontSpec::plane(dir, ahead, behind).map_err(|e| anyhow!("{e}"))?;
    let jump = front.jump();
    let rel = if jump.norm() > 1e-9 {
        jump_residual(&front).norm() / jump.norm()
    } else {
        1.0
    };
    report.check("evolved_front_condition_rel", rel, 5e-2 * profile.factor());

    Ok(FieldTable {
        scenario: "examples-2".into(),
        config_hash: hash.into(),
        epsilon: cfg.epsilon,
        mu: cfg.mu,
        time: t,
        rows,
    })
}

/// Rotating charged ball: potentials against the closed forms.
fn example3(
    cfg: &ScenarioConfig,
    medium: &Medium,
    budget: &QuadratureBudget,
    hash: &str,
    profile: ToleranceProfile,
    report: &mut Report,
) -> Result<FieldTable> {
    let rho0 = 3.0 * cfg.amplitude;
    let a = cfg.radius;
    let spin = cfg.spin;
    let src = StationarySource::rotating_ball(rho0, a, spin);
    let points: Vec<Vec3> = (0..12)
        .map(|i| {
            let r = 0.3 * a + 0.2 * a * i as f64;
            let ang = 0.5 * i as f64;
            Vec3::new(r * ang.cos(), r * ang.sin(), 0.35 * r)
        })
        .collect();
    let rows = field_rows(&points, 0.0, |x| {
        stationary_solve(&src, x, medium, budget).map_err(|e| anyhow!("{e}"))
    })?;

    // exterior Φ value: −ρ₀a³/(3R) at R = 2a, exactly −0.5 for ρ₀=3, a=1
    let x2 = Vec3::new(0.0, 0.0, 2.0 * a);
    let phi_analytic = analytic_example3(rho0, a, spin, x2, medium).phi;
    report.check(
        "phi_exterior_analytic",
        phi_analytic - (-rho0 * a * a * a / (3.0 * 2.0 * a)),
        1e-12,
    );
    let (phi_quad, _) = stationary_potentials(&src, x2, medium, budget).map_err(|e| anyhow!("{e}"))?;
    report.check(
        "phi_exterior_quadrature_rel",
        (phi_quad.re - phi_analytic).abs() / phi_analytic.abs(),
        1e-5 * profile.factor(),
    );

    // continuity of the analytic branches at R = a
    let eps = 1e-9;
    let fin = analytic_example3(rho0, a, spin, Vec3::new(a * (1.0 - eps), 0.0, 0.0), medium);
    let fout = analytic_example3(rho0, a, spin, Vec3::new(a * (1.0 + eps), 0.0, 0.0), medium);
    report.check("phi_continuity_at_boundary", fin.phi - fout.phi, 1e-7);
    report.check(
        "grad_phi_continuity_at_boundary",
        (fin.grad_phi - fout.grad_phi).norm(),
        1e-7,
    );

    // field against the closed forms at all points
    let mut worst = 0.0f64;
    for row in &rows {
        let closed = analytic_example3(rho0, a, spin, row.x, medium).a_field(medium);
        worst = worst.max((row.a - closed).norm() / closed.norm().max(1e-12));
    }
    report.check("field_closed_form_match_rel", worst, 5e-3 * profile.factor());

    Ok(FieldTable {
        scenario: "examples-3".into(),
        config_hash: hash.into(),
        epsilon: cfg.epsilon,
        mu: cfg.mu,
        time: 0.0,
        rows,
    })
}
