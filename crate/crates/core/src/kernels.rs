//! Scalar kernels and the causal Green-tensor convolution.
//!
//! The wave kernel ψ is a simple layer on the light cone:
//! (ψ∗f)(x,t) = −(1/4π) ∫ f(y, t − r/c)/r dV(y), r = ‖x−y‖, clipped to the
//! source support and the causal radius c·(t − t_start). Its time primitive
//! χ, the Helmholtz kernel e^{ikr}/(4πr) and the Newtonian kernel 1/(4πr)
//! share one ball-integration engine:
//!
//! * evaluation points outside the support integrate in source-centred
//!   spherical coordinates (smooth integrand, no clipping);
//! * points inside use evaluation-centred coordinates with per-ray clipping
//!   to the support ball, which removes the 1/r singularity exactly.

use num_complex::Complex64;

use crate::error::{check_step, Error, Result};
use crate::medium::Medium;
use crate::quad::{clip_ray_to_ball, gauss_legendre_on, QuadratureBudget, SphericalQuadrature};
use crate::source::SourceModel;
use crate::vec3::{ComplexVec3, Vec3};

/// Support metadata for a kernel application.
#[derive(Debug, Copy, Clone)]
pub struct Support {
    /// Densities vanish for ‖y‖ > radius.
    pub radius: f64,
    /// Densities vanish for s < t_start (−∞ for always-on sources).
    pub t_start: f64,
    /// The density handed to the kernel vanishes for s > t_end (set it only
    /// when that is true; +∞ otherwise). Tightens time-primitive windows.
    pub t_end: f64,
    /// Smallest spatial feature size; sets radial panel widths.
    pub scale: f64,
}

impl Support {
    pub fn new(radius: f64, t_start: f64, scale: f64) -> Support {
        Support { radius, t_start, t_end: f64::INFINITY, scale }
    }

    pub fn of_source(s: &SourceModel) -> Support {
        Support::new(s.support_radius(), s.t_start(), s.variation_scale())
    }

    pub fn spatial(radius: f64, scale: f64) -> Support {
        Support::new(radius, f64::NEG_INFINITY, scale)
    }
}

/// ∫_{ball ∩ r ≤ r_max} eval(y, r)/r dV(y) with r = ‖x−y‖, no prefactor.
fn ball_kernel_integral<T>(
    x: Vec3,
    sup: &Support,
    r_max: Option<f64>,
    budget: &QuadratureBudget,
    mut eval: impl FnMut(Vec3, f64) -> T,
) -> Result<T>
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default + Copy,
{
    let a = sup.radius;
    if a <= 0.0 {
        return Ok(T::default());
    }
    let rx = x.norm();
    if let Some(rm) = r_max {
        if rm <= rx - a {
            // support unreachable inside the causal radius
            return Ok(T::default());
        }
    }
    let target = (sup.scale * 0.5).min(a);
    let whole_ball_causal = match r_max {
        None => true,
        Some(rm) => rm >= rx + a,
    };

    // Source-centred coordinates need ‖x‖ comfortably outside the ball:
    // the 1/r factor is otherwise near-singular at the closest boundary
    // point. Inside that margin the evaluation-centred rule absorbs 1/r
    // into the radial measure exactly.
    if rx > 1.25 * a && whole_ball_causal {
        let sphere = SphericalQuadrature::gauss_product(budget.sphere_degree);
        let panels = budget.radial_panels(0.0, a, target);
        let per_panel = budget.radial_points;
        budget.check_evals(sphere.len() * panels.len() * per_panel)?;
        let mut acc = T::default();
        for (p0, p1) in panels {
            let (rs, ws) = gauss_legendre_on(per_panel, p0, p1);
            for (&rp, &wp) in rs.iter().zip(ws.iter()) {
                for (&w, &dir) in sphere.weights.iter().zip(sphere.nodes.iter()) {
                    let y = dir * rp;
                    let r = (x - y).norm();
                    acc = acc + eval(y, r) * (w * wp * rp * rp / r);
                }
            }
        }
        return Ok(acc);
    }

    // evaluation-centred coordinates with per-ray clipping
    let rm = r_max.unwrap_or(f64::INFINITY);
    let (pole, splits): (Vec3, Vec<f64>) = if rx < 1e-14 * a.max(1.0) {
        (Vec3::EZ, Vec::new())
    } else if rx > a {
        // silhouette cone of the support ball; the chord length behaves
        // like √(u − u*) there, so grade extra panels toward the cone
        let u_star = (1.0 - (a / rx) * (a / rx)).max(0.0).sqrt();
        let w = (1.0 - u_star) / 64.0;
        (
            (x * (-1.0 / rx)),
            vec![0.0, u_star, u_star + w, u_star + 4.0 * w, u_star + 16.0 * w],
        )
    } else {
        // interior: guard the grazing-ray layer near the boundary
        ((x * (-1.0 / rx)), vec![0.0])
    };
    let sphere = SphericalQuadrature::gauss_product_about(budget.sphere_degree, pole, &splits);
    let max_span = (rm.min(rx + a) - (rx - a).max(0.0)).min(2.0 * a).max(0.0);
    let worst_panels = budget.radial_panels(0.0, max_span, target).len();
    budget.check_evals(sphere.len() * worst_panels * budget.radial_points)?;

    let mut acc = T::default();
    for (&w, &dir) in sphere.weights.iter().zip(sphere.nodes.iter()) {
        let Some((r0, mut r1)) = clip_ray_to_ball(x, dir, a) else { continue };
        r1 = r1.min(rm);
        if r1 <= r0 {
            continue;
        }
        for (p0, p1) in budget.radial_panels(r0, r1, target) {
            let (rs, ws) = gauss_legendre_on(budget.radial_points, p0, p1);
            for (&r, &wr) in rs.iter().zip(ws.iter()) {
                acc = acc + eval(x + dir * r, r) * (w * wr * r);
            }
        }
    }
    Ok(acc)
}

/// (ψ ∗ f)(x, t) = −(1/4π) ∫ f(y, t − r/c)/r dV(y) for a scalar density.
pub fn retarded_potential(
    f: impl Fn(Vec3, f64) -> Complex64,
    sup: &Support,
    x: Vec3,
    t: f64,
    c: f64,
    budget: &QuadratureBudget,
) -> Result<Complex64> {
    let r_max = causal_radius(sup, t, c);
    let acc = ball_kernel_integral(x, sup, r_max, budget, |y, r| f(y, t - r / c))?;
    Ok(acc * (-0.25 / std::f64::consts::PI))
}

/// Vector version of [`retarded_potential`], sharing one node sweep.
pub fn retarded_potential_vec(
    f: impl Fn(Vec3, f64) -> ComplexVec3,
    sup: &Support,
    x: Vec3,
    t: f64,
    c: f64,
    budget: &QuadratureBudget,
) -> Result<ComplexVec3> {
    let r_max = causal_radius(sup, t, c);
    let acc = ball_kernel_integral(x, sup, r_max, budget, |y, r| f(y, t - r / c))?;
    Ok(acc * (-0.25 / std::f64::consts::PI))
}

fn causal_radius(sup: &Support, t: f64, c: f64) -> Option<f64> {
    if sup.t_start.is_finite() {
        Some(((t - sup.t_start) * c).max(0.0))
    } else {
        None
    }
}

/// (χ ∗ f)(x, t) = −(1/4π) ∫ F(y, t − r/c)/r dV(y) where F is the time
/// primitive of f from t_start; satisfies ∂t (χ∗f) = ψ∗f.
pub fn chi_potential(
    f: impl Fn(Vec3, f64) -> Complex64,
    sup: &Support,
    x: Vec3,
    t: f64,
    c: f64,
    budget: &QuadratureBudget,
) -> Result<Complex64> {
    if !sup.t_start.is_finite() {
        return Err(Error::InvalidArgument(
            "time primitive needs a finite source start time".into(),
        ));
    }
    let r_max = causal_radius(sup, t, c);
    let time_target = (sup.scale / c).max(1e-12);
    let acc = ball_kernel_integral(x, sup, r_max, budget, |y, r| {
        let tau = (t - r / c).min(sup.t_end);
        if tau <= sup.t_start {
            return Complex64::new(0.0, 0.0);
        }
        let mut prim = Complex64::new(0.0, 0.0);
        for (p0, p1) in budget.radial_panels(sup.t_start, tau, time_target) {
            let (ss, ws) = gauss_legendre_on(budget.time_points, p0, p1);
            for (&s, &w) in ss.iter().zip(ws.iter()) {
                prim += f(y, s) * w;
            }
        }
        prim
    })?;
    Ok(acc * (-0.25 / std::f64::consts::PI))
}

/// (1/4π) ∫ e^{ikr} f(y)/r dV(y) with the e^{−iωt} phase convention.
pub fn helmholtz_potential(
    f: impl Fn(Vec3) -> Complex64,
    sup: &Support,
    k: f64,
    x: Vec3,
    budget: &QuadratureBudget,
) -> Result<Complex64> {
    let acc = ball_kernel_integral(x, sup, None, budget, |y, r| {
        f(y) * Complex64::new(0.0, k * r).exp()
    })?;
    Ok(acc * (0.25 / std::f64::consts::PI))
}

/// Vector version of [`helmholtz_potential`].
pub fn helmholtz_potential_vec(
    f: impl Fn(Vec3) -> ComplexVec3,
    sup: &Support,
    k: f64,
    x: Vec3,
    budget: &QuadratureBudget,
) -> Result<ComplexVec3> {
    let acc = ball_kernel_integral(x, sup, None, budget, |y, r| {
        f(y) * Complex64::new(0.0, k * r).exp()
    })?;
    Ok(acc * (0.25 / std::f64::consts::PI))
}

/// (1/4π) ∫ f(y)/r dV(y): the k = 0 Helmholtz kernel, same quadrature path.
pub fn newtonian_potential(
    f: impl Fn(Vec3) -> Complex64,
    sup: &Support,
    x: Vec3,
    budget: &QuadratureBudget,
) -> Result<Complex64> {
    helmholtz_potential(f, sup, 0.0, x, budget)
}

/// Vector version of [`newtonian_potential`].
pub fn newtonian_potential_vec(
    f: impl Fn(Vec3) -> ComplexVec3,
    sup: &Support,
    x: Vec3,
    budget: &QuadratureBudget,
) -> Result<ComplexVec3> {
    helmholtz_potential_vec(f, sup, 0.0, x, budget)
}

/// Causal field of a bounded source:
/// Â = c⁻¹ ∂t(ψ∗j) + c ∇(ψ∗ρ) − i ∇×(ψ∗j),
/// with the outer derivatives taken by central differences on the smooth
/// convolution values. The step defaults to half the source's variation
/// scale, so mollified-source comparisons are dominated by an O(σ²) term.
pub fn green_tensor_apply(
    s: &SourceModel,
    x: Vec3,
    t: f64,
    medium: &Medium,
    budget: &QuadratureBudget,
) -> Result<ComplexVec3> {
    green_tensor_apply_with_step(s, x, t, medium, budget, 0.5 * s.variation_scale())
}

/// [`green_tensor_apply`] with a caller-supplied differentiation step.
pub fn green_tensor_apply_with_step(
    s: &SourceModel,
    x: Vec3,
    t: f64,
    medium: &Medium,
    budget: &QuadratureBudget,
    h: f64,
) -> Result<ComplexVec3> {
    let c = medium.c();
    let sup = Support::of_source(s);
    check_step(h, x.norm().max(1.0))?;
    let ht = h / c;

    let psi_j = |xx: Vec3, tt: f64| -> Result<ComplexVec3> {
        retarded_potential_vec(|y, ss| s.current(y, ss), &sup, xx, tt, c, budget)
    };
    let psi_rho = |xx: Vec3, tt: f64| -> Result<Complex64> {
        retarded_potential(|y, ss| s.rho(y, ss), &sup, xx, tt, c, budget)
    };

    // c⁻¹ ∂t (ψ∗j)
    let dt_term = (psi_j(x, t + ht)? - psi_j(x, t - ht)?) * (1.0 / (2.0 * ht * c));

    // c ∇(ψ∗ρ)
    let mut grad_term = ComplexVec3::ZERO;
    {
        let mut comps = [Complex64::new(0.0, 0.0); 3];
        for (i, comp) in comps.iter_mut().enumerate() {
            let e = Vec3::axis(i) * h;
            *comp = (psi_rho(x + e, t)? - psi_rho(x - e, t)?) * (c / (2.0 * h));
        }
        grad_term.x = comps[0];
        grad_term.y = comps[1];
        grad_term.z = comps[2];
    }

    // −i ∇×(ψ∗j)
    let mut d = [ComplexVec3::ZERO; 3];
    for (j, dj) in d.iter_mut().enumerate() {
        let e = Vec3::axis(j) * h;
        *dj = (psi_j(x + e, t)? - psi_j(x - e, t)?) * (1.0 / (2.0 * h));
    }
    let curl = ComplexVec3::new(d[1].z - d[2].y, d[2].x - d[0].z, d[0].y - d[1].x);
    let curl_term = curl * Complex64::new(0.0, -1.0);

    Ok(dt_term + grad_term + curl_term)
}

/// Finite-difference residual of rot rot A − grad div A + ΔA, which
/// vanishes identically for smooth fields. The first two operators are
/// nested first-order stencils, so the residual decays as O(h²).
pub fn vector_identity_residual(
    a: impl Fn(Vec3) -> ComplexVec3,
    x: Vec3,
    h: f64,
) -> Result<ComplexVec3> {
    check_step(h, x.norm().max(1.0))?;
    let rotrot = crate::fd::curl(|y| crate::fd::curl(&a, y, h), x, h);
    let graddiv = crate::fd::grad(|y| crate::fd::div(&a, y, h), x, h);
    let lap = crate::fd::laplacian(&a, x, h);
    Ok(rotrot - graddiv + lap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{gaussian3, SourceModel};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn budget() -> QuadratureBudget {
        QuadratureBudget::default()
    }

    #[test]
    fn zero_density_gives_zero() {
        let sup = Support::new(1.0, 0.0, 0.5);
        let v = retarded_potential(
            |_, _| Complex64::new(0.0, 0.0),
            &sup,
            Vec3::new(0.2, 0.0, 0.0),
            1.0,
            1.0,
            &budget(),
        )
        .unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn constant_ball_closed_form() {
        // f = θ(s) inside a ball much larger than ct:
        // (ψ∗f)(x,t) = −(1/4π)∫₀^{ct} (1/r) 4πr² dr = −(ct)²/2
        let sup = Support::new(50.0, 0.0, 4.0);
        let c = 1.3;
        let t = 0.9;
        let v = retarded_potential(
            |_, s| {
                if s >= 0.0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            },
            &sup,
            Vec3::new(0.3, -0.1, 0.2),
            t,
            c,
            &budget(),
        )
        .unwrap();
        let expected = -(c * t) * (c * t) / 2.0;
        assert_abs_diff_eq!(v.re, expected, epsilon = 1e-10);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn support_unreachable_returns_exact_zero() {
        let sup = Support::new(0.5, 0.0, 0.1);
        // ‖x‖ − a > c t: nothing causal yet
        let v = retarded_potential(
            |_, _| Complex64::new(1.0, 0.0),
            &sup,
            Vec3::new(3.0, 0.0, 0.0),
            1.0,
            1.0,
            &budget(),
        )
        .unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn mollified_impulse_matches_brute_force_grid() {
        // f = Gaussian in space and time; oracle = direct Cartesian sum of
        // f(y, t − r/c)/r over a fine grid (independent discretization).
        let sigma = 0.25;
        let tau = 0.2;
        let t0 = 1.0;
        let f = move |y: Vec3, s: f64| {
            Complex64::new(
                gaussian3(y, sigma) * (-0.5 * ((s - t0) / tau).powi(2)).exp(),
                0.0,
            )
        };
        let sup = Support::new(6.0 * sigma, 0.0, sigma);
        let c = 1.0;
        let t = 2.6;
        let x = Vec3::new(1.6, 0.0, 0.0); // ‖x‖ = c(t − t0): on the mollified cone
        let fast = retarded_potential(f, &sup, x, t, c, &budget()).unwrap();

        let n = 60;
        let a = sup.radius;
        let h = 2.0 * a / n as f64;
        let mut oracle = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let y = Vec3::new(
                        -a + (i as f64 + 0.5) * h,
                        -a + (j as f64 + 0.5) * h,
                        -a + (k as f64 + 0.5) * h,
                    );
                    if y.norm() >= a {
                        continue;
                    }
                    let r = (x - y).norm();
                    oracle += f(y, t - r / c) * (h * h * h / r);
                }
            }
        }
        oracle *= -0.25 / PI;
        let rel = (fast - oracle).norm() / oracle.norm();
        assert!(rel < 2e-3, "fast {fast}, oracle {oracle}, rel {rel:e}");
    }

    #[test]
    fn chi_time_derivative_matches_psi() {
        let sigma = 0.3;
        let f = move |y: Vec3, s: f64| {
            Complex64::new(gaussian3(y, sigma) * (-0.5 * ((s - 1.0) / 0.25).powi(2)).exp(), 0.0)
        };
        let sup = Support::new(6.0 * sigma, 0.0, sigma);
        let x = Vec3::new(0.9, 0.4, -0.2);
        let t = 2.2;
        let ht = 1e-3;
        let chi_p = chi_potential(f, &sup, x, t + ht, 1.0, &budget()).unwrap();
        let chi_m = chi_potential(f, &sup, x, t - ht, 1.0, &budget()).unwrap();
        let dchi = (chi_p - chi_m) / (2.0 * ht);
        let psi = retarded_potential(f, &sup, x, t, 1.0, &budget()).unwrap();
        assert!(
            (dchi - psi).norm() < 1e-6 + 1e-4 * psi.norm(),
            "d(chi)/dt = {dchi}, psi = {psi}"
        );
    }

    #[test]
    fn chi_reaches_newtonian_steady_state() {
        // impulsive time profile with unit mass: χ∗f → Newtonian potential
        let sigma = 0.3;
        let tau = 0.1;
        let t0 = 0.6;
        let space = move |y: Vec3| Complex64::new(gaussian3(y, sigma), 0.0);
        let f = move |y: Vec3, s: f64| {
            space(y) * ((-0.5 * ((s - t0) / tau).powi(2)).exp() / (tau * (2.0 * PI).sqrt()))
        };
        let mut sup = Support::new(6.0 * sigma, 0.0, sigma);
        sup.t_end = t0 + 8.0 * tau;
        let x = Vec3::new(0.8, -0.3, 0.5);
        let late = chi_potential(f, &sup, x, 25.0, 1.0, &budget()).unwrap();
        let newton = newtonian_potential(space, &sup, x, &budget()).unwrap();
        // χ carries −1/4π, the Newtonian kernel here +1/4π
        assert!(
            (late + newton).norm() < 1e-6,
            "late χ∗f = {late}, Newtonian = {newton}"
        );
    }

    #[test]
    fn helmholtz_far_field_of_mollified_point() {
        // exterior field of a radial Gaussian: the point kernel times the
        // Gaussian form factor e^{−k²σ²/2}
        let sigma = 0.05;
        let k = 3.0;
        let f = move |y: Vec3| Complex64::new(gaussian3(y, sigma), 0.0);
        let sup = Support::new(6.0 * sigma, f64::NEG_INFINITY, sigma);
        let x = Vec3::new(0.0, 2.5, 0.0);
        let v = helmholtz_potential(f, &sup, k, x, &budget()).unwrap();
        let r = x.norm();
        let expected = Complex64::new(0.0, k * r).exp() / (4.0 * PI * r)
            * (-0.5 * k * k * sigma * sigma).exp();
        let rel = (v - expected).norm() / expected.norm();
        assert!(rel < 1e-4, "rel = {rel:e}");
    }

    #[test]
    fn helmholtz_at_zero_wavenumber_is_newtonian_exactly() {
        let f = |y: Vec3| Complex64::new(gaussian3(y, 0.2), 0.0);
        let sup = Support::new(1.2, f64::NEG_INFINITY, 0.2);
        for x in [Vec3::new(0.1, 0.0, 0.3), Vec3::new(2.0, 1.0, 0.0)] {
            let h0 = helmholtz_potential(f, &sup, 0.0, x, &budget()).unwrap();
            let nw = newtonian_potential(f, &sup, x, &budget()).unwrap();
            assert_eq!(h0, nw);
        }
    }

    #[test]
    fn newtonian_uniform_ball_interior_and_exterior() {
        // (1/4πr)∗ρ₀ over a ball: ρ₀a³/(3R) outside, ρ₀(a² − R²/3)/2 inside
        let rho0 = 3.0;
        let a = 1.0;
        let f = move |y: Vec3| {
            if y.norm() < a {
                Complex64::new(rho0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        };
        let sup = Support::new(a, f64::NEG_INFINITY, 0.25);
        let b = budget().with_sphere_degree(31);

        let x_out = Vec3::new(0.0, 0.0, 2.0);
        let v_out = newtonian_potential(f, &sup, x_out, &b).unwrap();
        assert_abs_diff_eq!(v_out.re, rho0 * a * a * a / (3.0 * 2.0), epsilon = 1e-8);

        let x_in = Vec3::new(0.3, -0.2, 0.1);
        let v_in = newtonian_potential(f, &sup, x_in, &b).unwrap();
        let r = x_in.norm();
        assert_abs_diff_eq!(v_in.re, 0.5 * rho0 * (a * a - r * r / 3.0), epsilon = 1e-6);
    }

    #[test]
    fn green_tensor_zero_source() {
        let s = SourceModel::zero();
        let v = green_tensor_apply(&s, Vec3::new(1.0, 0.0, 0.0), 1.0, &Medium::VACUUM, &budget())
            .unwrap();
        assert_eq!(v, ComplexVec3::ZERO);
    }

    #[test]
    fn green_tensor_reproduces_coulomb_field_after_birth() {
        let q = 4.0 * PI;
        let sigma = 0.15;
        let m = Medium::VACUUM;
        let s = SourceModel::born_charge(Complex64::new(q, 0.0), sigma, &m);
        let x = Vec3::new(0.0, 0.0, 1.2);
        let t = x.norm() / m.c() + 1.5; // comfortably past the transient
        let field = green_tensor_apply(&s, x, t, &m, &budget().with_sphere_degree(33)).unwrap();
        let r = x.norm();
        let expected = x * (q * m.c() / (4.0 * PI * r * r * r));
        let rel = (field - ComplexVec3::from_re(expected)).norm() / expected.norm();
        // dominated by the O(σ²) differentiation step on the convolution
        assert!(rel < 3e-2, "rel = {rel:e}");
    }

    #[test]
    fn green_tensor_vanishes_outside_light_cone() {
        let m = Medium::VACUUM;
        let s = SourceModel::born_charge(Complex64::new(1.0, 0.0), 0.1, &m);
        let t = 0.5;
        let x = Vec3::new(0.0, 0.0, s.support_radius() + m.c() * t + 0.5);
        let v = green_tensor_apply(&s, x, t, &m, &budget()).unwrap();
        assert_eq!(v, ComplexVec3::ZERO);
    }

    #[test]
    fn identity_residual_exact_zero_on_linear_fields() {
        let a = |x: Vec3| {
            ComplexVec3::from_re_im(
                Vec3::new(2.0 * x.x + x.y, -x.z, 0.5 * x.x),
                Vec3::new(x.y, x.z, -x.x + 1.0),
            )
        };
        let r = vector_identity_residual(a, Vec3::new(0.4, -0.7, 0.2), 1e-2).unwrap();
        assert!(r.norm() < 1e-13);
    }

    #[test]
    fn identity_residual_second_order_on_trig_fields() {
        let a = |x: Vec3| {
            ComplexVec3::from_re_im(
                Vec3::new((x.y).sin(), (2.0 * x.z).cos() * x.x, (x.x + x.y).sin()),
                Vec3::new((x.z).cos(), (x.x).sin(), x.y * x.y * x.z),
            )
        };
        let x = Vec3::new(0.3, 0.1, -0.4);
        let r1 = vector_identity_residual(a, x, 2e-2).unwrap().norm();
        let r2 = vector_identity_residual(a, x, 1e-2).unwrap().norm();
        let order = (r1 / r2).log2();
        assert!((order - 2.0).abs() < 0.35, "order = {order}");
    }

    #[test]
    fn budget_is_enforced() {
        let sup = Support::new(1.0, 0.0, 1e-6);
        let tight = QuadratureBudget { max_evals: 1000, ..Default::default() };
        let r = retarded_potential(
            |_, _| Complex64::new(1.0, 0.0),
            &sup,
            Vec3::new(0.2, 0.0, 0.0),
            1.0,
            1.0,
            &tight,
        );
        assert!(matches!(r, Err(Error::QuadratureBudgetExceeded { .. })));
    }
}
