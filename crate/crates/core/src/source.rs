//! Source and initial-data models with bounded support.
//!
//! Densities are closures evaluable at any point/time; every model declares
//! a support radius (ball about the origin), a start time before which it
//! vanishes, and a variation scale used to pick quadrature and
//! finite-difference resolutions. Point charges and currents are represented
//! by isotropic Gaussians of caller-chosen width σ.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fd;
use crate::medium::Medium;
use crate::vec3::{ComplexVec3, Vec3};

pub type ScalarDensityFn = dyn Fn(Vec3, f64) -> Complex64 + Send + Sync;
pub type VectorDensityFn = dyn Fn(Vec3, f64) -> ComplexVec3 + Send + Sync;
pub type ScalarFieldFn = dyn Fn(Vec3) -> Complex64 + Send + Sync;
pub type VectorFieldFn = dyn Fn(Vec3) -> ComplexVec3 + Send + Sync;

/// Error function, accurate to ~1e-14: alternating series for small
/// arguments, Lentz continued fraction for the complement beyond.
pub fn erf(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 2.5 {
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        for n in 1..120 {
            let nf = n as f64;
            term *= -x2 / nf;
            let add = term / (2.0 * nf + 1.0);
            sum += add;
            if add.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        2.0 / PI.sqrt() * sum
    } else {
        let e = erfc_cf(ax);
        if x > 0.0 {
            1.0 - e
        } else {
            e - 1.0
        }
    }
}

fn erfc_cf(x: f64) -> f64 {
    // erfc(x) = exp(-x²)/√π · 1/(x + 1/2/(x + 1/(x + 3/2/(x + …))))
    let mut f = x;
    for k in (1..=60).rev() {
        f = x + (k as f64) * 0.5 / f;
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

/// Unit-mass isotropic Gaussian of width σ.
pub fn gaussian3(x: Vec3, sigma: f64) -> f64 {
    let s2 = sigma * sigma;
    (2.0 * PI * s2).powf(-1.5) * (-x.norm_sqr() / (2.0 * s2)).exp()
}

/// Gaussian hard-truncated at the support radius (mass loss ~7e-8 at 6σ).
fn truncated_gaussian3(x: Vec3, sigma: f64, support: f64) -> f64 {
    if x.norm_sqr() > support * support {
        0.0
    } else {
        gaussian3(x, sigma)
    }
}

/// Mass of the width-σ Gaussian enclosed in the ball of radius r.
pub fn gaussian_enclosed_mass(r: f64, sigma: f64) -> f64 {
    let u = r / sigma;
    erf(u / std::f64::consts::SQRT_2) - (2.0 / PI).sqrt() * u * (-0.5 * u * u).exp()
}

/// C² smoothstep ramp: 0 for u ≤ 0, 1 for u ≥ 1.
pub fn smoothstep(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        u * u * u * (10.0 - 15.0 * u + 6.0 * u * u)
    }
}

/// Derivative of [`smoothstep`].
pub fn smoothstep_deriv(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        0.0
    } else {
        30.0 * u * u * (1.0 - u) * (1.0 - u)
    }
}

/// Bounded-support complex charge and current densities ρ(x,t), j(x,t).
#[derive(Clone)]
pub struct SourceModel {
    rho: Arc<ScalarDensityFn>,
    current: Arc<VectorDensityFn>,
    support_radius: f64,
    t_start: f64,
    /// The current vanishes for t > t_end (+∞ for always-on sources).
    t_end: f64,
    variation_scale: f64,
    conserves_charge: bool,
}

impl SourceModel {
    pub fn new(
        rho: impl Fn(Vec3, f64) -> Complex64 + Send + Sync + 'static,
        current: impl Fn(Vec3, f64) -> ComplexVec3 + Send + Sync + 'static,
        support_radius: f64,
        t_start: f64,
        variation_scale: f64,
        conserves_charge: bool,
    ) -> SourceModel {
        SourceModel {
            rho: Arc::new(rho),
            current: Arc::new(current),
            support_radius,
            t_start,
            t_end: f64::INFINITY,
            variation_scale,
            conserves_charge,
        }
    }

    /// Declare that the current vanishes after `t_end` (tightens the time
    /// windows of primitive integrals).
    pub fn with_t_end(mut self, t_end: f64) -> SourceModel {
        self.t_end = t_end;
        self
    }

    /// The trivial source ρ = 0, j = 0.
    pub fn zero() -> SourceModel {
        SourceModel::new(
            |_, _| Complex64::new(0.0, 0.0),
            |_, _| ComplexVec3::ZERO,
            0.0,
            0.0,
            1.0,
            true,
        )
    }

    /// Charge q "born" at the origin at t = 0: mollified ρ = q δ(x) θ(t)
    /// with the compensating current of the conservation law. The pair
    /// conserves charge exactly; the time ramp lasts σ/c.
    pub fn born_charge(q: Complex64, sigma: f64, medium: &Medium) -> SourceModel {
        let support = 6.0 * sigma;
        let ramp = sigma / medium.c();
        let rho =
            move |x: Vec3, t: f64| q * truncated_gaussian3(x, sigma, support) * smoothstep(t / ramp);
        let current = move |x: Vec3, t: f64| {
            let r = x.norm();
            if r == 0.0 || r > support {
                return ComplexVec3::ZERO;
            }
            let mass = gaussian_enclosed_mass(r, sigma);
            // grad of the mollified Coulomb potential: −x̂ · M(r) / (4π r²)
            let grad_phi = x * (-mass / (4.0 * PI * r * r * r));
            ComplexVec3::from_re(grad_phi) * (q * (smoothstep_deriv(t / ramp) / ramp))
        };
        SourceModel::new(rho, current, support, 0.0, sigma, true).with_t_end(ramp)
    }

    /// Time-independent smooth charge blob, no current.
    pub fn static_charge_ball(q: Complex64, sigma: f64) -> SourceModel {
        SourceModel::new(
            move |x, _t| q * truncated_gaussian3(x, sigma, 6.0 * sigma),
            |_, _| ComplexVec3::ZERO,
            6.0 * sigma,
            f64::NEG_INFINITY,
            sigma,
            false,
        )
    }

    /// Localized current pulse j = p·G_σ(x)·g(t) with a Gaussian time
    /// profile centred at `t_center` of width `t_width`, plus the charge
    /// required by the conservation law.
    pub fn gaussian_current_pulse(
        p: ComplexVec3,
        sigma: f64,
        t_center: f64,
        t_width: f64,
    ) -> SourceModel {
        let t_start = t_center - 6.0 * t_width;
        let profile = move |t: f64| (-0.5 * ((t - t_center) / t_width).powi(2)).exp();
        // time primitive of the profile, for the conserving ρ = −div ∫j
        let primitive = move |t: f64| {
            t_width
                * (PI / 2.0).sqrt()
                * (erf((t - t_center) / (std::f64::consts::SQRT_2 * t_width))
                    - erf((t_start - t_center) / (std::f64::consts::SQRT_2 * t_width)))
        };
        let support = 6.0 * sigma;
        let current = move |x: Vec3, t: f64| {
            if t < t_start {
                return ComplexVec3::ZERO;
            }
            p * (truncated_gaussian3(x, sigma, support) * profile(t))
        };
        let rho = move |x: Vec3, t: f64| {
            if t < t_start {
                return Complex64::new(0.0, 0.0);
            }
            // div(p G) = (p · x̂) dG/dr = −(p·x) G / σ²
            let div_j_spatial =
                p.dot_real(x) * (-truncated_gaussian3(x, sigma, support) / (sigma * sigma));
            -div_j_spatial * primitive(t)
        };
        SourceModel::new(rho, current, 6.0 * sigma, t_start, sigma.min(t_width), true)
            .with_t_end(t_center + 6.0 * t_width)
    }

    #[inline]
    pub fn rho(&self, x: Vec3, t: f64) -> Complex64 {
        (self.rho)(x, t)
    }

    #[inline]
    pub fn current(&self, x: Vec3, t: f64) -> ComplexVec3 {
        (self.current)(x, t)
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn variation_scale(&self) -> f64 {
        self.variation_scale
    }

    pub fn conserves_charge(&self) -> bool {
        self.conserves_charge
    }

    pub fn is_zero(&self) -> bool {
        self.support_radius == 0.0
    }

    /// Largest conservation residual over a deterministic sample of points
    /// inside the support, for models that claim conservation.
    pub fn max_conservation_residual(&self, t: f64, h: f64) -> Result<f64> {
        if !self.conserves_charge {
            return Err(Error::InvalidArgument(
                "source model does not claim charge conservation".into(),
            ));
        }
        let a = self.support_radius.max(h);
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let x = Vec3::new(
                        (i as f64 / 3.0 - 0.5) * a,
                        (j as f64 / 3.0 - 0.5) * a,
                        (k as f64 / 3.0 - 0.5) * a,
                    );
                    let r = crate::field::charge_conservation_residual(self, x, t, h)?;
                    worst = worst.max(r.norm());
                }
            }
        }
        Ok(worst)
    }
}

/// Cauchy initial data: A(x, 0) = a0(x), compactly supported.
#[derive(Clone)]
pub struct InitialData {
    a0: Arc<VectorFieldFn>,
    rho0: Option<Arc<ScalarFieldFn>>,
    support_radius: f64,
    variation_scale: f64,
}

impl InitialData {
    pub fn new(
        a0: impl Fn(Vec3) -> ComplexVec3 + Send + Sync + 'static,
        rho0: Option<Arc<ScalarFieldFn>>,
        support_radius: f64,
        variation_scale: f64,
    ) -> InitialData {
        InitialData { a0: Arc::new(a0), rho0, support_radius, variation_scale }
    }

    pub fn zero() -> InitialData {
        InitialData::new(|_| ComplexVec3::ZERO, None, 0.0, 1.0)
    }

    /// Toroidal field f(R)·(ẑ × x): divergence-free and tangential to every
    /// sphere about the origin, so the initial complex charge vanishes and
    /// no surface charge sits on the support boundary.
    pub fn toroidal(
        profile: impl Fn(f64) -> f64 + Send + Sync + 'static,
        support_radius: f64,
        variation_scale: f64,
    ) -> InitialData {
        let a = support_radius;
        let a0 = move |x: Vec3| {
            let r = x.norm();
            if r >= a {
                return ComplexVec3::ZERO;
            }
            ComplexVec3::from_re(Vec3::new(-x.y, x.x, 0.0) * profile(r))
        };
        InitialData::new(a0, Some(Arc::new(|_| Complex64::new(0.0, 0.0))), a, variation_scale)
    }

    /// Smooth compact toroidal bump: polynomial profile (1 − (r/a)²)⁸,
    /// C⁷ at the support boundary. Polynomial data keeps the Kirchhoff
    /// sphere quadratures exact at moderate degree.
    pub fn toroidal_bump(amplitude: f64, support_radius: f64) -> InitialData {
        let a = support_radius;
        InitialData::toroidal(
            move |r| {
                let u = (r / a) * (r / a);
                if u >= 1.0 {
                    0.0
                } else {
                    amplitude * (1.0 - u).powi(8)
                }
            },
            a,
            support_radius / 2.0,
        )
    }

    /// Toroidal field that stays finite up to the support sphere: the
    /// initial state of an expanding shock (the field jumps at R = a).
    pub fn toroidal_shock(amplitude: f64, support_radius: f64) -> InitialData {
        let a = support_radius;
        InitialData::toroidal(
            move |r| amplitude * (1.0 - 0.5 * (r / a) * (r / a)),
            a,
            support_radius / 2.0,
        )
    }

    #[inline]
    pub fn a0(&self, x: Vec3) -> ComplexVec3 {
        (self.a0)(x)
    }

    /// Initial complex charge c⁻¹ div A⁰: supplied, or finite differences.
    pub fn rho0(&self, x: Vec3, medium: &Medium) -> Complex64 {
        match &self.rho0 {
            Some(f) => f(x),
            None => {
                let h = fd::default_step(self.variation_scale);
                fd::div(|y| self.a0(y), x, h) / medium.c()
            }
        }
    }

    pub fn has_explicit_rho0(&self) -> bool {
        self.rho0.is_some()
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn variation_scale(&self) -> f64 {
        self.variation_scale
    }

    pub fn is_zero(&self) -> bool {
        self.support_radius == 0.0
    }
}

/// Time-harmonic source J(x)·e^{−iωt}.
#[derive(Clone)]
pub struct MonochromaticSource {
    current: Arc<VectorFieldFn>,
    rho: Option<Arc<ScalarFieldFn>>,
    omega: f64,
    k: f64,
    support_radius: f64,
    variation_scale: f64,
}

impl MonochromaticSource {
    pub fn new(
        current: impl Fn(Vec3) -> ComplexVec3 + Send + Sync + 'static,
        omega: f64,
        medium: &Medium,
        support_radius: f64,
        variation_scale: f64,
    ) -> Result<MonochromaticSource> {
        if !(omega > 0.0) {
            return Err(Error::InvalidArgument(format!("omega must be > 0, got {omega}")));
        }
        let k = omega / medium.c();
        Ok(MonochromaticSource {
            current: Arc::new(current),
            rho: None,
            omega,
            k,
            support_radius,
            variation_scale,
        })
    }

    /// Mollified point dipole J = p·δ_σ(x).
    pub fn dipole(
        p: ComplexVec3,
        sigma: f64,
        omega: f64,
        medium: &Medium,
    ) -> Result<MonochromaticSource> {
        MonochromaticSource::new(
            move |x| p * gaussian3(x, sigma),
            omega,
            medium,
            6.0 * sigma,
            sigma,
        )
    }

    /// Solenoidal rotating-ball current amplitude (div J = 0).
    pub fn rotating_ball(
        rho0: f64,
        a: f64,
        spin: f64,
        omega: f64,
        medium: &Medium,
    ) -> Result<MonochromaticSource> {
        let mut s = MonochromaticSource::new(
            move |x| {
                if x.norm() >= a {
                    ComplexVec3::ZERO
                } else {
                    ComplexVec3::from_re(Vec3::new(-x.y, x.x, 0.0) * (rho0 * spin))
                }
            },
            omega,
            medium,
            a,
            a / 2.0,
        )?;
        s.rho = Some(Arc::new(|_| Complex64::new(0.0, 0.0)));
        Ok(s)
    }

    #[inline]
    pub fn current(&self, x: Vec3) -> ComplexVec3 {
        (self.current)(x)
    }

    /// Charge amplitude ρ = −i ω⁻¹ div J: supplied, or finite differences.
    pub fn rho(&self, x: Vec3) -> Complex64 {
        match &self.rho {
            Some(f) => f(x),
            None => {
                let h = fd::default_step(self.variation_scale);
                let div_j = fd::div(|y| self.current(y), x, h);
                Complex64::new(0.0, -1.0 / self.omega) * div_j
            }
        }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn variation_scale(&self) -> f64 {
        self.variation_scale
    }
}

/// Time-independent source for the Poisson regime.
#[derive(Clone)]
pub struct StationarySource {
    current: Arc<VectorFieldFn>,
    rho: Arc<ScalarFieldFn>,
    support_radius: f64,
    variation_scale: f64,
}

impl StationarySource {
    pub fn new(
        current: impl Fn(Vec3) -> ComplexVec3 + Send + Sync + 'static,
        rho: impl Fn(Vec3) -> Complex64 + Send + Sync + 'static,
        support_radius: f64,
        variation_scale: f64,
    ) -> StationarySource {
        StationarySource {
            current: Arc::new(current),
            rho: Arc::new(rho),
            support_radius,
            variation_scale,
        }
    }

    /// Uniformly charged ball, no current.
    pub fn uniform_ball(rho0: Complex64, a: f64) -> StationarySource {
        StationarySource::new(
            |_| ComplexVec3::ZERO,
            move |x| if x.norm() < a { rho0 } else { Complex64::new(0.0, 0.0) },
            a,
            a / 2.0,
        )
    }

    /// Uniform ball charge rotating about the x₃ axis with angular speed ω:
    /// J = ρ(x)·(ϖ × x), ϖ = (0, 0, ω).
    pub fn rotating_ball(rho0: f64, a: f64, omega: f64) -> StationarySource {
        StationarySource::new(
            move |x| {
                if x.norm() < a {
                    ComplexVec3::from_re(Vec3::new(-x.y, x.x, 0.0) * (rho0 * omega))
                } else {
                    ComplexVec3::ZERO
                }
            },
            move |x| {
                if x.norm() < a {
                    Complex64::new(rho0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            },
            a,
            a / 2.0,
        )
    }

    #[inline]
    pub fn current(&self, x: Vec3) -> ComplexVec3 {
        (self.current)(x)
    }

    #[inline]
    pub fn rho(&self, x: Vec3) -> Complex64 {
        (self.rho)(x)
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn variation_scale(&self) -> f64 {
        self.variation_scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn erf_reference_values() {
        // Abramowitz & Stegun table values
        assert_abs_diff_eq!(erf(0.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(erf(0.5), 0.5204998778130465, epsilon = 1e-13);
        assert_abs_diff_eq!(erf(1.0), 0.8427007929497149, epsilon = 1e-13);
        assert_abs_diff_eq!(erf(2.0), 0.9953222650189527, epsilon = 1e-13);
        assert_abs_diff_eq!(erf(3.0), 0.9999779095030014, epsilon = 1e-13);
        assert_abs_diff_eq!(erf(-1.0), -0.8427007929497149, epsilon = 1e-13);
        assert_abs_diff_eq!(erf(5.0), 0.9999999999984626, epsilon = 1e-14);
    }

    #[test]
    fn gaussian_mass_converges_to_one() {
        assert_abs_diff_eq!(gaussian_enclosed_mass(8.0, 1.0), 1.0, epsilon = 1e-12);
        assert!(gaussian_enclosed_mass(1.0, 1.0) < 0.5);
    }

    #[test]
    fn gaussian_normalization_by_quadrature() {
        // radial quadrature of 4π r² G(r)
        let sigma = 0.3;
        let n = 4000;
        let rmax = 8.0 * sigma;
        let dr = rmax / n as f64;
        let mut sum = 0.0;
        for i in 0..n {
            let r = (i as f64 + 0.5) * dr;
            sum += 4.0 * PI * r * r * gaussian3(Vec3::new(r, 0.0, 0.0), sigma) * dr;
        }
        assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn sources_vanish_outside_support() {
        let s = SourceModel::born_charge(Complex64::new(2.0, 1.0), 0.2, &Medium::VACUUM);
        let far = Vec3::new(0.0, 0.0, s.support_radius() * 1.01);
        assert!(s.rho(far, 0.5).norm() < 1e-12);
        assert_eq!(s.current(far, 0.5), ComplexVec3::ZERO);
    }

    #[test]
    fn born_charge_conserves() {
        let s = SourceModel::born_charge(Complex64::new(1.0, 0.0), 0.25, &Medium::VACUUM);
        let worst = s.max_conservation_residual(0.1, 2e-5).unwrap();
        assert!(worst < 1e-6, "worst residual {worst:e}");
    }

    #[test]
    fn current_pulse_conserves() {
        let s = SourceModel::gaussian_current_pulse(
            ComplexVec3::from_re(Vec3::new(0.3, -0.2, 1.0)),
            0.4,
            1.0,
            0.2,
        );
        let worst = s.max_conservation_residual(1.05, 1e-4).unwrap();
        assert!(worst < 1e-6, "worst residual {worst:e}");
    }

    #[test]
    fn toroidal_data_has_zero_divergence() {
        let init = InitialData::toroidal_bump(1.0, 1.0);
        for x in [Vec3::new(0.3, 0.1, -0.2), Vec3::new(0.0, 0.5, 0.4)] {
            let div = fd::div(|y| init.a0(y), x, 1e-5);
            assert!(div.norm() < 1e-8);
            // tangential to the sphere through x
            assert!(init.a0(x).dot_real(x).norm() < 1e-14);
        }
    }

    #[test]
    fn mono_rho_matches_divergence_law() {
        let m = Medium::VACUUM;
        let src = MonochromaticSource::dipole(
            ComplexVec3::from_re(Vec3::EZ),
            0.2,
            2.0,
            &m,
        )
        .unwrap();
        let x = Vec3::new(0.1, 0.05, -0.12);
        let h = 1e-5;
        let div_j = fd::div(|y| src.current(y), x, h);
        let expected = Complex64::new(0.0, -1.0 / src.omega()) * div_j;
        assert!((src.rho(x) - expected).norm() < 1e-8);
        assert_abs_diff_eq!(src.k() * m.c(), src.omega(), epsilon = 1e-12);
    }
}
