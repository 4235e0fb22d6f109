//! Field conversions and pointwise conservation diagnostics.
//!
//! The complex field is A = √ε E + i √μ H. Its modulus carries the energy:
//! W = ½‖A‖², and the Poynting vector is recovered from A × A*.

use num_complex::Complex64;

use crate::error::{check_step, Result};
use crate::fd;
use crate::medium::Medium;
use crate::source::SourceModel;
use crate::vec3::{ComplexVec3, Vec3};

/// Real electric/magnetic field strengths.
#[derive(Debug, Copy, Clone, PartialEq, Default)]
pub struct EHField {
    pub e: Vec3,
    pub h: Vec3,
}

impl EHField {
    pub fn new(e: Vec3, h: Vec3) -> EHField {
        EHField { e, h }
    }
}

/// Real electric/magnetic source densities, same shape as the fields.
#[derive(Debug, Copy, Clone, PartialEq, Default)]
pub struct EHSources {
    pub j_e: Vec3,
    pub j_h: Vec3,
    pub rho_e: f64,
    pub rho_h: f64,
}

impl EHSources {
    /// Complex current j = √μ jᴱ − i √ε jᴴ.
    pub fn complex_current(&self, m: &Medium) -> ComplexVec3 {
        ComplexVec3::from_re_im(self.j_e * m.sqrt_mu(), -self.j_h * m.sqrt_epsilon())
    }

    /// Complex charge ρ = √μ ρᴱ − i √ε ρᴴ.
    pub fn complex_charge(&self, m: &Medium) -> Complex64 {
        Complex64::new(m.sqrt_mu() * self.rho_e, -m.sqrt_epsilon() * self.rho_h)
    }
}

/// A = √ε E + i √μ H.
pub fn a_from_eh(f: &EHField, m: &Medium) -> ComplexVec3 {
    ComplexVec3::from_re_im(f.e * m.sqrt_epsilon(), f.h * m.sqrt_mu())
}

/// Inverse of [`a_from_eh`]: E = Re A / √ε, H = Im A / √μ.
pub fn eh_from_a(a: &ComplexVec3, m: &Medium) -> EHField {
    EHField { e: a.re() / m.sqrt_epsilon(), h: a.im() / m.sqrt_mu() }
}

/// Complex charge from a pointwise divergence value: ρ = c⁻¹ div A.
pub fn complex_charge(div_a: Complex64, m: &Medium) -> Complex64 {
    div_a / m.c()
}

/// Energy density W = ½‖a‖² = ½(a, a*) = ½(ε‖E‖² + μ‖H‖²).
pub fn energy_density(a: &ComplexVec3) -> f64 {
    0.5 * a.norm_sqr()
}

/// Poynting vector P = E × H, evaluated as Re[(i c / 2)(a × a*)].
///
/// a × a* is purely imaginary componentwise, so the real part picks up the
/// whole product. The sign is pinned by the energy law ∂t W + div P = …,
/// which requires P = E × H.
pub fn poynting(a: &ComplexVec3, m: &Medium) -> Vec3 {
    let cross = a.cross(a.conj());
    let factor = Complex64::new(0.0, 0.5 * m.c());
    Vec3::new(
        (factor * cross.x).re,
        (factor * cross.y).re,
        (factor * cross.z).re,
    )
}

/// Central-difference residual of the charge law ∂t ρ + div j at (x, t).
pub fn charge_conservation_residual(
    s: &SourceModel,
    x: Vec3,
    t: f64,
    h: f64,
) -> Result<Complex64> {
    check_step(h, t.abs().max(x.norm()))?;
    let dt_rho = fd::ddt(|tt| s.rho(x, tt), t, h);
    let div_j = fd::div(|xx| s.current(xx, t), x, h);
    Ok(dt_rho + div_j)
}

/// Central-difference residual of the energy law
/// ∂t W + div P + c·Re(j, A*) at (x, t) for a sampled field.
pub fn energy_law_residual<F>(
    field: F,
    s: &SourceModel,
    m: &Medium,
    x: Vec3,
    t: f64,
    h: f64,
) -> Result<f64>
where
    F: Fn(Vec3, f64) -> ComplexVec3,
{
    check_step(h, t.abs().max(x.norm()))?;
    let dt_w = fd::ddt(|tt| energy_density(&field(x, tt)), t, h);
    let div_p = {
        let mut sum = 0.0;
        for i in 0..3 {
            let e = Vec3::axis(i) * h;
            sum += (poynting(&field(x + e, t), m)[i] - poynting(&field(x - e, t), m)[i])
                / (2.0 * h);
        }
        sum
    };
    let work = m.c() * s.current(x, t).dot(field(x, t).conj()).re;
    Ok(dt_w + div_p + work)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::SourceModel;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    #[test]
    fn a_from_eh_direct_substitution() {
        let m = Medium::VACUUM;
        let zero = a_from_eh(&EHField::default(), &m);
        assert_eq!(zero, ComplexVec3::ZERO);

        let a = a_from_eh(&EHField::new(Vec3::EX, Vec3::EY), &m);
        assert_eq!(a.x, Complex64::new(1.0, 0.0));
        assert_eq!(a.y, Complex64::new(0.0, 1.0));
        assert_eq!(a.z, Complex64::new(0.0, 0.0));

        let m2 = Medium::new(4.0, 1.0).unwrap();
        let a2 = a_from_eh(&EHField::new(Vec3::EX, Vec3::ZERO), &m2);
        assert_eq!(a2.x, Complex64::new(2.0, 0.0));
    }

    #[test]
    fn eh_from_a_inverts() {
        let m = Medium::VACUUM;
        let f = eh_from_a(&ComplexVec3::from_re_im(Vec3::EX, Vec3::EY), &m);
        assert_eq!(f.e, Vec3::EX);
        assert_eq!(f.h, Vec3::EY);

        let m2 = Medium::new(4.0, 1.0).unwrap();
        let f2 = eh_from_a(&ComplexVec3::from_re(Vec3::EX * 2.0), &m2);
        assert_eq!(f2.e, Vec3::EX);
        assert_eq!(f2.h, Vec3::ZERO);
    }

    #[test]
    fn round_trip_is_exact() {
        let m = Medium::new(2.0, 3.0).unwrap();
        let f = EHField::new(Vec3::new(0.3, -1.2, 2.5), Vec3::new(-0.7, 0.1, 0.9));
        let back = eh_from_a(&a_from_eh(&f, &m), &m);
        assert_abs_diff_eq!(back.e.x, f.e.x, epsilon = 1e-15);
        assert_abs_diff_eq!(back.e.y, f.e.y, epsilon = 1e-15);
        assert_abs_diff_eq!(back.h.z, f.h.z, epsilon = 1e-15);
    }

    #[test]
    fn complex_charge_values() {
        let m = Medium::VACUUM;
        assert_eq!(complex_charge(Complex64::new(0.0, 0.0), &m), Complex64::new(0.0, 0.0));
        assert_eq!(complex_charge(Complex64::new(1.0, 0.0), &m), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn complex_charge_from_gridded_divergence() {
        // A = x·x̂ has div A = 1; central differences are exact on linear fields.
        let m = Medium::new(0.5, 0.5).unwrap(); // c = 2
        assert!((m.c() - 2.0).abs() < 1e-15);
        let field = |x: Vec3| ComplexVec3::from_re(Vec3::new(x.x, 0.0, 0.0));
        let h = 0.05;
        for p in [Vec3::ZERO, Vec3::new(0.3, -0.2, 0.9)] {
            let div_a = fd::div(field, p, h);
            let rho = complex_charge(div_a, &m);
            assert_abs_diff_eq!(rho.re, 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(rho.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn complex_charge_is_linear() {
        let m = Medium::new(3.0, 0.7).unwrap();
        let a = Complex64::new(1.3, -0.4);
        let b = Complex64::new(-2.0, 0.9);
        let lhs = complex_charge(2.5 * a + b, &m);
        let rhs = 2.5 * complex_charge(a, &m) + complex_charge(b, &m);
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn energy_density_values() {
        assert_eq!(energy_density(&ComplexVec3::ZERO), 0.0);
        let a = ComplexVec3::from_re_im(Vec3::EX, Vec3::EY);
        assert_abs_diff_eq!(energy_density(&a), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn energy_decomposition_matches_eh_form() {
        let m = Medium::new(2.0, 3.0).unwrap();
        let f = EHField::new(Vec3::new(0.4, -1.1, 0.2), Vec3::new(1.3, 0.5, -0.8));
        let w = energy_density(&a_from_eh(&f, &m));
        let w_eh = 0.5 * (m.epsilon() * f.e.norm_sqr() + m.mu() * f.h.norm_sqr());
        assert_abs_diff_eq!(w, w_eh, epsilon = 1e-14);
    }

    #[test]
    fn poynting_matches_e_cross_h() {
        let m = Medium::VACUUM;
        let a = ComplexVec3::from_re_im(Vec3::EX, Vec3::EY);
        let p = poynting(&a, &m);
        assert!((p - Vec3::EZ).norm() < 1e-15);

        // purely real (H = 0) and purely imaginary (E = 0) fields carry no flux
        let real = ComplexVec3::from_re(Vec3::new(1.0, 2.0, 3.0));
        assert_eq!(poynting(&real, &m), Vec3::ZERO);
        let imag = ComplexVec3::from_re_im(Vec3::ZERO, Vec3::new(1.0, -2.0, 0.5));
        assert_eq!(poynting(&imag, &m), Vec3::ZERO);
    }

    #[test]
    fn a_cross_a_conj_is_purely_imaginary() {
        let a = ComplexVec3::from_re_im(Vec3::new(0.2, -1.0, 0.7), Vec3::new(1.1, 0.3, -0.4));
        let cross = a.cross(a.conj());
        assert!(cross.re().norm() < 1e-15);
    }

    #[test]
    fn charge_residual_zero_for_static_source() {
        let s = SourceModel::static_charge_ball(Complex64::new(2.0, 0.0), 0.5);
        let r = charge_conservation_residual(&s, Vec3::new(0.1, 0.0, 0.2), 1.0, 1e-4).unwrap();
        assert!(r.norm() < 1e-10);
    }

    #[test]
    fn charge_residual_rejects_underflowing_step() {
        let s = SourceModel::zero();
        let err = charge_conservation_residual(&s, Vec3::ZERO, 1.0, 1e-18);
        assert!(err.is_err());
    }

    #[test]
    fn charge_residual_decays_for_born_charge_pair() {
        // Mollified born charge with its compensating current conserves exactly;
        // the residual is pure FD truncation and decays at second order.
        let s = SourceModel::born_charge(Complex64::new(1.0, 0.0), 0.3, &Medium::VACUUM);
        let x = Vec3::new(0.15, -0.1, 0.2);
        let t = 0.2;
        let r1 = charge_conservation_residual(&s, x, t, 2e-2).unwrap().norm();
        let r2 = charge_conservation_residual(&s, x, t, 1e-2).unwrap().norm();
        assert!(r2 < r1 * 0.4, "r1 = {r1:e}, r2 = {r2:e}");
    }

    #[test]
    fn charge_residual_vanishes_for_solenoidal_current() {
        // j = rot F has div j = 0 identically; with ρ = 0 the residual is FD noise.
        let f = |x: Vec3| {
            ComplexVec3::from_re(Vec3::new((x.y).sin(), (x.z).cos(), x.x * x.y))
        };
        let s = SourceModel::new(
            |_x, _t| Complex64::new(0.0, 0.0),
            move |x, _t| fd::curl(f, x, 1e-5),
            10.0,
            0.0,
            1.0,
            true,
        );
        let r = charge_conservation_residual(&s, Vec3::new(0.3, 0.2, -0.4), 0.5, 1e-3).unwrap();
        assert!(r.norm() < 1e-5, "residual {}", r.norm());
    }

    #[test]
    fn energy_law_zero_field() {
        let s = SourceModel::zero();
        let r = energy_law_residual(
            |_x, _t| ComplexVec3::ZERO,
            &s,
            &Medium::VACUUM,
            Vec3::ZERO,
            1.0,
            1e-4,
        )
        .unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn energy_law_on_superposed_plane_waves_converges_second_order() {
        // Two admissible plane waves along different normals solve the
        // field equation with j = 0; their interference makes W and P vary,
        // so the residual is pure discretization error.
        let m = Medium::VACUUM;
        let wave_z = move |x: Vec3, t: f64| {
            // polarization (1, i, 0), front normal ẑ
            let phase = Complex64::new(0.0, 2.0 * (x.z - t)).exp();
            ComplexVec3::from_re_im(Vec3::EX, Vec3::EY) * phase
        };
        let wave_x = move |x: Vec3, t: f64| {
            // polarization (0, 1, i)·0.6, front normal x̂
            let phase = Complex64::new(0.0, 1.0 * (x.x - t)).exp();
            ComplexVec3::from_re_im(Vec3::EY, Vec3::EZ) * phase * 0.6
        };
        let wave = move |x: Vec3, t: f64| wave_z(x, t) + wave_x(x, t);
        let s = SourceModel::zero();
        let x = Vec3::new(0.2, -0.1, 0.4);
        let r1 = energy_law_residual(wave, &s, &m, x, 0.7, 4e-3).unwrap().abs();
        let r2 = energy_law_residual(wave, &s, &m, x, 0.7, 2e-3).unwrap().abs();
        let order = (r1 / r2).log2();
        assert!((order - 2.0).abs() < 0.4, "order = {order}, r1 = {r1:e}");
    }
}
