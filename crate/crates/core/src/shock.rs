//! Jump conditions and surface densities on wave fronts.
//!
//! A discontinuous field is a generalized solution only when the jump [A]
//! across a front moving along the unit normal m satisfies
//! [A] = −i [A] × m. This module evaluates that residual, the equivalent
//! E/H form, the transversality and energy corollaries, and the
//! surface-charge/current densities carried by a jump.

use num_complex::Complex64;

use crate::error::{check_step, Error, Result};
use crate::fd;
use crate::field::{energy_density, poynting};
use crate::medium::Medium;
use crate::quad::gauss_legendre_on;
use crate::vec3::{ComplexVec3, Vec3};

/// Tolerance for front-normal unit length.
const NORMAL_TOL: f64 = 1e-12;

/// Front surface geometry: the supported menu is planes and spheres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrontSurface {
    Plane { point: Vec3, normal: Vec3 },
    Sphere { center: Vec3, radius: f64, outward: bool },
}

impl FrontSurface {
    /// Orientation normal at a surface point.
    pub fn normal_at(&self, at: Vec3) -> Result<Vec3> {
        match self {
            FrontSurface::Plane { point, normal } => {
                let off = (at - *point).dot(*normal).abs();
                if off > 1e-9 * (1.0 + at.norm()) {
                    return Err(Error::UnsupportedGeometry(format!(
                        "query point is {off:e} off the front plane"
                    )));
                }
                Ok(*normal)
            }
            FrontSurface::Sphere { center, radius, outward } => {
                let rel = at - *center;
                let r = rel.norm();
                if (r - radius).abs() > 1e-9 * (1.0 + radius) {
                    return Err(Error::UnsupportedGeometry(format!(
                        "query point radius {r} does not sit on the front sphere radius {radius}"
                    )));
                }
                let n = rel / r;
                Ok(if *outward { n } else { -n })
            }
        }
    }
}

/// An oriented front with its one-sided field limits.
#[derive(Debug, Clone, Copy)]
pub struct FrontSpec {
    pub surface: FrontSurface,
    /// Propagation-direction unit normal.
    pub m: Vec3,
    /// Limit ahead of the front.
    pub a_plus: ComplexVec3,
    /// Limit behind the front.
    pub a_minus: ComplexVec3,
}

impl FrontSpec {
    pub fn new(
        surface: FrontSurface,
        m: Vec3,
        a_plus: ComplexVec3,
        a_minus: ComplexVec3,
    ) -> Result<FrontSpec> {
        if (m.norm() - 1.0).abs() > NORMAL_TOL {
            return Err(Error::InvalidArgument(format!(
                "front normal must be unit length, ‖m‖ = {}",
                m.norm()
            )));
        }
        if !(a_plus.is_finite() && a_minus.is_finite()) {
            return Err(Error::InvalidArgument("front limits must be finite".into()));
        }
        Ok(FrontSpec { surface, m, a_plus, a_minus })
    }

    /// Plane front through the origin, propagating along m.
    pub fn plane(m: Vec3, a_plus: ComplexVec3, a_minus: ComplexVec3) -> Result<FrontSpec> {
        FrontSpec::new(
            FrontSurface::Plane { point: Vec3::ZERO, normal: m },
            m,
            a_plus,
            a_minus,
        )
    }

    /// Jump [A] = A⁺ − A⁻.
    pub fn jump(&self) -> ComplexVec3 {
        self.a_plus - self.a_minus
    }

    /// A jump below this is reported as a continuous field.
    pub fn is_continuous(&self) -> bool {
        let scale = self.a_plus.norm().max(self.a_minus.norm()).max(1.0);
        self.jump().norm() <= 1e-14 * scale
    }
}

/// Characteristic determinant ν₄ (ν₄² − ν₁² − ν₂² − ν₃²) in (x, ct) space.
pub fn characteristic_det(nu: [f64; 4]) -> f64 {
    let spatial = nu[0] * nu[0] + nu[1] * nu[1] + nu[2] * nu[2];
    nu[3] * (nu[3] * nu[3] - spatial)
}

/// Residual of the front condition: [A] + i([A] × m); zero iff the jump
/// belongs to a generalized solution.
pub fn jump_residual(f: &FrontSpec) -> ComplexVec3 {
    let jump = f.jump();
    jump + jump.cross_real(f.m) * Complex64::new(0.0, 1.0)
}

/// The E/H form of the front condition: returns
/// (√ε[E] − √μ[H]×m, √μ[H] − √ε m×[E]); both vanish with [`jump_residual`].
pub fn eh_jump_residuals(f: &FrontSpec, medium: &Medium) -> (Vec3, Vec3) {
    let jump = f.jump();
    let e_jump = jump.re() / medium.sqrt_epsilon();
    let h_jump = jump.im() / medium.sqrt_mu();
    let first = e_jump * medium.sqrt_epsilon() - h_jump.cross(f.m) * medium.sqrt_mu();
    let second = h_jump * medium.sqrt_mu() - f.m.cross(e_jump) * medium.sqrt_epsilon();
    (first, second)
}

/// Normal components of the field jump: (Re[A]·m, Im[A]·m), i.e. the
/// electric and magnetic surface-charge indicators √ε([E],n) and √μ([H],n).
/// Both vanish on admissible fronts (no surface charges).
pub fn transversality_check(f: &FrontSpec) -> (f64, f64) {
    let jump = f.jump();
    (jump.re().dot(f.m), jump.im().dot(f.m))
}

/// Residual of the energy jump law [W] − c⁻¹(m, [P]).
pub fn energy_jump_residual(f: &FrontSpec, medium: &Medium) -> f64 {
    let w_jump = energy_density(&f.a_plus) - energy_density(&f.a_minus);
    let p_jump = poynting(&f.a_plus, medium) - poynting(&f.a_minus, medium);
    w_jump - p_jump.dot(f.m) / medium.c()
}

/// Kind tags for the simple-layer densities carried by a front.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceDensityKind {
    SurfaceCharge,
    SurfaceDivergence,
    SurfaceRotor,
    SurfaceCurrent,
}

/// The four simple-layer densities at one surface point.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceDensitySet {
    /// ρ̂_S = c⁻¹ (n, [A])
    pub charge: Complex64,
    /// div_S A = (n, [A])
    pub divergence: Complex64,
    /// rot_S A = [A] × n
    pub rotor: ComplexVec3,
    /// j_S = i rot_S A
    pub current: ComplexVec3,
}

/// Surface divergence, rotor, charge and current densities of the jump at
/// a surface point (n is the surface orientation normal there).
pub fn surface_densities(f: &FrontSpec, medium: &Medium, at: Vec3) -> Result<SurfaceDensitySet> {
    let n = f.surface.normal_at(at)?;
    let jump = f.jump();
    let divergence = jump.dot_real(n);
    let rotor = jump.cross_real(n);
    Ok(SurfaceDensitySet {
        charge: divergence / medium.c(),
        divergence,
        rotor,
        current: rotor * Complex64::new(0.0, 1.0),
    })
}

/// The complex one-dimensional solution space of the front condition:
/// for unit m with tangent basis (t₁, t₂), the kernel of v ↦ v + i(v × m)
/// is spanned by t₁ + i t₂.
pub fn jump_space_basis(m: Vec3) -> ComplexVec3 {
    let (t1, t2) = m.tangent_basis();
    ComplexVec3::from_re_im(t1, t2)
}

/// Hermitian projection of an amplitude onto the front-condition solution
/// space for normal m.
pub fn project_onto_jump_space(v: ComplexVec3, m: Vec3) -> ComplexVec3 {
    let basis = jump_space_basis(m);
    let coeff = basis.conj().dot(v) / basis.norm_sqr();
    basis * coeff
}

/// Numerical rank of the 3×3 map v ↦ v + i(v × m) (2 on admissible fronts).
pub fn jump_map_rank(m: Vec3, tol: f64) -> usize {
    use nalgebra::{Complex, Matrix3};
    let mut mat = Matrix3::<Complex<f64>>::zeros();
    for j in 0..3 {
        let e = match j {
            0 => ComplexVec3::from_re(Vec3::EX),
            1 => ComplexVec3::from_re(Vec3::EY),
            _ => ComplexVec3::from_re(Vec3::EZ),
        };
        let col = e + e.cross_real(m) * Complex64::new(0.0, 1.0);
        mat[(0, j)] = Complex::new(col.x.re, col.x.im);
        mat[(1, j)] = Complex::new(col.y.re, col.y.im);
        mat[(2, j)] = Complex::new(col.z.re, col.z.im);
    }
    let svd = mat.svd(false, false);
    svd.singular_values.iter().filter(|s| **s > tol).count()
}

/// A fixed diffraction-type front: the field is continuous in time and
/// jumps across a static plane, with smooth one-sided extensions.
pub struct FixedFrontField {
    /// (t, plane) history; the plane must not move.
    pub history: Vec<(f64, FrontSurface)>,
    /// Smooth field extension ahead of the plane.
    pub a_plus: Box<dyn Fn(Vec3, f64) -> ComplexVec3 + Send + Sync>,
    /// Smooth field extension behind the plane.
    pub a_minus: Box<dyn Fn(Vec3, f64) -> ComplexVec3 + Send + Sync>,
}

/// Smooth compactly-supported test function on the front plane.
pub struct SurfaceTestFunction {
    pub phi: Box<dyn Fn(Vec3) -> f64 + Send + Sync>,
    pub grad_phi: Box<dyn Fn(Vec3) -> Vec3 + Send + Sync>,
    /// The patch half-width that contains the support of φ.
    pub half_extent: f64,
}

impl SurfaceTestFunction {
    /// A C³ bump (1 − r²/r₀²)⁴ supported in the disc of radius r₀ about
    /// `center` (evaluated with 3-D arguments; constant along the normal).
    pub fn bump(center: Vec3, r0: f64) -> SurfaceTestFunction {
        let phi = move |x: Vec3| {
            let u = (x - center).norm_sqr() / (r0 * r0);
            if u >= 1.0 {
                0.0
            } else {
                (1.0 - u).powi(4)
            }
        };
        let grad_phi = move |x: Vec3| {
            let rel = x - center;
            let u = rel.norm_sqr() / (r0 * r0);
            if u >= 1.0 {
                Vec3::ZERO
            } else {
                rel * (-8.0 * (1.0 - u).powi(3) / (r0 * r0))
            }
        };
        SurfaceTestFunction {
            phi: Box::new(phi),
            grad_phi: Box::new(grad_phi),
            half_extent: r0,
        }
    }
}

/// Weak residual of the surface charge law
/// ∂t ρ̂_S + div_S ĵ + i div rot_S A = 0
/// tested against φ on a fixed plane front at time t.
///
/// The double-layer term i div rot_S A is evaluated weakly by moving the
/// divergence onto the test function:
/// (i div([A]×n δ_S), φ) = −i ∫_S ([A]×n, ∇φ) dS.
pub fn surface_charge_conservation_residual(
    front: &FixedFrontField,
    medium: &Medium,
    t: f64,
    h: f64,
    quad_points: usize,
    test: &SurfaceTestFunction,
) -> Result<Complex64> {
    check_step(h, t.abs().max(1.0))?;
    if front.history.is_empty() {
        return Err(Error::UnsupportedGeometry("empty front history".into()));
    }
    let (point, normal) = match front.history[0].1 {
        FrontSurface::Plane { point, normal } => (point, normal),
        FrontSurface::Sphere { .. } => {
            return Err(Error::UnsupportedGeometry(
                "surface charge law is evaluated on fixed plane fronts".into(),
            ))
        }
    };
    for (ti, surf) in &front.history {
        match surf {
            FrontSurface::Plane { point: p, normal: n } => {
                if (*p - point).norm() > 1e-12 || (*n - normal).norm() > 1e-12 {
                    return Err(Error::UnsupportedGeometry(format!(
                        "front moved at t = {ti}: the law applies to static surfaces"
                    )));
                }
            }
            FrontSurface::Sphere { .. } => {
                return Err(Error::UnsupportedGeometry("front changed geometry kind".into()))
            }
        }
    }

    let (t1, t2) = normal.tangent_basis();
    let half = test.half_extent;
    let (us, ws) = gauss_legendre_on(quad_points, -half, half);

    let jump = |x: Vec3, tt: f64| (front.a_plus)(x, tt) - (front.a_minus)(x, tt);
    let current = |side: &dyn Fn(Vec3, f64) -> ComplexVec3, x: Vec3, tt: f64| {
        // j = −c⁻¹ ∂t A − i rot A from the smooth one-sided extension
        let dt = fd::ddt(|s| side(x, s), tt, h);
        let rot = fd::curl(|y| side(y, tt), x, h);
        dt * (-1.0 / medium.c()) - rot * Complex64::new(0.0, 1.0)
    };

    let mut residual = Complex64::new(0.0, 0.0);
    for (iu, &u) in us.iter().enumerate() {
        for (iv, &v) in us.iter().enumerate() {
            let w = ws[iu] * ws[iv];
            let x = point + t1 * u + t2 * v;
            let phi = (test.phi)(x);
            let gphi = (test.grad_phi)(x);
            if phi == 0.0 && gphi == Vec3::ZERO {
                continue;
            }
            // ∂t ρ̂_S = c⁻¹ (n, ∂t [A])
            let dt_jump = fd::ddt(|s| jump(x, s), t, h);
            let dt_rho_s = dt_jump.dot_real(normal) / medium.c();
            // (n, [j])
            let j_jump = current(&*front.a_plus, x, t) - current(&*front.a_minus, x, t);
            let div_s_j = j_jump.dot_real(normal);
            // −i ([A]×n, ∇φ)
            let rot_s = jump(x, t).cross_real(normal);
            let double_layer = -Complex64::new(0.0, 1.0) * rot_s.dot_real(gphi);
            residual += ((dt_rho_s + div_s_j) * phi + double_layer) * w;
        }
    }
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_unit(rng: &mut impl Rng) -> Vec3 {
        loop {
            let v = Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                return v / n;
            }
        }
    }

    fn random_cvec(rng: &mut impl Rng) -> ComplexVec3 {
        ComplexVec3::from_re_im(
            Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        )
    }

    #[test]
    fn characteristic_det_values() {
        assert_eq!(characteristic_det([0.0, 0.0, 0.0, 1.0]), 1.0);
        assert_eq!(characteristic_det([1.0, 0.0, 0.0, 1.0]), 0.0);
        assert_eq!(characteristic_det([1.0, 2.0, 2.0, 3.0]), 0.0);
        // vanishes on static surfaces ν₄ = 0 as well
        assert_eq!(characteristic_det([0.3, -0.4, 1.0, 0.0]), 0.0);
    }

    #[test]
    fn zero_jump_passes_everything() {
        let a = ComplexVec3::from_re(Vec3::new(0.3, 1.0, -0.2));
        let f = FrontSpec::plane(Vec3::EZ, a, a).unwrap();
        assert!(f.is_continuous());
        assert_eq!(jump_residual(&f), ComplexVec3::ZERO);
        assert_eq!(transversality_check(&f), (0.0, 0.0));
        assert_eq!(energy_jump_residual(&f, &Medium::VACUUM), 0.0);
    }

    #[test]
    fn compatible_eh_jump_satisfies_field_condition() {
        // m = ẑ, [E] = (α,0,0), [H] = (0,α,0) with ε = μ = 1 → [A] = (α, iα, 0)
        let alpha = 0.8;
        let jump = ComplexVec3::from_re_im(Vec3::EX * alpha, Vec3::EY * alpha);
        let f = FrontSpec::plane(Vec3::EZ, jump, ComplexVec3::ZERO).unwrap();
        assert!(jump_residual(&f).norm() < 1e-15);
        let (r1, r2) = eh_jump_residuals(&f, &Medium::VACUUM);
        assert!(r1.norm() < 1e-15 && r2.norm() < 1e-15);
    }

    #[test]
    fn normal_jump_violates_front_condition() {
        // A jump along the propagation normal: residual equals the jump
        // itself (the cross term vanishes), norm ‖[A]‖.
        let f = FrontSpec::plane(
            Vec3::EZ,
            ComplexVec3::from_re(Vec3::EZ),
            ComplexVec3::ZERO,
        )
        .unwrap();
        let r = jump_residual(&f);
        assert_abs_diff_eq!(r.norm(), 1.0, epsilon = 1e-15);
        let (te, _) = transversality_check(&f);
        assert_abs_diff_eq!(te, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn tangential_dephased_jump_has_sqrt2_residual() {
        // tangential but with the wrong phase relation: residual norm √2‖[A]‖
        let f = FrontSpec::plane(
            Vec3::EZ,
            ComplexVec3::from_re(Vec3::EX),
            ComplexVec3::ZERO,
        )
        .unwrap();
        assert_abs_diff_eq!(jump_residual(&f).norm(), 2.0_f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn eh_jump_residual_directional_example() {
        // [E]=(1,0,0), [H]=0, m=ẑ: residuals (1,0,0) and (0,−1,0)
        let f = FrontSpec::plane(
            Vec3::EZ,
            ComplexVec3::from_re(Vec3::EX),
            ComplexVec3::ZERO,
        )
        .unwrap();
        let (r1, r2) = eh_jump_residuals(&f, &Medium::VACUUM);
        assert!((r1 - Vec3::EX).norm() < 1e-15);
        assert!((r2 - Vec3::new(0.0, -1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn admissible_jumps_are_tangential_and_energy_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let media = [
            Medium::VACUUM,
            Medium::new(2.0, 3.0).unwrap(),
            Medium::new(0.5, 1.7).unwrap(),
        ];
        for _ in 0..200 {
            let m = random_unit(&mut rng);
            let jump = project_onto_jump_space(random_cvec(&mut rng), m);
            let a_plus = random_cvec(&mut rng);
            let f = FrontSpec::plane(m, a_plus, a_plus - jump).unwrap();
            let scale = jump.norm().max(1e-30);
            assert!(jump_residual(&f).norm() <= 1e-12 * scale);
            let (te, th) = transversality_check(&f);
            assert!(te.abs() <= 1e-12 * scale && th.abs() <= 1e-12 * scale);
            for medium in &media {
                let er = energy_jump_residual(&f, medium).abs();
                assert!(er <= 1e-12 * scale * scale.max(a_plus.norm()) * 4.0);
            }
        }
    }

    #[test]
    fn shock_into_quiet_region_is_transverse() {
        // With A⁺ = 0 the decoded [E], [H], m are pairwise orthogonal.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let medium = Medium::new(1.9, 0.6).unwrap();
        for _ in 0..50 {
            let m = random_unit(&mut rng);
            let jump = project_onto_jump_space(random_cvec(&mut rng), m);
            let f = FrontSpec::plane(m, ComplexVec3::ZERO, -jump).unwrap();
            let eh = crate::field::eh_from_a(&f.jump(), &medium);
            let s = jump.norm().max(1e-30);
            assert!(eh.e.dot(eh.h).abs() < 1e-12 * s * s);
            assert!(eh.e.dot(m).abs() < 1e-12 * s);
            assert!(eh.h.dot(m).abs() < 1e-12 * s);
        }
    }

    #[test]
    fn zero_e_jump_forces_zero_h_jump() {
        // For admissible jumps ξ(t₁ + i t₂), ‖Re[A]‖ = ‖Im[A]‖ = |ξ|:
        // the electric and magnetic jumps vanish together.
        let m = Vec3::new(0.0, 0.6, 0.8);
        let basis = jump_space_basis(m);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let xi = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let v = basis * xi;
            assert_abs_diff_eq!(v.re().norm(), v.im().norm(), epsilon = 1e-13);
            assert_abs_diff_eq!(v.re().norm(), xi.norm(), epsilon = 1e-13);
        }
    }

    #[test]
    fn jump_map_has_rank_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let m = random_unit(&mut rng);
            assert_eq!(jump_map_rank(m, 1e-10), 2);
        }
    }

    #[test]
    fn jump_residual_is_linear() {
        let m = Vec3::new(0.6, 0.0, 0.8);
        let a = ComplexVec3::from_re_im(Vec3::new(1.0, 0.2, -0.5), Vec3::new(0.0, 1.0, 0.3));
        let b = ComplexVec3::from_re_im(Vec3::new(-0.3, 0.9, 0.1), Vec3::new(0.7, 0.0, -1.0));
        let lam = Complex64::new(0.7, -1.3);
        let fa = FrontSpec::plane(m, a, ComplexVec3::ZERO).unwrap();
        let fb = FrontSpec::plane(m, b, ComplexVec3::ZERO).unwrap();
        let fab = FrontSpec::plane(m, a * lam + b, ComplexVec3::ZERO).unwrap();
        let lhs = jump_residual(&fab);
        let rhs = jump_residual(&fa) * lam + jump_residual(&fb);
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn surface_density_examples() {
        let m = Medium::VACUUM;
        // normal jump: surface charge 2, zero rotor/current
        let f = FrontSpec::plane(
            Vec3::EZ,
            ComplexVec3::from_re(Vec3::EZ * 2.0),
            ComplexVec3::ZERO,
        )
        .unwrap();
        let d = surface_densities(&f, &m, Vec3::ZERO).unwrap();
        assert_abs_diff_eq!(d.charge.re, 2.0, epsilon = 1e-15);
        assert!(d.rotor.norm() < 1e-15);
        assert!(d.current.norm() < 1e-15);

        // tangential jump: zero charge, rotor (0,−1,0), current (0,−i,0)
        let f2 = FrontSpec::plane(Vec3::EZ, ComplexVec3::from_re(Vec3::EX), ComplexVec3::ZERO)
            .unwrap();
        let d2 = surface_densities(&f2, &m, Vec3::ZERO).unwrap();
        assert!(d2.charge.norm() < 1e-15);
        assert!((d2.rotor - ComplexVec3::from_re(Vec3::new(0.0, -1.0, 0.0))).norm() < 1e-15);
        assert!(
            (d2.current - ComplexVec3::from_re_im(Vec3::ZERO, Vec3::new(0.0, -1.0, 0.0))).norm()
                < 1e-15
        );
        // consistency between kinds
        assert!((d2.charge - d2.divergence / m.c()).norm() < 1e-16);
    }

    #[test]
    fn surface_density_sphere_orientation() {
        let m = Medium::VACUUM;
        let surf = FrontSurface::Sphere { center: Vec3::ZERO, radius: 2.0, outward: true };
        let at = Vec3::new(0.0, 0.0, 2.0);
        let f = FrontSpec::new(surf, Vec3::EZ, ComplexVec3::from_re(Vec3::EZ), ComplexVec3::ZERO)
            .unwrap();
        let d = surface_densities(&f, &m, at).unwrap();
        assert_abs_diff_eq!(d.charge.re, 1.0, epsilon = 1e-15);
        // off-surface query is rejected
        assert!(surface_densities(&f, &m, Vec3::new(0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn rejects_non_unit_normal() {
        let r = FrontSpec::plane(Vec3::EZ * 1.1, ComplexVec3::ZERO, ComplexVec3::ZERO);
        assert!(r.is_err());
    }

    fn smooth_front(scale: f64) -> FixedFrontField {
        // two unrelated smooth fields: a genuine jump across the plane z = 0
        let plus = move |x: Vec3, t: f64| {
            ComplexVec3::from_re_im(
                Vec3::new((x.x + t).sin(), x.y * x.z, (t * 0.7).cos()),
                Vec3::new(x.z, (x.y - t).cos(), 0.3 * x.x),
            ) * scale
        };
        let minus = move |x: Vec3, t: f64| {
            ComplexVec3::from_re_im(
                Vec3::new(x.y, (x.z + 2.0 * t).cos(), x.x * x.y),
                Vec3::new((x.x * 0.5).sin(), t * x.z, 1.0),
            ) * scale
        };
        FixedFrontField {
            history: vec![
                (0.0, FrontSurface::Plane { point: Vec3::ZERO, normal: Vec3::EZ }),
                (0.5, FrontSurface::Plane { point: Vec3::ZERO, normal: Vec3::EZ }),
            ],
            a_plus: Box::new(plus),
            a_minus: Box::new(minus),
        }
    }

    #[test]
    fn surface_charge_law_holds_weakly() {
        // The law is an identity for any piecewise-smooth field across a
        // static plane; the residual is pure discretization error.
        let front = smooth_front(1.0);
        let test_fn = SurfaceTestFunction::bump(Vec3::ZERO, 0.8);
        let medium = Medium::new(1.3, 0.8).unwrap();
        let coarse = surface_charge_conservation_residual(&front, &medium, 0.4, 1e-3, 12, &test_fn)
            .unwrap()
            .norm();
        let fine = surface_charge_conservation_residual(&front, &medium, 0.4, 2.5e-4, 32, &test_fn)
            .unwrap()
            .norm();
        assert!(fine < 1e-5, "fine residual {fine:e}");
        assert!(fine <= coarse.max(1e-12));
    }

    #[test]
    fn continuous_field_has_zero_surface_residual() {
        let shared = |x: Vec3, t: f64| {
            ComplexVec3::from_re(Vec3::new((x.x * t).sin(), x.y, x.z * t))
        };
        let front = FixedFrontField {
            history: vec![(0.0, FrontSurface::Plane { point: Vec3::ZERO, normal: Vec3::EZ })],
            a_plus: Box::new(shared),
            a_minus: Box::new(shared),
        };
        let test_fn = SurfaceTestFunction::bump(Vec3::ZERO, 0.5);
        let r = surface_charge_conservation_residual(
            &front,
            &Medium::VACUUM,
            0.3,
            1e-4,
            10,
            &test_fn,
        )
        .unwrap();
        assert!(r.norm() < 1e-11);
    }

    #[test]
    fn moving_front_is_rejected() {
        let f = |_: Vec3, _: f64| ComplexVec3::ZERO;
        let front = FixedFrontField {
            history: vec![
                (0.0, FrontSurface::Plane { point: Vec3::ZERO, normal: Vec3::EZ }),
                (0.1, FrontSurface::Plane { point: Vec3::EZ, normal: Vec3::EZ }),
            ],
            a_plus: Box::new(f),
            a_minus: Box::new(f),
        };
        let test_fn = SurfaceTestFunction::bump(Vec3::ZERO, 0.5);
        let r = surface_charge_conservation_residual(
            &front,
            &Medium::VACUUM,
            0.05,
            1e-4,
            8,
            &test_fn,
        );
        assert!(matches!(r, Err(Error::UnsupportedGeometry(_))));
    }
}
