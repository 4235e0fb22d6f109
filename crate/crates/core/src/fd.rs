//! Central-difference operators on field samplers.
//!
//! All residual-style operations differentiate smooth samplers with
//! second-order central differences; a fourth-order variant is provided for
//! the solver paths that differentiate quadrature output.

use num_complex::Complex64;

use crate::vec3::{ComplexVec3, Vec3};

/// Default step for differentiating an analytically-evaluated sampler:
/// eps^(1/3) × variation scale, the standard optimum for central differences.
pub fn default_step(variation_scale: f64) -> f64 {
    f64::EPSILON.cbrt() * variation_scale
}

/// d/dt by second-order central difference.
pub fn ddt<T, F>(f: F, t: f64, h: f64) -> T
where
    F: Fn(f64) -> T,
    T: std::ops::Sub<Output = T> + std::ops::Div<f64, Output = T>,
{
    (f(t + h) - f(t - h)) / (2.0 * h)
}

/// d/dt by fourth-order central difference.
pub fn ddt4<T, F>(f: F, t: f64, h: f64) -> T
where
    F: Fn(f64) -> T,
    T: std::ops::Sub<Output = T>
        + std::ops::Add<Output = T>
        + std::ops::Mul<f64, Output = T>
        + std::ops::Div<f64, Output = T>,
{
    (f(t - 2.0 * h) + f(t + h) * 8.0 - (f(t + 2.0 * h) + f(t - h) * 8.0)) / (-12.0 * h)
}

/// d²/dt² by the three-point stencil.
pub fn d2dt2<F>(f: F, t: f64, h: f64) -> ComplexVec3
where
    F: Fn(f64) -> ComplexVec3,
{
    (f(t + h) + f(t - h) - f(t) * 2.0) / (h * h)
}

/// Gradient of a scalar sampler.
pub fn grad<F>(f: F, x: Vec3, h: f64) -> ComplexVec3
where
    F: Fn(Vec3) -> Complex64,
{
    let d = |i: usize| {
        let e = Vec3::axis(i) * h;
        (f(x + e) - f(x - e)) / (2.0 * h)
    };
    ComplexVec3::new(d(0), d(1), d(2))
}

/// Fourth-order gradient of a scalar sampler.
pub fn grad4<F>(f: F, x: Vec3, h: f64) -> ComplexVec3
where
    F: Fn(Vec3) -> Complex64,
{
    let d = |i: usize| {
        let e = Vec3::axis(i);
        (f(x - e * (2.0 * h)) + f(x + e * h) * 8.0 - f(x + e * (2.0 * h)) - f(x - e * h) * 8.0)
            / (12.0 * h)
    };
    ComplexVec3::new(d(0), d(1), d(2))
}

/// Divergence of a vector sampler.
pub fn div<F>(f: F, x: Vec3, h: f64) -> Complex64
where
    F: Fn(Vec3) -> ComplexVec3,
{
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..3 {
        let e = Vec3::axis(i) * h;
        sum += (f(x + e).component(i) - f(x - e).component(i)) / (2.0 * h);
    }
    sum
}

/// Curl of a vector sampler.
pub fn curl<F>(f: F, x: Vec3, h: f64) -> ComplexVec3
where
    F: Fn(Vec3) -> ComplexVec3,
{
    // ∂_j f_k differenced per axis; assembled as e_ijk ∂_j f_k.
    let d = |j: usize| {
        let e = Vec3::axis(j) * h;
        (f(x + e) - f(x - e)) / (2.0 * h)
    };
    let d0 = d(0);
    let d1 = d(1);
    let d2 = d(2);
    ComplexVec3::new(d1.z - d2.y, d2.x - d0.z, d0.y - d1.x)
}

/// Fourth-order curl of a vector sampler.
pub fn curl4<F>(f: F, x: Vec3, h: f64) -> ComplexVec3
where
    F: Fn(Vec3) -> ComplexVec3,
{
    let d = |j: usize| {
        let e = Vec3::axis(j);
        (f(x - e * (2.0 * h)) + f(x + e * h) * 8.0 - f(x + e * (2.0 * h)) - f(x - e * h) * 8.0)
            / (12.0 * h)
    };
    let d0 = d(0);
    let d1 = d(1);
    let d2 = d(2);
    ComplexVec3::new(d1.z - d2.y, d2.x - d0.z, d0.y - d1.x)
}

/// Componentwise Laplacian of a vector sampler.
pub fn laplacian<F>(f: F, x: Vec3, h: f64) -> ComplexVec3
where
    F: Fn(Vec3) -> ComplexVec3,
{
    let centre = f(x) * 2.0;
    let mut sum = ComplexVec3::ZERO;
    for i in 0..3 {
        let e = Vec3::axis(i) * h;
        sum += f(x + e) + f(x - e) - centre;
    }
    sum / (h * h)
}
