//! Quadrature rules: Gauss–Legendre lines and spherical product rules.
//!
//! Sphere rules are Gauss–Legendre in cos θ × uniform in φ, exact for all
//! spherical harmonics up to the declared degree. A rule can be built about
//! an arbitrary pole with the polar interval split at prescribed latitudes,
//! which keeps spectral accuracy when the integrand is only piecewise
//! smooth (e.g. clipped to a support ball).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::vec3::Vec3;

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Newton iteration from the Chebyshev-like initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_deriv(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_and_deriv(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre nodes and weights mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        xs.iter().map(|x| mid + half * x).collect(),
        ws.iter().map(|w| w * half).collect(),
    )
}

/// Quadrature nodes on the unit sphere with weights summing to 4π.
#[derive(Debug, Clone)]
pub struct SphericalQuadrature {
    pub nodes: Vec<Vec3>,
    pub weights: Vec<f64>,
    pub degree: usize,
}

impl SphericalQuadrature {
    /// Product rule exact for spherical harmonics up to `degree`,
    /// with the polar axis along ẑ.
    pub fn gauss_product(degree: usize) -> SphericalQuadrature {
        SphericalQuadrature::gauss_product_about(degree, Vec3::EZ, &[])
    }

    /// Product rule about an arbitrary unit `pole`, with the cos θ interval
    /// split at the given latitudes (values in (-1, 1), any order).
    pub fn gauss_product_about(degree: usize, pole: Vec3, splits: &[f64]) -> SphericalQuadrature {
        let n_theta = (degree + 2) / 2 + 1;
        let n_phi = degree + 1;
        let (e1, e2) = pole.tangent_basis();

        let mut cuts: Vec<f64> = splits
            .iter()
            .copied()
            .filter(|u| u.is_finite() && *u > -1.0 + 1e-14 && *u < 1.0 - 1e-14)
            .collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        let mut bounds = vec![-1.0];
        bounds.extend(cuts);
        bounds.push(1.0);

        let phi_w = 2.0 * PI / n_phi as f64;
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for pair in bounds.windows(2) {
            let (us, uw) = gauss_legendre_on(n_theta, pair[0], pair[1]);
            for (&u, &wu) in us.iter().zip(uw.iter()) {
                let s = (1.0 - u * u).max(0.0).sqrt();
                for ip in 0..n_phi {
                    let phi = phi_w * ip as f64;
                    let dir = pole * u + (e1 * phi.cos() + e2 * phi.sin()) * s;
                    nodes.push(dir);
                    weights.push(wu * phi_w);
                }
            }
        }
        SphericalQuadrature { nodes, weights, degree }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ wᵢ f(ωᵢ) over the unit sphere.
    pub fn integrate<T, F>(&self, mut f: F) -> T
    where
        F: FnMut(Vec3) -> T,
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    {
        let mut acc = T::default();
        for (&w, &dir) in self.weights.iter().zip(self.nodes.iter()) {
            acc = acc + f(dir) * w;
        }
        acc
    }
}

/// Evaluation budgets for the kernel quadratures.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureBudget {
    /// Spherical-harmonic exactness degree of the sphere rule.
    pub sphere_degree: usize,
    /// Gauss–Legendre points per radial panel.
    pub radial_points: usize,
    /// Cap on the number of radial panels.
    pub max_radial_panels: usize,
    /// Gauss–Legendre points for inner time integrals.
    pub time_points: usize,
    /// Hard cap on integrand evaluations for one kernel application.
    pub max_evals: usize,
}

impl Default for QuadratureBudget {
    fn default() -> Self {
        QuadratureBudget {
            sphere_degree: 17,
            radial_points: 8,
            max_radial_panels: 256,
            time_points: 12,
            max_evals: 200_000_000,
        }
    }
}

impl QuadratureBudget {
    pub fn with_sphere_degree(mut self, degree: usize) -> Self {
        self.sphere_degree = degree;
        self
    }

    /// Panel boundaries covering [a, b] with panels no wider than `target`.
    pub fn radial_panels(&self, a: f64, b: f64, target: f64) -> Vec<(f64, f64)> {
        if b <= a {
            return Vec::new();
        }
        let span = b - a;
        let want = (span / target.max(1e-300)).ceil() as usize;
        let count = want.clamp(1, self.max_radial_panels);
        let w = span / count as f64;
        (0..count)
            .map(|i| (a + w * i as f64, a + w * (i + 1) as f64))
            .collect()
    }

    pub fn check_evals(&self, needed: usize) -> Result<()> {
        if needed > self.max_evals {
            return Err(Error::QuadratureBudgetExceeded { needed, allowed: self.max_evals });
        }
        Ok(())
    }
}

/// Intersection of the ray x + r·dir (r ≥ 0) with the ball ‖y‖ < a,
/// as a radial interval. Returns `None` when the ray misses the ball.
pub fn clip_ray_to_ball(x: Vec3, dir: Vec3, a: f64) -> Option<(f64, f64)> {
    let b = x.dot(dir);
    let c = x.norm_sqr() - a * a;
    let disc = b * b - c;
    if disc <= 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let r0 = (-b - s).max(0.0);
    let r1 = -b + s;
    if r1 <= 0.0 {
        return None;
    }
    Some((r0, r1))
}
