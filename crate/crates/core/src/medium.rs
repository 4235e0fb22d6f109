//! Homogeneous isotropic medium.

use crate::error::{Error, Result};

/// Permittivity ε, permeability μ and the derived wave speed c = 1/√(εμ).
#[derive(Debug, Copy, Clone, PartialEq)]
pub struct Medium {
    epsilon: f64,
    mu: f64,
    c: f64,
}

impl Medium {
    /// Vacuum-like medium with ε = μ = c = 1.
    pub const VACUUM: Medium = Medium { epsilon: 1.0, mu: 1.0, c: 1.0 };

    pub fn new(epsilon: f64, mu: f64) -> Result<Medium> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "medium.epsilon must be > 0, got {epsilon}"
            )));
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidArgument(format!("medium.mu must be > 0, got {mu}")));
        }
        Ok(Medium { epsilon, mu, c: 1.0 / (epsilon * mu).sqrt() })
    }

    #[inline]
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    #[inline]
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Wave speed c = 1/√(εμ).
    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn sqrt_epsilon(&self) -> f64 {
        self.epsilon.sqrt()
    }

    pub fn sqrt_mu(&self) -> f64 {
        self.mu.sqrt()
    }
}

impl Default for Medium {
    fn default() -> Self {
        Medium::VACUUM
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn speed_relation_holds_at_construction() {
        for (eps, mu) in [(1.0, 1.0), (4.0, 1.0), (2.5, 0.3), (8.85e-12, 1.2566e-6)] {
            let m = Medium::new(eps, mu).unwrap();
            assert!((m.c() * (eps * mu).sqrt() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_nonpositive_constants() {
        assert!(Medium::new(-1.0, 1.0).is_err());
        assert!(Medium::new(0.0, 1.0).is_err());
        assert!(Medium::new(1.0, -2.0).is_err());
        assert!(Medium::new(f64::NAN, 1.0).is_err());
    }
}
