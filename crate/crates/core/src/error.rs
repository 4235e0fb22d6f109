//! Error type shared by all numerical operations.

/// Errors reported by the toolkit's operations.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A finite-difference step fell below the resolvable precision floor.
    #[error("finite-difference step {step:e} is below the precision floor {floor:e}")]
    InvalidStep { step: f64, floor: f64 },

    /// A quadrature would need more evaluations than the configured budget.
    #[error("quadrature budget exceeded: {needed} evaluations needed, {allowed} allowed")]
    QuadratureBudgetExceeded { needed: usize, allowed: usize },

    /// Evaluation requested at a singular point of a closed-form field.
    #[error("singular evaluation point: {0}")]
    SingularPoint(String),

    /// The front geometry is outside the supported plane/sphere menu.
    #[error("unsupported front geometry: {0}")]
    UnsupportedGeometry(String),

    /// A periodic run would let signals wrap around the box.
    #[error("causality budget exceeded: {0}")]
    CausalityBudgetExceeded(String),

    /// Two runs that must share a configuration do not.
    #[error("mismatched configuration: {0}")]
    ConfigMismatch(String),

    /// An audit region does not fit in the grid.
    #[error("region exceeds grid: {0}")]
    RegionExceedsGrid(String),

    /// Catch-all for invalid caller input.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Precision floor for a finite-difference step around magnitude `scale`:
/// steps at or below this are indistinguishable from rounding noise.
pub fn step_floor(scale: f64) -> f64 {
    f64::EPSILON * (1.0 + scale.abs()) * 8.0
}

/// Validate a finite-difference step against the precision floor.
pub fn check_step(step: f64, scale: f64) -> Result<()> {
    let floor = step_floor(scale);
    if !step.is_finite() || step <= floor {
        return Err(Error::InvalidStep { step, floor });
    }
    Ok(())
}
