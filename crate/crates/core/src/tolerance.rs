//! Global numeric tolerances.

/// Tolerances shared by the geometry and ranking layers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Geometric comparisons: degenerate axes, collinearity, residuals, azimuth snapping.
    pub geometric: f64,
    /// Normalisation and vanishing-denominator checks.
    pub normalization: f64,
    /// Largest denominator a floating azimuth may be snapped to (as a fraction of a turn).
    pub snap_max_denominator: i64,
}

pub const DEFAULT_GEOMETRIC: f64 = 1e-9;
pub const DEFAULT_NORMALIZATION: f64 = 1e-12;
pub const DEFAULT_SNAP_DENOMINATOR: i64 = 1_000_000;

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            geometric: DEFAULT_GEOMETRIC,
            normalization: DEFAULT_NORMALIZATION,
            snap_max_denominator: DEFAULT_SNAP_DENOMINATOR,
        }
    }
}

impl Tolerances {
    pub fn with_geometric(geometric: f64) -> Self {
        Self { geometric, ..Self::default() }
    }
}
