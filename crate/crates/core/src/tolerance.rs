//! Named numeric tolerances. Every floating-point comparison in the crate
//! goes through one of these, and reports print the values used.

use serde::{Deserialize, Serialize};

/// Octic residual of a closed-form amplitude.
pub const RESIDUAL: f64 = 1e-10;
/// Identities among double-precision constants (`a² + d² = 1`, `c₃ = τc₉`, …).
pub const IDENTITY: f64 = 1e-12;
/// Relative agreement of the eight amplitude ratios.
pub const RATIO: f64 = 1e-10;
/// Unit norms in floating point.
pub const NORM: f64 = 1e-12;
/// Distinctness and membership of numeric roots.
pub const MEMBERSHIP: f64 = 1e-9;
/// Snapping inner products onto a known spectrum.
pub const SPECTRUM: f64 = 1e-10;
/// Orthogonality of the constructed isometry.
pub const ISOMETRY: f64 = 1e-9;
/// Point matching and phase snapping in the projection plane.
pub const PROJECTION: f64 = 1e-9;
/// Agreement with four-digit reference radii.
pub const REFERENCE_RADIUS: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub residual: f64,
    pub identity: f64,
    pub ratio: f64,
    pub norm: f64,
    pub membership: f64,
    pub spectrum: f64,
    pub isometry: f64,
    pub projection: f64,
    pub reference_radius: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: RESIDUAL,
            identity: IDENTITY,
            ratio: RATIO,
            norm: NORM,
            membership: MEMBERSHIP,
            spectrum: SPECTRUM,
            isometry: ISOMETRY,
            projection: PROJECTION,
            reference_radius: REFERENCE_RADIUS,
        }
    }
}
