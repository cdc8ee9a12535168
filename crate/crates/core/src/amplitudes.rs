//! Radial amplitudes of the eight root families.
//!
//! Two interchangeable sets are provided. The *surd* set normalizes every
//! root to unit length, but involves `5^{-1/4}` and so only exists in
//! floating point. The *cyclotomic* set is a common rescaling of it whose
//! entries are products of `cₙ = 2cos(nπ/30)`, so every coordinate of every
//! root stays inside `Q(ζ₆₀)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{c_n, CycNum};
use crate::tolerance;

/// The golden ratio `(1 + √5) / 2`.
pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// `cₙ = 2cos(nπ/30)` in floating point.
pub fn c_n_f64(n: i64) -> f64 {
    2.0 * (std::f64::consts::PI * n as f64 / 30.0).cos()
}

/// `45x⁸ − 90x⁶ + 60x⁴ − 15x² + 1`.
pub fn octic(x: f64) -> f64 {
    let y = x * x;
    (((45.0 * y - 90.0) * y + 60.0) * y - 15.0) * y + 1.0
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AmplitudeError {
    #[error("closed form for {name} = {value} leaves octic residual {residual:e} (tolerance {tol:e})")]
    OcticResidual { name: char, value: f64, residual: f64, tol: f64 },
    #[error("amplitude ratios disagree beyond {tol:e}: {ratios:?}")]
    RatioMismatch { ratios: [f64; 8], tol: f64 },
}

/// The four positive roots `a > b > c > d` of the octic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Abcd {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Abcd {
    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// Closed forms `2a² = 1 + kτ^{3/2}`, `2b² = 1 + kτ^{-3/2}`,
/// `2c² = 1 − kτ^{-3/2}`, `2d² = 1 − kτ^{3/2}` with `k = 3^{-1/2}5^{-1/4}`.
///
/// Each value is checked against the octic; a residual above
/// [`tolerance::RESIDUAL`] means the formulas were mistyped.
pub fn abcd_numeric() -> Result<Abcd, AmplitudeError> {
    let tau = golden_ratio();
    let k = 3f64.powf(-0.5) * 5f64.powf(-0.25);
    let t = tau.powf(1.5);
    let ti = tau.powf(-1.5);
    let vals = [
        ('a', ((1.0 + k * t) / 2.0).sqrt()),
        ('b', ((1.0 + k * ti) / 2.0).sqrt()),
        ('c', ((1.0 - k * ti) / 2.0).sqrt()),
        ('d', ((1.0 - k * t) / 2.0).sqrt()),
    ];
    for (name, value) in vals {
        let residual = octic(value).abs();
        if !(residual < tolerance::RESIDUAL) {
            return Err(AmplitudeError::OcticResidual { name, value, residual, tol: tolerance::RESIDUAL });
        }
    }
    Ok(Abcd { a: vals[0].1, b: vals[1].1, c: vals[2].1, d: vals[3].1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmplitudeMode {
    Surd,
    Cyclotomic,
}

impl fmt::Display for AmplitudeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmplitudeMode::Surd => "surd",
            AmplitudeMode::Cyclotomic => "cyclotomic",
        })
    }
}

/// The amplitudes `r₁ … r₈` (stored zero-based).
#[derive(Clone, Debug, PartialEq)]
pub enum AmplitudeSet {
    Surd { r: [f64; 8], abcd: Abcd, tau: f64 },
    Cyclotomic { r: [CycNum; 8], tau: f64 },
}

impl AmplitudeSet {
    pub fn mode(&self) -> AmplitudeMode {
        match self {
            AmplitudeSet::Surd { .. } => AmplitudeMode::Surd,
            AmplitudeSet::Cyclotomic { .. } => AmplitudeMode::Cyclotomic,
        }
    }

    pub fn tau(&self) -> f64 {
        match self {
            AmplitudeSet::Surd { tau, .. } | AmplitudeSet::Cyclotomic { tau, .. } => *tau,
        }
    }

    pub fn abcd(&self) -> Option<Abcd> {
        match self {
            AmplitudeSet::Surd { abcd, .. } => Some(*abcd),
            AmplitudeSet::Cyclotomic { .. } => None,
        }
    }

    /// `r₁ … r₈` as floats, embedding the cyclotomic values if needed.
    pub fn r_f64(&self) -> [f64; 8] {
        match self {
            AmplitudeSet::Surd { r, .. } => *r,
            AmplitudeSet::Cyclotomic { r, .. } => std::array::from_fn(|i| r[i].embed_complex().re),
        }
    }

    pub fn of(mode: AmplitudeMode) -> Result<AmplitudeSet, AmplitudeError> {
        match mode {
            AmplitudeMode::Surd => amplitudes_primary(),
            AmplitudeMode::Cyclotomic => Ok(amplitudes_cyclotomic()),
        }
    }
}

/// `r₁…r₄ = (a, b, c, d)/c₉` and `r₅…r₈ = (a, b, c, d)/c₃`.
pub fn amplitudes_primary() -> Result<AmplitudeSet, AmplitudeError> {
    let abcd = abcd_numeric()?;
    let (c9, c3) = (c_n_f64(9), c_n_f64(3));
    let v = abcd.as_array();
    let r = std::array::from_fn(|i| if i < 4 { v[i] / c9 } else { v[i - 4] / c3 });
    Ok(AmplitudeSet::Surd { r, abcd, tau: golden_ratio() })
}

/// `r = (1, c₁₁, c₆c₁₃, c₆c₁₄, c₁₂, c₁₁c₁₂, c₁₃, c₁₄)`, all exact.
pub fn amplitudes_cyclotomic() -> AmplitudeSet {
    let r = [
        CycNum::one(),
        c_n(11),
        c_n(6) * c_n(13),
        c_n(6) * c_n(14),
        c_n(12),
        c_n(11) * c_n(12),
        c_n(13),
        c_n(14),
    ];
    AmplitudeSet::Cyclotomic { r, tau: golden_ratio() }
}

/// The common factor `λ` with `r_cyc = λ · r_surd`; equals `c₉ / a`.
///
/// Fails with the full ratio table when the eight ratios disagree by more
/// than [`tolerance::RATIO`] relative error.
pub fn proportionality_ratio(surd: &[f64; 8], cyclotomic: &[CycNum; 8]) -> Result<f64, AmplitudeError> {
    let ratios: [f64; 8] = std::array::from_fn(|i| cyclotomic[i].embed_complex().re / surd[i]);
    let lambda = ratios[0];
    if ratios.iter().all(|x| ((x - lambda) / lambda).abs() <= tolerance::RATIO) {
        Ok(lambda)
    } else {
        Err(AmplitudeError::RatioMismatch { ratios, tol: tolerance::RATIO })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent of the closed forms: the four positive roots of the octic
    /// by bisection on sign changes of `45y⁴ − 90y³ + 60y² − 15y + 1`, `y = x²`.
    fn octic_roots_by_bisection() -> Vec<f64> {
        let quartic = |y: f64| (((45.0 * y - 90.0) * y + 60.0) * y - 15.0) * y + 1.0;
        let steps = 10_000;
        let mut roots = Vec::new();
        for i in 0..steps {
            let (mut lo, mut hi) = (i as f64 / steps as f64, (i + 1) as f64 / steps as f64);
            if quartic(lo).signum() == quartic(hi).signum() {
                continue;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if quartic(mid).signum() == quartic(lo).signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push((0.5 * (lo + hi)).sqrt());
        }
        roots.sort_by(|a, b| b.total_cmp(a));
        roots
    }

    #[test]
    fn closed_forms_are_the_octic_roots() {
        let oracle = octic_roots_by_bisection();
        assert_eq!(oracle.len(), 4);
        let abcd = abcd_numeric().unwrap().as_array();
        for (x, y) in abcd.iter().zip(&oracle) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn frozen_abcd_values() {
        let Abcd { a, b, c, d } = abcd_numeric().unwrap();
        assert!((a - 0.947_273_580_411_637_5).abs() < 1e-13);
        assert!((b - 0.770_581_752_342_047_1).abs() < 1e-13);
        assert!((c - 0.637_341_166_846_658_4).abs() < 1e-13);
        assert!((d - 0.320_425_910_085_493_8).abs() < 1e-13);
        assert!(a > b && b > c && c > d && d > 0.0);
        assert!((2.0 * a * a - 1.794_654_472_3).abs() < 1e-9);
    }

    #[test]
    fn complementary_pairs() {
        let Abcd { a, b, c, d } = abcd_numeric().unwrap();
        assert!((a * a + d * d - 1.0).abs() < tolerance::IDENTITY);
        assert!((b * b + c * c - 1.0).abs() < tolerance::IDENTITY);
    }

    #[test]
    fn surd_amplitude_values() {
        let AmplitudeSet::Surd { r, abcd, .. } = amplitudes_primary().unwrap() else { unreachable!() };
        assert!((r[0] - abcd.a / (2.0 * (0.3 * std::f64::consts::PI).cos())).abs() < 1e-15);
        assert!((r[0] - 0.805_8).abs() < 1e-4);
        assert!((r[7] - 0.168_5).abs() < 1e-4);
        // row A carries r₁, r₄, r₆, r₇
        let row_a = r[0] * r[0] + r[3] * r[3] + r[5] * r[5] + r[6] * r[6];
        assert!((row_a - 1.0).abs() < tolerance::IDENTITY);
    }

    #[test]
    fn cyclotomic_amplitudes_are_real_and_positive() {
        let AmplitudeSet::Cyclotomic { r, .. } = amplitudes_cyclotomic() else { unreachable!() };
        assert_eq!(r[0], CycNum::one());
        for x in &r {
            assert!(x.is_real());
            assert!(x.embed_complex().re > 0.0);
        }
        // c₁₂ = 1/τ: c₁₂² + c₁₂ = 1
        assert_eq!(&r[4] * &r[4] + r[4].clone(), CycNum::one());
        assert!((r[4].embed_complex().re - 1.0 / golden_ratio()).abs() < 1e-14);
        let expected_r4 = c_n_f64(6) * c_n_f64(14);
        assert!((r[3].embed_complex().re - expected_r4).abs() < 1e-14);
        assert!((expected_r4 - 0.338_261).abs() < 1e-6);
    }

    #[test]
    fn lambda_is_c9_over_a() {
        let surd = amplitudes_primary().unwrap();
        let AmplitudeSet::Cyclotomic { r, .. } = amplitudes_cyclotomic() else { unreachable!() };
        let lambda = proportionality_ratio(&surd.r_f64(), &r).unwrap();
        let a = surd.abcd().unwrap().a;
        assert!((lambda - c_n_f64(9) / a).abs() < 1e-13);
        assert!((lambda - 1.241_004_213_454_47).abs() < 1e-12);
        assert!((lambda * lambda - 1.540_091_457_8).abs() < 1e-9);
    }

    #[test]
    fn ratio_mismatch_is_reported() {
        let surd = amplitudes_primary().unwrap().r_f64();
        let AmplitudeSet::Cyclotomic { mut r, .. } = amplitudes_cyclotomic() else { unreachable!() };
        r.swap(1, 2);
        let err = proportionality_ratio(&surd, &r).unwrap_err();
        assert!(matches!(err, AmplitudeError::RatioMismatch { .. }));
    }

    #[test]
    fn golden_scaling_of_denominators() {
        assert!((c_n_f64(3) - golden_ratio() * c_n_f64(9)).abs() < tolerance::IDENTITY);
        assert!((c_n_f64(6) - golden_ratio()).abs() < tolerance::IDENTITY);
        // exact form of c₃ = c₆·c₉
        assert_eq!(c_n(3), c_n(6) * c_n(9));
    }
}
