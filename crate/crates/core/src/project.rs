//! Projection onto the first complex coordinate.
//!
//! Forgetting all but the first coordinate of a root gives a point of
//! `ℂ ≅ ℝ²`. For these formulas the point is always `rᵢ·ζᵏ` for an amplitude
//! `rᵢ` and a 60th root of unity, so each projected point carries an exact
//! phase index, and the points of each family sit on one circle.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::amplitudes::c_n_f64;
use crate::roots::{Family, NumericRoot};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProjectError {
    #[error("root {root} projects to {position} whose argument is not a multiple of π/30 within {tol:e}")]
    PhaseSnap { root: String, position: Complex64, tol: f64 },
    #[error("root {0} has no coordinates")]
    Empty(String),
}

/// A projected root: `position ≈ radius · exp(iπ·phase_index/30)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionPoint {
    pub family: Family,
    pub index: u32,
    pub radius: f64,
    pub phase_index: u32,
    pub re: f64,
    pub im: f64,
}

impl ProjectionPoint {
    pub fn position(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Points ordered by radius (descending), then phase, then source label.
pub fn project_first_coordinate(roots: &[NumericRoot], tol: f64) -> Result<Vec<ProjectionPoint>, ProjectError> {
    let mut points = roots
        .iter()
        .map(|r| {
            let z = *r.coords.first().ok_or_else(|| ProjectError::Empty(r.label()))?;
            let radius = z.norm();
            let steps = z.arg() * 30.0 / std::f64::consts::PI;
            let k = steps.round();
            if radius == 0.0 || (steps - k).abs() * std::f64::consts::PI / 30.0 > tol {
                return Err(ProjectError::PhaseSnap { root: r.label(), position: z, tol });
            }
            Ok(ProjectionPoint {
                family: r.family,
                index: r.index,
                radius,
                phase_index: (k as i64).rem_euclid(60) as u32,
                re: z.re,
                im: z.im,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    sort_points(&mut points, tol);
    Ok(points)
}

fn sort_points(points: &mut [ProjectionPoint], tol: f64) {
    let classes = radius_values(points, tol);
    let class_of = |r: f64| classes.iter().position(|c| (c - r).abs() <= tol).unwrap_or(usize::MAX);
    points.sort_by(|a, b| {
        class_of(a.radius)
            .cmp(&class_of(b.radius))
            .then(a.phase_index.cmp(&b.phase_index))
            .then((a.family, a.index).cmp(&(b.family, b.index)))
    });
}

/// Distinct radii within `tol`, descending.
pub fn radius_values(points: &[ProjectionPoint], tol: f64) -> Vec<f64> {
    let mut radii: Vec<f64> = points.iter().map(|p| p.radius).collect();
    radii.sort_by(|a, b| b.total_cmp(a));
    let mut out: Vec<f64> = Vec::new();
    for r in radii {
        if out.last().is_none_or(|last| (last - r).abs() > tol) {
            out.push(r);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// One circle of the projection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusClass {
    pub radius: f64,
    pub count: usize,
    pub parity: Parity,
    pub families: Vec<Family>,
    /// Phase indices present, ascending.
    pub phases: Vec<u32>,
}

impl RadiusClass {
    /// All 30 points of one parity, i.e. a regular 30-gon.
    pub fn is_full_cycle(&self) -> bool {
        let start = match self.parity {
            Parity::Even => 0,
            Parity::Odd => 1,
            Parity::Mixed => return false,
        };
        self.phases == (0..30).map(|k| start + 2 * k).collect::<Vec<u32>>()
    }
}

/// Groups points by radius and reports which residues mod 2 their phases use.
pub fn phase_census(points: &[ProjectionPoint], tol: f64) -> Vec<RadiusClass> {
    radius_values(points, tol)
        .into_iter()
        .map(|radius| {
            let members: Vec<&ProjectionPoint> = points.iter().filter(|p| (p.radius - radius).abs() <= tol).collect();
            let mut phases: Vec<u32> = members.iter().map(|p| p.phase_index).collect();
            phases.sort_unstable();
            let parity = if phases.iter().all(|k| k % 2 == 0) {
                Parity::Even
            } else if phases.iter().all(|k| k % 2 == 1) {
                Parity::Odd
            } else {
                Parity::Mixed
            };
            let mut families: Vec<Family> = members.iter().map(|p| p.family).collect();
            families.sort();
            families.dedup();
            RadiusClass { radius, count: members.len(), parity, families, phases }
        })
        .collect()
}

/// Rotates every point by `ζ^steps`.
pub fn rotate_points(points: &[ProjectionPoint], steps: i64) -> Vec<ProjectionPoint> {
    let w = Complex64::from_polar(1.0, std::f64::consts::PI * steps as f64 / 30.0);
    points
        .iter()
        .map(|p| {
            let z = p.position() * w;
            ProjectionPoint {
                re: z.re,
                im: z.im,
                phase_index: (p.phase_index as i64 + steps).rem_euclid(60) as u32,
                ..p.clone()
            }
        })
        .collect()
}

/// Equality of point multisets within `tol`, by bucketing on phase index
/// and matching radii inside each bucket. Returns the unmatched points of
/// each side.
pub fn multiset_difference(
    left: &[ProjectionPoint],
    right: &[ProjectionPoint],
    tol: f64,
) -> (Vec<ProjectionPoint>, Vec<ProjectionPoint>) {
    let mut buckets: BTreeMap<u32, Vec<(f64, bool, &ProjectionPoint)>> = BTreeMap::new();
    for p in right {
        buckets.entry(p.phase_index).or_default().push((p.radius, false, p));
    }
    let mut left_unmatched = Vec::new();
    for p in left {
        let slot = buckets
            .get_mut(&p.phase_index)
            .and_then(|b| b.iter_mut().find(|s| !s.1 && (s.0 - p.radius).abs() <= tol && (s.2.position() - p.position()).norm() <= tol));
        match slot {
            Some(s) => s.1 = true,
            None => left_unmatched.push(p.clone()),
        }
    }
    let right_unmatched = buckets.into_values().flatten().filter(|(_, used, _)| !used).map(|(_, _, p)| p.clone()).collect();
    (left_unmatched, right_unmatched)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingCheck {
    pub passed: bool,
    pub inner_scale: f64,
    pub outer_scale: f64,
    /// `outer_scale / inner_scale`; expected to be the golden ratio.
    pub ratio: f64,
    pub matched: usize,
    pub unmatched_e8: Vec<ProjectionPoint>,
    pub unmatched_h4: Vec<ProjectionPoint>,
    pub diagnostic: String,
}

/// Checks that the E8 projection is the union of the H4 projection scaled by
/// `1/c₉` and by `1/c₃`, and that the two factors differ by the golden ratio.
pub fn h4_e8_scaling_check(e8_points: &[ProjectionPoint], h4_points: &[ProjectionPoint], tol: f64, ratio_tol: f64) -> ScalingCheck {
    let outer_scale = 1.0 / c_n_f64(9);
    let inner_scale = 1.0 / c_n_f64(3);
    let ratio = outer_scale / inner_scale;
    let fail = |diagnostic: String| ScalingCheck {
        passed: false,
        inner_scale,
        outer_scale,
        ratio,
        matched: 0,
        unmatched_e8: Vec::new(),
        unmatched_h4: Vec::new(),
        diagnostic,
    };
    if e8_points.is_empty() || h4_points.is_empty() {
        return fail(format!("empty input: {} E8 points, {} H4 points", e8_points.len(), h4_points.len()));
    }
    let scaled = |s: f64| {
        h4_points.iter().map(move |p| ProjectionPoint { radius: p.radius * s, re: p.re * s, im: p.im * s, ..p.clone() })
    };
    let union: Vec<ProjectionPoint> = scaled(outer_scale).chain(scaled(inner_scale)).collect();
    let (unmatched_e8, unmatched_h4) = multiset_difference(e8_points, &union, tol);
    let tau = crate::amplitudes::golden_ratio();
    let ratio_ok = (ratio - tau).abs() <= ratio_tol;
    let passed = unmatched_e8.is_empty() && unmatched_h4.is_empty() && ratio_ok;
    let diagnostic = if passed {
        format!("{} = {} + {} points matched; scale ratio {ratio:.15}", e8_points.len(), h4_points.len(), h4_points.len())
    } else {
        format!(
            "{} E8 and {} scaled H4 points unmatched; scale ratio {ratio:.15} vs τ = {tau:.15}",
            unmatched_e8.len(),
            unmatched_h4.len()
        )
    };
    ScalingCheck {
        passed,
        inner_scale,
        outer_scale,
        ratio,
        matched: e8_points.len() - unmatched_e8.len(),
        unmatched_e8,
        unmatched_h4,
        diagnostic,
    }
}

/// CSV with header `family,n,radius,phase_index,re,im`.
pub fn to_csv(points: &[ProjectionPoint]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["family", "n", "radius", "phase_index", "re", "im"])?;
    for p in points {
        w.write_record([
            p.family.to_string(),
            p.index.to_string(),
            p.radius.to_string(),
            p.phase_index.to_string(),
            p.re.to_string(),
            p.im.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn from_csv(text: &str) -> Result<Vec<ProjectionPoint>, csv::Error> {
    #[derive(Deserialize)]
    struct Row {
        family: String,
        n: u32,
        radius: f64,
        phase_index: u32,
        re: f64,
        im: f64,
    }
    csv::Reader::from_reader(text.as_bytes())
        .deserialize::<Row>()
        .map(|row| {
            let row = row?;
            let family = row.family.parse().map_err(|e: String| {
                csv::Error::from(std::io::Error::new(std::io::ErrorKind::InvalidData, e))
            })?;
            Ok(ProjectionPoint { family, index: row.n, radius: row.radius, phase_index: row.phase_index, re: row.re, im: row.im })
        })
        .collect()
}

/// JSON array of points with the same fields as the CSV.
pub fn to_json(points: &[ProjectionPoint]) -> String {
    #[derive(Serialize)]
    struct Row<'a> {
        family: &'a Family,
        n: u32,
        radius: f64,
        phase_index: u32,
        re: f64,
        im: f64,
    }
    let rows: Vec<Row> = points
        .iter()
        .map(|p| Row { family: &p.family, n: p.index, radius: p.radius, phase_index: p.phase_index, re: p.re, im: p.im })
        .collect();
    serde_json::to_string_pretty(&rows).expect("points serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplitudes::{amplitudes_cyclotomic, amplitudes_primary};
    use crate::roots::{e8_roots, h4_roots, RootVector};
    use crate::tolerance;

    fn e8_points() -> Vec<ProjectionPoint> {
        let roots = e8_roots(&amplitudes_primary().unwrap()).unwrap().to_numeric();
        project_first_coordinate(&roots, tolerance::PROJECTION).unwrap()
    }

    fn h4_points() -> Vec<ProjectionPoint> {
        let roots = h4_roots(&amplitudes_primary().unwrap()).unwrap();
        project_first_coordinate(&roots, tolerance::PROJECTION).unwrap()
    }

    #[test]
    fn eight_cycles_of_thirty() {
        let points = e8_points();
        assert_eq!(points.len(), 240);
        let classes = phase_census(&points, tolerance::PROJECTION);
        assert_eq!(classes.len(), 8);
        assert!(classes.iter().all(|c| c.count == 30 && c.is_full_cycle()));
        let expected = [0.8058, 0.6555, 0.5421, 0.4980, 0.4051, 0.3351, 0.2725, 0.1684];
        for (c, e) in classes.iter().zip(expected) {
            assert!((c.radius - e).abs() < tolerance::REFERENCE_RADIUS, "{} vs {e}", c.radius);
        }
        let gaps: Vec<f64> = classes.windows(2).map(|w| w[0].radius - w[1].radius).collect();
        assert!(gaps.iter().all(|&g| g > 0.02));
    }

    #[test]
    fn h4_radii_are_abcd() {
        let abcd = amplitudes_primary().unwrap().abcd().unwrap().as_array();
        let classes = phase_census(&h4_points(), tolerance::PROJECTION);
        assert_eq!(classes.len(), 4);
        for (c, r) in classes.iter().zip(abcd) {
            assert!((c.radius - r).abs() < 1e-12);
            assert_eq!(c.count, 30);
        }
    }

    #[test]
    fn parities() {
        let classes = phase_census(&e8_points(), tolerance::PROJECTION);
        let parity_of = |f: Family| classes.iter().find(|c| c.families == vec![f]).unwrap().parity;
        for f in [Family::A, Family::D, Family::E, Family::H] {
            assert_eq!(parity_of(f), Parity::Even, "{f}");
        }
        for f in [Family::B, Family::C, Family::F, Family::G] {
            assert_eq!(parity_of(f), Parity::Odd, "{f}");
        }
        let h4 = phase_census(&h4_points(), tolerance::PROJECTION);
        let b = h4.iter().find(|c| c.families == vec![Family::B]).unwrap();
        assert_eq!(b.parity, Parity::Odd);
        assert_eq!(h4.iter().filter(|c| c.parity == Parity::Even).count(), 2);
    }

    #[test]
    fn rotation_invariance() {
        let points = e8_points();
        let rotated = rotate_points(&points, 2);
        let (l, r) = multiset_difference(&points, &rotated, tolerance::PROJECTION);
        assert!(l.is_empty() && r.is_empty());
        let (l, _) = multiset_difference(&points, &rotate_points(&points, 1), tolerance::PROJECTION);
        assert_eq!(l.len(), 240, "a π/30 turn swaps parities");
    }

    #[test]
    fn exact_and_surd_projections_agree_up_to_lambda() {
        let exact = e8_roots(&amplitudes_cyclotomic()).unwrap().to_numeric();
        let pts = project_first_coordinate(&exact, tolerance::PROJECTION).unwrap();
        let surd = e8_points();
        let lambda = pts[0].radius / surd[0].radius;
        assert!((lambda - 1.241_004_213_454_47).abs() < 1e-12);
    }

    #[test]
    fn golden_scaling() {
        let check = h4_e8_scaling_check(&e8_points(), &h4_points(), tolerance::PROJECTION, tolerance::IDENTITY);
        assert!(check.passed, "{}", check.diagnostic);
        assert_eq!(check.matched, 240);
        assert!((check.ratio - 1.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn scaling_check_rejects_empty_and_perturbed_input() {
        let check = h4_e8_scaling_check(&[], &h4_points(), tolerance::PROJECTION, tolerance::IDENTITY);
        assert!(!check.passed);
        assert!(check.diagnostic.contains("empty"));
        let mut e8 = e8_points();
        e8[5].re += 1e-6;
        let check = h4_e8_scaling_check(&e8, &h4_points(), tolerance::PROJECTION, tolerance::IDENTITY);
        assert!(!check.passed);
        assert_eq!(check.unmatched_e8.len(), 1);
    }

    #[test]
    fn off_grid_phase_is_rejected() {
        let root = RootVector { family: Family::A, index: 0, coords: vec![Complex64::from_polar(1.0, 0.01)] };
        assert!(matches!(project_first_coordinate(&[root], 1e-9), Err(ProjectError::PhaseSnap { .. })));
    }

    #[test]
    fn csv_round_trip() {
        let points = e8_points();
        let text = to_csv(&points).unwrap();
        assert!(text.starts_with("family,n,radius,phase_index,re,im\n"));
        assert_eq!(from_csv(&text).unwrap(), points);
        let json: serde_json::Value = serde_json::from_str(&to_json(&points)).unwrap();
        assert_eq!(json.as_array().unwrap().len(), 240);
        assert_eq!(json[0]["n"], 0);
    }
}
