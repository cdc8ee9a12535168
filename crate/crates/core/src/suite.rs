//! The complete list of claims checked about the two root systems, grouped
//! into reports. Every check states the property it tests in its `claim`
//! field, so a report reads as a list of statements with verdicts.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::amplitudes::{abcd_numeric, amplitudes_cyclotomic, amplitudes_primary, c_n_f64, octic, proportionality_ratio, AmplitudeMode, AmplitudeSet};
use crate::coord::{Coord, RootIndex};
use crate::cyclo::{c_n, CycNum};
use crate::project::{
    h4_e8_scaling_check, multiset_difference, phase_census, project_first_coordinate, rotate_points, Parity, ProjectionPoint,
};
use crate::render::{render_svg, RenderStyle};
use crate::roots::{
    e8_roots, h4_roots, to_real8, CoxeterRotation, ExactRoot, Family, GeneratorMatrix, NumericRoot, RootSystemKind, RootVector,
    Roots, CYCLE,
};
use crate::tolerance::Tolerances;
use crate::verify::{
    analyze_root_system, branch_arms, cartan_integers, census_of_real, check_bijection, check_dynkin_e8, hermitian_inner,
    isometry_from_simple_match, spectrum, standard_e8, standard_e8_simple, standard_h4, CartanMatrix, Census, Check,
    Counterexample, SimpleSystem, VerificationReport,
};

/// First-coordinate radii of the E8 roots to four digits, descending.
pub const E8_REFERENCE_RADII: [f64; 8] = [0.8058, 0.6555, 0.5421, 0.4980, 0.4051, 0.3351, 0.2725, 0.1684];

/// Edges of the E8 diagram on the simple roots `A₀ … H₀`.
pub const E8_DIAGRAM_EDGES: [(Family, Family); 7] = [
    (Family::F, Family::A),
    (Family::A, Family::C),
    (Family::C, Family::D),
    (Family::A, Family::B),
    (Family::B, Family::E),
    (Family::E, Family::G),
    (Family::G, Family::H),
];

/// Which parts of the suite to run. `None` means all.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selection {
    pub system: Option<RootSystemKind>,
    pub mode: Option<AmplitudeMode>,
}

impl Selection {
    fn wants(&self, system: RootSystemKind, mode: AmplitudeMode) -> bool {
        self.system.is_none_or(|s| s == system) && self.mode.is_none_or(|m| m == mode)
    }
}

fn pass_or_fail(name: &str, claim: &str, tolerance: Option<f64>, outcome: Result<String, (String, Counterexample)>) -> Check {
    match outcome {
        Ok(detail) => Check::pass(name, claim, tolerance, detail),
        Err((detail, ce)) => Check::fail(name, claim, tolerance, detail, ce),
    }
}

fn failure<T: std::fmt::Display>(name: &str, claim: &str, err: T) -> Check {
    Check::fail(name, claim, None, err.to_string(), Counterexample::new([], err, "success"))
}

/// The amplitude constants: octic roots, their ordering and pair sums, and
/// the proportionality of the two amplitude sets.
pub fn amplitude_checks(tol: &Tolerances) -> VerificationReport {
    let mut report = VerificationReport::new();
    let abcd = match abcd_numeric() {
        Ok(v) => v,
        Err(e) => {
            report.push(failure("amplitudes.octic", "a, b, c, d are roots of 45x⁸ − 90x⁶ + 60x⁴ − 15x² + 1", e));
            return report;
        }
    };
    let values = abcd.as_array();
    let residuals: Vec<f64> = values.iter().map(|&x| octic(x).abs()).collect();
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    report.push(pass_or_fail(
        "amplitudes.octic",
        "a, b, c, d are roots of 45x⁸ − 90x⁶ + 60x⁴ − 15x² + 1",
        Some(tol.residual),
        if worst < tol.residual {
            Ok(format!("a = {:.15}, b = {:.15}, c = {:.15}, d = {:.15}; largest residual {worst:.3e}", values[0], values[1], values[2], values[3]))
        } else {
            Err(("residual too large".into(), Counterexample::new(["abcd".to_string()], format!("{residuals:?}"), format!("< {}", tol.residual))))
        },
    ));
    let ordered = values.windows(2).all(|w| w[0] > w[1]) && values[3] > 0.0;
    report.push(pass_or_fail(
        "amplitudes.ordering",
        "a > b > c > d > 0",
        None,
        if ordered { Ok(String::new()) } else { Err(("not strictly decreasing".into(), Counterexample::new([], format!("{values:?}"), "a > b > c > d > 0"))) },
    ));
    let (ad, bc) = (values[0].powi(2) + values[3].powi(2), values[1].powi(2) + values[2].powi(2));
    report.push(pass_or_fail(
        "amplitudes.pair_sums",
        "a² + d² = 1 and b² + c² = 1",
        Some(tol.identity),
        if (ad - 1.0).abs() <= tol.identity && (bc - 1.0).abs() <= tol.identity {
            Ok(format!("a² + d² − 1 = {:.1e}, b² + c² − 1 = {:.1e}", ad - 1.0, bc - 1.0))
        } else {
            Err(("pair sums differ from 1".into(), Counterexample::new([], format!("{ad}, {bc}"), "1, 1")))
        },
    ));
    let golden = c_n(3) == c_n(9) * c_n(6);
    report.push(pass_or_fail(
        "amplitudes.golden_factor",
        "c₃ = τ·c₉ exactly, so the two surd scales differ by the golden ratio",
        None,
        if golden { Ok("identity holds in ℚ(ζ₆₀)".into()) } else { Err(("identity fails".into(), Counterexample::new([], "c₃ ≠ c₆c₉", "c₃ = c₆c₉"))) },
    ));

    let AmplitudeSet::Cyclotomic { r: cyc, .. } = amplitudes_cyclotomic() else { unreachable!() };
    let all_real = cyc.iter().all(CycNum::is_real);
    report.push(pass_or_fail(
        "amplitudes.cyclotomic_real",
        "every cyclotomic amplitude is real",
        None,
        if all_real { Ok(String::new()) } else { Err(("a cyclotomic amplitude is not real".into(), Counterexample::new([], "conj(r) ≠ r", "conj(r) = r"))) },
    ));
    let surd = match amplitudes_primary() {
        Ok(s) => s.r_f64(),
        Err(e) => {
            report.push(failure("amplitudes.proportional", "the cyclotomic amplitudes are λ = c₉/a times the surd amplitudes", e));
            return report;
        }
    };
    let lambda = c_n_f64(9) / values[0];
    report.push(match proportionality_ratio(&surd, &cyc) {
        Ok(ratio) if ((ratio - lambda) / lambda).abs() <= tol.ratio => Check::pass(
            "amplitudes.proportional",
            "the cyclotomic amplitudes are λ = c₉/a times the surd amplitudes",
            Some(tol.ratio),
            format!("all eight ratios equal λ = {ratio:.15}"),
        ),
        Ok(ratio) => Check::fail(
            "amplitudes.proportional",
            "the cyclotomic amplitudes are λ = c₉/a times the surd amplitudes",
            Some(tol.ratio),
            "common ratio differs from c₉/a",
            Counterexample::new([], ratio, lambda),
        ),
        Err(e) => failure("amplitudes.proportional", "the cyclotomic amplitudes are λ = c₉/a times the surd amplitudes", e),
    });
    report
}

/// `grid[family][n]` = position of root `(family, n)` in the list.
fn label_grid<S>(roots: &[RootVector<S>], kind: RootSystemKind) -> Result<Vec<Vec<usize>>, Counterexample> {
    let families = kind.size() / CYCLE as usize;
    let mut grid = vec![vec![usize::MAX; CYCLE as usize]; families];
    for (i, r) in roots.iter().enumerate() {
        let (f, n) = (r.family.index(), r.index as usize);
        if f >= families || n >= CYCLE as usize {
            return Err(Counterexample::new([format!("{}{}", r.family, r.index)], "label out of range", format!("families A…{}, n < 30", Family::from_index(families - 1).unwrap())));
        }
        if grid[f][n] != usize::MAX {
            return Err(Counterexample::new([format!("{}{}", r.family, r.index)], "label repeated", "each label once"));
        }
        grid[f][n] = i;
    }
    for (f, row) in grid.iter().enumerate() {
        if let Some(n) = row.iter().position(|&i| i == usize::MAX) {
            return Err(Counterexample::new([format!("{}{n}", Family::from_index(f).unwrap())], "label missing", "each label once"));
        }
    }
    Ok(grid)
}

fn oracle_census(kind: RootSystemKind, tol: f64) -> Result<Census, String> {
    match kind {
        RootSystemKind::E8 => census_of_real(&standard_e8(), &spectrum(kind), tol),
        RootSystemKind::H4 => census_of_real(&standard_h4(), &spectrum(kind), tol),
    }
}

/// Axioms, norms, census against the textbook construction and the C30
/// rotation, for any root list. E8 lists additionally get the simple-root,
/// Dynkin and isomorphism checks.
fn structural_checks<S: Coord>(roots: &[RootVector<S>], kind: RootSystemKind, expected_norm: f64, tol: &Tolerances) -> (VerificationReport, Option<Vec<Vec<usize>>>) {
    let prefix = format!("{kind}.{}", S::ARITHMETIC);
    let name = |s: &str| format!("{prefix}.{s}");
    let mut report = VerificationReport::new();
    let n = roots.len();

    report.push(pass_or_fail(
        &name("cardinality"),
        &format!("the construction yields exactly {} roots", kind.size()),
        None,
        if n == kind.size() { Ok(format!("{n} roots")) } else { Err(("wrong count".into(), Counterexample::new([], n, kind.size()))) },
    ));
    let grid = label_grid(roots, kind);
    report.push(match &grid {
        Ok(_) => Check::pass(&name("labels"), "each label (family, n) with n < 30 occurs exactly once", None, ""),
        Err(ce) => Check::fail(&name("labels"), "each label (family, n) with n < 30 occurs exactly once", None, "labels do not form a full grid", ce.clone()),
    });

    let analysis = analyze_root_system(roots, kind, tol);
    report.extend(analysis.report);

    let norms: Vec<f64> = roots.iter().map(|r| hermitian_inner(&r.coords, &r.coords).map(|x| x.to_complex().re).unwrap_or(f64::NAN)).collect();
    let worst = norms.iter().enumerate().max_by(|a, b| (a.1 - expected_norm).abs().total_cmp(&(b.1 - expected_norm).abs()));
    report.push(match worst {
        Some((i, &v)) if !((v - expected_norm).abs() <= tol.norm) => Check::fail(
            &name("norm_value"),
            &format!("every squared norm equals {expected_norm:.15}"),
            Some(tol.norm),
            "squared norm off target",
            Counterexample::new([roots[i].label()], format!("{v:.15}"), format!("{expected_norm:.15}")),
        ),
        _ => Check::pass(&name("norm_value"), &format!("every squared norm equals {expected_norm:.15}"), Some(tol.norm), format!("{n} norms")),
    });

    if let Some(census) = &analysis.census {
        let claim = "the per-root census matches the textbook construction";
        report.push(match oracle_census(kind, tol.spectrum) {
            Ok(oracle) if census.matches(&oracle, tol.spectrum) => Check::pass(&name("census_oracle"), claim, Some(tol.spectrum), format!("both {census}")),
            Ok(oracle) => Check::fail(&name("census_oracle"), claim, Some(tol.spectrum), "census differs", Counterexample::new([], census, oracle)),
            Err(e) => failure(&name("census_oracle"), claim, e),
        });
    }

    report.extend(rotation_checks(roots, kind, &prefix, tol));
    if let (RootSystemKind::E8, Ok(grid)) = (kind, &grid) {
        report.extend(simple_root_checks(roots, grid, &prefix, tol));
        report.extend(isomorphism_checks(roots, grid, &prefix, tol));
    }
    (report, grid.ok())
}

fn rotation_checks<S: Coord>(roots: &[RootVector<S>], kind: RootSystemKind, prefix: &str, tol: &Tolerances) -> VerificationReport {
    let name = |s: &str| format!("{prefix}.{s}");
    let exact = S::ARITHMETIC == crate::coord::Arithmetic::Exact;
    let membership = (!exact).then_some(tol.membership);
    let mut report = VerificationReport::new();
    let rotation = CoxeterRotation::new(kind);
    let order = rotation.order();
    let half = rotation.pow(15).is_negation();
    report.push(pass_or_fail(
        &name("rotation_order"),
        &format!("the diagonal map with exponents {:?} has order 30 and its 15th power is −1", rotation.exponents),
        None,
        if order == 30 && half {
            Ok(String::new())
        } else {
            Err(("wrong order".into(), Counterexample::new([], format!("order {order}, 15th power negation: {half}"), "order 30, negation")))
        },
    ));

    let refs: Vec<&[S]> = roots.iter().map(|r| r.coords.as_slice()).collect();
    let index = S::Index::build(&refs, tol.membership);
    let images: Vec<Option<usize>> = roots.iter().map(|r| index.find(&rotation.apply(&r.coords))).collect();
    let mut hit = vec![false; roots.len()];
    let bad = images.iter().enumerate().find_map(|(i, img)| match img {
        Some(j) if !std::mem::replace(&mut hit[*j], true) => None,
        _ => Some(i),
    });
    report.push(pass_or_fail(
        &name("rotation_preserves"),
        "the diagonal map permutes the roots",
        membership,
        match bad {
            None => Ok(format!("{} roots permuted", roots.len())),
            Some(i) => Err(("image missing or repeated".into(), Counterexample::new([roots[i].label()], "image not a new root", "image in set"))),
        },
    ));
    if bad.is_some() {
        return report;
    }
    let perm: Vec<usize> = images.into_iter().map(Option::unwrap).collect();
    let mut seen = vec![false; roots.len()];
    let mut orbit_sizes = Vec::new();
    for start in 0..roots.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        orbit_sizes.push(len);
    }
    let families = kind.size() / CYCLE as usize;
    let stepping = roots
        .iter()
        .enumerate()
        .find(|(i, r)| roots[perm[*i]].family != r.family || roots[perm[*i]].index != (r.index + 1) % CYCLE);
    report.push(pass_or_fail(
        &name("rotation_orbits"),
        &format!("the map has {families} orbits of 30 roots and sends (F, n) to (F, n + 1)"),
        membership,
        match stepping {
            _ if orbit_sizes.len() != families || orbit_sizes.iter().any(|&s| s != 30) => {
                Err(("wrong orbit structure".into(), Counterexample::new([], format!("{orbit_sizes:?}"), format!("{families} × 30"))))
            }
            Some((i, r)) => Err(("image is not the next label".into(), Counterexample::new([r.label()], roots[perm[i]].label(), format!("{}{}", r.family, (r.index + 1) % CYCLE)))),
            None => Ok(format!("{families} orbits of size 30")),
        },
    ));
    report
}

fn simple_at<S: Clone>(roots: &[RootVector<S>], grid: &[Vec<usize>], n: usize) -> Vec<RootVector<S>> {
    grid.iter().map(|row| roots[row[n]].clone()).collect()
}

fn simple_root_checks<S: Coord>(roots: &[RootVector<S>], grid: &[Vec<usize>], prefix: &str, tol: &Tolerances) -> VerificationReport {
    let name = |s: &str| format!("{prefix}.{s}");
    let exact = S::ARITHMETIC == crate::coord::Arithmetic::Exact;
    let cartan_tol = if exact { 0.0 } else { tol.spectrum };
    let mut report = VerificationReport::new();
    let matrices: Vec<Result<CartanMatrix, _>> = (0..CYCLE as usize).map(|n| cartan_integers(&simple_at(roots, grid, n), cartan_tol)).collect();
    let claim = "for every n < 30, {Aₙ, …, Hₙ} has the same Cartan matrix, with diagonal 2 and off-diagonal entries in {0, −1}";
    let base = match &matrices[0] {
        Ok(m) => m.clone(),
        Err(e) => {
            report.push(failure(&name("simple_roots"), claim, e));
            return report;
        }
    };
    let odd = matrices.iter().enumerate().find(|(_, m)| m.as_ref().map_or(true, |m| m.entries != base.entries));
    report.push(match odd {
        _ if !base.is_simply_laced_form() => Check::fail(&name("simple_roots"), claim, (!exact).then_some(cartan_tol), "entries outside {2, 0, −1}", Counterexample::new(["n = 0".to_string()], &base, "simply laced Cartan matrix")),
        None => Check::pass(&name("simple_roots"), claim, (!exact).then_some(cartan_tol), "30 identical matrices"),
        Some((n, m)) => Check::fail(
            &name("simple_roots"),
            claim,
            (!exact).then_some(cartan_tol),
            "matrix changes with n",
            Counterexample::new([format!("n = {n}")], m.as_ref().map(|m| m.to_string()).unwrap_or_else(|e| e.to_string()), &base),
        ),
    });

    let mut edges: Vec<(String, String)> = base.labelled_edges();
    edges.sort();
    let mut drawn: Vec<(String, String)> = E8_DIAGRAM_EDGES
        .iter()
        .map(|(a, b)| if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) })
        .collect();
    drawn.sort();
    report.push(pass_or_fail(
        &name("dynkin_edges"),
        "the Dynkin diagram of {A₀, …, H₀} has edges F–A, A–C, C–D, A–B, B–E, E–G, G–H",
        None,
        if edges == drawn { Ok(String::new()) } else { Err(("edges differ".into(), Counterexample::new([], format!("{edges:?}"), format!("{drawn:?}")))) },
    ));
    let arms = branch_arms(&base).map(|(_, mut a)| {
        a.sort();
        a
    });
    report.push(pass_or_fail(
        &name("dynkin_shape"),
        "the diagram is E8: a path of seven nodes with one more node on the third from one end",
        None,
        if check_dynkin_e8(&base) && arms.as_deref() == Some(&[1, 2, 4]) {
            Ok("branch node arms 1, 2, 4".into())
        } else {
            Err(("not the E8 diagram".into(), Counterexample::new([], format!("arms {arms:?}"), "arms [1, 2, 4]")))
        },
    ));
    report
}

type Mat8 = SMatrix<f64, 8, 8>;

/// Integer coefficients of `v` over the columns of `basis`, if they are
/// integral within `tol`.
fn decompose_real(basis: &Mat8, v: &[f64; 8], tol: f64) -> Option<Vec<i64>> {
    let k = basis.lu().solve(&SVector::<f64, 8>::from_column_slice(v))?;
    k.iter().map(|x| ((x - x.round()).abs() <= tol).then(|| x.round() as i64)).collect()
}

fn basis_of(simple: &[[f64; 8]]) -> Mat8 {
    Mat8::from_fn(|r, c| simple[c][r])
}

/// Coefficients of the highest root of the textbook E8 over its simple
/// roots, sorted.
fn oracle_highest_root() -> Vec<i64> {
    let basis = basis_of(&standard_e8_simple());
    let mut best = standard_e8().iter().filter_map(|v| decompose_real(&basis, v, 1e-9)).max_by_key(|k| k.iter().sum::<i64>()).unwrap_or_default();
    best.sort();
    best
}

fn decomposition_checks(labels: &[String], coefficients: Result<Vec<Vec<i64>>, (usize, String)>, prefix: &str, tol: Option<f64>) -> VerificationReport {
    let name = |s: &str| format!("{prefix}.{s}");
    let mut report = VerificationReport::new();
    let claim = "every root is an integer combination of A₀, …, H₀ with coefficients all ≥ 0 or all ≤ 0";
    let all = match coefficients {
        Ok(all) => all,
        Err((i, reason)) => {
            report.push(Check::fail(&name("decomposition"), claim, tol, reason.clone(), Counterexample::new([labels[i].clone()], reason, "uniform-sign integers")));
            return report;
        }
    };
    let mixed = all.iter().position(|k| k.iter().any(|&x| x > 0) && k.iter().any(|&x| x < 0));
    let positive = all.iter().filter(|k| k.iter().all(|&x| x >= 0)).count();
    report.push(match mixed {
        Some(i) => Check::fail(&name("decomposition"), claim, tol, "mixed signs", Counterexample::new([labels[i].clone()], format!("{:?}", all[i]), "uniform sign")),
        None if positive * 2 != all.len() => Check::fail(&name("decomposition"), claim, tol, "positive roots are not half", Counterexample::new([], positive, all.len() / 2)),
        None => Check::pass(&name("decomposition"), claim, tol, format!("{} roots, {positive} positive", all.len())),
    });
    let (i, top) = all.iter().enumerate().max_by_key(|(_, k)| k.iter().sum::<i64>()).expect("nonempty");
    let height: i64 = top.iter().sum();
    let mut sorted = top.clone();
    sorted.sort();
    let oracle = oracle_highest_root();
    report.push(pass_or_fail(
        &name("highest_root"),
        "the highest root has height 29 = h − 1 for Coxeter number h = 30, with the textbook coefficients",
        tol,
        if height == 29 && sorted == oracle {
            Ok(format!("{} = {top:?}", labels[i]))
        } else {
            Err(("highest root differs".into(), Counterexample::new([labels[i].clone()], format!("height {height}, {top:?}"), format!("height 29, coefficients {oracle:?} in some order"))))
        },
    ));
    report
}

fn isomorphism_checks<S: Coord>(roots: &[RootVector<S>], grid: &[Vec<usize>], prefix: &str, tol: &Tolerances) -> VerificationReport {
    let name = |s: &str| format!("{prefix}.{s}");
    let mut report = VerificationReport::new();
    let real: Vec<[f64; 8]> = roots.iter().map(|r| to_real8(&r.to_numeric().coords)).collect();
    let src: [[f64; 8]; 8] = std::array::from_fn(|f| real[grid[f][0]]);
    let standard = standard_e8();
    let claim = "the linear map matching A₀, …, H₀ to textbook simple roots is a scaled orthogonal map";
    let iso = match isometry_from_simple_match(&src, &standard_e8_simple(), tol.isometry) {
        Ok(iso) => iso,
        Err(e) => {
            report.push(failure(&name("isometry"), claim, e));
            return report;
        }
    };
    report.push(Check::pass(&name("isometry"), claim, Some(tol.isometry), format!("scale {:.12}", iso.scale)));
    let claim = "that map carries the roots one-to-one onto the textbook E8 roots";
    match check_bijection(&iso, &real, &standard, tol.isometry) {
        Ok(_) => report.push(Check::pass(&name("bijection"), claim, Some(tol.isometry), format!("{} roots matched", real.len()))),
        Err(e) => {
            report.push(failure(&name("bijection"), claim, e));
            return report;
        }
    }

    let claim = "the diagonal map, carried to the textbook side, permutes the textbook roots with order 30";
    let Some(inverse) = iso.inverse() else {
        report.push(failure(&name("conjugated_rotation"), claim, "map is singular"));
        return report;
    };
    let rotation = CoxeterRotation::new(RootSystemKind::E8);
    let len = 2f64.sqrt();
    let perm: Vec<Option<usize>> = standard
        .iter()
        .map(|s| {
            let g = inverse.apply(s);
            let z: Vec<Complex64> = (0..4).map(|k| Complex64::new(g[2 * k], g[2 * k + 1])).collect();
            let w = iso.apply(&to_real8(&rotation.apply(&z)));
            standard.iter().position(|d| d.iter().zip(&w).all(|(x, y)| (x - y).abs() <= tol.isometry * len))
        })
        .collect();
    let mut hit = vec![false; standard.len()];
    let injective = perm.iter().all(|p| p.is_some_and(|j| !std::mem::replace(&mut hit[j], true)));
    let order = if injective {
        let perm: Vec<usize> = perm.iter().map(|p| p.unwrap()).collect();
        let mut order = 1usize;
        let mut seen = vec![false; perm.len()];
        for start in 0..perm.len() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            if len > 0 {
                order = order.lcm(&len);
            }
        }
        Some(order)
    } else {
        None
    };
    report.push(pass_or_fail(
        &name("conjugated_rotation"),
        claim,
        Some(tol.isometry),
        match order {
            Some(30) => Ok("permutation of order 30".into()),
            other => Err(("not a permutation of order 30".into(), Counterexample::new([], format!("{other:?}"), "Some(30)"))),
        },
    ));
    report
}

/// Every check that applies to an exact E8 root list.
pub fn e8_exact_checks(roots: &[ExactRoot], tol: &Tolerances) -> VerificationReport {
    let prefix = "e8.exact";
    let lambda_sq = abcd_numeric().map(|abcd| (c_n_f64(9) / abcd.a).powi(2)).unwrap_or(f64::NAN);
    let (mut report, grid) = structural_checks(roots, RootSystemKind::E8, lambda_sq, tol);
    if let Some(grid) = grid {
        let simple = SimpleSystem::new(simple_at(roots, &grid, 0));
        let labels: Vec<String> = roots.iter().map(RootVector::label).collect();
        let coefficients = match simple {
            Ok(simple) => roots.iter().enumerate().map(|(i, r)| simple.decompose(r).map_err(|e| (i, e.to_string()))).collect(),
            Err(e) => Err((0, e.to_string())),
        };
        report.extend(decomposition_checks(&labels, coefficients, prefix, None));
    }
    report
}

/// Every check that applies to a floating-point root list.
pub fn numeric_checks(roots: &[NumericRoot], kind: RootSystemKind, tol: &Tolerances) -> VerificationReport {
    let (mut report, grid) = structural_checks(roots, kind, 1.0, tol);
    if let (RootSystemKind::E8, Some(grid)) = (kind, grid) {
        let real: Vec<[f64; 8]> = roots.iter().map(|r| to_real8(&r.coords)).collect();
        let basis = basis_of(&(0..8).map(|f| real[grid[f][0]]).collect::<Vec<_>>());
        let labels: Vec<String> = roots.iter().map(RootVector::label).collect();
        let coefficients = real
            .iter()
            .enumerate()
            .map(|(i, v)| decompose_real(&basis, v, tol.membership).ok_or((i, "non-integral coefficients".to_string())))
            .collect();
        report.extend(decomposition_checks(&labels, coefficients, "e8.numeric", Some(tol.membership)));
    }
    report
}

/// Checks on a list of roots of either arithmetic.
pub fn root_checks(kind: RootSystemKind, roots: &Roots, tol: &Tolerances) -> VerificationReport {
    match roots {
        Roots::Exact(v) if kind == RootSystemKind::E8 => e8_exact_checks(v, tol),
        Roots::Exact(v) => numeric_checks(&v.iter().map(RootVector::to_numeric).collect::<Vec<_>>(), kind, tol),
        Roots::Numeric(v) => numeric_checks(v, kind, tol),
    }
}

fn projection_shape(points: &[ProjectionPoint], kind: RootSystemKind, reference: &[f64], tol: &Tolerances) -> VerificationReport {
    let name = |s: &str| format!("{kind}.projection.{s}");
    let families = kind.size() / CYCLE as usize;
    let mut report = VerificationReport::new();
    let classes = phase_census(points, tol.projection);
    let shape_ok = classes.len() == families && classes.iter().all(|c| c.count == 30 && c.is_full_cycle());
    report.push(pass_or_fail(
        &name("cycles"),
        &format!("the first coordinates lie on {families} circles, each a regular 30-gon"),
        Some(tol.projection),
        if shape_ok {
            Ok(format!("{} circles of 30 points", classes.len()))
        } else {
            Err(("wrong circle structure".into(), Counterexample::new([], format!("{:?}", classes.iter().map(|c| c.count).collect::<Vec<_>>()), format!("{families} × 30"))))
        },
    ));
    let radii: Vec<f64> = classes.iter().map(|c| c.radius).collect();
    let close = radii.len() == reference.len() && radii.iter().zip(reference).all(|(r, e)| (r - e).abs() <= tol.reference_radius);
    report.push(pass_or_fail(
        &name("radii"),
        &format!("the circle radii are {reference:?}"),
        Some(tol.reference_radius),
        if close { Ok(format!("{radii:.6?}")) } else { Err(("radii differ".into(), Counterexample::new([], format!("{radii:.6?}"), format!("{reference:?}")))) },
    ));
    let gap = radii.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
    report.push(pass_or_fail(
        &name("radius_gap"),
        "distinct circles are more than 0.02 apart",
        None,
        if gap > 0.02 { Ok(format!("smallest gap {gap:.6}")) } else { Err(("circles too close".into(), Counterexample::new([], gap, "> 0.02"))) },
    ));
    let parity_of = |f: Family| match GeneratorMatrix::for_kind(kind).rows[f.index()][0].phase % 2 {
        0 => Parity::Even,
        _ => Parity::Odd,
    };
    let bad = classes.iter().find(|c| c.families.len() != 1 || c.parity != parity_of(c.families[0]));
    let even = classes.iter().filter(|c| c.parity == Parity::Even).count();
    report.push(pass_or_fail(
        &name("parity"),
        match kind {
            RootSystemKind::E8 => "each circle holds one family, on even phases for A, D, E, H and odd phases for B, C, F, G",
            RootSystemKind::H4 => "each circle holds one family, on even phases for A, D and odd phases for B, C",
        },
        None,
        match bad {
            None => Ok(format!("{even} even, {} odd", classes.len() - even)),
            Some(c) => Err(("parity mismatch".into(), Counterexample::new(c.families.iter().map(Family::to_string), format!("{:?}", c.parity), "single family with its row parity"))),
        },
    ));
    let (a, b) = multiset_difference(points, &rotate_points(points, 2), tol.projection);
    report.push(pass_or_fail(
        &name("rotation_invariant"),
        "the projection is invariant under rotation by π/15",
        Some(tol.projection),
        if a.is_empty() && b.is_empty() { Ok(String::new()) } else { Err(("points move".into(), Counterexample::new([], a.len() + b.len(), 0))) },
    ));
    report
}

/// Circle structure of each projection and the golden-ratio relation
/// between them.
pub fn projection_checks(e8: Option<&[NumericRoot]>, h4: Option<&[NumericRoot]>, tol: &Tolerances) -> VerificationReport {
    let mut report = VerificationReport::new();
    let project = |roots: &[NumericRoot], kind: RootSystemKind, report: &mut VerificationReport| match project_first_coordinate(roots, tol.projection) {
        Ok(p) => Some(p),
        Err(e) => {
            report.push(failure(&format!("{kind}.projection.phases"), "every first coordinate is a radius times a 60th root of unity", e));
            None
        }
    };
    let e8_points = e8.and_then(|r| project(r, RootSystemKind::E8, &mut report));
    let h4_points = h4.and_then(|r| project(r, RootSystemKind::H4, &mut report));
    if let Some(p) = &e8_points {
        report.extend(projection_shape(p, RootSystemKind::E8, &E8_REFERENCE_RADII, tol));
    }
    if let Some(p) = &h4_points {
        match abcd_numeric() {
            Ok(abcd) => report.extend(projection_shape(p, RootSystemKind::H4, &abcd.as_array(), tol)),
            Err(e) => report.push(failure("h4.projection.radii", "the circle radii are a, b, c, d", e)),
        }
    }
    if let (Some(e), Some(h)) = (&e8_points, &h4_points) {
        let s = h4_e8_scaling_check(e, h, tol.projection, tol.identity);
        let claim = "the E8 projection is the H4 projection scaled by 1/c₉ and by 1/c₃, two sizes in golden ratio";
        report.push(if s.passed {
            Check::pass("projection.golden_scaling", claim, Some(tol.projection), s.diagnostic)
        } else {
            Check::fail(
                "projection.golden_scaling",
                claim,
                Some(tol.projection),
                s.diagnostic.clone(),
                Counterexample::new(s.unmatched_e8.iter().chain(&s.unmatched_h4).take(4).map(|p| format!("{}{}", p.family, p.index)), s.ratio, "τ"),
            )
        });
    }
    if let Some(p) = &e8_points {
        let style = RenderStyle::default();
        let claim = "rendering the E8 projection twice gives identical SVG with 240 points";
        report.push(match (render_svg(p, &style), render_svg(p, &style)) {
            (Ok(a), Ok(b)) if a == b && a.matches("class=\"point\"").count() == 240 => Check::pass("render.deterministic", claim, None, format!("{} bytes", a.len())),
            (Ok(a), Ok(b)) => Check::fail("render.deterministic", claim, None, "output differs", Counterexample::new([], a.len(), b.len())),
            (Err(e), _) | (_, Err(e)) => failure("render.deterministic", claim, e),
        });
    }
    report
}

/// Amplitude checks, every check on the given roots and, for floating-point
/// roots, the projection checks. Verifying generated roots this way gives the
/// same report as [`run_suite`] restricted to that system and mode.
pub fn verify_roots(kind: RootSystemKind, roots: &Roots, tol: &Tolerances) -> VerificationReport {
    let mut report = amplitude_checks(tol);
    report.extend(root_checks(kind, roots, tol));
    if let Roots::Numeric(v) = roots {
        let (e8, h4) = match kind {
            RootSystemKind::E8 => (Some(v.as_slice()), None),
            RootSystemKind::H4 => (None, Some(v.as_slice())),
        };
        report.extend(projection_checks(e8, h4, tol));
    }
    report
}

/// Runs the selected part of the suite from scratch.
pub fn run_suite(selection: Selection, tol: &Tolerances) -> VerificationReport {
    let mut report = amplitude_checks(tol);
    let mut e8_numeric = None;
    let mut h4 = None;
    if selection.wants(RootSystemKind::E8, AmplitudeMode::Cyclotomic) {
        match e8_roots(&amplitudes_cyclotomic()) {
            Ok(Roots::Exact(roots)) => report.extend(e8_exact_checks(&roots, tol)),
            Ok(Roots::Numeric(_)) => unreachable!("cyclotomic amplitudes give exact roots"),
            Err(e) => report.push(failure("e8.exact.generate", "the cyclotomic formula generates 240 distinct roots", e)),
        }
    }
    let surd = amplitudes_primary();
    if selection.wants(RootSystemKind::E8, AmplitudeMode::Surd) {
        match surd.as_ref().map_err(|e| e.to_string()).and_then(|a| e8_roots(a).map_err(|e| e.to_string())) {
            Ok(roots) => {
                let roots = roots.to_numeric();
                report.extend(numeric_checks(&roots, RootSystemKind::E8, tol));
                e8_numeric = Some(roots);
            }
            Err(e) => report.push(failure("e8.numeric.generate", "the surd formula generates 240 distinct roots", e)),
        }
    }
    if selection.wants(RootSystemKind::H4, AmplitudeMode::Surd) {
        match surd.as_ref().map_err(|e| e.to_string()).and_then(|a| h4_roots(a).map_err(|e| e.to_string())) {
            Ok(roots) => {
                report.extend(numeric_checks(&roots, RootSystemKind::H4, tol));
                h4 = Some(roots);
            }
            Err(e) => report.push(failure("h4.numeric.generate", "the surd formula generates 120 distinct roots", e)),
        }
    }
    report.extend(projection_checks(e8_numeric.as_deref(), h4.as_deref(), tol));
    report
}

/// The whole suite with default selection.
pub fn full_report(tol: &Tolerances) -> VerificationReport {
    run_suite(Selection::default(), tol)
}
