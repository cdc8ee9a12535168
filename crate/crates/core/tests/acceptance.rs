//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use triacontagonal::amplitudes::{abcd_numeric, amplitudes_cyclotomic, amplitudes_primary, c_n_f64, octic, proportionality_ratio, AmplitudeSet};
use triacontagonal::cyclo::CycNum;
use triacontagonal::project::{h4_e8_scaling_check, phase_census, project_first_coordinate};
use triacontagonal::roots::{coxeter_rotation, e8_roots, h4_roots, ExactRoot, NumericRoot, RootSystemKind, Roots};
use triacontagonal::suite::{e8_exact_checks, numeric_checks, E8_REFERENCE_RADII};
use triacontagonal::tolerance::Tolerances;
use triacontagonal::verify::{hermitian_inner, VerificationReport};

type Outcome = Result<String, String>;

struct Fixtures {
    exact: Vec<ExactRoot>,
    e8: Vec<NumericRoot>,
    h4: Vec<NumericRoot>,
    exact_report: VerificationReport,
    e8_report: VerificationReport,
    h4_report: VerificationReport,
}

fn fixtures() -> Fixtures {
    let tol = Tolerances::default();
    let exact = match e8_roots(&amplitudes_cyclotomic()).expect("cyclotomic E8") {
        Roots::Exact(v) => v,
        Roots::Numeric(_) => panic!("cyclotomic amplitudes must give exact roots"),
    };
    let surd = amplitudes_primary().expect("surd amplitudes");
    let e8 = e8_roots(&surd).expect("surd E8").to_numeric();
    let h4 = h4_roots(&surd).expect("H4");
    let exact_report = e8_exact_checks(&exact, &tol);
    let e8_report = numeric_checks(&e8, RootSystemKind::E8, &tol);
    let h4_report = numeric_checks(&h4, RootSystemKind::H4, &tol);
    Fixtures { exact, e8, h4, exact_report, e8_report, h4_report }
}

fn require(report: &VerificationReport, names: &[&str]) -> Outcome {
    for name in names {
        match report.get(name) {
            None => return Err(format!("{name} did not run")),
            Some(c) if !c.passed() => return Err(format!("{name}: {} {:?}", c.detail, c.counterexample)),
            Some(_) => {}
        }
    }
    Ok(String::new())
}

fn cardinality(f: &Fixtures) -> Outcome {
    if f.exact.len() != 240 || f.h4.len() != 120 {
        return Err(format!("{} E8 roots, {} H4 roots", f.exact.len(), f.h4.len()));
    }
    require(&f.exact_report, &["e8.exact.distinct"])?;
    require(&f.h4_report, &["h4.numeric.distinct"])?;
    Ok("240 distinct E8 roots, 120 distinct H4 roots".into())
}

fn norms(f: &Fixtures) -> Outcome {
    let worst = f
        .e8
        .iter()
        .chain(&f.h4)
        .map(|r| (hermitian_inner(&r.coords, &r.coords).unwrap().re - 1.0).abs())
        .fold(0.0, f64::max);
    if worst > 1e-12 {
        return Err(format!("surd norms deviate from 1 by {worst:e}"));
    }
    let exact_norms: Vec<CycNum> = f.exact.iter().map(|r| hermitian_inner(&r.coords, &r.coords).unwrap()).collect();
    if exact_norms.iter().any(|n| n != &exact_norms[0]) {
        return Err("exact norms are not all the same field element".into());
    }
    let abcd = abcd_numeric().map_err(|e| e.to_string())?;
    let lambda_sq = (c_n_f64(9) / abcd.a).powi(2);
    let value = exact_norms[0].embed_complex().re;
    if (value - lambda_sq).abs() > 1e-12 {
        return Err(format!("exact norm {value} differs from (c₉/a)² = {lambda_sq}"));
    }
    Ok(format!("surd norms within {worst:.1e} of 1; exact norm {value:.12} = (c₉/a)²"))
}

fn axioms(f: &Fixtures) -> Outcome {
    require(&f.exact_report, &["e8.exact.cartan", "e8.exact.census", "e8.exact.census_oracle", "e8.exact.reflection_closure"])?;
    let census = f.exact_report.get("e8.exact.census").unwrap();
    Ok(format!("57600 exact pairs; {}", census.detail))
}

fn simple_roots(f: &Fixtures) -> Outcome {
    require(&f.exact_report, &["e8.exact.simple_roots", "e8.exact.dynkin_edges", "e8.exact.dynkin_shape", "e8.exact.decomposition", "e8.exact.highest_root"])?;
    Ok(f.exact_report.get("e8.exact.highest_root").unwrap().detail.clone())
}

fn symmetry(f: &Fixtures) -> Outcome {
    let rotation = coxeter_rotation(RootSystemKind::E8);
    if rotation.exponents != [2, 22, 14, 26] {
        return Err(format!("exponents {:?}", rotation.exponents));
    }
    require(&f.exact_report, &["e8.exact.rotation_order", "e8.exact.rotation_preserves", "e8.exact.rotation_orbits"])?;
    Ok("order 30, 8 orbits of 30, 15th power is −1".into())
}

fn isomorphism(f: &Fixtures) -> Outcome {
    require(&f.e8_report, &["e8.numeric.isometry", "e8.numeric.bijection", "e8.numeric.conjugated_rotation"])?;
    require(&f.exact_report, &["e8.exact.isometry", "e8.exact.bijection"])?;
    require(&f.h4_report, &["h4.numeric.census_oracle"])?;
    Ok("explicit map onto the textbook E8; H4 census equals the 600-cell census".into())
}

fn projection(f: &Fixtures) -> Outcome {
    let tol = 1e-9;
    let e8 = project_first_coordinate(&f.e8, tol).map_err(|e| e.to_string())?;
    let classes = phase_census(&e8, tol);
    if classes.len() != 8 || classes.iter().any(|c| c.count != 30) {
        return Err(format!("circle sizes {:?}", classes.iter().map(|c| c.count).collect::<Vec<_>>()));
    }
    for (c, r) in classes.iter().zip(E8_REFERENCE_RADII) {
        if (c.radius - r).abs() > 1e-3 {
            return Err(format!("radius {} vs {r}", c.radius));
        }
    }
    let h4 = phase_census(&project_first_coordinate(&f.h4, tol).map_err(|e| e.to_string())?, tol);
    let abcd = abcd_numeric().map_err(|e| e.to_string())?.as_array();
    if h4.len() != 4 || h4.iter().zip(abcd).any(|(c, x)| (c.radius - x).abs() > 1e-3) {
        return Err(format!("H4 radii {:?}", h4.iter().map(|c| c.radius).collect::<Vec<_>>()));
    }
    Ok(format!("8 × 30 points, radii {:.4?}", classes.iter().map(|c| c.radius).collect::<Vec<_>>()))
}

fn golden(f: &Fixtures) -> Outcome {
    let e8 = project_first_coordinate(&f.e8, 1e-9).map_err(|e| e.to_string())?;
    let h4 = project_first_coordinate(&f.h4, 1e-9).map_err(|e| e.to_string())?;
    let s = h4_e8_scaling_check(&e8, &h4, 1e-9, 1e-12);
    if s.passed {
        Ok(s.diagnostic)
    } else {
        Err(s.diagnostic)
    }
}

fn amplitudes(_: &Fixtures) -> Outcome {
    let abcd = abcd_numeric().map_err(|e| e.to_string())?;
    let residual = abcd.as_array().iter().map(|&x| octic(x).abs()).fold(0.0, f64::max);
    if residual >= 1e-10 {
        return Err(format!("octic residual {residual:e}"));
    }
    let surd = amplitudes_primary().map_err(|e| e.to_string())?.r_f64();
    let AmplitudeSet::Cyclotomic { r, .. } = amplitudes_cyclotomic() else { return Err("wrong mode".into()) };
    let ratios: Vec<f64> = (0..8).map(|i| r[i].embed_complex().re / surd[i]).collect();
    let lambda = c_n_f64(9) / abcd.a;
    if ratios.iter().any(|q| ((q - lambda) / lambda).abs() > 1e-10) {
        return Err(format!("ratios {ratios:?} vs c₉/a = {lambda}"));
    }
    let common = proportionality_ratio(&surd, &r).map_err(|e| e.to_string())?;
    Ok(format!("λ = {common:.12}; largest octic residual {residual:.1e}"))
}

fn rendering(_: &Fixtures) -> Outcome {
    let bin = env!("CARGO_BIN_EXE_triacontagonal");
    let run = || {
        Command::new(bin).args(["render", "--system", "e8"]).output().map_err(|e| e.to_string()).and_then(|o| {
            if o.status.success() {
                Ok(o.stdout)
            } else {
                Err(String::from_utf8_lossy(&o.stderr).into_owned())
            }
        })
    };
    let (a, b) = (run()?, run()?);
    if a != b {
        return Err("two runs differ".into());
    }
    let svg = String::from_utf8(a).map_err(|e| e.to_string())?;
    let points = svg.matches("class=\"point\"").count();
    if points != 240 {
        return Err(format!("{points} point elements"));
    }
    Ok(format!("{} identical bytes, 240 points", svg.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let f = fixtures();
    let criteria: [(&str, fn(&Fixtures) -> Outcome); 10] = [
        ("cardinality", cardinality),
        ("norms", norms),
        ("root-system axioms", axioms),
        ("simple roots and Dynkin shape", simple_roots),
        ("C30 symmetry", symmetry),
        ("isomorphism", isomorphism),
        ("projection structure", projection),
        ("golden-ratio relation", golden),
        ("amplitude equivalence", amplitudes),
        ("rendering determinism", rendering),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check(&f) {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/10 criteria passed in {:.2?}", 10 - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
