//! Machine checks of root-system structure.
//!
//! Inner products are the real part of the Hermitian form on `ℂⁿ`, which is
//! the Euclidean form on the interleaved real coordinates. In exact mode
//! every Cartan scalar `2⟨v, α⟩ / ⟨α, α⟩` is obtained as a rational multiple
//! test, never by inverting a cyclotomic number.

mod dynkin;
mod linalg;
mod report;
mod standard;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::amplitudes::golden_ratio;
use crate::coord::{Arithmetic, Coord, Quotient, RootIndex};
use crate::cyclo::CycNum;
use crate::roots::{ExactRoot, RootSystemKind, RootVector};
use crate::tolerance::Tolerances;

pub use dynkin::{branch_arms, cartan_integers, check_dynkin_e8, diagram_matching, e8_reference, CartanMatrix};
pub use linalg::solve_rational;
pub use report::{Check, Counterexample, Status, VerificationReport};
pub use standard::{
    cartan_of_real, census_of_real, check_bijection, isometry_from_simple_match, standard_e8, standard_e8_simple,
    standard_h4, Isometry,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("vectors have {left} and {right} coordinates")]
    DimensionMismatch { left: usize, right: usize },
    #[error("zero-norm vector")]
    ZeroNorm,
    #[error("Cartan scalar for ({}, {}) is not rational", .0.0, .0.1)]
    NonRationalCartan((String, String)),
    #[error("Cartan scalar for ({}, {}) is {value}, not an integer", pair.0, pair.1)]
    NonIntegralCartan { pair: (String, String), value: String },
    #[error("root {root} does not decompose over the simple roots: {reason}")]
    Decomposition { root: String, reason: String },
    #[error("Cartan matrices are not related by any relabelling")]
    DiagramMismatch,
    #[error("simple roots are linearly dependent")]
    Singular,
    #[error("map is not orthogonal up to scale: deviation {deviation:e} exceeds {tol:e}")]
    NotOrthogonal { deviation: f64, tol: f64 },
    #[error("{} source roots have no image in the target set: {:?}", unmatched.len(), unmatched)]
    Bijection { unmatched: Vec<usize> },
}

/// `Re Σ uⱼ·conj(vⱼ)`.
pub fn hermitian_inner<S: Coord>(u: &[S], v: &[S]) -> Result<S, VerifyError> {
    if u.len() != v.len() {
        return Err(VerifyError::DimensionMismatch { left: u.len(), right: v.len() });
    }
    Ok(inner_unchecked(u, v))
}

fn inner_unchecked<S: Coord>(u: &[S], v: &[S]) -> S {
    u.iter().zip(v).fold(S::zero(), |acc, (a, b)| acc.plus(&a.times(&b.conj()))).real_part()
}

fn two<S: Coord>(x: &S) -> S {
    x.plus(x)
}

/// `2⟨v, α⟩ / ⟨α, α⟩`.
pub fn cartan_scalar<S: Coord>(v: &[S], alpha: &[S]) -> Result<Quotient, VerifyError> {
    let num = two(&hermitian_inner(v, alpha)?);
    let den = inner_unchecked(alpha, alpha);
    if den.to_complex().norm() == 0.0 {
        return Err(VerifyError::ZeroNorm);
    }
    num.real_quotient(&den).ok_or_else(|| VerifyError::NonRationalCartan((format!("{v:?}"), format!("{alpha:?}"))))
}

/// `v − (2⟨v, α⟩ / ⟨α, α⟩)·α`.
pub fn reflect<S: Coord>(v: &[S], alpha: &[S]) -> Result<Vec<S>, VerifyError> {
    let q = cartan_scalar(v, alpha)?;
    Ok(v.iter().zip(alpha).map(|(x, a)| x.minus(&a.scaled(&q))).collect())
}

/// Possible normalized inner products `⟨u, v⟩ / ⟨v, v⟩` between roots.
pub fn spectrum(kind: RootSystemKind) -> Vec<f64> {
    let mut values = vec![1.0, 0.5, 0.0, -0.5, -1.0];
    if kind == RootSystemKind::H4 {
        let tau = golden_ratio();
        values.extend([tau / 2.0, -tau / 2.0, 1.0 / (2.0 * tau), -1.0 / (2.0 * tau)]);
    }
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

fn snap(value: f64, spectrum: &[f64], tol: f64) -> Option<usize> {
    spectrum.iter().position(|s| (s - value).abs() <= tol)
}

/// Counts of each normalized inner product seen from one root, in
/// descending order of value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Census {
    pub entries: Vec<(f64, usize)>,
}

impl Census {
    fn from_counts(spectrum: &[f64], counts: &[usize]) -> Self {
        Census { entries: spectrum.iter().zip(counts).filter(|(_, &c)| c > 0).map(|(&v, &c)| (v, c)).collect() }
    }

    pub fn counts(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.1).collect()
    }

    pub fn matches(&self, other: &Census, tol: f64) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.1 == b.1 && (a.0 - b.0).abs() <= tol)
    }
}

impl std::fmt::Display for Census {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(v, c)| format!("{v}: {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Everything [`analyze_root_system`] learns besides the report.
#[derive(Clone, Debug)]
pub struct RootSystemAnalysis<S> {
    pub report: VerificationReport,
    pub census: Option<Census>,
    pub norm: Option<S>,
}

/// Checks the root-system axioms on a full list of roots:
/// distinctness, negation closure, equal norms, the inner-product spectrum
/// (integral Cartan scalars for E8), a uniform per-root census, and closure
/// under every reflection.
pub fn analyze_root_system<S: Coord>(roots: &[RootVector<S>], kind: RootSystemKind, tol: &Tolerances) -> RootSystemAnalysis<S> {
    let exact = S::ARITHMETIC == Arithmetic::Exact;
    let prefix = format!("{kind}.{}", S::ARITHMETIC);
    let name = |s: &str| format!("{prefix}.{s}");
    let tol_of = |t: f64| (!exact).then_some(t);
    let mut report = VerificationReport::new();
    let n = roots.len();

    let refs: Vec<&[S]> = roots.iter().map(|r| r.coords.as_slice()).collect();
    let index = S::Index::build(&refs, tol.membership);

    let duplicate = (0..n).find_map(|i| match index.find(&roots[i].coords) {
        Some(j) if j == i => None,
        other => Some((other, i)),
    });
    report.push(match duplicate {
        None => Check::pass(&name("distinct"), "all roots are pairwise distinct", tol_of(tol.membership), format!("{n} distinct roots")),
        Some((j, i)) => Check::fail(
            &name("distinct"),
            "all roots are pairwise distinct",
            tol_of(tol.membership),
            "two roots coincide",
            Counterexample::new(
                [j.map(|j| roots[j].label()).unwrap_or_default(), roots[i].label()],
                "equal vectors",
                "distinct vectors",
            ),
        ),
    });

    let negatives: Vec<Option<usize>> = roots.iter().map(|r| index.find(&r.negated())).collect();
    report.push(match negatives.iter().position(Option::is_none) {
        None => Check::pass(&name("negation"), "the set is closed under v ↦ −v", tol_of(tol.membership), ""),
        Some(i) => Check::fail(
            &name("negation"),
            "the set is closed under v ↦ −v",
            tol_of(tol.membership),
            "negative of a root is missing",
            Counterexample::new([roots[i].label()], "−v absent", "−v present"),
        ),
    });

    let norms: Vec<S> = roots.iter().map(|r| inner_unchecked(&r.coords, &r.coords)).collect();
    let norm_value = norms.first().map(|x| x.to_complex().re).unwrap_or(f64::NAN);
    let bad_norm = norms.iter().position(|x| !x.approx_eq(&norms[0], tol.norm));
    report.push(match bad_norm {
        None => Check::pass(&name("equal_norms"), "all roots have the same length", tol_of(tol.norm), format!("common squared norm {norm_value:.15}")),
        Some(i) => Check::fail(
            &name("equal_norms"),
            "all roots have the same length",
            tol_of(tol.norm),
            "squared norms differ",
            Counterexample::new(
                [roots[0].label(), roots[i].label()],
                format!("{:.15}", norms[i].to_complex().re),
                format!("{norm_value:.15}"),
            ),
        ),
    });

    // Cartan scalars q[i][j] = 2⟨rᵢ, rⱼ⟩ / ⟨rⱼ, rⱼ⟩ from the upper triangle of the Gram matrix.
    let rows: Vec<Vec<(usize, Option<Quotient>, Option<Quotient>)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .map(|j| {
                    let ip2 = two(&inner_unchecked(&roots[i].coords, &roots[j].coords));
                    (j, ip2.real_quotient(&norms[j]), ip2.real_quotient(&norms[i]))
                })
                .collect()
        })
        .collect();
    let mut table: Vec<Vec<Option<Quotient>>> = vec![vec![None; n]; n];
    for (i, row) in rows.into_iter().enumerate() {
        for (j, qij, qji) in row {
            table[i][j] = qij;
            table[j][i] = qji;
        }
    }

    let allowed = spectrum(kind);
    let mut first_bad: Option<(usize, usize, String, String)> = None;
    let mut censuses: Vec<Vec<usize>> = vec![vec![0; allowed.len()]; n];
    'outer: for i in 0..n {
        for j in 0..n {
            let Some(q) = &table[i][j] else {
                first_bad = Some((i, j, "non-rational".into(), "rational Cartan scalar".into()));
                break 'outer;
            };
            if kind == RootSystemKind::E8 {
                let allowed = i == j || negatives[j] == Some(i);
                match q.as_integer(tol.spectrum) {
                    Some(k) if k.abs() < 2 || (k.abs() == 2 && allowed) => {}
                    _ => {
                        first_bad = Some((i, j, q.to_string(), "integer in [−1, 1], or ±2 for v = ±α".into()));
                        break 'outer;
                    }
                }
            }
            match snap(q.to_f64() / 2.0, &allowed, if exact { 0.0 } else { tol.spectrum }) {
                Some(k) => censuses[i][k] += 1,
                None => {
                    first_bad = Some((i, j, format!("{}", q.to_f64() / 2.0), format!("{allowed:?}")));
                    break 'outer;
                }
            }
        }
    }
    let claim = match kind {
        RootSystemKind::E8 => "every ordered pair has Cartan integer in {−2, …, 2}, ±2 only for v = ±α",
        RootSystemKind::H4 => "normalized inner products lie in {0, ±1/2, ±τ/2, ±1/(2τ), ±1}",
    };
    report.push(match &first_bad {
        None => Check::pass(&name("cartan"), claim, tol_of(tol.spectrum), format!("{} ordered pairs", n * n)),
        Some((i, j, obs, exp)) => Check::fail(
            &name("cartan"),
            claim,
            tol_of(tol.spectrum),
            "pair outside the allowed spectrum",
            Counterexample::new([roots[*i].label(), roots[*j].label()], obs, exp),
        ),
    });

    let mut census = None;
    if first_bad.is_none() && n > 0 {
        let c0 = Census::from_counts(&allowed, &censuses[0]);
        match censuses.iter().position(|c| *c != censuses[0]) {
            None => {
                report.push(Check::pass(
                    &name("census"),
                    "every root sees the same inner-product census",
                    tol_of(tol.spectrum),
                    format!("census {c0}"),
                ));
                census = Some(c0);
            }
            Some(i) => report.push(Check::fail(
                &name("census"),
                "every root sees the same inner-product census",
                tol_of(tol.spectrum),
                "census differs between roots",
                Counterexample::new(
                    [roots[0].label(), roots[i].label()],
                    Census::from_counts(&allowed, &censuses[i]),
                    &c0,
                ),
            )),
        }
    }

    if first_bad.is_none() {
        let missing = (0..n)
            .into_par_iter()
            .filter_map(|i| {
                (0..n)
                    .find(|&j| {
                        let q = table[i][j].as_ref().expect("checked above");
                        if exact && q.to_f64() == 0.0 {
                            return false;
                        }
                        let w: Vec<S> = roots[i].coords.iter().zip(&roots[j].coords).map(|(x, a)| x.minus(&a.scaled(q))).collect();
                        index.find(&w).is_none()
                    })
                    .map(|j| (i, j))
            })
            .min();
        report.push(match missing {
            None => Check::pass(
                &name("reflection_closure"),
                "the set is closed under the reflection in every root",
                tol_of(tol.membership),
                format!("{} reflections", n * n),
            ),
            Some((i, j)) => Check::fail(
                &name("reflection_closure"),
                "the set is closed under the reflection in every root",
                tol_of(tol.membership),
                "a reflected root is missing",
                Counterexample::new([roots[i].label(), roots[j].label()], "image not in set", "image in set"),
            ),
        });
    }

    RootSystemAnalysis { report, census, norm: norms.into_iter().next() }
}

pub fn check_root_system<S: Coord>(roots: &[RootVector<S>], kind: RootSystemKind, tol: &Tolerances) -> VerificationReport {
    analyze_root_system(roots, kind, tol).report
}

/// A verified basis of simple roots with its Cartan matrix cached, for
/// repeated decompositions.
pub struct SimpleSystem {
    pub roots: Vec<ExactRoot>,
    pub cartan: CartanMatrix,
}

impl SimpleSystem {
    pub fn new(roots: Vec<ExactRoot>) -> Result<Self, VerifyError> {
        let cartan = cartan_integers(&roots, 0.0)?;
        Ok(SimpleSystem { roots, cartan })
    }

    /// Integer coefficients `k` with `v = Σ kᵢ αᵢ`, all of one sign.
    pub fn decompose(&self, v: &ExactRoot) -> Result<Vec<i64>, VerifyError> {
        let fail = |reason: String| VerifyError::Decomposition { root: v.label(), reason };
        let n = self.roots.len();
        // Σᵢ kᵢ Cᵢⱼ = 2⟨v, αⱼ⟩ / ⟨αⱼ, αⱼ⟩
        let rhs: Vec<BigRational> = self
            .roots
            .iter()
            .map(|a| match cartan_scalar(&v.coords, &a.coords)? {
                Quotient::Exact(q) => Ok(q),
                Quotient::Approx(_) => unreachable!("exact coordinates"),
            })
            .collect::<Result<_, VerifyError>>()?;
        let transposed: Vec<Vec<BigRational>> = (0..n)
            .map(|j| (0..n).map(|i| BigRational::from_integer(self.cartan.entries[i][j].into())).collect())
            .collect();
        let k = solve_rational(&transposed, &rhs).ok_or(VerifyError::Singular)?;
        let k: Vec<i64> = k
            .iter()
            .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
            .collect::<Option<_>>()
            .ok_or_else(|| fail(format!("non-integral coefficients {k:?}")))?;
        if k.iter().any(|&x| x > 0) && k.iter().any(|&x| x < 0) {
            return Err(fail(format!("mixed signs {k:?}")));
        }
        let rebuilt: Vec<CycNum> = (0..v.coords.len())
            .map(|c| self.roots.iter().zip(&k).map(|(a, &m)| a.coords[c].scale_int(m)).sum())
            .collect();
        if rebuilt != v.coords {
            return Err(fail("not in the span of the simple roots".into()));
        }
        Ok(k)
    }
}

pub fn simple_root_decomposition(v: &ExactRoot, simple: &[ExactRoot]) -> Result<Vec<i64>, VerifyError> {
    SimpleSystem::new(simple.to_vec())?.decompose(v)
}

/// Height `Σ kᵢ` of each root over the given simple system.
pub fn heights(roots: &[ExactRoot], simple: &SimpleSystem) -> Result<Vec<i64>, VerifyError> {
    roots.iter().map(|r| simple.decompose(r).map(|k| k.iter().sum())).collect()
}
