//! The E8 and H4 root families.
//!
//! Both systems are produced by a *generator matrix*: row `F` describes root
//! `(F, 0)` symbolically as `±r_i·ζ^p` per coordinate, and `(F, n)` follows by
//! multiplying coordinate `j` by `ζ^{e_j·n}` with the diagonal exponents
//! `e = (2, 22, 14, 26)` for E8 and `(2, 22)` for H4. Keeping the matrix
//! symbolic lets the surd and cyclotomic amplitude sets share one formula.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::amplitudes::{AmplitudeError, AmplitudeSet};
use crate::coord::{Coord, RootIndex};
use crate::cyclo::CycNum;
use crate::tolerance;

/// Number of roots in each family (the Coxeter number).
pub const CYCLE: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl Family {
    pub const ALL: [Family; 8] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G, Family::H];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Family> {
        Self::ALL.get(i).copied()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", (b'A' + *self as u8) as char)
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.as_bytes() {
            [c @ b'A'..=b'H'] => Ok(Family::ALL[(c - b'A') as usize]),
            _ => Err(format!("unknown family {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSystemKind {
    E8,
    H4,
}

impl RootSystemKind {
    pub fn rank_complex(self) -> usize {
        match self {
            RootSystemKind::E8 => 4,
            RootSystemKind::H4 => 2,
        }
    }

    pub fn size(self) -> usize {
        match self {
            RootSystemKind::E8 => 240,
            RootSystemKind::H4 => 120,
        }
    }
}

impl fmt::Display for RootSystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootSystemKind::E8 => "e8",
            RootSystemKind::H4 => "h4",
        })
    }
}

/// One root: family label, cycle index `n ∈ [0, 30)`, complex coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct RootVector<S> {
    pub family: Family,
    pub index: u32,
    pub coords: Vec<S>,
}

pub type ExactRoot = RootVector<CycNum>;
pub type NumericRoot = RootVector<Complex64>;

impl<S: Coord> RootVector<S> {
    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.index)
    }

    pub fn negated(&self) -> Vec<S> {
        self.coords.iter().map(Coord::negated).collect()
    }

    pub fn to_numeric(&self) -> NumericRoot {
        RootVector { family: self.family, index: self.index, coords: self.coords.iter().map(Coord::to_complex).collect() }
    }
}

/// Interleaved real and imaginary parts: `ℂⁿ → ℝ²ⁿ`.
pub fn to_real(coords: &[Complex64]) -> Vec<f64> {
    coords.iter().flat_map(|z| [z.re, z.im]).collect()
}

/// [`to_real`] for a four-coordinate E8 root.
pub fn to_real8(coords: &[Complex64]) -> [f64; 8] {
    assert_eq!(coords.len(), 4, "E8 roots have four complex coordinates");
    std::array::from_fn(|i| if i % 2 == 0 { coords[i / 2].re } else { coords[i / 2].im })
}

/// `±r_amplitude · ζ^phase`; `amplitude` is one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub amplitude: usize,
    pub negative: bool,
    pub phase: i64,
}

const fn e(amplitude: usize, sign: i8, phase: i64) -> Entry {
    Entry { amplitude, negative: sign < 0, phase }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub kind: RootSystemKind,
    pub rows: Vec<Vec<Entry>>,
    pub diag_exponents: Vec<i64>,
}

impl GeneratorMatrix {
    /// Eight rows `A … H`; amplitudes index `r₁ … r₈`.
    pub fn e8() -> Self {
        let rows = vec![
            vec![e(1, 1, 0), e(4, 1, 0), e(6, 1, 1), e(7, 1, 1)],
            vec![e(2, 1, 29), e(3, 1, 19), e(8, -1, 24), e(5, -1, 18)],
            vec![e(3, 1, 29), e(2, -1, 19), e(5, 1, 24), e(8, -1, 18)],
            vec![e(4, 1, 0), e(1, -1, 0), e(7, 1, 1), e(6, -1, 1)],
            vec![e(5, 1, 0), e(8, 1, 0), e(2, -1, 1), e(3, -1, 1)],
            vec![e(6, 1, 29), e(7, 1, 19), e(4, 1, 24), e(1, 1, 18)],
            vec![e(7, 1, 29), e(6, -1, 19), e(1, -1, 24), e(4, 1, 18)],
            vec![e(8, 1, 0), e(5, -1, 0), e(3, -1, 1), e(2, 1, 1)],
        ];
        GeneratorMatrix { kind: RootSystemKind::E8, rows, diag_exponents: vec![2, 22, 14, 26] }
    }

    /// Four rows `A … D`; amplitudes index `(a, b, c, d)`.
    pub fn h4() -> Self {
        let rows = vec![
            vec![e(1, 1, 0), e(4, 1, 0)],
            vec![e(2, 1, 1), e(3, 1, 11)],
            vec![e(3, 1, 1), e(2, -1, 11)],
            vec![e(4, 1, 0), e(1, -1, 0)],
        ];
        GeneratorMatrix { kind: RootSystemKind::H4, rows, diag_exponents: vec![2, 22] }
    }

    pub fn for_kind(kind: RootSystemKind) -> Self {
        match kind {
            RootSystemKind::E8 => Self::e8(),
            RootSystemKind::H4 => Self::h4(),
        }
    }

    /// Coordinates of root `(family, n)`.
    pub fn evaluate<S: Coord>(&self, amps: &[S], family: Family, n: u32) -> Vec<S> {
        self.rows[family.index()]
            .iter()
            .zip(&self.diag_exponents)
            .map(|(entry, &exp)| {
                let z = amps[entry.amplitude - 1].times(&S::root_of_unity(entry.phase + exp * n as i64));
                if entry.negative {
                    z.negated()
                } else {
                    z
                }
            })
            .collect()
    }

    /// `Σ |r_i|²` over each row: the squared norm shared by that family.
    pub fn row_norms<S: Coord>(&self, amps: &[S]) -> Vec<S> {
        self.rows
            .iter()
            .map(|row| {
                row.iter().fold(S::zero(), |acc, entry| {
                    let r = &amps[entry.amplitude - 1];
                    acc.plus(&r.times(&r.conj()))
                })
            })
            .collect()
    }

    pub fn families(&self) -> impl Iterator<Item = Family> + '_ {
        Family::ALL.into_iter().take(self.rows.len())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootsError {
    #[error("roots {first} and {second} coincide; the generator matrix is mistyped")]
    Duplicate { first: String, second: String },
    #[error("{0} requires surd amplitudes")]
    NeedsSurd(&'static str),
    #[error("expected {expected} amplitudes, got {got}")]
    AmplitudeCount { expected: usize, got: usize },
    #[error(transparent)]
    Amplitude(#[from] AmplitudeError),
}

/// All `rows × 30` roots of a generator matrix in family-major order, with
/// a distinctness check.
pub fn generate<S: Coord>(matrix: &GeneratorMatrix, amps: &[S]) -> Result<Vec<RootVector<S>>, RootsError> {
    let needed = matrix.rows.iter().flatten().map(|e| e.amplitude).max().unwrap_or(0);
    if amps.len() < needed {
        return Err(RootsError::AmplitudeCount { expected: needed, got: amps.len() });
    }
    let roots: Vec<RootVector<S>> = matrix
        .families()
        .flat_map(|family| (0..CYCLE).map(move |n| (family, n)))
        .map(|(family, index)| RootVector { family, index, coords: matrix.evaluate(amps, family, index) })
        .collect();
    check_distinct(&roots)?;
    Ok(roots)
}

pub(crate) fn check_distinct<S: Coord>(roots: &[RootVector<S>]) -> Result<(), RootsError> {
    let refs: Vec<&[S]> = roots.iter().map(|r| r.coords.as_slice()).collect();
    let index = S::Index::build(&refs, tolerance::MEMBERSHIP);
    for (i, r) in roots.iter().enumerate() {
        let j = index.find(&r.coords).expect("every root indexes itself");
        if j != i {
            return Err(RootsError::Duplicate { first: roots[j].label(), second: r.label() });
        }
    }
    Ok(())
}

/// Roots in whichever arithmetic the amplitude set supports.
#[derive(Clone, Debug, PartialEq)]
pub enum Roots {
    Exact(Vec<ExactRoot>),
    Numeric(Vec<NumericRoot>),
}

impl Roots {
    pub fn len(&self) -> usize {
        match self {
            Roots::Exact(v) => v.len(),
            Roots::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_numeric(&self) -> Vec<NumericRoot> {
        match self {
            Roots::Exact(v) => v.iter().map(RootVector::to_numeric).collect(),
            Roots::Numeric(v) => v.clone(),
        }
    }
}

/// The 240 E8 roots: exact for cyclotomic amplitudes, floating point for surd.
pub fn e8_roots(amps: &AmplitudeSet) -> Result<Roots, RootsError> {
    let matrix = GeneratorMatrix::e8();
    match amps {
        AmplitudeSet::Cyclotomic { r, .. } => generate(&matrix, r).map(Roots::Exact),
        AmplitudeSet::Surd { r, .. } => {
            let r: Vec<Complex64> = r.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            generate(&matrix, &r).map(Roots::Numeric)
        }
    }
}

pub fn e8_roots_exact(r: &[CycNum; 8]) -> Result<Vec<ExactRoot>, RootsError> {
    generate(&GeneratorMatrix::e8(), r)
}

/// The 120 H4 roots `Aₙ = (aω²ⁿ, dω²²ⁿ)`, …, `Dₙ = (dω²ⁿ, −aω²²ⁿ)`.
pub fn h4_roots(amps: &AmplitudeSet) -> Result<Vec<NumericRoot>, RootsError> {
    let abcd = amps.abcd().ok_or(RootsError::NeedsSurd("H4 generation"))?;
    let r: Vec<Complex64> = abcd.as_array().iter().map(|&x| Complex64::new(x, 0.0)).collect();
    generate(&GeneratorMatrix::h4(), &r)
}

/// The diagonal map `v_j ↦ ζ^{k·e_j} v_j`: the `k`-th power of the step
/// `(F, n) ↦ (F, n + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterRotation {
    pub exponents: Vec<i64>,
}

impl CoxeterRotation {
    pub fn new(kind: RootSystemKind) -> Self {
        CoxeterRotation { exponents: GeneratorMatrix::for_kind(kind).diag_exponents }
    }

    pub fn pow(&self, k: i64) -> Self {
        CoxeterRotation { exponents: self.exponents.iter().map(|e| (e * k).rem_euclid(60)).collect() }
    }

    pub fn apply<S: Coord>(&self, coords: &[S]) -> Vec<S> {
        coords.iter().zip(&self.exponents).map(|(z, &e)| z.times(&S::root_of_unity(e))).collect()
    }

    /// Multiplicative order of the map, i.e. the least `k > 0` with every
    /// `k·e_j ≡ 0 (mod 60)`.
    pub fn order(&self) -> i64 {
        (1..=60).find(|&k| self.pow(k).is_identity()).unwrap_or(60)
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|e| e.rem_euclid(60) == 0)
    }

    pub fn is_negation(&self) -> bool {
        self.exponents.iter().all(|e| e.rem_euclid(60) == 30)
    }
}

pub fn coxeter_rotation(kind: RootSystemKind) -> CoxeterRotation {
    CoxeterRotation::new(kind)
}
