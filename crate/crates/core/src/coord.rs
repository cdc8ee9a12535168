//! Scalar abstraction shared by the exact and floating-point pipelines.
//!
//! Root coordinates are either [`CycNum`] (exact) or [`Complex64`]
//! (numeric). Generation and verification are written once against
//! [`Coord`].

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{cyc_power, CycNum};

/// Which arithmetic a set of coordinates lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Exact,
    Numeric,
}

impl fmt::Display for Arithmetic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arithmetic::Exact => "exact",
            Arithmetic::Numeric => "numeric",
        })
    }
}

/// A real quotient of two real scalars.
#[derive(Clone, Debug, PartialEq)]
pub enum Quotient {
    Exact(BigRational),
    Approx(f64),
}

impl Quotient {
    pub fn to_f64(&self) -> f64 {
        match self {
            Quotient::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Quotient::Approx(x) => *x,
        }
    }

    /// The integer this quotient equals: exactly for [`Quotient::Exact`],
    /// within `tol` for [`Quotient::Approx`].
    pub fn as_integer(&self, tol: f64) -> Option<i64> {
        match self {
            Quotient::Exact(q) => q.is_integer().then(|| q.to_integer().to_i64()).flatten(),
            Quotient::Approx(x) => {
                let r = x.round();
                ((x - r).abs() <= tol).then_some(r as i64)
            }
        }
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quotient::Exact(q) => write!(f, "{q}"),
            Quotient::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Field operations needed to build and check roots.
pub trait Coord: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Index: RootIndex<Self>;

    const ARITHMETIC: Arithmetic;

    fn zero() -> Self;
    /// `ζᵏ = exp(iπk/30)`.
    fn root_of_unity(k: i64) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn conj(&self) -> Self;
    fn real_part(&self) -> Self;
    fn to_complex(&self) -> Complex64;
    /// `self / den` for real `self` and `den`. Exact coordinates return `None`
    /// when the quotient is not rational.
    fn real_quotient(&self, den: &Self) -> Option<Quotient>;
    fn scaled(&self, q: &Quotient) -> Self;
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;
}

impl Coord for CycNum {
    type Index = ExactIndex;

    const ARITHMETIC: Arithmetic = Arithmetic::Exact;

    fn zero() -> Self {
        CycNum::zero()
    }
    fn root_of_unity(k: i64) -> Self {
        cyc_power(k)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn real_part(&self) -> Self {
        CycNum::real_part(self)
    }
    fn to_complex(&self) -> Complex64 {
        self.embed_complex()
    }
    fn real_quotient(&self, den: &Self) -> Option<Quotient> {
        self.rational_quotient(den).map(Quotient::Exact)
    }
    fn scaled(&self, q: &Quotient) -> Self {
        match q {
            Quotient::Exact(q) => self.scale(q),
            Quotient::Approx(x) => {
                let q = BigRational::from_float(*x).unwrap_or_else(BigRational::zero);
                self.scale(&q)
            }
        }
    }
    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

impl Coord for Complex64 {
    type Index = NumericIndex;

    const ARITHMETIC: Arithmetic = Arithmetic::Numeric;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn root_of_unity(k: i64) -> Self {
        Complex64::from_polar(1.0, std::f64::consts::PI * k.rem_euclid(60) as f64 / 30.0)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn real_part(&self) -> Self {
        Complex64::new(self.re, 0.0)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn real_quotient(&self, den: &Self) -> Option<Quotient> {
        (den.re != 0.0).then(|| Quotient::Approx(self.re / den.re))
    }
    fn scaled(&self, q: &Quotient) -> Self {
        self * q.to_f64()
    }
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }
}

/// Lookup of a coordinate vector in a fixed list of vectors.
pub trait RootIndex<S>: Send + Sync {
    fn build(points: &[&[S]], tol: f64) -> Self;
    fn find(&self, v: &[S]) -> Option<usize>;
}

/// Hash lookup on canonical exact coordinates.
pub struct ExactIndex {
    map: HashMap<Vec<CycNum>, usize>,
}

impl RootIndex<CycNum> for ExactIndex {
    fn build(points: &[&[CycNum]], _tol: f64) -> Self {
        let mut map = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            map.entry(p.to_vec()).or_insert(i);
        }
        ExactIndex { map }
    }

    fn find(&self, v: &[CycNum]) -> Option<usize> {
        self.map.get(v).copied()
    }
}

/// Points sorted along a fixed generic direction; lookups scan the window of
/// candidates whose projection is within `tol` and compare in full.
pub struct NumericIndex {
    keyed: Vec<(f64, usize)>,
    points: Vec<Vec<Complex64>>,
    tol: f64,
}

fn sort_key(v: &[Complex64]) -> f64 {
    const WEIGHTS: [f64; 8] = [1.0, 0.7548776662, 0.5698402910, 0.4301597090, 0.3247179572, 0.2451223338, 0.1850403794, 0.1396826509];
    v.iter()
        .flat_map(|z| [z.re, z.im])
        .zip(WEIGHTS.iter().cycle())
        .map(|(x, w)| x * w)
        .sum()
}

/// Upper bound on `|Δkey| / max |Δcoordinate|`: every weight is at most 1.
fn key_bound(len: usize) -> f64 {
    2.0 * len as f64
}

impl RootIndex<Complex64> for NumericIndex {
    fn build(points: &[&[Complex64]], tol: f64) -> Self {
        let mut keyed: Vec<(f64, usize)> = points.iter().enumerate().map(|(i, p)| (sort_key(p), i)).collect();
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        NumericIndex { keyed, points: points.iter().map(|p| p.to_vec()).collect(), tol }
    }

    fn find(&self, v: &[Complex64]) -> Option<usize> {
        let key = sort_key(v);
        let window = self.tol * key_bound(v.len());
        let start = self.keyed.partition_point(|(k, _)| *k < key - window);
        self.keyed[start..]
            .iter()
            .take_while(|(k, _)| *k <= key + window)
            .filter(|(_, i)| {
                let p = &self.points[*i];
                p.len() == v.len() && p.iter().zip(v).all(|(a, b)| (a - b).norm() <= self.tol)
            })
            .map(|(_, i)| *i)
            .min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_integers() {
        assert_eq!(Quotient::Approx(1.9999999999).as_integer(1e-9), Some(2));
        assert_eq!(Quotient::Approx(1.5).as_integer(1e-9), None);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(Quotient::Exact(half).as_integer(1.0), None);
        assert_eq!(Quotient::Exact(BigRational::from_integer((-2).into())).as_integer(0.0), Some(-2));
    }

    #[test]
    fn numeric_index_finds_within_tolerance() {
        let pts: Vec<Vec<Complex64>> = (0..60)
            .map(|k| vec![Complex64::root_of_unity(k), Complex64::root_of_unity(3 * k)])
            .collect();
        let refs: Vec<&[Complex64]> = pts.iter().map(Vec::as_slice).collect();
        let idx = NumericIndex::build(&refs, 1e-9);
        for (i, p) in pts.iter().enumerate() {
            let nudged: Vec<Complex64> = p.iter().map(|z| z + Complex64::new(3e-10, -3e-10)).collect();
            assert_eq!(idx.find(&nudged), Some(i));
        }
        let origin = <Complex64 as Coord>::zero();
        assert_eq!(idx.find(&[origin, origin]), None);
    }

    #[test]
    fn numeric_and_exact_roots_of_unity_agree() {
        for k in -60..120 {
            let exact = <CycNum as Coord>::root_of_unity(k).to_complex();
            assert!((exact - Complex64::root_of_unity(k)).norm() < 1e-14);
        }
    }
}
