//! Exact arithmetic in the cyclotomic field `Q(ζ)`, `ζ = exp(iπ/30)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ¹⁵` reduced modulo the
//! 60th cyclotomic polynomial
//!
//! ```text
//! Φ₆₀(x) = x¹⁶ + x¹⁴ − x¹⁰ − x⁸ − x⁶ + x² + 1
//! ```
//!
//! so the coefficient vector of a [`CycNum`] is canonical: two values are equal
//! exactly when their coefficients are. The modulus is not transcribed by hand;
//! it is derived as `Φ₃₀(x²)` on first use and checked against `x⁶⁰ − 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Degree of `Q(ζ₆₀)` over `Q`.
pub const DEGREE: usize = 16;
/// Order of the generator `ζ`.
pub const ORDER: i64 = 60;

/// Integer polynomial, lowest degree first.
type IntPoly = Vec<i64>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn poly_mul(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Division by a monic polynomial. Returns `(quotient, remainder)`.
fn poly_divmod(num: &[i64], den: &[i64]) -> (IntPoly, IntPoly) {
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        return (vec![0], trim(rem));
    }
    let mut quot = vec![0; rem.len() - dn];
    for k in (dn..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - dn] = c;
        for (t, &d) in den.iter().enumerate() {
            rem[k - dn + t] -= c * d;
        }
    }
    rem.truncate(dn.max(1));
    (trim(quot), trim(rem))
}

/// `Φₙ(x)` via `xⁿ − 1 = ∏_{d | n} Φ_d(x)`.
pub(crate) fn cyclotomic_polynomial(n: usize) -> IntPoly {
    let mut xn = vec![0; n + 1];
    xn[0] = -1;
    xn[n] = 1;
    let mut divisor = vec![1];
    for d in (1..n).filter(|d| n % d == 0) {
        divisor = poly_mul(&divisor, &cyclotomic_polynomial(d));
    }
    let (q, r) = poly_divmod(&xn, &divisor);
    assert!(r.iter().all(|&c| c == 0), "Φ_{n} division left a remainder");
    q
}

struct Tables {
    modulus: IntPoly,
    /// `powers[k]` holds the reduction of `xᵏ` modulo Φ₆₀ for `k ∈ [0, 60)`.
    powers: Vec<[i64; DEGREE]>,
    /// `exp(iπk/30)` for `k ∈ [0, 16)`.
    embedding: [Complex64; DEGREE],
}

static TABLES: LazyLock<Tables> = LazyLock::new(|| {
    let phi30 = cyclotomic_polynomial(30);
    let mut modulus = vec![0; 2 * (phi30.len() - 1) + 1];
    for (k, &c) in phi30.iter().enumerate() {
        modulus[2 * k] = c;
    }
    assert_eq!(modulus.len(), DEGREE + 1);
    let mut x60 = vec![0; 61];
    x60[0] = -1;
    x60[60] = 1;
    let (_, rem) = poly_divmod(&x60, &modulus);
    assert!(rem.iter().all(|&c| c == 0), "Φ₃₀(x²) does not divide x⁶⁰ − 1");

    let mut powers = Vec::with_capacity(ORDER as usize);
    let mut cur = [0i64; DEGREE];
    cur[0] = 1;
    for _ in 0..ORDER {
        powers.push(cur);
        // multiply by x, then fold x¹⁶ = −(Φ₆₀ − x¹⁶)
        let top = cur[DEGREE - 1];
        let mut next = [0i64; DEGREE];
        next[1..].copy_from_slice(&cur[..DEGREE - 1]);
        for t in 0..DEGREE {
            next[t] -= top * modulus[t];
        }
        cur = next;
    }
    let embedding = std::array::from_fn(|k| Complex64::from_polar(1.0, std::f64::consts::PI * k as f64 / 30.0));
    Tables { modulus, powers, embedding }
});

/// The modulus polynomial Φ₆₀ as integer coefficients, lowest degree first.
pub fn modulus() -> &'static [i64] {
    &TABLES.modulus
}

/// An exact element of `Q(ζ₆₀)`.
///
/// Internally a vector of integer numerators over one positive common
/// denominator, kept in lowest terms; the rational coefficient of `ζᵏ` is
/// `num[k] / den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    num: [BigInt; DEGREE],
    den: BigInt,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { num: std::array::from_fn(|_| BigInt::zero()), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        let mut z = Self::zero();
        z.num[0] = BigInt::from(n);
        z
    }

    pub fn from_rational(q: &BigRational) -> Self {
        let mut z = Self::zero();
        z.num[0] = q.numer().clone();
        z.den = q.denom().clone();
        z.normalize();
        z
    }

    /// Builds an element from its 16 power-basis coefficients.
    pub fn from_coeffs(coeffs: &[BigRational; DEGREE]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = std::array::from_fn(|k| coeffs[k].numer() * (&den / coeffs[k].denom()));
        let mut z = CycNum { num, den };
        z.normalize();
        z
    }

    /// Coefficient of `ζᵏ`, `k ∈ [0, 16)`.
    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num[k].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> [BigRational; DEGREE] {
        std::array::from_fn(|k| self.coeff(k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element is the rational number `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..].iter().all(Zero::is_zero).then(|| self.coeff(0))
    }

    /// Fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let g = self.num.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    fn from_parts(num: [BigInt; DEGREE], den: BigInt) -> Self {
        let mut z = CycNum { num, den };
        z.normalize();
        z
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_parts(
            std::array::from_fn(|k| &self.num[k] * q.numer()),
            &self.den * q.denom(),
        )
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Self::from_parts(std::array::from_fn(|i| &self.num[i] * &k), self.den.clone())
    }

    /// The rational `q` with `self = q · den`, if one exists.
    ///
    /// Computed from a single nonzero coordinate of `den` and then checked on
    /// the whole vector, so no field inversion is involved.
    pub fn rational_quotient(&self, den: &CycNum) -> Option<BigRational> {
        let k = den.num.iter().position(|c| !c.is_zero())?;
        let q = BigRational::new(&self.num[k] * &den.den, &den.num[k] * &self.den);
        (den.scale(&q) == *self).then_some(q)
    }

    /// Image under `ζ ↦ ζ⁻¹`, i.e. complex conjugation.
    pub fn conjugate(&self) -> Self {
        let tables = &*TABLES;
        let mut out: [BigInt; DEGREE] = std::array::from_fn(|_| BigInt::zero());
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &tables.powers[((ORDER - k as i64) % ORDER) as usize];
            for (t, &r) in row.iter().enumerate() {
                if r != 0 {
                    out[t] += c * r;
                }
            }
        }
        Self::from_parts(out, self.den.clone())
    }

    /// `(z + z̄) / 2`.
    pub fn real_part(&self) -> Self {
        (self + &self.conjugate()).scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// Evaluates the element at `ζ = exp(iπ/30)` in double precision.
    pub fn embed_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let emb = &TABLES.embedding;
        self.num
            .iter()
            .zip(emb.iter())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, z)| z * (c.to_f64().unwrap_or(f64::NAN) / den))
            .sum()
    }

    fn mul_impl(&self, rhs: &CycNum) -> CycNum {
        let mut prod: Vec<BigInt> = vec![BigInt::zero(); 2 * DEGREE - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let powers = &TABLES.powers;
        let mut out: [BigInt; DEGREE] = std::array::from_fn(|_| BigInt::zero());
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < DEGREE {
                out[k] += c;
            } else {
                for (t, &r) in powers[k].iter().enumerate() {
                    if r != 0 {
                        out[t] += &c * r;
                    }
                }
            }
        }
        Self::from_parts(out, &self.den * &rhs.den)
    }

    fn add_impl(&self, rhs: &CycNum, sign: i32) -> CycNum {
        if self.den == rhs.den {
            let num = std::array::from_fn(|k| {
                if sign > 0 { &self.num[k] + &rhs.num[k] } else { &self.num[k] - &rhs.num[k] }
            });
            return Self::from_parts(num, self.den.clone());
        }
        let num = std::array::from_fn(|k| {
            let l = &self.num[k] * &rhs.den;
            let r = &rhs.num[k] * &self.den;
            if sign > 0 { l + r } else { l - r }
        });
        Self::from_parts(num, &self.den * &rhs.den)
    }
}

/// The canonical form of `ζᵏ`; `k` is reduced modulo 60.
pub fn cyc_power(k: i64) -> CycNum {
    let row = &TABLES.powers[k.rem_euclid(ORDER) as usize];
    CycNum::from_parts(std::array::from_fn(|t| BigInt::from(row[t])), BigInt::one())
}

/// `cₙ = ζⁿ + ζ⁻ⁿ = 2cos(nπ/30)`.
pub fn c_n(n: i64) -> CycNum {
    &cyc_power(n) + &cyc_power(-n)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                $body(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                $body(&self, &rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycNum, b: &CycNum| a.add_impl(b, 1));
forward_binop!(Sub, sub, |a: &CycNum, b: &CycNum| a.add_impl(b, -1));
forward_binop!(Mul, mul, |a: &CycNum, b: &CycNum| a.mul_impl(b));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { num: std::array::from_fn(|k| -&self.num[k]), den: self.den.clone() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        iter.fold(CycNum::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in 0..DEGREE {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}·")?,
            }
            match k {
                0 => {}
                1 => f.write_str("ζ")?,
                _ => write!(f, "ζ^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

/// Formats a rational as `p/q` with `q > 0`, always including the denominator.
pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` (or a bare integer `p`); the result is reduced.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    let q = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(p, q))
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(DEGREE))?;
        for c in self.coeffs() {
            seq.serialize_element(&rational_to_string(&c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoeffVisitor;

        impl<'de> Visitor<'de> for CoeffVisitor {
            type Value = CycNum;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an array of {DEGREE} rational strings \"p/q\"")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<CycNum, A::Error> {
                let mut coeffs = Vec::with_capacity(DEGREE);
                while let Some(s) = seq.next_element::<String>()? {
                    coeffs.push(parse_rational(&s).map_err(de::Error::custom)?);
                }
                let coeffs: [BigRational; DEGREE] = coeffs
                    .try_into()
                    .map_err(|v: Vec<_>| de::Error::invalid_length(v.len(), &self))?;
                Ok(CycNum::from_coeffs(&coeffs))
            }
        }

        deserializer.deserialize_seq(CoeffVisitor)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn unit(k: usize) -> CycNum {
        let mut z = CycNum::zero();
        z.num[k] = BigInt::one();
        z
    }

    #[test]
    fn modulus_is_phi30_of_x_squared() {
        assert_eq!(modulus(), &[1, 0, 1, 0, 0, 0, -1, 0, -1, 0, -1, 0, 0, 0, 1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(60), modulus());
        assert_eq!(cyclotomic_polynomial(30), vec![1, 1, 0, -1, -1, -1, 0, 1, 1]);
    }

    #[test]
    fn small_powers_are_unit_vectors() {
        assert_eq!(cyc_power(0), CycNum::one());
        assert_eq!(cyc_power(7), unit(7));
        assert_eq!(cyc_power(30), CycNum::from_integer(-1));
        assert_eq!(cyc_power(-30), CycNum::from_integer(-1));
        assert_eq!(cyc_power(60), CycNum::one());
    }

    #[test]
    fn zeta_16_reduction() {
        // x¹⁶ ≡ −x¹⁴ + x¹⁰ + x⁸ + x⁶ − x² − 1
        let expected = -unit(14) + unit(10) + unit(8) + unit(6) - unit(2) - CycNum::one();
        assert_eq!(cyc_power(16), expected);
        assert_eq!(&cyc_power(8) * &cyc_power(8), expected);
    }

    #[test]
    fn ring_examples() {
        assert!((cyc_power(5) + -cyc_power(5)).is_zero());
        assert_eq!(&cyc_power(40) * &cyc_power(20), CycNum::one());
        let c6 = c_n(6);
        assert_eq!(&c6 * &c6, &c6 + &CycNum::one());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(CycNum::one().conjugate(), CycNum::one());
        assert_eq!(cyc_power(1).conjugate(), cyc_power(59));
        assert_eq!(c_n(7).conjugate(), c_n(7));
        assert!(c_n(7).is_real());
        assert!(!cyc_power(1).is_real());
    }

    #[test]
    fn c_n_values() {
        assert_eq!(c_n(0), CycNum::from_integer(2));
        assert_eq!(c_n(10), CycNum::one());
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((c_n(6).embed_complex().re - tau).abs() < 1e-14);
    }

    #[test]
    fn embedding_examples() {
        let one = CycNum::one().embed_complex();
        assert_eq!(one, Complex64::new(1.0, 0.0));
        let i = cyc_power(15).embed_complex();
        assert!((i - Complex64::i()).norm() < 1e-15);
        let c9 = c_n(9).embed_complex();
        assert!((c9.re - 2.0 * (0.3 * std::f64::consts::PI).cos()).abs() < 1e-14);
        assert!(c9.im.abs() < 1e-14);
    }

    #[test]
    fn power_law_exhaustive() {
        for j in 0..60 {
            for k in 0..60 {
                assert_eq!(&cyc_power(j) * &cyc_power(k), cyc_power(j + k), "ζ^{j}·ζ^{k}");
            }
        }
    }

    #[test]
    fn c_n_symmetries() {
        for n in 0..60 {
            assert_eq!(c_n(n), c_n(-n));
            assert_eq!(c_n(n), -c_n(30 - n));
        }
    }

    #[test]
    fn rational_quotient_detects_non_multiples() {
        let c6 = c_n(6);
        let half = BigRational::new(BigInt::from(3), BigInt::from(2));
        assert_eq!(c6.scale(&half).rational_quotient(&c6), Some(half));
        assert_eq!(CycNum::one().rational_quotient(&c6), None);
        assert_eq!(c6.rational_quotient(&CycNum::zero()), None);
    }

    #[test]
    fn serialization_format() {
        let z = cyc_power(16).scale(&BigRational::new(BigInt::from(2), BigInt::from(4)));
        let s = serde_json::to_string(&z).unwrap();
        assert!(s.starts_with("[\"-1/2\",\"0/1\",\"-1/2\""), "{s}");
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<CycNum>("[\"1/2\"]").is_err());
        let zero_den = format!("[{}]", vec!["\"1/0\""; 16].join(","));
        assert!(serde_json::from_str::<CycNum>(&zero_den).is_err());
    }

    fn arb_cyc() -> impl Strategy<Value = CycNum> {
        proptest::array::uniform16((-20i64..=20, 1i64..=6)).prop_map(|pairs| {
            CycNum::from_coeffs(&pairs.map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q))))
        })
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involutive_homomorphism(a in arb_cyc(), b in arb_cyc()) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert_eq!((&a * &b).conjugate(), a.conjugate() * b.conjugate());
            prop_assert_eq!((&a + &b).conjugate(), a.conjugate() + b.conjugate());
        }

        #[test]
        fn norm_form_is_real(z in arb_cyc()) {
            let n = &z * &z.conjugate();
            prop_assert!(n.is_real());
            prop_assert!(n.embed_complex().re >= -1e-9);
        }

        #[test]
        fn embedding_commutes_with_conjugation(z in arb_cyc()) {
            let direct = z.conjugate().embed_complex();
            let mirrored = z.embed_complex().conj();
            prop_assert!((direct - mirrored).norm() <= 1e-12 * (1.0 + direct.norm()));
        }

        #[test]
        fn serialization_round_trips(z in arb_cyc()) {
            let back: CycNum = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
            prop_assert_eq!(back, z);
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(c_n(10).to_string(), "1");
        assert_eq!((cyc_power(2) - CycNum::from_integer(3)).to_string(), "-3 + ζ^2");
    }
}
