//! Textbook constructions used as independent oracles: the integer /
//! half-integer E8 in `ℝ⁸` and the 600-cell vertices in `ℝ⁴`, plus the
//! machinery to compare a generated system against them.

use itertools::Itertools;
use nalgebra::SMatrix;

use super::{diagram_matching, snap, Census, CartanMatrix, VerifyError};
use crate::amplitudes::golden_ratio;

type Mat8 = SMatrix<f64, 8, 8>;

/// All `±eᵢ ± eⱼ` (`i < j`) and all `(±½)⁸` with an even number of minus
/// signs: 112 + 128 vectors of squared norm 2.
pub fn standard_e8() -> Vec<[f64; 8]> {
    let mut out = Vec::with_capacity(240);
    for (i, j) in (0..8).tuple_combinations() {
        for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            let mut v = [0.0; 8];
            v[i] = si;
            v[j] = sj;
            out.push(v);
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            out.push(std::array::from_fn(|k| if mask >> k & 1 == 1 { -0.5 } else { 0.5 }));
        }
    }
    out
}

/// A simple system of [`standard_e8`]: `½(1, −1, …, −1, 1)`, `e₁ + e₂`, and
/// `e_{k+1} − e_k` for `k = 1 … 6`.
pub fn standard_e8_simple() -> [[f64; 8]; 8] {
    let mut simple = [[0.0; 8]; 8];
    simple[0] = [0.5, -0.5, -0.5, -0.5, -0.5, -0.5, -0.5, 0.5];
    simple[1][0] = 1.0;
    simple[1][1] = 1.0;
    for k in 0..6 {
        simple[k + 2][k] = -1.0;
        simple[k + 2][k + 1] = 1.0;
    }
    simple
}

/// Unit 600-cell vertices: the 8 `±eᵢ`, the 16 `(±½)⁴`, and the 96 even
/// permutations of `(±τ/2, ±½, ±1/(2τ), 0)`.
pub fn standard_h4() -> Vec<[f64; 4]> {
    let tau = golden_ratio();
    let mut out = Vec::with_capacity(120);
    for i in 0..4 {
        for s in [1.0, -1.0] {
            let mut v = [0.0; 4];
            v[i] = s;
            out.push(v);
        }
    }
    for mask in 0u32..16 {
        out.push(std::array::from_fn(|k| if mask >> k & 1 == 1 { -0.5 } else { 0.5 }));
    }
    let base = [tau / 2.0, 0.5, 1.0 / (2.0 * tau), 0.0];
    for perm in (0..4).permutations(4) {
        let inversions = (0..4).tuple_combinations().filter(|&(i, j)| perm[i] > perm[j]).count();
        if inversions % 2 == 1 {
            continue;
        }
        for mask in 0u32..8 {
            let signed: [f64; 4] = std::array::from_fn(|k| if k < 3 && mask >> k & 1 == 1 { -base[k] } else { base[k] });
            let mut v = [0.0; 4];
            for (k, &p) in perm.iter().enumerate() {
                v[p] = signed[k];
            }
            out.push(v);
        }
    }
    out
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Cartan matrix of real vectors, entries snapped to integers within `tol`.
pub fn cartan_of_real(simple: &[[f64; 8]], tol: f64) -> Result<CartanMatrix, VerifyError> {
    let n = simple.len();
    let mut entries = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let q = 2.0 * dot(&simple[i], &simple[j]) / dot(&simple[j], &simple[j]);
            let r = q.round();
            if (q - r).abs() > tol {
                return Err(VerifyError::NonIntegralCartan { pair: (i.to_string(), j.to_string()), value: q.to_string() });
            }
            entries[i][j] = r as i64;
        }
    }
    Ok(CartanMatrix::new(entries, (0..n).map(|i| i.to_string()).collect()))
}

/// Per-vector census of normalized inner products for real vectors of a
/// common norm; fails if any value is off the spectrum or the census is not
/// the same for every vector.
pub fn census_of_real<const N: usize>(vectors: &[[f64; N]], spectrum: &[f64], tol: f64) -> Result<Census, String> {
    let mut first: Option<Vec<usize>> = None;
    for (i, v) in vectors.iter().enumerate() {
        let norm = dot(v, v);
        let mut counts = vec![0; spectrum.len()];
        for w in vectors {
            let x = dot(w, v) / norm;
            let k = snap(x, spectrum, tol).ok_or_else(|| format!("inner product {x} of vector {i} is off the spectrum"))?;
            counts[k] += 1;
        }
        match &first {
            None => first = Some(counts),
            Some(f) if *f != counts => return Err(format!("vector {i} has census {counts:?}, vector 0 has {f:?}")),
            Some(_) => {}
        }
    }
    Ok(Census::from_counts(spectrum, &first.unwrap_or_default()))
}

/// A linear map `ℝ⁸ → ℝ⁸` that is `scale` times an orthogonal map.
#[derive(Clone, Debug, PartialEq)]
pub struct Isometry {
    pub matrix: Mat8,
    pub scale: f64,
    /// `dst` simple root matched to each `src` simple root.
    pub relabel: Vec<usize>,
}

impl Isometry {
    pub fn apply(&self, v: &[f64; 8]) -> [f64; 8] {
        let out = self.matrix * nalgebra::SVector::<f64, 8>::from_column_slice(v);
        std::array::from_fn(|i| out[i])
    }

    pub fn inverse(&self) -> Option<Isometry> {
        let matrix = self.matrix.try_inverse()?;
        let mut relabel = vec![0; self.relabel.len()];
        for (i, &j) in self.relabel.iter().enumerate() {
            relabel[j] = i;
        }
        Some(Isometry { matrix, scale: 1.0 / self.scale, relabel })
    }
}

/// The linear map sending each source simple root to its diagram-matched
/// destination simple root, after normalizing the two root lengths.
///
/// The relabelling comes from [`diagram_matching`] on the two Cartan
/// matrices; the result is checked to be orthogonal up to its scale.
pub fn isometry_from_simple_match(src: &[[f64; 8]; 8], dst: &[[f64; 8]; 8], tol: f64) -> Result<Isometry, VerifyError> {
    let cs = cartan_of_real(src, tol)?;
    let cd = cartan_of_real(dst, tol)?;
    let relabel = diagram_matching(&cs, &cd).ok_or(VerifyError::DiagramMismatch)?;
    let s = Mat8::from_fn(|r, c| src[c][r]);
    let d = Mat8::from_fn(|r, c| dst[relabel[c]][r]);
    let matrix = d * s.try_inverse().ok_or(VerifyError::Singular)?;
    let gram = matrix.transpose() * matrix;
    let scale2 = gram.trace() / 8.0;
    let deviation = (gram / scale2 - Mat8::identity()).abs().max();
    if !(deviation <= tol) {
        return Err(VerifyError::NotOrthogonal { deviation, tol });
    }
    Ok(Isometry { matrix, scale: scale2.sqrt(), relabel })
}

/// Images of every source vector under `iso`, as indices into `dst`. The map
/// must hit each destination vector exactly once (within `tol` relative to
/// the destination length).
pub fn check_bijection(iso: &Isometry, src: &[[f64; 8]], dst: &[[f64; 8]], tol: f64) -> Result<Vec<usize>, VerifyError> {
    let len = dst.first().map(|v| dot(v, v).sqrt()).unwrap_or(1.0);
    let mut hit = vec![false; dst.len()];
    let mut image = Vec::with_capacity(src.len());
    let mut unmatched = Vec::new();
    for (i, v) in src.iter().enumerate() {
        let w = iso.apply(v);
        let found = dst.iter().position(|d| d.iter().zip(&w).all(|(x, y)| (x - y).abs() <= tol * len));
        match found {
            Some(k) if !hit[k] => {
                hit[k] = true;
                image.push(k);
            }
            _ => unmatched.push(i),
        }
    }
    if unmatched.is_empty() && src.len() == dst.len() {
        Ok(image)
    } else {
        Err(VerifyError::Bijection { unmatched })
    }
}
