//! Cartan matrices and the shape of their Dynkin diagrams.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{cartan_scalar, VerifyError};
use crate::coord::Coord;
use crate::roots::RootVector;

/// Integer Cartan matrix `2⟨αᵢ, αⱼ⟩ / ⟨αⱼ, αⱼ⟩` with its row labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    pub entries: Vec<Vec<i64>>,
    pub labels: Vec<String>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>, labels: Vec<String>) -> Self {
        CartanMatrix { entries, labels }
    }

    /// Unlabelled matrix of a simply-laced diagram given by its edges.
    pub fn simply_laced(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut entries = vec![vec![0; n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in edges {
            entries[i][j] = -1;
            entries[j][i] = -1;
        }
        CartanMatrix { entries, labels: (0..n).map(|i| i.to_string()).collect() }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Pairs `i < j` joined in the diagram (nonzero off-diagonal entry).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.rank())
            .tuple_combinations()
            .filter(|&(i, j)| self.entries[i][j] != 0 || self.entries[j][i] != 0)
            .collect()
    }

    pub fn labelled_edges(&self) -> Vec<(String, String)> {
        self.edges().into_iter().map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone())).collect()
    }

    pub fn is_simply_laced_form(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            self.entries[i].len() == n
                && (0..n).all(|j| {
                    let x = self.entries[i][j];
                    if i == j {
                        x == 2
                    } else {
                        (x == 0 || x == -1) && x == self.entries[j][i]
                    }
                })
        })
    }

    pub fn degree(&self, node: usize) -> usize {
        (0..self.rank()).filter(|&j| j != node && self.entries[node][j] != 0).count()
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "   ")?;
        for l in &self.labels {
            write!(f, "{l:>3}")?;
        }
        writeln!(f)?;
        for (l, row) in self.labels.iter().zip(&self.entries) {
            write!(f, "{l:>3}")?;
            for x in row {
                write!(f, "{x:>3}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Cartan integers of a candidate simple system.
pub fn cartan_integers<S: Coord>(simple: &[RootVector<S>], tol: f64) -> Result<CartanMatrix, VerifyError> {
    let n = simple.len();
    let mut entries = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let q = cartan_scalar(&simple[i].coords, &simple[j].coords)?;
            entries[i][j] = q.as_integer(tol).ok_or_else(|| VerifyError::NonIntegralCartan {
                pair: (simple[i].label(), simple[j].label()),
                value: q.to_string(),
            })?;
        }
    }
    Ok(CartanMatrix { entries, labels: simple.iter().map(|r| r.family.to_string()).collect() })
}

/// The E8 diagram: a path on seven nodes `0 … 6` with node 7 attached to
/// node 2, the third node from one end.
pub fn e8_reference() -> CartanMatrix {
    CartanMatrix::simply_laced(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)])
}

/// A bijection `p` with `a[i][j] == b[p[i]][p[j]]` for all `i, j`, found by
/// exhaustive search; the least one in lexicographic order.
pub fn diagram_matching(a: &CartanMatrix, b: &CartanMatrix) -> Option<Vec<usize>> {
    let n = a.rank();
    if b.rank() != n {
        return None;
    }
    let degrees_a: Vec<usize> = (0..n).map(|i| a.degree(i)).collect();
    let degrees_b: Vec<usize> = (0..n).map(|i| b.degree(i)).collect();
    (0..n).permutations(n).find(|p| {
        (0..n).all(|i| degrees_a[i] == degrees_b[p[i]])
            && (0..n).all(|i| (0..n).all(|j| a.entries[i][j] == b.entries[p[i]][p[j]]))
    })
}

/// Whether `m` is the Cartan matrix of E8 up to relabelling.
pub fn check_dynkin_e8(m: &CartanMatrix) -> bool {
    m.rank() == 8 && m.is_simply_laced_form() && diagram_matching(m, &e8_reference()).is_some()
}

/// The structural reading of the E8 shape: a tree with one branch node whose
/// three arms have 1, 2 and 4 nodes.
pub fn branch_arms(m: &CartanMatrix) -> Option<(usize, Vec<usize>)> {
    let n = m.rank();
    if m.edges().len() + 1 != n {
        return None;
    }
    let branch = (0..n).find(|&i| m.degree(i) == 3)?;
    if (0..n).filter(|&i| m.degree(i) > 2).count() != 1 {
        return None;
    }
    let mut arms = Vec::new();
    for start in (0..n).filter(|&j| j != branch && m.entries[branch][j] != 0) {
        let (mut prev, mut cur, mut len) = (branch, start, 1);
        loop {
            let next = (0..n).find(|&k| k != prev && k != cur && m.entries[cur][k] != 0);
            match next {
                Some(k) => {
                    prev = cur;
                    cur = k;
                    len += 1;
                }
                None => break,
            }
        }
        arms.push(len);
    }
    arms.sort_unstable();
    Some((branch, arms))
}
