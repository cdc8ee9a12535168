//! Small dense rational systems.

use num_rational::BigRational;
use num_traits::Zero;

/// Solves `m · x = b` by Gauss–Jordan elimination over `Q`.
/// Returns `None` for a singular matrix.
pub fn solve_rational(m: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    assert_eq!(b.len(), n);
    let mut aug: Vec<Vec<BigRational>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n);
            row.iter().cloned().chain(std::iter::once(rhs.clone())).collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..=n {
                let delta = &factor * &aug[col][c];
                aug[r][c] -= delta;
            }
        }
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn solves_a_pivoting_system() {
        // [[0, 2], [3, 1]] x = [4, 5] → x = (1, 2)
        let m = vec![vec![q(0, 1), q(2, 1)], vec![q(3, 1), q(1, 1)]];
        let x = solve_rational(&m, &[q(4, 1), q(5, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 1), q(2, 1)]);
    }

    #[test]
    fn fractional_solution() {
        let m = vec![vec![q(2, 1), q(-1, 1)], vec![q(-1, 1), q(2, 1)]];
        let x = solve_rational(&m, &[q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(x, vec![q(2, 3), q(1, 3)]);
    }

    #[test]
    fn singular_is_none() {
        let m = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert!(solve_rational(&m, &[q(1, 1), q(1, 1)]).is_none());
    }
}
