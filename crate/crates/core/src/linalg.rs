//! Exact linear solves.
//!
//! Rows of the augmented system are scaled to integers and reduced with
//! Bareiss' fraction-free elimination, so every intermediate quantity is an
//! integer and every division is exact. Only the final back substitution
//! produces rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `a · x = b` for a square nonsingular `a` and a single right-hand side.
pub fn solve(a: &Matrix, b: &[Rational]) -> Result<Vec<Rational>> {
    let rhs: Matrix = b.iter().map(|x| vec![x.clone()]).collect();
    let x = solve_many(a, &rhs)?;
    Ok(x.into_iter().map(|mut row| row.remove(0)).collect())
}

/// Solves `a · X = b` where `b` holds one right-hand side per column.
pub fn solve_many(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "matrix must be square");
    assert_eq!(b.len(), n, "right-hand side height mismatch");
    let k = b.first().map_or(0, Vec::len);
    if n == 0 {
        return Ok(Vec::new());
    }

    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(ar, br)| integer_row(ar.iter().chain(br.iter())))
        .collect();

    let width = n + k;
    let mut prev = BigInt::one();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        m.swap(col, pivot);
        for r in col + 1..n {
            for c in col + 1..width {
                let v = &m[col][col] * &m[r][c] - &m[r][col] * &m[col][c];
                // Bareiss: the division by the previous pivot is exact.
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }

    let mut x = vec![vec![Rational::zero(); k]; n];
    for row in (0..n).rev() {
        for rhs in 0..k {
            let mut acc = Rational::from_integer(m[row][n + rhs].clone());
            for c in row + 1..n {
                if !m[row][c].is_zero() {
                    acc -= Rational::from_integer(m[row][c].clone()) * &x[c][rhs];
                }
            }
            x[row][rhs] = acc / Rational::from_integer(m[row][row].clone());
        }
    }
    Ok(x)
}

fn integer_row<'a>(entries: impl Iterator<Item = &'a Rational> + Clone) -> Vec<BigInt> {
    let lcm = entries
        .clone()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    entries.map(|q| q.numer() * (&lcm / q.denom())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    /// Textbook Gauss-Jordan over the rationals, independent of the
    /// fraction-free path.
    fn gauss_jordan(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
        let n = a.len();
        let mut m: Matrix = a
            .iter()
            .zip(b)
            .map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect())
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !m[r][c].is_zero())?;
            m.swap(c, p);
            let inv = m[c][c].recip();
            for v in m[c].iter_mut() {
                *v *= &inv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for j in 0..=n {
                        let t = &f * &m[c][j];
                        m[r][j] -= t;
                    }
                }
            }
        }
        Some(m.into_iter().map(|r| r[n].clone()).collect())
    }

    #[test]
    fn solves_small_system() {
        // 2x + y = 3, x - y = 0  =>  x = y = 1
        let a = vec![vec![int(2), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve(&a, &[int(3), int(0)]).unwrap(), vec![int(1), int(1)]);
    }

    #[test]
    fn needs_pivoting() {
        let a = vec![vec![int(0), ratio(1, 2)], vec![ratio(1, 3), int(0)]];
        assert_eq!(solve(&a, &[int(1), int(1)]).unwrap(), vec![int(3), int(2)]);
    }

    #[test]
    fn singular_is_reported() {
        let a = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(solve(&a, &[int(1), int(1)]), Err(Error::SingularSystem));
    }

    #[test]
    fn multiple_right_hand_sides() {
        let a = vec![vec![int(2), int(0)], vec![int(0), int(4)]];
        let b = vec![vec![int(2), int(1)], vec![int(4), int(1)]];
        let x = solve_many(&a, &b).unwrap();
        assert_eq!(
            x,
            vec![vec![int(1), ratio(1, 2)], vec![int(1), ratio(1, 4)]]
        );
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn agrees_with_gauss_jordan(
            n in 1usize..=5,
            entries in prop::collection::vec(small_rational(), 30),
        ) {
            let a: Matrix = (0..n).map(|i| entries[i * n..i * n + n].to_vec()).collect();
            let b: Vec<Rational> = entries[25..25 + n].to_vec();
            match gauss_jordan(&a, &b) {
                Some(expected) => {
                    let x = solve(&a, &b).unwrap();
                    prop_assert_eq!(&x, &expected);
                    prop_assert_eq!(mat_vec(&a, &x), b);
                }
                None => prop_assert_eq!(solve(&a, &b), Err(Error::SingularSystem)),
            }
        }
    }
}
