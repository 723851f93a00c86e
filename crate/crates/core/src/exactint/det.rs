use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Exact determinant by Bareiss fraction-free elimination. Every division
/// is exact, so intermediate entries stay bounded by minors of the input.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = if n == 0 { BigInt::one() } else { a[(n - 1, n - 1)].clone() };
    Ok(if sign { -det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(determinant(&IntMatrix::from_rows(&[[-1]])).unwrap(), BigInt::from(-1));
        assert_eq!(
            determinant(&IntMatrix::from_rows(&[[-2, 1], [1, -2]])).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(determinant(&IntMatrix::identity(5)).unwrap(), BigInt::one());
        assert_eq!(determinant(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
    }

    #[test]
    fn needs_row_swap() {
        let m = IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 3]]);
        assert_eq!(determinant(&m).unwrap(), BigInt::from(-3));
        let singular = IntMatrix::from_rows(&[[0, 1], [0, 2]]);
        assert!(determinant(&singular).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_square() {
        assert_eq!(
            determinant(&IntMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }
}
