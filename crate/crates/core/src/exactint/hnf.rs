use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Column-style Hermite normal form: returns `(H, U)` with `M·U = H`, `U`
/// unimodular.
///
/// The nonzero columns of `H` come first and form a basis of the column
/// lattice of `M`. Column `c` has its pivot in row `p_c` (strictly increasing
/// in `c`), is zero above the pivot, the pivot is positive, and every entry of
/// the pivot row to the left of the pivot lies in `[0, pivot)`. This makes `H`
/// a canonical representative of the lattice.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u, _) = reduce(m);
    (h, u)
}

fn reduce(m: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<usize>) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for i in 0..h.rows() {
        if r == h.cols() {
            break;
        }
        for j in r + 1..h.cols() {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(i, r)].is_zero() {
                h.swap_cols(r, j);
                u.swap_cols(r, j);
                continue;
            }
            // Bezout step: (col_r, col_j) <- (s·col_r + t·col_j, -(b/g)·col_r + (a/g)·col_j)
            let a = h[(i, r)].clone();
            let b = h[(i, j)].clone();
            let e = a.extended_gcd(&b);
            let (a_g, b_g) = (&a / &e.gcd, &b / &e.gcd);
            let neg_b_g = -b_g;
            let coeffs = [&e.x, &e.y, &neg_b_g, &a_g];
            h.combine_cols(r, j, coeffs);
            u.combine_cols(r, j, coeffs);
        }
        if h[(i, r)].is_zero() {
            continue;
        }
        if h[(i, r)].is_negative() {
            h.negate_col(r);
            u.negate_col(r);
        }
        for l in 0..r {
            let q = h[(i, l)].div_floor(&h[(i, r)]);
            if !q.is_zero() {
                h.add_col_multiple(l, r, &-&q);
                u.add_col_multiple(l, r, &-q);
            }
        }
        pivots.push(i);
        r += 1;
    }
    (h, u, pivots)
}

/// A column lattice with its Hermite basis cached for repeated membership
/// queries.
#[derive(Debug, Clone)]
pub struct Lattice {
    generators: usize,
    hnf: IntMatrix,
    transform: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn new(m: &IntMatrix) -> Self {
        let (hnf, transform, pivots) = reduce(m);
        Self {
            generators: m.cols(),
            hnf,
            transform,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.hnf.rows()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical basis: the nonzero Hermite columns.
    pub fn basis(&self) -> IntMatrix {
        self.hnf.select_columns(0..self.rank())
    }

    /// True iff the lattice is all of ℤⁿ.
    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_dim() && self.basis() == IntMatrix::identity(self.rank())
    }

    /// Basis of the integer kernel of the generator matrix, as columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        self.transform.select_columns(self.rank()..self.generators)
    }

    /// Coordinates of `b` in the canonical basis, if `b` is in the lattice.
    pub fn basis_coordinates(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if b.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a lattice of dimension {}",
                b.len(),
                self.ambient_dim()
            )));
        }
        let mut residual = b.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        let mut next = 0;
        for i in 0..residual.len() {
            let res_i = residual[i].clone();
            if next < self.rank() && self.pivots[next] == i {
                let (q, rem) = res_i.div_rem(&self.hnf[(i, next)]);
                if !rem.is_zero() {
                    return Ok(None);
                }
                if !q.is_zero() {
                    for (row, x) in residual.iter_mut().enumerate().skip(i) {
                        let h = &self.hnf[(row, next)];
                        if !h.is_zero() {
                            *x -= &q * h;
                        }
                    }
                }
                coords.push(q);
                next += 1;
            } else if !res_i.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(coords))
    }

    /// Integer `x` with `M·x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let Some(mut y) = self.basis_coordinates(b)? else {
            return Ok(None);
        };
        y.resize(self.generators, BigInt::zero());
        self.transform.mul_vec(&y).map(Some)
    }

    pub fn contains(&self, b: &[BigInt]) -> Result<bool> {
        Ok(self.basis_coordinates(b)?.is_some())
    }
}

/// Witness `x` with `M·x = b` over the integers, or `None`.
pub fn lattice_contains(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a matrix with {} rows",
            b.len(),
            m.rows()
        )));
    }
    Lattice::new(m).solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_is_already_hermite() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, m);
        assert_eq!(&m * &u, h);
    }

    #[test]
    fn row_vector_contracts_to_gcd() {
        let m = IntMatrix::from_rows(&[[2, 4]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, IntMatrix::from_rows(&[[2, 0]]));
        assert_eq!(&m * &u, h);
    }

    #[test]
    fn unimodular_input_gives_identity() {
        let m = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        let (h, _) = hermite_normal_form(&m);
        assert_eq!(h, IntMatrix::identity(2));
        assert!(Lattice::new(&m).is_full());
    }

    #[test]
    fn entries_left_of_pivot_are_reduced() {
        let m = IntMatrix::from_rows(&[[3, 0], [7, 5]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(&m * &u, h);
        assert_eq!(h, IntMatrix::from_rows(&[[3, 0], [2, 5]]));
    }

    #[test]
    fn membership_examples() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 2]]);
        assert_eq!(lattice_contains(&m, &v(&[2, 0])).unwrap(), Some(v(&[1, 0])));
        assert_eq!(lattice_contains(&m, &v(&[1, 0])).unwrap(), None);
        let z = IntMatrix::zeros(2, 2);
        let w = lattice_contains(&z, &v(&[0, 0])).unwrap().unwrap();
        assert_eq!(z.mul_vec(&w).unwrap(), v(&[0, 0]));
        assert!(lattice_contains(&m, &v(&[1])).is_err());
    }

    #[test]
    fn kernel_basis_spans_kernel() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        let lat = Lattice::new(&m);
        let k = lat.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!((&m * &k).is_zero());
    }

    #[test]
    fn rank_deficient_rows_are_skipped() {
        let m = IntMatrix::from_rows(&[[0, 0], [4, 6], [2, 3]]);
        let lat = Lattice::new(&m);
        assert_eq!(lat.rank(), 1);
        assert!(lat.contains(&v(&[0, 2, 1])).unwrap());
        assert!(!lat.contains(&v(&[0, 2, 2])).unwrap());
        assert!(!lat.contains(&v(&[1, 2, 1])).unwrap());
    }
}
