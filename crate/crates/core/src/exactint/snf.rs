use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U·M·V = S` with `U`, `V` unimodular and `S` diagonal, nonnegative, and
/// divisibility-chained. `u_inv` is `U⁻¹`, tracked alongside so cokernel
/// coordinates can be mapped back to the ambient lattice without inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
}

impl SnfDecomposition {
    /// The `min(rows, cols)` diagonal entries of `S`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

struct Reducer {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        self.s.add_row_multiple(dst, src, factor);
        self.u.add_row_multiple(dst, src, factor);
        self.u_inv.add_col_multiple(src, dst, &-factor);
    }

    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        self.s.add_col_multiple(dst, src, factor);
        self.v.add_col_multiple(dst, src, factor);
    }

    fn negate_row(&mut self, r: usize) {
        self.s.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    /// Position of the smallest nonzero |entry| with row, col >= t.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), &BigInt)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let x = &self.s[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(_, b)| x.magnitude() < b.magnitude()) {
                    best = Some(((i, j), x));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// Smallest nonzero |entry| in row t or column t (excluding the pivot).
    fn smallest_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let below = (t + 1..self.s.rows()).map(|i| (i, t));
        let right = (t + 1..self.s.cols()).map(|j| (t, j));
        below
            .chain(right)
            .filter(|&p| !self.s[p].is_zero())
            .min_by(|&a, &b| self.s[a].magnitude().cmp(self.s[b].magnitude()))
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Clears row and column t using the pivot at (t, t). Returns false if a
    /// nonzero remainder was left behind.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.s.rows() {
            if self.s[(i, t)].is_zero() {
                continue;
            }
            let q = self.s[(i, t)].div_floor(&self.s[(t, t)]);
            self.add_row(i, t, &-q);
            clean &= self.s[(i, t)].is_zero();
        }
        for j in t + 1..self.s.cols() {
            if self.s[(t, j)].is_zero() {
                continue;
            }
            let q = self.s[(t, j)].div_floor(&self.s[(t, t)]);
            self.add_col(j, t, &-q);
            clean &= self.s[(t, j)].is_zero();
        }
        clean
    }

    fn first_non_multiple(&self, t: usize) -> Option<usize> {
        let p = &self.s[(t, t)];
        (t + 1..self.s.rows()).find(|&i| {
            (t + 1..self.s.cols()).any(|j| !self.s[(i, j)].is_multiple_of(p))
        })
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots on the smallest nonzero magnitude remaining, which keeps entry
/// growth down on Laplacian-like inputs.
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let (n, k) = (m.rows(), m.cols());
    let mut r = Reducer {
        s: m.clone(),
        u: IntMatrix::identity(n),
        u_inv: IntMatrix::identity(n),
        v: IntMatrix::identity(k),
    };

    for t in 0..n.min(k) {
        let Some(pos) = r.smallest_in_block(t) else {
            break;
        };
        r.move_to_pivot(t, pos);
        loop {
            if !r.clear_cross(t) {
                let pos = r.smallest_in_cross(t).expect("nonzero remainder present");
                r.move_to_pivot(t, pos);
                continue;
            }
            match r.first_non_multiple(t) {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.s[(t, t)].is_negative() {
            r.negate_row(t);
        }
    }

    SnfDecomposition {
        u: r.u,
        s: r.s,
        v: r.v,
        u_inv: r.u_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactint::determinant;

    fn check(m: &IntMatrix) -> SnfDecomposition {
        let d = smith_normal_form(m);
        assert_eq!(&(&d.u * m) * &d.v, d.s);
        assert_eq!(&d.u * &d.u_inv, IntMatrix::identity(m.rows()));
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        let diag = d.diagonal();
        assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        d
    }

    #[test]
    fn identity_is_fixed() {
        let d = check(&IntMatrix::identity(4));
        assert_eq!(d.s, IntMatrix::identity(4));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 20, so the second factor is 10.
        let d = check(&IntMatrix::from_rows(&[[2, 4], [-2, 6]]));
        assert_eq!(d.s, IntMatrix::from_rows(&[[2, 0], [0, 10]]));
    }

    #[test]
    fn zero_matrix() {
        let d = check(&IntMatrix::zeros(3, 2));
        assert!(d.s.is_zero());
    }

    #[test]
    fn empty_shapes() {
        let d = check(&IntMatrix::zeros(0, 3));
        assert_eq!(d.s.rows(), 0);
        let d = check(&IntMatrix::zeros(2, 0));
        assert_eq!(d.u, IntMatrix::identity(2));
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let d = check(&IntMatrix::from_rows(&[[2, 4, 6], [1, 2, 3]]));
        assert_eq!(d.diagonal(), vec![BigInt::from(1), BigInt::from(0)]);
        let d = check(&IntMatrix::from_rows(&[[6, 0], [0, 4], [0, 0]]));
        assert_eq!(d.diagonal(), vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn transforms_are_unimodular() {
        let m = IntMatrix::from_rows(&[[3, -7, 2], [9, 4, -1], [0, 5, 8]]);
        let d = check(&m);
        assert_eq!(determinant(&d.u).unwrap().magnitude(), BigInt::one().magnitude());
        assert_eq!(determinant(&d.v).unwrap().magnitude(), BigInt::one().magnitude());
    }
}
