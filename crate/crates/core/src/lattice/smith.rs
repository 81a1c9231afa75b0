//! Smith normal form of 2×2 integer matrices.
//!
//! Only the diagonal is canonical. The transforms `U`, `V` depend on the
//! pivoting order and carry no contract beyond `U·A·V = D` and unimodularity.

use serde::{Deserialize, Serialize};

use super::scalar::{self, LatticeScalar};
use super::{IntMatrix2, LatticeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct SmithDecomposition<T> {
    pub u: IntMatrix2<T>,
    pub v: IntMatrix2<T>,
    /// `d₁ | d₂`, both non-negative.
    pub diagonal: [T; 2],
}

impl<T: LatticeScalar> SmithDecomposition<T> {
    pub fn diagonal_matrix(&self) -> IntMatrix2<T> {
        IntMatrix2::new(self.diagonal[0], T::zero(), T::zero(), self.diagonal[1])
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| **d != T::zero()).count()
    }
}

struct Work<T> {
    w: [[T; 2]; 2],
    u: [[T; 2]; 2],
    v: [[T; 2]; 2],
}

impl<T: LatticeScalar> Work<T> {
    fn swap_rows(&mut self) {
        self.w.swap(0, 1);
        self.u.swap(0, 1);
    }

    fn swap_cols(&mut self) {
        for row in self.w.iter_mut().chain(self.v.iter_mut()) {
            row.swap(0, 1);
        }
    }

    /// row[dst] += k·row[src] on W and U.
    fn row_axpy(&mut self, dst: usize, src: usize, k: T) -> Result<(), LatticeError> {
        for m in [&mut self.w, &mut self.u] {
            let src_row = m[src];
            for (e, s) in m[dst].iter_mut().zip(src_row) {
                *e = scalar::add(*e, scalar::mul(k, s)?)?;
            }
        }
        Ok(())
    }

    /// col[dst] += k·col[src] on W and V.
    fn col_axpy(&mut self, dst: usize, src: usize, k: T) -> Result<(), LatticeError> {
        for m in [&mut self.w, &mut self.v] {
            for row in m.iter_mut() {
                row[dst] = scalar::add(row[dst], scalar::mul(k, row[src])?)?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) -> Result<(), LatticeError> {
        for m in [&mut self.w, &mut self.u] {
            for e in m[r].iter_mut() {
                *e = scalar::neg(*e)?;
            }
        }
        Ok(())
    }

    /// Position of the nonzero entry of least magnitude.
    fn min_entry(&self) -> Result<Option<(usize, usize)>, LatticeError> {
        let mut best: Option<((usize, usize), T)> = None;
        for i in 0..2 {
            for j in 0..2 {
                let e = self.w[i][j];
                if e == T::zero() {
                    continue;
                }
                let mag = scalar::abs(e)?;
                if best.is_none_or(|(_, m)| mag < m) {
                    best = Some(((i, j), mag));
                }
            }
        }
        Ok(best.map(|(p, _)| p))
    }
}

fn to_matrix<T: LatticeScalar>(m: [[T; 2]; 2]) -> IntMatrix2<T> {
    IntMatrix2::from_rows(m)
}

/// Computes `U·A·V = diag(d₁, d₂)` with `U`, `V` unimodular and `d₁ | d₂`.
pub fn smith_normal_form<T: LatticeScalar>(a: &IntMatrix2<T>) -> Result<SmithDecomposition<T>, LatticeError> {
    let id = IntMatrix2::<T>::identity().rows();
    let mut work = Work { w: a.rows(), u: id, v: id };

    while let Some((i, j)) = work.min_entry()? {
        if i == 1 {
            work.swap_rows();
        }
        if j == 1 {
            work.swap_cols();
        }
        let p = work.w[0][0];
        let q_col = work.w[1][0] / p;
        if q_col != T::zero() {
            work.row_axpy(1, 0, scalar::neg(q_col)?)?;
        }
        let q_row = work.w[0][1] / p;
        if q_row != T::zero() {
            work.col_axpy(1, 0, scalar::neg(q_row)?)?;
        }
        if work.w[1][0] != T::zero() || work.w[0][1] != T::zero() {
            continue;
        }
        if work.w[1][1] % p != T::zero() {
            // Pull d into row 0; the next pass leaves a smaller remainder.
            work.row_axpy(0, 1, T::one())?;
            continue;
        }
        break;
    }

    for r in 0..2 {
        if work.w[r][r] < T::zero() {
            work.negate_row(r)?;
        }
    }

    Ok(SmithDecomposition { u: to_matrix(work.u), v: to_matrix(work.v), diagonal: [work.w[0][0], work.w[1][1]] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type M = IntMatrix2<i64>;

    fn check(a: M) -> SmithDecomposition<i64> {
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.diagonal_matrix());
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let [d1, d2] = s.diagonal;
        assert!(d1 >= 0 && d2 >= 0);
        if d1 == 0 {
            assert_eq!(d2, 0);
        } else {
            assert_eq!(d2 % d1, 0);
        }
        s
    }

    #[test]
    fn examples() {
        assert_eq!(check(M::identity()).diagonal, [1, 1]);
        assert_eq!(check(M::from_rows([[1, -2], [1, 2]])).diagonal, [1, 4]);
        assert_eq!(check(M::scalar(2)).diagonal, [2, 2]);
        assert_eq!(check(M::zero()).diagonal, [0, 0]);
        assert_eq!(check(M::from_rows([[2, 0], [0, 3]])).diagonal, [1, 6]);
        assert_eq!(check(M::from_rows([[0, 4], [0, 6]])).diagonal, [2, 0]);
        assert_eq!(check(M::from_rows([[-3, 0], [0, 0]])).diagonal, [3, 0]);
    }

    #[test]
    fn overflow_is_reported() {
        let a = IntMatrix2::<i32>::from_rows([[i32::MIN, 1], [1, i32::MIN]]);
        assert_eq!(smith_normal_form(&a), Err(LatticeError::Overflow));
    }

    proptest! {
        // Determinantal divisors: d₁ = gcd of entries, d₁·d₂ = |det|.
        #[test]
        fn matches_determinantal_divisors(a in -40i64..40, b in -40i64..40, c in -40i64..40, d in -40i64..40) {
            let m = M::new(a, b, c, d);
            let s = check(m);
            let g = [a, b, c, d].iter().fold(0i64, |g, e| scalar::gcd(g, *e).unwrap());
            prop_assert_eq!(s.diagonal[0], g);
            prop_assert_eq!(s.diagonal[0] * s.diagonal[1], (a * d - b * c).abs());
        }

        #[test]
        fn generic_over_i128(a in -1000i128..1000, b in -1000i128..1000, c in -1000i128..1000, d in -1000i128..1000) {
            let m = IntMatrix2::<i128>::new(a, b, c, d);
            let s = smith_normal_form(&m).unwrap();
            prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.diagonal_matrix());
            prop_assert_eq!(s.diagonal[0] * s.diagonal[1], (a * d - b * c).abs());
        }
    }
}
