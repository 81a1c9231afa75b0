//! Column Hermite form of a 2×m integer matrix, used for Diophantine solving
//! and for the index of the lattice spanned by a generator list.

use super::scalar::{self, LatticeScalar};
use super::{smith_normal_form, IntMatrix2, LatticeError, LatticeVector};

/// Lower-triangular basis of the column lattice of `G`, with each basis
/// column expressed as an integer combination of the original columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm<T> {
    columns: usize,
    /// Basis columns. With rank 2 these are `(h₁₁, h₂₁)` and `(0, h₂₂)`,
    /// `h₁₁, h₂₂ > 0`, `0 ≤ h₂₁ < h₂₂`.
    basis: Vec<LatticeVector<T>>,
    /// Pivot row (0 = x, 1 = y) of each basis column.
    pivot_rows: Vec<usize>,
    combos: Vec<Vec<T>>,
}

struct Column<T> {
    v: LatticeVector<T>,
    coeffs: Vec<T>,
}

impl<T: LatticeScalar> Column<T> {
    fn component(&self, row: usize) -> T {
        if row == 0 {
            self.v.x
        } else {
            self.v.y
        }
    }

    fn axpy(&mut self, k: T, other: &Column<T>) -> Result<(), LatticeError> {
        self.v = self.v.checked_add(other.v.checked_scale(k)?)?;
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *c = scalar::add(*c, scalar::mul(k, *o)?)?;
        }
        Ok(())
    }

    fn negate(&mut self) -> Result<(), LatticeError> {
        self.v = self.v.checked_neg()?;
        for c in &mut self.coeffs {
            *c = scalar::neg(*c)?;
        }
        Ok(())
    }
}

impl<T: LatticeScalar> HermiteForm<T> {
    pub fn new(generators: &[LatticeVector<T>]) -> Result<Self, LatticeError> {
        let m = generators.len();
        if m == 0 {
            return Err(LatticeError::EmptyMatrix);
        }
        let mut cols: Vec<Column<T>> = generators
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut coeffs = vec![T::zero(); m];
                coeffs[i] = T::one();
                Column { v: *v, coeffs }
            })
            .collect();

        let mut pivot_rows = Vec::new();
        let mut start = 0;
        for row in 0..2 {
            loop {
                let mut best: Option<(usize, T)> = None;
                for (i, col) in cols.iter().enumerate().skip(start) {
                    let e = col.component(row);
                    if e != T::zero() {
                        let mag = scalar::abs(e)?;
                        if best.is_none_or(|(_, b)| mag < b) {
                            best = Some((i, mag));
                        }
                    }
                }
                let Some((i, _)) = best else { break };
                cols.swap(start, i);
                let (head, tail) = cols.split_at_mut(start + 1);
                let pivot = &head[start];
                let p = pivot.component(row);
                let mut done = true;
                for col in tail.iter_mut() {
                    let e = col.component(row);
                    if e == T::zero() {
                        continue;
                    }
                    col.axpy(scalar::neg(e / p)?, pivot)?;
                    if col.component(row) != T::zero() {
                        done = false;
                    }
                }
                if done {
                    if p < T::zero() {
                        cols[start].negate()?;
                    }
                    pivot_rows.push(row);
                    start += 1;
                    break;
                }
            }
        }

        // Reduce h₂₁ into [0, h₂₂).
        if pivot_rows == [0, 1] {
            let (h21, h22) = (cols[0].v.y, cols[1].v.y);
            let q = scalar::div_floor(h21, h22)?;
            if q != T::zero() {
                let (head, tail) = cols.split_at_mut(1);
                head[0].axpy(scalar::neg(q)?, &tail[0])?;
            }
        }

        cols.truncate(pivot_rows.len());
        Ok(Self {
            columns: m,
            basis: cols.iter().map(|c| c.v).collect(),
            combos: cols.into_iter().map(|c| c.coeffs).collect(),
            pivot_rows,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LatticeVector<T>] {
        &self.basis
    }

    /// The rank-2 basis as the columns of a 2×2 matrix.
    pub fn basis_matrix(&self) -> Option<IntMatrix2<T>> {
        (self.rank() == 2).then(|| IntMatrix2::from_columns(self.basis[0], self.basis[1]))
    }

    /// Index of the column lattice in Z², when it has full rank.
    pub fn index(&self) -> Result<Option<T>, LatticeError> {
        match self.basis_matrix() {
            Some(b) => Ok(Some(scalar::abs(b.det()?)?)),
            None => Ok(None),
        }
    }

    /// Invariant factors `(d₁, d₂)` of the 2×m matrix; zeros mark missing rank.
    pub fn invariant_factors(&self) -> Result<[T; 2], LatticeError> {
        match self.rank() {
            0 => Ok([T::zero(), T::zero()]),
            1 => Ok([self.basis[0].content()?, T::zero()]),
            _ => Ok(smith_normal_form(&self.basis_matrix().expect("rank 2"))?.diagonal),
        }
    }

    /// Some `c` with `G·c = y`, or [`LatticeError::NoSolution`].
    pub fn solve(&self, y: LatticeVector<T>) -> Result<Vec<T>, LatticeError> {
        let mut weights = Vec::with_capacity(self.rank());
        let mut rest = y;
        for (b, &row) in self.basis.iter().zip(&self.pivot_rows) {
            let (num, den) = if row == 0 { (rest.x, b.x) } else { (rest.y, b.y) };
            if num % den != T::zero() {
                return Err(LatticeError::NoSolution);
            }
            let w = num / den;
            rest = rest.checked_sub(b.checked_scale(w)?)?;
            weights.push(w);
        }
        if !rest.is_zero() {
            return Err(LatticeError::NoSolution);
        }
        let mut c = vec![T::zero(); self.columns];
        for (w, combo) in weights.iter().zip(&self.combos) {
            for (ci, k) in c.iter_mut().zip(combo) {
                *ci = scalar::add(*ci, scalar::mul(*w, *k)?)?;
            }
        }
        Ok(c)
    }
}

/// `G·c` for the columns `G`.
pub fn combine<T: LatticeScalar>(
    generators: &[LatticeVector<T>],
    coeffs: &[T],
) -> Result<LatticeVector<T>, LatticeError> {
    generators.iter().zip(coeffs).try_fold(LatticeVector::zero(), |acc, (g, k)| acc.checked_add(g.checked_scale(*k)?))
}

/// Some integer vector `c` with `G·c = y`, where `G` has the given columns.
pub fn solve_diophantine<T: LatticeScalar>(
    generators: &[LatticeVector<T>],
    y: LatticeVector<T>,
) -> Result<Vec<T>, LatticeError> {
    HermiteForm::new(generators)?.solve(y)
}
