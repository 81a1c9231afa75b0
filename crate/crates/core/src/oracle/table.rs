use serde::{Deserialize, Serialize};

use super::{Limits, OracleError};
use crate::lattice::HermiteForm;
use crate::semigroup::ToricSemigroup;
use crate::Vector;

/// Cone coordinates `u = det(a₁, p)`, `v = det(p, a₂)`.
///
/// `p ∈ C` iff `u, v ≥ 0`, and `f(p) = u + v` is the positive functional
/// that orders the enumeration. The map `p ↦ (u, v)` is injective with
/// inverse `p = (u·a₂ + v·a₁) / det(a₁, a₂)`; its image is a sublattice of
/// index `det(a₁, a₂)` with Hermite basis `(h₁₁, h₂₁), (0, h₂₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeFrame {
    pub a1: Vector,
    pub a2: Vector,
    pub det: i64,
    h11: i64,
    h21: i64,
    h22: i64,
}

impl ConeFrame {
    pub fn new(a1: Vector, a2: Vector) -> Self {
        let det = a1.det(a2).expect("bounded coordinates");
        assert!(det > 0, "cone frame needs det(a1, a2) > 0");
        // images of e₁ and e₂ in (u, v) coordinates
        let images = [Vector::new(-a1.y, a2.y), Vector::new(a1.x, -a2.x)];
        let basis =
            HermiteForm::new(&images).ok().and_then(|h| h.basis_matrix()).expect("coordinate map has full rank");
        let (h11, h21, h22) = (basis.a.abs(), basis.c, basis.d.abs());
        debug_assert_eq!(basis.b, 0);
        debug_assert_eq!(h11 * h22, det);
        Self { a1, a2, det, h11, h21: h21.rem_euclid(h22), h22 }
    }

    pub fn of(sg: &ToricSemigroup) -> Self {
        Self::new(sg.a1(), sg.a2())
    }

    pub fn coords(&self, p: Vector) -> (i64, i64) {
        (self.a1.det(p).expect("bounded"), p.det(self.a2).expect("bounded"))
    }

    /// `f(p) = det(a₁, p) + det(p, a₂)`.
    pub fn functional(&self, p: Vector) -> i64 {
        let (u, v) = self.coords(p);
        u + v
    }

    pub fn contains(&self, p: Vector) -> bool {
        let (u, v) = self.coords(p);
        u >= 0 && v >= 0
    }

    /// The lattice point with coordinates `(u, v)`, if there is one.
    pub fn point(&self, u: i64, v: i64) -> Option<Vector> {
        let x = u * self.a2.x + v * self.a1.x;
        let y = u * self.a2.y + v * self.a1.y;
        (x % self.det == 0 && y % self.det == 0).then(|| Vector::new(x / self.det, y / self.det))
    }

    /// Least `v ≥ 0` on row `u = h₁₁·i`; lattice points of that row are
    /// spaced `h₂₂` apart.
    fn row_offset(&self, i: i64) -> i64 {
        (self.h21 * i).rem_euclid(self.h22)
    }

    fn row_len(&self, i: i64, bound: i64) -> i64 {
        let room = bound - self.h11 * i - self.row_offset(i);
        if room < 0 {
            0
        } else {
            room / self.h22 + 1
        }
    }

    /// Number of lattice points of `C` with `f ≤ bound`.
    pub fn cell_count(&self, bound: u64) -> u64 {
        let b = bound as i64;
        (0..=b / self.h11).map(|i| self.row_len(i, b) as u64).sum()
    }

    /// Largest bound whose window has at most `limits.cell_cap` points.
    pub fn max_bound(&self, limits: &Limits) -> u64 {
        let cap = limits.cell_cap as u64;
        let (mut lo, mut hi) = (0u64, 1u64);
        while self.cell_count(hi) <= cap {
            lo = hi;
            hi *= 2;
        }
        if self.cell_count(lo) > cap {
            return 0;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.cell_count(mid) <= cap {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Member,
    NonMember,
    OutsideWindow,
}

/// Exact membership of the semigroup generated by `generators` on the
/// window `{p ∈ C : f(p) ≤ bound}`.
///
/// `p` is a member iff `p = 0` or `p − g` is a member for some generator
/// `g`. Generators have `u, v ≥ 0` and are nonzero, so `p − g` precedes `p`
/// in row-major `(u, v)` order and one sweep fills the table. Only lattice
/// points are stored, one row per `u = h₁₁·i`.
#[derive(Clone, Debug)]
pub struct EnumerationTable {
    frame: ConeFrame,
    bound: u64,
    generators: Vec<Vector>,
    row_start: Vec<usize>,
    cells: Vec<bool>,
    members: Vec<Vector>,
}

impl EnumerationTable {
    pub fn build(sg: &ToricSemigroup, bound: u64, limits: &Limits) -> Result<Self, OracleError> {
        Self::for_generators(ConeFrame::of(sg), sg.generators(), bound, limits)
    }

    /// Enumerates the subsemigroup generated by `generators`, which must
    /// lie in the cone of `frame` and be nonzero.
    pub fn for_generators(
        frame: ConeFrame,
        generators: &[Vector],
        bound: u64,
        limits: &Limits,
    ) -> Result<Self, OracleError> {
        let too_large = OracleError::BoundTooLarge { bound, cap: limits.cell_cap };
        let b = i64::try_from(bound).map_err(|_| too_large.clone())?;
        // cheap lower estimate first so absurd bounds fail without a row scan
        if (bound as u128).pow(2) / (2 * frame.det as u128) > limits.cell_cap as u128 * 2 {
            return Err(too_large);
        }
        let steps: Vec<(i64, i64)> = generators
            .iter()
            .map(|g| {
                let (u, v) = frame.coords(*g);
                if u < 0 || v < 0 || u + v == 0 {
                    Err(OracleError::OutsideCone(*g))
                } else {
                    Ok((u, v))
                }
            })
            .collect::<Result<_, _>>()?;

        let rows = (b / frame.h11 + 1) as usize;
        let mut row_start = Vec::with_capacity(rows + 1);
        let mut total = 0usize;
        for i in 0..rows as i64 {
            row_start.push(total);
            total += frame.row_len(i, b) as usize;
            if total > limits.cell_cap {
                return Err(too_large);
            }
        }
        row_start.push(total);

        let mut table = Self {
            frame,
            bound,
            generators: generators.to_vec(),
            row_start,
            cells: vec![false; total],
            members: Vec::new(),
        };
        let mut keyed = Vec::new();
        for i in 0..rows as i64 {
            let u = frame.h11 * i;
            let offset = frame.row_offset(i);
            for k in 0..frame.row_len(i, b) {
                let v = offset + k * frame.h22;
                let present = (u == 0 && v == 0)
                    || steps.iter().any(|&(gu, gv)| gu <= u && gv <= v && table.cells[table.index(u - gu, v - gv)]);
                if present {
                    let idx = table.row_start[i as usize] + k as usize;
                    table.cells[idx] = true;
                    keyed.push((u + v, u));
                }
            }
        }
        keyed.sort_unstable();
        table.members = keyed.into_iter().map(|(f, u)| frame.point(u, f - u).expect("lattice point")).collect();
        Ok(table)
    }

    /// Cell of a lattice point with `u, v ≥ 0` and `u + v ≤ bound`.
    fn index(&self, u: i64, v: i64) -> usize {
        let i = u / self.frame.h11;
        let k = (v - self.frame.row_offset(i)) / self.frame.h22;
        self.row_start[i as usize] + k as usize
    }

    pub fn frame(&self) -> &ConeFrame {
        &self.frame
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn functional(&self, p: Vector) -> i64 {
        self.frame.functional(p)
    }

    pub fn lookup(&self, p: Vector) -> Lookup {
        let (u, v) = self.frame.coords(p);
        if u < 0 || v < 0 {
            return Lookup::NonMember;
        }
        if (u + v) as u64 > self.bound {
            return Lookup::OutsideWindow;
        }
        if self.cells[self.index(u, v)] {
            Lookup::Member
        } else {
            Lookup::NonMember
        }
    }

    /// Membership, or an error when `p` lies beyond the window.
    pub fn contains(&self, p: Vector) -> Result<bool, OracleError> {
        match self.lookup(p) {
            Lookup::Member => Ok(true),
            Lookup::NonMember => Ok(false),
            Lookup::OutsideWindow => Err(OracleError::OutsideWindow(p)),
        }
    }

    /// Members in increasing `f`, ties by increasing `det(a₁, p)`.
    pub fn members(&self) -> &[Vector] {
        &self.members
    }

    /// Number of lattice points in the window.
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Lattice points of the window, members or not, row by row.
    pub fn window_points(&self) -> impl Iterator<Item = Vector> + '_ {
        let f = self.frame;
        let b = self.bound as i64;
        (0..self.row_start.len() as i64 - 1).flat_map(move |i| {
            let u = f.h11 * i;
            let offset = f.row_offset(i);
            (0..f.row_len(i, b)).map(move |k| f.point(u, offset + k * f.h22).expect("lattice point"))
        })
    }
}

/// Enumerates `S` on `{f ≤ bound}`.
pub fn enumerate(sg: &ToricSemigroup, bound: u64, limits: &Limits) -> Result<EnumerationTable, OracleError> {
    EnumerationTable::build(sg, bound, limits)
}

/// Exact membership `p ∈ S`.
pub fn member(sg: &ToricSemigroup, p: Vector, limits: &Limits) -> Result<bool, OracleError> {
    let frame = ConeFrame::of(sg);
    if !frame.contains(p) {
        return Ok(false);
    }
    let table = EnumerationTable::build(sg, frame.functional(p) as u64, limits)?;
    table.contains(p)
}
