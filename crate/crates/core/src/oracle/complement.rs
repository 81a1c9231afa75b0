//! Decomposition of `S ∖ (S + x)` into translates of the faces and a finite set.
//!
//! With `z + C ⊆ S`, everything in `S ∖ (S + x)` lies outside `w + C` for
//! `w = z + x`, hence on one of finitely many lines parallel to a face ray.
//! Each such line splits into `d_j` classes `{q + n·a_j : n ≥ 0}`. Along a
//! class, `S` is empty or contains a tail `y + F_j`, and the same holds for
//! `S + x`.
//!
//! A class of `S` on a line at height `c` is nonempty iff it contains a
//! point `o` that is a sum of off-ray generators only (the on-ray part lies
//! in `F_j ⊆ Z·a_j` and does not change the class). Such `o` satisfies
//! `μ(o) ≤ c · max_g μ(g)/ℓ(g)`, so scanning up to that bound decides
//! emptiness exactly.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::certificate::{cone_witness, ConeWitness};
use super::table::{ConeFrame, EnumerationTable, Lookup};
use super::{Limits, OracleError};
use crate::lattice::{div_ceil, ext_gcd};
use crate::semigroup::{FaceIndex, ToricSemigroup};
use crate::Vector;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Translate {
    pub face: FaceIndex,
    /// Least point of the translate `representative + F_j`.
    pub representative: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlaggedClass {
    pub face: FaceIndex,
    pub base: Vector,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementDecomposition {
    pub x: Vector,
    pub witness_z: Vector,
    pub bound: u64,
    pub finite_part: Vec<Vector>,
    pub translates: Vec<Translate>,
    pub flagged_classes: Vec<FlaggedClass>,
}

impl ComplementDecomposition {
    pub fn translate_count(&self, j: FaceIndex) -> usize {
        self.translates.iter().filter(|t| t.face == j).count()
    }

    pub fn is_complete(&self) -> bool {
        self.flagged_classes.is_empty()
    }
}

/// Coordinates adapted to the lines parallel to face `j`.
struct LineFamily {
    j: FaceIndex,
    ray: Vector,
    a: Vector,
    /// conductor of the face in units of `a`
    conductor: u64,
    d: i64,
    frame: ConeFrame,
    /// `(ℓ(g), μ(g))` for generators off the ray
    off_ray: Vec<(i64, i64)>,
}

impl LineFamily {
    fn new(sg: &ToricSemigroup, j: FaceIndex) -> Self {
        let face = sg.face(j);
        let frame = ConeFrame::of(sg);
        let mut fam = Self {
            j,
            ray: face.ray.vector(),
            a: face.asymptotic_generator,
            conductor: face.reduced_conductor(),
            d: face.d as i64,
            frame,
            off_ray: Vec::new(),
        };
        fam.off_ray =
            sg.generators().iter().map(|g| (fam.height(*g), fam.position(*g))).filter(|(l, _)| *l > 0).collect();
        fam
    }

    /// Which line: `det(r₁, p)` or `det(p, r₂)`.
    fn height(&self, p: Vector) -> i64 {
        match self.j {
            FaceIndex::First => self.ray.det(p).expect("bounded"),
            FaceIndex::Second => p.det(self.ray).expect("bounded"),
        }
    }

    /// Position along the line; grows by `det(a₁, a₂)` per step of `a`.
    fn position(&self, p: Vector) -> i64 {
        let (u, v) = self.frame.coords(p);
        match self.j {
            FaceIndex::First => v,
            FaceIndex::Second => u,
        }
    }

    /// Upper bound on the least position of a nonempty class at height `c`.
    fn search_limit(&self, c: i64) -> i64 {
        self.off_ray.iter().map(|(l, m)| (c * m).div_euclid(*l)).max().unwrap_or(0)
    }

    /// First lattice point of the line at height `c` inside the cone.
    fn line_start(&self, c: i64) -> Vector {
        let r = self.ray;
        let p0 = match self.j {
            FaceIndex::First => {
                let (_, u, v) = ext_gcd(r.x, -r.y).expect("bounded");
                Vector::new(v * c, u * c)
            }
            FaceIndex::Second => {
                let (_, u, v) = ext_gcd(r.y, -r.x).expect("bounded");
                Vector::new(u * c, v * c)
            }
        };
        debug_assert_eq!(self.height(p0), c);
        let step = self.position(r);
        let t = div_ceil(-self.position(p0), step).expect("bounded");
        p0 + r * t
    }

    /// Largest window level a scan of heights `0..lines` can touch.
    fn needed_bound(&self, lines: i64, x: Vector) -> i64 {
        let det = self.frame.det;
        let hx = self.height(x);
        let px = self.position(x).max(0);
        (0..lines)
            .map(|c| {
                let mut reach = self.search_limit(c);
                if c >= hx {
                    reach = reach.max(self.search_limit(c - hx) + px);
                }
                self.d * c + reach + (self.conductor as i64 + 1) * det
            })
            .max()
            .unwrap_or(0)
    }
}

enum Scan {
    Found(i64),
    Empty,
    Flagged(String),
}

/// Least `n` with `point(n)` a member, scanning while `pos(n) ≤ limit`.
fn scan(table: &EnumerationTable, budget: usize, limit: i64, mut point: impl FnMut(i64) -> (Vector, i64)) -> Scan {
    for n in 0.. {
        let (p, pos) = point(n);
        if pos > limit {
            return Scan::Empty;
        }
        if n as usize >= budget {
            return Scan::Flagged("scan budget exhausted".into());
        }
        match table.lookup(p) {
            Lookup::Member => return Scan::Found(n),
            Lookup::NonMember => {}
            Lookup::OutsideWindow => return Scan::Flagged(format!("{p} outside window")),
        }
    }
    unreachable!()
}

pub fn complement_decomposition(
    sg: &ToricSemigroup,
    x: Vector,
    limits: &Limits,
) -> Result<ComplementDecomposition, OracleError> {
    let witness = cone_witness(sg, limits)?;
    complement_decomposition_with(sg, x, &witness, limits)
}

/// As [`complement_decomposition`], reusing a cone witness.
pub fn complement_decomposition_with(
    sg: &ToricSemigroup,
    x: Vector,
    witness: &ConeWitness,
    limits: &Limits,
) -> Result<ComplementDecomposition, OracleError> {
    let frame = ConeFrame::of(sg);
    if !frame.contains(x) {
        return Err(OracleError::NotMember(x));
    }
    let w = witness.z + x;
    let families = FaceIndex::BOTH.map(|j| LineFamily::new(sg, j));
    let needed = families.iter().map(|f| f.needed_bound(f.height(w), x)).max().unwrap_or(0).max(frame.functional(x));
    let bound = (needed as u64).min(frame.max_bound(limits));
    let table = EnumerationTable::build(sg, bound, limits)?;
    if !table.contains(x)? {
        return Err(OracleError::NotMember(x));
    }

    let mut finite = BTreeSet::new();
    let mut translates = Vec::new();
    let mut flagged = Vec::new();
    let det = frame.det;
    for fam in &families {
        let hx = fam.height(x);
        let px = fam.position(x);
        let face = sg.face(fam.j);
        for c in 0..fam.height(w) {
            let start = fam.line_start(c);
            for k in 0..fam.d {
                let q = start + fam.ray * k;
                let at = |n: i64| q + fam.a * n;
                let pos0 = fam.position(q);
                let in_s = scan(&table, limits.search_budget, fam.search_limit(c), |n| (at(n), pos0 + n * det));
                let n_y = match in_s {
                    Scan::Empty => continue,
                    Scan::Found(n) => n,
                    Scan::Flagged(reason) => {
                        flagged.push(FlaggedClass { face: fam.j, base: q, reason });
                        continue;
                    }
                };
                let in_sx = if c < hx {
                    Scan::Empty
                } else {
                    scan(&table, limits.search_budget, fam.search_limit(c - hx), |n| (at(n) - x, pos0 + n * det - px))
                };
                let tail_end = match in_sx {
                    Scan::Flagged(reason) => {
                        flagged.push(FlaggedClass { face: fam.j, base: q, reason });
                        continue;
                    }
                    Scan::Empty => {
                        translates.push(Translate { face: fam.j, representative: at(n_y) });
                        // members of the class outside at(n_y) + F_j
                        for n in n_y..n_y + face.reduced_conductor() as i64 {
                            if !face.contains_multiple(n - n_y) && table.lookup(at(n)) == Lookup::Member {
                                finite.insert(at(n));
                            }
                        }
                        continue;
                    }
                    Scan::Found(n) => n + face.reduced_conductor() as i64,
                };
                for n in n_y..tail_end {
                    let p = at(n);
                    let (ps, pxs) = (table.lookup(p), table.lookup(p - x));
                    if ps == Lookup::OutsideWindow || pxs == Lookup::OutsideWindow {
                        flagged.push(FlaggedClass { face: fam.j, base: q, reason: format!("{p} outside window") });
                        break;
                    }
                    if ps == Lookup::Member && pxs != Lookup::Member {
                        finite.insert(p);
                    }
                }
            }
        }
    }
    translates.sort();
    Ok(ComplementDecomposition {
        x,
        witness_z: witness.z,
        bound,
        finite_part: finite.into_iter().collect(),
        translates,
        flagged_classes: flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktheory::index_value;

    fn v(x: i64, y: i64) -> Vector {
        Vector::new(x, y)
    }

    fn sg(gens: &[(i64, i64)]) -> ToricSemigroup {
        ToricSemigroup::new(gens.iter().map(|(x, y)| v(*x, *y)).collect::<Vec<_>>()).unwrap()
    }

    fn counts(s: &ToricSemigroup, x: Vector) -> (usize, usize, ComplementDecomposition) {
        let d = complement_decomposition(s, x, &Limits::default()).unwrap();
        assert!(d.is_complete(), "{:?}", d.flagged_classes);
        (d.translate_count(FaceIndex::First), d.translate_count(FaceIndex::Second), d)
    }

    #[test]
    fn n2_diagonal() {
        let s = sg(&[(1, 0), (0, 1)]);
        let (c1, c2, d) = counts(&s, v(1, 1));
        assert_eq!((c1, c2), (1, 1));
        assert!(d.finite_part.is_empty());
        assert_eq!(
            d.translates,
            vec![
                Translate { face: FaceIndex::First, representative: v(0, 0) },
                Translate { face: FaceIndex::Second, representative: v(0, 0) },
            ]
        );
    }

    #[test]
    fn z4_cone() {
        let s = sg(&[(2, -1), (1, 0), (2, 1)]);
        let (c1, c2, _) = counts(&s, v(1, 0));
        assert_eq!((c1, c2), (1, 1));
        let (c1, c2, _) = counts(&s, v(2, 0));
        assert_eq!((c1, c2), (2, 2));
    }

    #[test]
    fn non_saturated_face() {
        let s = sg(&[(2, 0), (3, 0), (0, 1)]);
        let (c1, c2, d) = counts(&s, v(2, 1));
        assert_eq!((c1, c2), (1, 2));
        // (0,0) + F₁ misses (1,0), which is not in S anyway; nothing finite
        assert!(d.finite_part.iter().all(|p| p.y >= 0));
    }

    #[test]
    fn matches_index_formula() {
        for gens in [
            &[(2, 0), (0, 1), (1, 1)][..],
            &[(1, 0), (1, 1), (1, 3)],
            &[(3, 0), (5, 0), (0, 2), (0, 3), (1, 1)],
            &[(2, -1), (1, 0), (2, 1)],
        ] {
            let s = sg(gens);
            let lim = Limits::default();
            let t = EnumerationTable::build(&s, 12, &lim).unwrap();
            for x in t.members().iter().filter(|p| s.face_line_of(**p).is_none()).take(4) {
                let (c1, c2, _) = counts(&s, *x);
                assert_eq!(c1 as i64, index_value(s.a1(), *x, FaceIndex::First), "{gens:?} x={x}");
                assert_eq!(c2 as i64, index_value(s.a2(), *x, FaceIndex::Second), "{gens:?} x={x}");
            }
        }
    }

    #[test]
    fn complement_is_exact_on_window() {
        // Rebuild S ∖ (S + x) from the decomposition and compare pointwise.
        let s = sg(&[(3, 0), (5, 0), (0, 2), (0, 3), (1, 1)]);
        let x = v(1, 1);
        let (_, _, d) = counts(&s, x);
        let lim = Limits::default();
        let t = EnumerationTable::build(&s, 40, &lim).unwrap();
        for p in t.window_points() {
            let truth = t.lookup(p) == Lookup::Member && t.lookup(p - x) != Lookup::Member;
            let covered = d.finite_part.contains(&p)
                || d.translates.iter().any(|tr| s.face(tr.face).contains(p - tr.representative));
            assert_eq!(truth, covered, "p = {p}");
        }
    }

    #[test]
    fn not_member() {
        let s = sg(&[(2, 0), (3, 0), (0, 1)]);
        assert!(matches!(complement_decomposition(&s, v(1, 0), &Limits::default()), Err(OracleError::NotMember(_))));
    }
}
