//! Brute-force quotient `S/F` for a two-dimensional subsemigroup `F`.
//!
//! Classes are built from enumerated points: two points of `S` are merged
//! only when an explicit pair `f₁, f₂ ∈ F` with `s₁ + f₁ = s₂ + f₂` is found.
//! The class count is then compared with the residues of the lattice
//! `L = F − F`, whose index is the formula side of the check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::table::{ConeFrame, EnumerationTable, Lookup};
use super::{Limits, OracleError, WitnessStatus};
use crate::lattice::{div_floor, lattice_quotient, HermiteForm};
use crate::semigroup::ToricSemigroup;
use crate::{AbelianGroup, Matrix2, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityWitness {
    pub s1: Vector,
    pub s2: Vector,
    pub f1: Vector,
    pub f2: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientWitnessReport {
    pub sub_generators: Vec<Vector>,
    /// Hermite basis of `L = F − F`, as matrix columns.
    pub lattice: Matrix2,
    /// `|det|` of the lattice basis.
    pub order: u64,
    /// `Z²/L` from the Smith form of the lattice.
    pub lattice_group: AbelianGroup,
    pub bound: u64,
    /// Number of `F`-classes observed among enumerated points of `S`.
    pub observed_classes: u64,
    /// Group structure of the observed classes, from brute-force element
    /// orders; present once every residue class is hit.
    pub observed_group: Option<AbelianGroup>,
    /// Least enumerated member of each class.
    pub representatives: Vec<Vector>,
    pub witnesses: Vec<InjectivityWitness>,
    pub unresolved_pairs: usize,
    pub status: WitnessStatus,
}

/// Search parameters for [`quotient_by_subsemigroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientSearch {
    pub bound: u64,
    /// Candidates `f₁` tried per pair.
    pub budget: usize,
    /// Extra points paired with each class representative.
    pub pairs_per_class: usize,
}

impl QuotientSearch {
    pub fn new(bound: u64, budget: usize) -> Self {
        Self { bound, budget, pairs_per_class: 2 }
    }
}

/// Residues modulo a full-rank lattice in lower-triangular Hermite form.
struct Residues {
    h11: i64,
    h21: i64,
    h22: i64,
}

impl Residues {
    fn new(basis: &Matrix2) -> Self {
        // columns (h11, h21) and (0, h22)
        Self { h11: basis.a, h21: basis.c, h22: basis.d }
    }

    fn key(&self, p: Vector) -> (i64, i64) {
        let k = div_floor(p.x, self.h11).expect("nonzero");
        let y = p.y - k * self.h21;
        (p.x - k * self.h11, y.rem_euclid(self.h22))
    }

    fn order_of(&self, p: Vector) -> u64 {
        let mut q = p;
        let mut n = 1;
        while self.key(q) != (0, 0) {
            q = q + p;
            n += 1;
        }
        n
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb.max(ra)] = ra.min(rb);
        }
    }
}

fn search_witness(sub_table: &EnumerationTable, s1: Vector, s2: Vector, budget: usize) -> Option<InjectivityWitness> {
    let delta = s1 - s2;
    for f1 in sub_table.members().iter().take(budget) {
        let f2 = *f1 + delta;
        if sub_table.lookup(f2) == Lookup::Member {
            return Some(InjectivityWitness { s1, s2, f1: *f1, f2 });
        }
    }
    None
}

/// Compares `S/F` (classes found by witness search on `{f ≤ bound}`) with
/// `Z²/(F − F)`.
pub fn quotient_by_subsemigroup(
    sg: &ToricSemigroup,
    sub_generators: &[Vector],
    search: QuotientSearch,
    limits: &Limits,
) -> Result<QuotientWitnessReport, OracleError> {
    let frame = ConeFrame::of(sg);
    let hermite = HermiteForm::new(sub_generators)?;
    let basis = hermite.basis_matrix().ok_or(OracleError::RankDeficient)?;
    let order = basis.det()?.unsigned_abs();

    let sub_bound = sub_generators.iter().map(|g| frame.functional(*g)).max().unwrap_or(0) as u64;
    let table = EnumerationTable::build(sg, search.bound.max(sub_bound), limits)?;
    for g in sub_generators {
        if !table.contains(*g)? {
            return Err(OracleError::NotSubset(*g));
        }
    }
    let sub_table = EnumerationTable::for_generators(frame, sub_generators, search.bound, limits)?;

    let residues = Residues::new(&basis);
    // residue → indices into `points`; the first entry is the class representative
    let mut classes: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    let mut points: Vec<Vector> = Vec::new();
    for s in table.members() {
        if frame.functional(*s) as u64 > search.bound {
            break;
        }
        let slot = classes.entry(residues.key(*s)).or_default();
        if slot.len() <= search.pairs_per_class {
            slot.push(points.len());
            points.push(*s);
        }
    }

    let mut uf = UnionFind::new(points.len());
    let mut witnesses = Vec::new();
    let mut unresolved = 0;
    for members in classes.values() {
        let rep = members[0];
        for &other in &members[1..] {
            match search_witness(&sub_table, points[other], points[rep], search.budget) {
                Some(w) => {
                    if w.s1 + w.f1 != w.s2 + w.f2 {
                        return Err(OracleError::CertificateFailed(format!("bad witness {w:?}")));
                    }
                    uf.union(rep, other);
                    witnesses.push(w);
                }
                None => unresolved += 1,
            }
        }
    }

    let mut roots: Vec<usize> = (0..points.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    let observed_classes = roots.len() as u64;
    let hit = classes.len() as u64;

    let status = if hit > order {
        WitnessStatus::Counterexample
    } else if hit < order || unresolved > 0 {
        WitnessStatus::BudgetExhausted
    } else {
        WitnessStatus::Verified
    };

    let representatives: Vec<Vector> = classes.values().map(|m| points[m[0]]).collect();
    let observed_group = (hit == order).then(|| {
        let exponent = representatives.iter().map(|r| residues.order_of(*r)).max().unwrap_or(1);
        AbelianGroup::from_cyclic_factors(0, &[order / exponent, exponent])
    });

    Ok(QuotientWitnessReport {
        sub_generators: sub_generators.to_vec(),
        lattice: basis,
        order,
        lattice_group: lattice_quotient(sub_generators)?,
        bound: search.bound,
        observed_classes,
        observed_group,
        representatives,
        witnesses,
        unresolved_pairs: unresolved,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> Vector {
        Vector::new(x, y)
    }

    fn sg(gens: &[(i64, i64)]) -> ToricSemigroup {
        ToricSemigroup::new(gens.iter().map(|(x, y)| v(*x, *y)).collect::<Vec<_>>()).unwrap()
    }

    fn run(s: &ToricSemigroup, sub: &[Vector]) -> QuotientWitnessReport {
        quotient_by_subsemigroup(s, sub, QuotientSearch::new(60, 10_000), &Limits::default()).unwrap()
    }

    #[test]
    fn n2_trivial() {
        let r = run(&sg(&[(1, 0), (0, 1)]), &[v(1, 0), v(0, 1)]);
        assert_eq!(r.order, 1);
        assert_eq!(r.status, WitnessStatus::Verified);
        assert_eq!(r.observed_group, Some(AbelianGroup::trivial()));
    }

    #[test]
    fn z4_cone() {
        let r = run(&sg(&[(2, -1), (1, 0), (2, 1)]), &[v(2, -1), v(2, 1)]);
        assert_eq!(r.order, 4);
        assert_eq!(r.observed_classes, 4);
        assert_eq!(r.status, WitnessStatus::Verified);
        let z4 = AbelianGroup::from_cyclic_factors(0, &[4]);
        assert_eq!(r.observed_group, Some(z4.clone()));
        assert_eq!(r.lattice_group, z4);
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn z3_quotient() {
        let r = run(&sg(&[(1, 0), (1, 1), (1, 3)]), &[v(1, 0), v(1, 3)]);
        assert_eq!(r.order, 3);
        assert_eq!(r.status, WitnessStatus::Verified);
        assert_eq!(r.observed_group, Some(AbelianGroup::from_cyclic_factors(0, &[3])));
    }

    #[test]
    fn klein_four() {
        // a₁ = (2,0), a₂ = (0,2) after adding enough generators to span Z².
        let s = sg(&[(2, 0), (0, 2), (1, 1), (3, 0), (0, 3)]);
        let r = run(&s, &[v(2, 0), v(0, 2)]);
        assert_eq!(r.order, 4);
        assert_eq!(r.status, WitnessStatus::Verified);
        assert_eq!(r.observed_group, Some(AbelianGroup::from_cyclic_factors(0, &[2, 2])));
    }

    #[test]
    fn errors() {
        let s = sg(&[(2, 0), (3, 0), (0, 1)]);
        let lim = Limits::default();
        let q = QuotientSearch::new(30, 100);
        assert!(matches!(quotient_by_subsemigroup(&s, &[v(1, 0), v(0, 1)], q, &lim), Err(OracleError::NotSubset(_))));
        assert!(matches!(quotient_by_subsemigroup(&s, &[v(2, 0), v(4, 0)], q, &lim), Err(OracleError::RankDeficient)));
    }

    #[test]
    fn tiny_window_is_not_verified() {
        let s = sg(&[(2, -1), (1, 0), (2, 1)]);
        let r = quotient_by_subsemigroup(&s, &[v(2, -1), v(2, 1)], QuotientSearch::new(2, 100), &Limits::default())
            .unwrap();
        assert_eq!(r.status, WitnessStatus::BudgetExhausted);
        assert_eq!(r.observed_group, None);
    }
}
