//! Finitely generated, pointed, group-generating subsemigroups of Z².
//!
//! Validation rejects zero generators, non-pointed sets and sets whose
//! group span is a proper sublattice. The cone is read off an exact
//! angular sort of the generator directions, and each boundary ray carries
//! a one-dimensional face whose coefficients form a numerical semigroup
//! after dividing by their gcd.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lattice::{HermiteForm, LatticeError};
use crate::numsgp::{NumericalSemigroupData, NumsgpError};
use crate::{Matrix2, Vector};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemigroupError {
    #[error("no generators supplied")]
    Empty,
    #[error("zero generator")]
    ZeroGenerator,
    #[error("generators do not lie in an open half-plane (S ∩ −S ≠ {{0}})")]
    NotPointed,
    #[error("generators span a sublattice with invariant factors ({}, {}), not Z²", .0[0], .0[1])]
    NotGenerating([i64; 2]),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Numsgp(#[from] NumsgpError),
}

/// Which of the two one-dimensional faces, in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum FaceIndex {
    First,
    Second,
}

impl FaceIndex {
    pub const BOTH: [FaceIndex; 2] = [FaceIndex::First, FaceIndex::Second];

    pub fn number(self) -> u8 {
        match self {
            FaceIndex::First => 1,
            FaceIndex::Second => 2,
        }
    }

    pub fn slot(self) -> usize {
        self.number() as usize - 1
    }

    /// `(−1)^{j+1}`.
    pub fn sign(self) -> i64 {
        match self {
            FaceIndex::First => 1,
            FaceIndex::Second => -1,
        }
    }

    pub fn other(self) -> Self {
        match self {
            FaceIndex::First => FaceIndex::Second,
            FaceIndex::Second => FaceIndex::First,
        }
    }
}

impl From<FaceIndex> for u8 {
    fn from(j: FaceIndex) -> u8 {
        j.number()
    }
}

impl TryFrom<u8> for FaceIndex {
    type Error = String;
    fn try_from(n: u8) -> Result<Self, String> {
        match n {
            1 => Ok(FaceIndex::First),
            2 => Ok(FaceIndex::Second),
            _ => Err(format!("face index must be 1 or 2, got {n}")),
        }
    }
}

impl fmt::Display for FaceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Generators, sorted and without exact duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorSet(Vec<Vector>);

impl GeneratorSet {
    pub fn new(mut gens: Vec<Vector>) -> Self {
        gens.sort_unstable();
        gens.dedup();
        Self(gens)
    }

    pub fn as_slice(&self) -> &[Vector] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Vector>> for GeneratorSet {
    fn from(gens: Vec<Vector>) -> Self {
        Self::new(gens)
    }
}

/// A primitive nonzero lattice direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ray(Vector);

impl Ray {
    pub fn through(v: Vector) -> Result<Self, LatticeError> {
        assert!(!v.is_zero(), "ray through the origin");
        Ok(Self(v.primitive()?))
    }

    pub fn vector(self) -> Vector {
        self.0
    }
}

/// Generators that passed validation, with the two boundary rays of their
/// cone ordered so that `det(r₁, r₂) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidGenerators {
    generators: GeneratorSet,
    rays: (Ray, Ray),
}

impl ValidGenerators {
    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }
}

fn half(v: Vector) -> u8 {
    if v.y > 0 || (v.y == 0 && v.x > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise order starting from the positive x-axis.
fn angular_cmp(a: Vector, b: Vector) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        // Same half-plane: a before b iff b is counterclockwise of a.
        0.cmp(&a.det(b).expect("bounded coordinates"))
    })
}

/// Boundary rays `(r₁, r₂)` if the directions fit in an open half-plane.
///
/// In angular order the directions leave exactly one gap wider than π when
/// the set is pointed; the cone runs counterclockwise from the end of that
/// gap to its start.
fn boundary_rays(gens: &[Vector]) -> Result<Option<(Ray, Ray)>, SemigroupError> {
    let mut dirs = gens.iter().map(|g| g.primitive()).collect::<Result<Vec<_>, _>>()?;
    dirs.sort_by(|a, b| angular_cmp(*a, *b));
    dirs.dedup();
    if dirs.len() == 1 {
        return Ok(Some((Ray(dirs[0]), Ray(dirs[0]))));
    }
    for i in 0..dirs.len() {
        let u = dirs[i];
        let v = dirs[(i + 1) % dirs.len()];
        if u.det(v)? < 0 {
            return Ok(Some((Ray(v), Ray(u))));
        }
    }
    Ok(None)
}

/// Checks the standing assumptions: no zero generator, pointed, and the
/// generators span Z² as a group.
pub fn validate(gens: &GeneratorSet) -> Result<ValidGenerators, SemigroupError> {
    let g = gens.as_slice();
    if g.is_empty() {
        return Err(SemigroupError::Empty);
    }
    if g.iter().any(|v| v.is_zero()) {
        return Err(SemigroupError::ZeroGenerator);
    }
    let rays = boundary_rays(g)?.ok_or(SemigroupError::NotPointed)?;
    let factors = HermiteForm::new(g)?.invariant_factors()?;
    if factors != [1, 1] {
        return Err(SemigroupError::NotGenerating(factors));
    }
    Ok(ValidGenerators { generators: gens.clone(), rays })
}

/// Boundary rays of the cone, counterclockwise.
pub fn extreme_rays(valid: &ValidGenerators) -> (Ray, Ray) {
    valid.rays
}

/// A one-dimensional face `F = S ∩ Z·a`, described in units of its ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub index: FaceIndex,
    pub ray: Ray,
    /// `{k : k·r is a generator}`.
    pub coefficient_generators: Vec<u64>,
    pub d: u64,
    /// `a = d·r`.
    pub asymptotic_generator: Vector,
    /// Multiples of `d` (in ray units) missing from the face.
    pub gaps: Vec<u64>,
    /// Least `c` with `c + N·d` inside the face, in ray units.
    pub conductor: u64,
    /// The reduced coefficient semigroup, in units of `a`.
    pub numerical: NumericalSemigroupData,
}

impl Face {
    /// Whether `k·a` lies in the face.
    pub fn contains_multiple(&self, k: i64) -> bool {
        k >= 0 && self.numerical.contains(k as u64)
    }

    /// Whether `p` lies in the face.
    pub fn contains(&self, p: Vector) -> bool {
        matches!(p.multiple_of(self.asymptotic_generator), Ok(Some(k)) if self.contains_multiple(k))
    }

    /// The generators lying on this face.
    pub fn generators(&self) -> Vec<Vector> {
        let r = self.ray.vector();
        self.coefficient_generators.iter().map(|k| r * (*k as i64)).collect()
    }

    /// Conductor in units of `a`: every `k·a` with `k ≥` this is in the face.
    pub fn reduced_conductor(&self) -> u64 {
        self.numerical.conductor
    }
}

/// Coefficients, gcd and gap structure of the face on the given ray.
pub fn analyze_face(valid: &ValidGenerators, index: FaceIndex) -> Result<Face, SemigroupError> {
    let ray = match index {
        FaceIndex::First => valid.rays.0,
        FaceIndex::Second => valid.rays.1,
    };
    let r = ray.vector();
    let mut coefficient_generators = Vec::new();
    for g in valid.generators.as_slice() {
        if let Some(k) = g.multiple_of(r)? {
            if k > 0 {
                coefficient_generators.push(k as u64);
            }
        }
    }
    let numerical = NumericalSemigroupData::from_generators(&coefficient_generators)?;
    let d = numerical.d;
    Ok(Face {
        index,
        ray,
        asymptotic_generator: r.checked_scale(d as i64)?,
        gaps: numerical.gaps.iter().map(|k| k * d).collect(),
        conductor: numerical.conductor * d,
        coefficient_generators: numerical.raw_generators.clone(),
        d,
        numerical,
    })
}

/// A validated semigroup together with its cone and faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricSemigroup {
    generators: GeneratorSet,
    faces: [Face; 2],
}

impl ToricSemigroup {
    pub fn new(generators: impl Into<GeneratorSet>) -> Result<Self, SemigroupError> {
        Self::from_valid(validate(&generators.into())?)
    }

    pub fn from_valid(valid: ValidGenerators) -> Result<Self, SemigroupError> {
        let mut first = analyze_face(&valid, FaceIndex::First)?;
        let mut second = analyze_face(&valid, FaceIndex::Second)?;
        if first.asymptotic_generator.det(second.asymptotic_generator)? < 0 {
            std::mem::swap(&mut first, &mut second);
            first.index = FaceIndex::First;
            second.index = FaceIndex::Second;
        }
        Ok(Self { generators: valid.generators, faces: [first, second] })
    }

    pub fn generators(&self) -> &[Vector] {
        self.generators.as_slice()
    }

    pub fn face(&self, j: FaceIndex) -> &Face {
        &self.faces[j.slot()]
    }

    pub fn faces(&self) -> &[Face; 2] {
        &self.faces
    }

    pub fn ray(&self, j: FaceIndex) -> Ray {
        self.face(j).ray
    }

    pub fn asymptotic_generator(&self, j: FaceIndex) -> Vector {
        self.face(j).asymptotic_generator
    }

    pub fn a1(&self) -> Vector {
        self.asymptotic_generator(FaceIndex::First)
    }

    pub fn a2(&self) -> Vector {
        self.asymptotic_generator(FaceIndex::Second)
    }

    /// `det(a₁, a₂) > 0`.
    pub fn det_a(&self) -> i64 {
        self.a1().det(self.a2()).expect("bounded coordinates")
    }

    /// Membership in the saturation `C ∩ Z²`.
    pub fn in_cone(&self, p: Vector) -> bool {
        saturation_membership(self, p)
    }

    /// The face whose line `Z·a_j` contains `p`, if any.
    pub fn face_line_of(&self, p: Vector) -> Option<FaceIndex> {
        FaceIndex::BOTH.into_iter().find(|j| self.ray(*j).vector().det(p) == Ok(0))
    }

    /// Generators on either boundary ray (the generators of `F₁ + F₂`).
    pub fn face_generators(&self) -> Vec<Vector> {
        let mut out: Vec<Vector> = self.faces.iter().flat_map(Face::generators).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// `(a₁, a₂)` with `det(a₁, a₂) > 0`.
pub fn asymptotic_generators(sg: &ToricSemigroup) -> (Vector, Vector) {
    (sg.a1(), sg.a2())
}

/// Whether `p` lies in the rational cone `C`, i.e. the saturation of `S`.
pub fn saturation_membership(sg: &ToricSemigroup, p: Vector) -> bool {
    let r1 = sg.ray(FaceIndex::First).vector();
    let r2 = sg.ray(FaceIndex::Second).vector();
    matches!((r1.det(p), p.det(r2)), (Ok(u), Ok(v)) if u >= 0 && v >= 0)
}

/// Re-expresses generators spanning a full-rank sublattice `L` in a basis
/// of `L`. Returns the basis (as matrix columns) and the new generators,
/// which span Z².
pub fn normalize_basis(gens: &[Vector]) -> Result<(Matrix2, Vec<Vector>), SemigroupError> {
    let h = HermiteForm::new(gens)?;
    let Some(basis) = h.basis_matrix() else {
        let factors = h.invariant_factors()?;
        return Err(SemigroupError::NotGenerating(factors));
    };
    let det = basis.det()?;
    let adj = basis.adjugate()?;
    let mapped = gens
        .iter()
        .map(|g| {
            let w = adj.mul_vec(*g)?;
            Ok(Vector::new(w.x / det, w.y / det))
        })
        .collect::<Result<Vec<_>, LatticeError>>()?;
    Ok((basis, mapped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: i64, y: i64) -> Vector {
        Vector::new(x, y)
    }

    fn sg(gens: &[(i64, i64)]) -> Result<ToricSemigroup, SemigroupError> {
        ToricSemigroup::new(gens.iter().map(|(x, y)| v(*x, *y)).collect::<Vec<_>>())
    }

    #[test]
    fn validation_errors() {
        assert!(sg(&[(1, 0), (0, 1)]).is_ok());
        assert_eq!(sg(&[(1, 0), (-1, 0), (0, 1)]), Err(SemigroupError::NotPointed));
        assert_eq!(sg(&[(2, 0), (0, 2)]), Err(SemigroupError::NotGenerating([2, 2])));
        assert_eq!(sg(&[(1, 0), (0, 0)]), Err(SemigroupError::ZeroGenerator));
        assert_eq!(sg(&[]), Err(SemigroupError::Empty));
        assert_eq!(sg(&[(1, 0), (-1, 0)]), Err(SemigroupError::NotPointed));
        assert_eq!(sg(&[(1, 0), (2, 0)]), Err(SemigroupError::NotGenerating([1, 0])));
        // Three directions with a gap of exactly π.
        assert_eq!(sg(&[(1, 0), (0, 1), (-1, 0)]), Err(SemigroupError::NotPointed));
        assert_eq!(sg(&[(1, 1), (-1, 1), (0, -1)]), Err(SemigroupError::NotPointed));
    }

    #[test]
    fn rays_examples() {
        let s = sg(&[(1, 0), (0, 1)]).unwrap();
        assert_eq!((s.a1(), s.a2()), (v(1, 0), v(0, 1)));
        assert_eq!(s.det_a(), 1);

        let s = sg(&[(2, -1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(s.ray(FaceIndex::First).vector(), v(2, -1));
        assert_eq!(s.ray(FaceIndex::Second).vector(), v(2, 1));
        assert_eq!(s.det_a(), 4);

        let s = sg(&[(1, 0), (1, 1), (1, 3)]).unwrap();
        assert_eq!((s.a1(), s.a2()), (v(1, 0), v(1, 3)));

        // Cone straddling the negative x-axis.
        let s = sg(&[(-1, 1), (-1, -1), (-1, 0)]).unwrap();
        assert_eq!((s.a1(), s.a2()), (v(-1, 1), v(-1, -1)));
        assert_eq!(s.det_a(), 2);
    }

    #[test]
    fn face_examples() {
        let s = sg(&[(2, 0), (3, 0), (0, 1)]).unwrap();
        let f = s.face(FaceIndex::First);
        assert_eq!(f.coefficient_generators, vec![2, 3]);
        assert_eq!((f.d, f.asymptotic_generator), (1, v(1, 0)));
        assert_eq!((f.gaps.clone(), f.conductor), (vec![1], 2));

        let s = sg(&[(2, -1), (1, 0), (2, 1)]).unwrap();
        let f = s.face(FaceIndex::Second);
        assert_eq!(f.coefficient_generators, vec![1]);
        assert_eq!((f.d, f.asymptotic_generator), (1, v(2, 1)));
        assert!(f.gaps.is_empty());

        let s = sg(&[(2, 0), (0, 1), (1, 1)]).unwrap();
        let f = s.face(FaceIndex::First);
        assert_eq!(f.coefficient_generators, vec![2]);
        assert_eq!((f.d, f.asymptotic_generator), (2, v(2, 0)));
        assert!(f.gaps.is_empty());
        assert_eq!(asymptotic_generators(&s), (v(2, 0), v(0, 1)));
        assert_eq!(s.det_a(), 2);
        assert!(f.contains(v(4, 0)));
        assert!(!f.contains(v(1, 0)));
        assert!(!f.contains(v(-2, 0)));
    }

    #[test]
    fn non_reduced_face_gaps_in_ray_units() {
        let s = sg(&[(4, 0), (6, 0), (0, 1), (1, 1)]).unwrap();
        let f = s.face(FaceIndex::First);
        assert_eq!(f.d, 2);
        assert_eq!(f.gaps, vec![2]);
        assert_eq!(f.conductor, 4);
        assert_eq!(f.reduced_conductor(), 2);
    }

    #[test]
    fn saturation_examples() {
        let s = sg(&[(2, -1), (1, 0), (2, 1)]).unwrap();
        assert!(saturation_membership(&s, v(0, 0)));
        assert!(!saturation_membership(&s, v(1, 1)));
        let s = sg(&[(2, 0), (0, 1), (1, 1)]).unwrap();
        assert!(saturation_membership(&s, v(1, 0)));
    }

    #[test]
    fn normalize_basis_maps_into_z2() {
        let (basis, gens) = normalize_basis(&[v(2, 0), v(0, 2)]).unwrap();
        assert_eq!(basis.det().unwrap().abs(), 4);
        assert!(ToricSemigroup::new(gens).is_ok());
    }

    fn arb_gens() -> impl Strategy<Value = Vec<Vector>> {
        prop::collection::vec((-6i64..=6, -6i64..=6), 2..6).prop_map(|g| g.into_iter().map(|(x, y)| v(x, y)).collect())
    }

    proptest! {
        #[test]
        fn cone_invariants(gens in arb_gens()) {
            let Ok(s) = ToricSemigroup::new(gens.clone()) else { return Ok(()) };
            prop_assert!(s.det_a() > 0);
            for g in s.generators() {
                prop_assert!(s.a1().det(*g).unwrap() >= 0);
                prop_assert!(g.det(s.a2()).unwrap() >= 0);
            }
            for j in FaceIndex::BOTH {
                prop_assert!(!s.face(j).coefficient_generators.is_empty());
            }
        }

        #[test]
        fn order_insensitive(gens in arb_gens(), seed in any::<u64>()) {
            let Ok(s) = ToricSemigroup::new(gens.clone()) else { return Ok(()) };
            let mut shuffled = gens.clone();
            shuffled.push(gens[0]);
            let n = shuffled.len();
            shuffled.rotate_left((seed as usize) % n);
            shuffled.reverse();
            prop_assert_eq!(ToricSemigroup::new(shuffled).unwrap(), s);
        }

        #[test]
        fn pointedness_matches_brute_force(gens in arb_gens()) {
            let gs = GeneratorSet::new(gens.clone());
            if gs.as_slice().iter().any(|g| g.is_zero()) { return Ok(()) }
            let pointed = boundary_rays(gs.as_slice()).unwrap().is_some();
            // Search for a strictly positive functional among small integer ones.
            let witness = (-13i64..=13).any(|a| (-13i64..=13).any(|b| {
                gs.as_slice().iter().all(|g| a * g.x + b * g.y > 0)
            }));
            prop_assert_eq!(pointed, witness);
        }
    }
}
