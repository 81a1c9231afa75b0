//! K-theory of the left regular C*-algebra of `S`, computed from the two
//! asymptotic generators: `K₀ = Z ⊕ Z²/M·Z²` and `K₁ = 0`, where `M` is the
//! adjugate of the matrix with columns `a₁, a₂`.

use serde::{Deserialize, Serialize};

use crate::lattice::{cokernel_invariants, smith_normal_form, LatticeError};
use crate::oracle::{member, Limits, OracleError};
use crate::semigroup::{FaceIndex, ToricSemigroup};
use crate::{AbelianGroup, Matrix2, Vector};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KTheoryError {
    #[error("asymptotic generators are not counterclockwise (det = {0})")]
    NotOrdered(i64),
    #[error("{0} is not in S")]
    NotMember(Vector),
    #[error("{element} lies on face {face}; the index map is only defined off the face")]
    OnFace { element: Vector, face: FaceIndex },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// `M = [[y₂, −x₂], [−y₁, x₁]]` and `M⊥ = [[x₁, x₂], [y₁, y₂]]` for
/// `aⱼ = (xⱼ, yⱼ)`.
pub fn structure_matrices(a1: Vector, a2: Vector) -> Result<(Matrix2, Matrix2), KTheoryError> {
    let det = a1.det(a2)?;
    if det <= 0 {
        return Err(KTheoryError::NotOrdered(det));
    }
    let mperp = Matrix2::from_columns(a1, a2);
    let m = Matrix2::new(a2.y, -a2.x, -a1.y, a1.x);
    debug_assert_eq!(m, mperp.adjugate()?);
    Ok((m, mperp))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTheoryReport {
    pub a1: Vector,
    pub a2: Vector,
    pub m: Matrix2,
    pub mperp: Matrix2,
    pub det_m: i64,
    /// Smith diagonal of `M`, ascending.
    pub smith_factors: [i64; 2],
    /// `S/F ≅ Z²/M·Z²`.
    pub sf_quotient: AbelianGroup,
    pub k0: AbelianGroup,
    pub k1: AbelianGroup,
    /// The index map on each face ideal as a linear form on Z².
    pub index_forms: [IndexForm; 2],
}

/// `s ↦ c₀·s.x + c₁·s.y`, equal to `(−1)^{j+1}·det(a_j, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexForm {
    pub face: FaceIndex,
    pub coefficients: [i64; 2],
}

impl IndexForm {
    pub fn new(a_j: Vector, j: FaceIndex) -> Self {
        Self { face: j, coefficients: [-j.sign() * a_j.y, j.sign() * a_j.x] }
    }

    pub fn eval(&self, s: Vector) -> i64 {
        self.coefficients[0] * s.x + self.coefficients[1] * s.y
    }
}

impl KTheoryReport {
    /// Rank of the kernel of `M` on Z²; zero whenever `det M ≠ 0`.
    pub fn kernel_rank_of_m(&self) -> usize {
        2 - [self.smith_factors[0], self.smith_factors[1]].iter().filter(|d| **d != 0).count()
    }
}

pub fn k_theory(sg: &ToricSemigroup) -> Result<KTheoryReport, KTheoryError> {
    let (a1, a2) = (sg.a1(), sg.a2());
    let (m, mperp) = structure_matrices(a1, a2)?;
    let smith = smith_normal_form(&m)?;
    let sf_quotient = cokernel_invariants(&m)?;
    // α: K₁ → Z² is followed by the injective M·, so K₁ vanishes exactly
    // when ker M = 0.
    let k1 = AbelianGroup::free(2 - smith.rank() as u32);
    Ok(KTheoryReport {
        a1,
        a2,
        m,
        mperp,
        det_m: m.det()?,
        smith_factors: smith.diagonal,
        k0: AbelianGroup::free(1).direct_sum(&sf_quotient),
        sf_quotient,
        k1,
        index_forms: [IndexForm::new(a1, FaceIndex::First), IndexForm::new(a2, FaceIndex::Second)],
    })
}

/// `(−1)^{j+1}·det(a_j, s)`.
pub fn index_value(a_j: Vector, s: Vector, j: FaceIndex) -> i64 {
    j.sign() * a_j.det(s).expect("bounded")
}

/// Index of `π(λ(s))` in `K₀` of the `j`-th face ideal. Requires
/// `s ∈ S ∖ F_j`; membership is decided exactly.
pub fn index_map(sg: &ToricSemigroup, s: Vector, j: FaceIndex, limits: &Limits) -> Result<i64, KTheoryError> {
    if !member(sg, s, limits)? {
        return Err(KTheoryError::NotMember(s));
    }
    let a = sg.asymptotic_generator(j);
    let value = index_value(a, s, j);
    if value == 0 {
        return Err(KTheoryError::OnFace { element: s, face: j });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: i64, y: i64) -> Vector {
        Vector::new(x, y)
    }

    fn sg(gens: &[(i64, i64)]) -> ToricSemigroup {
        ToricSemigroup::new(gens.iter().map(|(x, y)| v(*x, *y)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn structure_matrix_examples() {
        let (m, mp) = structure_matrices(v(1, 0), v(0, 1)).unwrap();
        assert_eq!((m, mp), (Matrix2::identity(), Matrix2::identity()));

        let (m, mp) = structure_matrices(v(2, -1), v(2, 1)).unwrap();
        assert_eq!(m, Matrix2::from_rows([[1, -2], [1, 2]]));
        assert_eq!(mp, Matrix2::from_rows([[2, 2], [-1, 1]]));
        assert_eq!(m.det().unwrap(), 4);
        assert_eq!(m.mul(&mp).unwrap(), Matrix2::scalar(4));

        let (m, _) = structure_matrices(v(1, 0), v(1, 3)).unwrap();
        assert_eq!(m, Matrix2::from_rows([[3, -1], [0, 1]]));
        assert_eq!(m.det().unwrap(), 3);

        assert_eq!(structure_matrices(v(0, 1), v(1, 0)), Err(KTheoryError::NotOrdered(-1)));
    }

    #[test]
    fn k_theory_examples() {
        let r = k_theory(&sg(&[(1, 0), (0, 1)])).unwrap();
        assert_eq!(r.k0, AbelianGroup::free(1));
        assert!(r.k1.is_trivial());
        assert_eq!(r.det_m, 1);

        let r = k_theory(&sg(&[(2, -1), (1, 0), (2, 1)])).unwrap();
        assert_eq!(r.k0.to_string(), "Z ⊕ Z/4");
        assert!(r.k1.is_trivial());
        assert_eq!(r.smith_factors, [1, 4]);
        assert_eq!(r.sf_quotient.order(), Some(4));

        let r = k_theory(&sg(&[(2, 0), (3, 0), (0, 1)])).unwrap();
        assert_eq!((r.a1, r.a2), (v(1, 0), v(0, 1)));
        assert_eq!(r.k0, AbelianGroup::free(1));
        assert_eq!(r.det_m, 1);
    }

    #[test]
    fn index_examples() {
        let lim = Limits::default();
        let n2 = sg(&[(1, 0), (0, 1)]);
        assert_eq!(index_map(&n2, v(1, 1), FaceIndex::First, &lim).unwrap(), 1);

        let s = sg(&[(2, -1), (1, 0), (2, 1)]);
        assert_eq!(index_map(&s, v(1, 0), FaceIndex::First, &lim).unwrap(), 1);
        assert_eq!(index_map(&s, v(1, 0), FaceIndex::Second, &lim).unwrap(), 1);
        assert_eq!(index_map(&s, v(2, 0), FaceIndex::First, &lim).unwrap(), 2);

        assert!(matches!(index_map(&s, v(2, -1), FaceIndex::First, &lim), Err(KTheoryError::OnFace { .. })));
        assert_eq!(index_map(&s, v(2, -1), FaceIndex::Second, &lim).unwrap(), 4);
        assert!(matches!(
            index_map(&sg(&[(2, 0), (3, 0), (0, 1)]), v(1, 1), FaceIndex::First, &lim),
            Err(KTheoryError::NotMember(_))
        ));
    }

    proptest! {
        #[test]
        fn report_invariants(gens in prop::collection::vec((-7i64..=7, -7i64..=7), 2..6)) {
            let Ok(s) = ToricSemigroup::new(gens.into_iter().map(|(x, y)| v(x, y)).collect::<Vec<_>>()) else {
                return Ok(());
            };
            let r = k_theory(&s).unwrap();
            prop_assert_eq!(r.m.mul(&r.mperp).unwrap(), Matrix2::scalar(r.det_m));
            prop_assert_eq!(r.det_m, s.det_a());
            prop_assert!(r.det_m > 0);
            prop_assert_eq!(r.sf_quotient.order(), Some(r.det_m as u64));
            prop_assert_eq!(&r.sf_quotient, &cokernel_invariants(&r.mperp).unwrap());
            prop_assert_eq!(r.kernel_rank_of_m(), 0);
            prop_assert!(r.k1.is_trivial());
            prop_assert_eq!(r.k0.free_rank, 1);
            // index value vanishes exactly on the face lines
            for p in [s.a1(), s.a2(), s.a1() + s.a2(), s.a1() * 3] {
                for j in FaceIndex::BOTH {
                    let on_line = s.asymptotic_generator(j).det(p).unwrap() == 0;
                    let value = index_value(s.asymptotic_generator(j), p, j);
                    prop_assert_eq!(value == 0, on_line);
                    prop_assert_eq!(r.index_forms[j.slot()].eval(p), value);
                }
            }
        }
    }
}
