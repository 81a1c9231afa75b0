use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::LatticeScalar;
use super::{smith_normal_form, HermiteForm, IntMatrix2, LatticeError, LatticeVector};

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k` in
/// invariant-factor form: every `tᵢ ≥ 2` and `tᵢ | tᵢ₊₁`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: u32,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: u32) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    /// Canonical form of `Z^free_rank ⊕ ⊕ Z/nᵢ` for arbitrary positive `nᵢ`.
    pub fn from_cyclic_factors(free_rank: u32, factors: &[u64]) -> Self {
        // prime → exponents, one per cyclic factor it divides
        let mut primary: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &n in factors {
            for (p, e) in factorize(n) {
                primary.entry(p).or_default().push(p.pow(e));
            }
        }
        let width = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; width];
        for mut powers in primary.into_values() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, q) in torsion.iter_mut().rev().zip(powers) {
                *slot *= q;
            }
        }
        torsion.retain(|t| *t > 1);
        Self { free_rank, torsion }
    }

    /// Builds the group from a Smith diagonal: zeros become free summands,
    /// units are dropped.
    pub fn from_smith_diagonal<T: LatticeScalar>(diagonal: &[T]) -> Result<Self, LatticeError> {
        let mut free_rank = 0;
        let mut factors = Vec::new();
        for d in diagonal {
            if d.is_zero() {
                free_rank += 1;
            } else {
                factors.push(d.abs().to_u64().ok_or(LatticeError::Overflow)?);
            }
        }
        Ok(Self::from_cyclic_factors(free_rank, &factors))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let factors: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        Self::from_cyclic_factors(self.free_rank + other.free_rank, &factors)
    }

    pub fn torsion_part(&self) -> Self {
        Self { free_rank: 0, torsion: self.torsion.clone() }
    }

    /// Order of a finite group; `None` when there is a free summand.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Canonical form of the cokernel `Z²/A·Z²`.
pub fn cokernel_invariants<T: LatticeScalar>(a: &IntMatrix2<T>) -> Result<AbelianGroup, LatticeError> {
    AbelianGroup::from_smith_diagonal(&smith_normal_form(a)?.diagonal)
}

/// Canonical form of `Z²/L` where `L` is spanned by the given vectors.
pub fn lattice_quotient<T: LatticeScalar>(generators: &[LatticeVector<T>]) -> Result<AbelianGroup, LatticeError> {
    AbelianGroup::from_smith_diagonal(&HermiteForm::new(generators)?.invariant_factors()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type M = IntMatrix2<i64>;

    #[test]
    fn cokernel_examples() {
        assert!(cokernel_invariants(&M::identity()).unwrap().is_trivial());
        let g = cokernel_invariants(&M::from_rows([[1, -2], [1, 2]])).unwrap();
        assert_eq!(g, AbelianGroup { free_rank: 0, torsion: vec![4] });
        assert_eq!(g.order(), Some(4));
        assert_eq!(cokernel_invariants(&M::zero()).unwrap(), AbelianGroup::free(2));
        assert_eq!(cokernel_invariants(&M::scalar(2)).unwrap().torsion, vec![2, 2]);
    }

    #[test]
    fn canonicalization() {
        assert_eq!(AbelianGroup::from_cyclic_factors(0, &[2, 3]).torsion, vec![6]);
        assert_eq!(AbelianGroup::from_cyclic_factors(0, &[4, 6]).torsion, vec![2, 12]);
        assert_eq!(AbelianGroup::from_cyclic_factors(1, &[1, 1]), AbelianGroup::free(1));
        let k0 = AbelianGroup::free(1).direct_sum(&AbelianGroup::from_cyclic_factors(0, &[4]));
        assert_eq!(k0.to_string(), "Z ⊕ Z/4");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
    }

    proptest! {
        #[test]
        fn adjugate_has_same_cokernel(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30) {
            let m = M::new(a, b, c, d);
            prop_assume!(a * d - b * c != 0);
            let g = cokernel_invariants(&m).unwrap();
            prop_assert_eq!(g.order(), Some((a * d - b * c).unsigned_abs()));
            prop_assert_eq!(&g, &cokernel_invariants(&m.adjugate().unwrap()).unwrap());
            prop_assert_eq!(&g, &cokernel_invariants(&m.transpose()).unwrap());
        }

        #[test]
        fn canonical_form_is_divisibility_chain(fs in prop::collection::vec(1u64..200, 0..5)) {
            let g = AbelianGroup::from_cyclic_factors(0, &fs);
            prop_assert_eq!(g.order().unwrap(), fs.iter().product::<u64>());
            for w in g.torsion.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert!(g.torsion.iter().all(|t| *t >= 2));
        }
    }
}
