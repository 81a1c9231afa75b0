//! Numerical semigroups: the coefficient semigroups of the one-dimensional
//! faces, reduced by their gcd so that the complement in N is finite.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

/// Largest gap list that [`gap_analysis`] will materialize.
pub const MAX_GAPS: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NumsgpError {
    #[error("empty generator set")]
    EmptyInput,
    #[error("generators must be positive")]
    NonPositive,
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(u64),
    #[error("semigroup has {0} gaps, more than the listing limit")]
    TooManyGaps(u64),
    #[error("arithmetic overflow")]
    Overflow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalSemigroupData {
    pub raw_generators: Vec<u64>,
    pub d: u64,
    /// Sorted, deduplicated, gcd 1.
    pub reduced_generators: Vec<u64>,
    /// `apery_set[r]` is the least member congruent to `r` modulo the
    /// smallest reduced generator.
    pub apery_set: Vec<u64>,
    pub gaps: Vec<u64>,
    /// Largest gap, or −1 when there are none.
    pub frobenius: i64,
    pub conductor: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Splits off the gcd: returns `(d, {k/d})`, sorted and deduplicated.
pub fn normalize(ks: &[u64]) -> Result<(u64, Vec<u64>), NumsgpError> {
    if ks.is_empty() {
        return Err(NumsgpError::EmptyInput);
    }
    if ks.contains(&0) {
        return Err(NumsgpError::NonPositive);
    }
    let d = ks.iter().fold(0, |g, k| gcd(g, *k));
    let mut reduced: Vec<u64> = ks.iter().map(|k| k / d).collect();
    reduced.sort_unstable();
    reduced.dedup();
    Ok((d, reduced))
}

/// Apéry set, gaps, Frobenius number and conductor of `⟨reduced⟩`.
///
/// Shortest paths over residues modulo the smallest generator; each
/// generator is an edge `r → r + g (mod q)` of weight `g`.
pub fn gap_analysis(reduced: &[u64]) -> Result<NumericalSemigroupData, NumsgpError> {
    let (d, gens) = normalize(reduced)?;
    if d != 1 {
        return Err(NumsgpError::GcdNotOne(d));
    }
    let q = gens[0];
    let modulus = usize::try_from(q).map_err(|_| NumsgpError::Overflow)?;
    let mut dist: Vec<Option<u64>> = vec![None; modulus];
    let mut heap = BinaryHeap::new();
    dist[0] = Some(0);
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((w, r))) = heap.pop() {
        if dist[r] != Some(w) {
            continue;
        }
        for &g in &gens[1..] {
            let nw = w.checked_add(g).ok_or(NumsgpError::Overflow)?;
            let nr = ((r as u64 + g) % q) as usize;
            if dist[nr].is_none_or(|old| nw < old) {
                dist[nr] = Some(nw);
                heap.push(Reverse((nw, nr)));
            }
        }
    }
    // gcd 1 makes every residue reachable.
    let apery_set: Vec<u64> = dist.into_iter().map(|w| w.expect("gcd 1")).collect();
    let max_w = *apery_set.iter().max().expect("q ≥ 1");
    let frobenius = max_w as i64 - q as i64;
    let conductor = (frobenius + 1) as u64;

    let genus: u64 = apery_set.iter().map(|w| w / q).sum();
    if genus > MAX_GAPS {
        return Err(NumsgpError::TooManyGaps(genus));
    }
    let gaps: Vec<u64> = (1..conductor).filter(|k| *k < apery_set[(k % q) as usize]).collect();

    Ok(NumericalSemigroupData {
        raw_generators: gens.clone(),
        d: 1,
        reduced_generators: gens,
        apery_set,
        gaps,
        frobenius,
        conductor,
    })
}

impl NumericalSemigroupData {
    /// Normalizes arbitrary positive generators, then runs [`gap_analysis`].
    pub fn from_generators(ks: &[u64]) -> Result<Self, NumsgpError> {
        let (d, reduced) = normalize(ks)?;
        let mut data = gap_analysis(&reduced)?;
        let mut raw = ks.to_vec();
        raw.sort_unstable();
        raw.dedup();
        data.raw_generators = raw;
        data.d = d;
        Ok(data)
    }

    pub fn smallest_generator(&self) -> u64 {
        self.reduced_generators[0]
    }

    /// Membership in the reduced semigroup.
    pub fn contains(&self, k: u64) -> bool {
        if k >= self.conductor {
            return true;
        }
        let q = self.smallest_generator();
        k >= self.apery_set[(k % q) as usize]
    }

    /// Number of gaps.
    pub fn genus(&self) -> usize {
        self.gaps.len()
    }
}

pub fn ns_member(data: &NumericalSemigroupData, k: u64) -> bool {
    data.contains(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Unbounded subset-sum table on `[0, limit]`.
    fn naive(gens: &[u64], limit: u64) -> Vec<bool> {
        let mut reach = vec![false; limit as usize + 1];
        reach[0] = true;
        for k in 1..=limit as usize {
            reach[k] = gens.iter().any(|&g| g as usize <= k && reach[k - g as usize]);
        }
        reach
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&[1]).unwrap(), (1, vec![1]));
        assert_eq!(normalize(&[4, 6]).unwrap(), (2, vec![2, 3]));
        assert_eq!(normalize(&[2, 3]).unwrap(), (1, vec![2, 3]));
        assert_eq!(normalize(&[]), Err(NumsgpError::EmptyInput));
        assert_eq!(normalize(&[0, 2]), Err(NumsgpError::NonPositive));
    }

    #[test]
    fn gap_examples() {
        let s = gap_analysis(&[3, 5]).unwrap();
        assert_eq!(s.gaps, vec![1, 2, 4, 7]);
        assert_eq!((s.frobenius, s.conductor), (7, 8));
        assert_eq!(s.apery_set, vec![0, 10, 5]);

        let s = gap_analysis(&[1]).unwrap();
        assert!(s.gaps.is_empty());
        assert_eq!((s.frobenius, s.conductor), (-1, 0));

        let s = gap_analysis(&[2, 3]).unwrap();
        assert_eq!(s.gaps, vec![1]);
        assert_eq!((s.frobenius, s.conductor), (1, 2));

        assert_eq!(gap_analysis(&[4, 6]), Err(NumsgpError::GcdNotOne(2)));
    }

    #[test]
    fn member_examples() {
        let s = gap_analysis(&[3, 5]).unwrap();
        assert!(s.contains(8));
        assert!(!s.contains(7));
        assert!(s.contains(0));
        assert!(gap_analysis(&[1]).unwrap().contains(0));
    }

    #[test]
    fn raw_generators_keep_gcd() {
        let s = NumericalSemigroupData::from_generators(&[6, 4, 4]).unwrap();
        assert_eq!(s.d, 2);
        assert_eq!(s.raw_generators, vec![4, 6]);
        assert_eq!(s.reduced_generators, vec![2, 3]);
        assert_eq!(s.gaps, vec![1]);
    }

    #[test]
    fn gap_listing_is_capped() {
        assert!(matches!(gap_analysis(&[4001, 4003]), Err(NumsgpError::TooManyGaps(_))));
    }

    proptest! {
        #[test]
        fn agrees_with_subset_sums(gens in prop::collection::vec(1u64..30, 1..5)) {
            let Ok((_, reduced)) = normalize(&gens) else { unreachable!() };
            let s = gap_analysis(&reduced).unwrap();
            let limit = s.conductor + reduced.iter().max().unwrap();
            let table = naive(&reduced, limit);
            for k in 0..=limit {
                prop_assert_eq!(s.contains(k), table[k as usize], "k = {}", k);
            }
            let naive_gaps: Vec<u64> = (0..=limit).filter(|k| !table[*k as usize]).collect();
            prop_assert_eq!(&s.gaps, &naive_gaps);
            prop_assert_eq!(s.frobenius, naive_gaps.last().map_or(-1, |g| *g as i64));
            if !s.gaps.is_empty() {
                prop_assert!(s.contains(s.conductor));
                prop_assert!(!s.contains(s.frobenius as u64));
            }
            let q = s.smallest_generator();
            prop_assert_eq!(s.apery_set.len() as u64, q);
            for &w in &s.apery_set {
                prop_assert!(table[w as usize]);
                if w >= q {
                    prop_assert!(!table[(w - q) as usize]);
                }
            }
        }
    }
}
