use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::table::{EnumerationTable, Lookup};
use super::{Limits, OracleError};
use crate::semigroup::ToricSemigroup;
use crate::Vector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub x: Vector,
    pub bound: u64,
    /// Enumerated points of `S` that were mapped.
    pub checked: usize,
    /// Distinct images in `S ∖ (S + x)`.
    pub representatives: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Checks that `s ↦ s − n·x` (with `n` maximal) maps `S` onto
/// `S ∖ (S + x)` and that distinct images stay distinct modulo `⟨x⟩`.
pub fn bijection_check(
    sg: &ToricSemigroup,
    x: Vector,
    bound: u64,
    limits: &Limits,
) -> Result<BijectionReport, OracleError> {
    if x.is_zero() {
        return Err(OracleError::NotMember(x));
    }
    let table = EnumerationTable::build(sg, bound, limits)?;
    let fx = table.functional(x);
    let x_in_s = if fx as u64 <= bound { table.contains(x)? } else { super::member(sg, x, limits)? };
    if !x_in_s {
        return Err(OracleError::NotMember(x));
    }

    let mut failures = Vec::new();
    let mut reps = BTreeMap::<Vector, usize>::new();
    for s in table.members() {
        let mut rep = *s;
        while table.lookup(rep - x) == Lookup::Member {
            rep = rep - x;
        }
        // members are closed downward along x inside the window, so rep ∉ S + x
        if table.lookup(rep) != Lookup::Member {
            failures.push(format!("image {rep} of {s} is not in S"));
        }
        *reps.entry(rep).or_default() += 1;
    }

    // Distinct representatives must not differ by a multiple of x.
    let mut by_line: BTreeMap<i64, Vec<Vector>> = BTreeMap::new();
    for r in reps.keys() {
        by_line.entry(x.det(*r).expect("bounded")).or_default().push(*r);
    }
    for line in by_line.values() {
        for (i, p) in line.iter().enumerate() {
            for q in &line[i + 1..] {
                if matches!((*p - *q).multiple_of(x), Ok(Some(_))) {
                    failures.push(format!("representatives {p} and {q} are congruent mod ⟨x⟩"));
                }
            }
        }
    }

    Ok(BijectionReport {
        x,
        bound,
        checked: table.members().len(),
        representatives: reps.len(),
        passed: failures.is_empty(),
        failures,
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

    #[test]
    fn n2_axis() {
        let r = bijection_check(&sg(&[(1, 0), (0, 1)]), v(1, 0), 4, &Limits::default()).unwrap();
        assert!(r.passed, "{:?}", r.failures);
        // images are (0,k), k = 0..4
        assert_eq!(r.representatives, 5);
    }

    #[test]
    fn numerical_face() {
        let r = bijection_check(&sg(&[(2, 0), (3, 0), (0, 1)]), v(2, 0), 30, &Limits::default()).unwrap();
        assert!(r.passed, "{:?}", r.failures);
    }

    #[test]
    fn rejects_non_member() {
        let s = sg(&[(2, 0), (3, 0), (0, 1)]);
        assert!(matches!(bijection_check(&s, v(1, 0), 10, &Limits::default()), Err(OracleError::NotMember(_))));
    }
}
