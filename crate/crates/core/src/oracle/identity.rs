use serde::{Deserialize, Serialize};

use super::table::{EnumerationTable, Lookup};
use super::{Limits, OracleError};
use crate::semigroup::ToricSemigroup;
use crate::Vector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslateIdentityReport {
    pub bound: u64,
    /// `(p₁ + S) ∩ (p₂ + S)`
    pub intersection_of: [Vector; 2],
    /// `(q₁ + S) ∪ (q₂ + S)`
    pub union_of: [Vector; 2],
    pub points_checked: usize,
    pub intersection_size: usize,
    pub union_size: usize,
    pub mismatches: Vec<Vector>,
    pub holds: bool,
}

/// Compares `(p₁+S) ∩ (p₂+S)` with `(q₁+S) ∪ (q₂+S)` pointwise on `{f ≤ bound}`.
pub fn translate_identity_check(
    table: &EnumerationTable,
    intersection_of: [Vector; 2],
    union_of: [Vector; 2],
) -> TranslateIdentityReport {
    let in_translate = |p: Vector, t: Vector| table.lookup(p - t) == Lookup::Member;
    let mut report = TranslateIdentityReport {
        bound: table.bound(),
        intersection_of,
        union_of,
        points_checked: 0,
        intersection_size: 0,
        union_size: 0,
        mismatches: Vec::new(),
        holds: true,
    };
    for p in table.window_points() {
        let lhs = intersection_of.iter().all(|t| in_translate(p, *t));
        let rhs = union_of.iter().any(|t| in_translate(p, *t));
        report.points_checked += 1;
        report.intersection_size += lhs as usize;
        report.union_size += rhs as usize;
        if lhs != rhs {
            report.mismatches.push(p);
        }
    }
    report.holds = report.mismatches.is_empty();
    report
}

/// The failure of independence on the cone spanned by `(2,1)` and `(2,−1)`:
/// `((2,1)+S) ∩ ((2,0)+S) = ((4,1)+S) ∪ ((4,0)+S)`.
pub fn independence_failure_check(
    sg: &ToricSemigroup,
    bound: u64,
    limits: &Limits,
) -> Result<TranslateIdentityReport, OracleError> {
    let table = EnumerationTable::build(sg, bound, limits)?;
    Ok(translate_identity_check(&table, [Vector::new(2, 1), Vector::new(2, 0)], [Vector::new(4, 1), Vector::new(4, 0)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_cone() -> ToricSemigroup {
        ToricSemigroup::new(vec![Vector::new(2, -1), Vector::new(1, 0), Vector::new(2, 1)]).unwrap()
    }

    #[test]
    fn holds_on_small_windows() {
        for n in [10, 50] {
            let r = independence_failure_check(&z4_cone(), n, &Limits::default()).unwrap();
            assert!(r.holds, "{:?}", r.mismatches);
            assert!(r.intersection_size > 0);
        }
    }

    #[test]
    fn corner_point_in_both() {
        let t = EnumerationTable::build(&z4_cone(), 50, &Limits::default()).unwrap();
        let p = Vector::new(4, 1);
        assert_eq!(t.lookup(p - Vector::new(2, 1)), Lookup::Member);
        assert_eq!(t.lookup(p - Vector::new(2, 0)), Lookup::Member);
        assert_eq!(t.lookup(p - Vector::new(4, 1)), Lookup::Member);
    }

    #[test]
    fn detects_a_false_identity() {
        let t = EnumerationTable::build(&z4_cone(), 30, &Limits::default()).unwrap();
        let r = translate_identity_check(
            &t,
            [Vector::new(2, 1), Vector::new(2, 0)],
            [Vector::new(4, 1), Vector::new(4, 1)],
        );
        assert!(!r.holds);
    }
}
