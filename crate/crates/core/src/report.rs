//! Report documents: the analysis pipeline (structure and K-theory) and the
//! verification pipeline (every oracle check against the formula side).

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ktheory::{index_value, k_theory, KTheoryReport};
use crate::oracle::{
    bijection_check, complement_decomposition_with, cone_witness, find_translator, independence_failure_check,
    quotient_by_subsemigroup, BijectionReport, ConeFrame, ConeWitness, EnumerationTable, Limits, OracleError,
    QuotientSearch, QuotientWitnessReport, TranslateIdentityReport, WitnessStatus,
};
use crate::semigroup::{FaceIndex, SemigroupError, ToricSemigroup};
use crate::{Matrix2, Vector};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Generators of the cone from the independence-failure identity.
pub const INDEPENDENCE_FAILURE_GENERATORS: [(i64, i64); 3] = [(2, -1), (1, 0), (2, 1)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceEcho {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Generators as analysed (after `--normalize`, if applied).
    pub generators: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<Normalization>,
}

/// Change of basis applied by `--normalize`: `original = basis · generator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    pub basis: Matrix2,
    pub original_generators: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ValidationError>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationError {
    pub kind: String,
    pub message: String,
}

impl From<&SemigroupError> for ValidationError {
    fn from(e: &SemigroupError) -> Self {
        let kind = match e {
            SemigroupError::Empty => "Empty",
            SemigroupError::ZeroGenerator => "ZeroGenerator",
            SemigroupError::NotPointed => "NotPointed",
            SemigroupError::NotGenerating(_) => "NotGenerating",
            SemigroupError::Lattice(_) => "Overflow",
            SemigroupError::Numsgp(_) => "FaceSemigroup",
        };
        Self { kind: kind.into(), message: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSummary {
    pub index: FaceIndex,
    pub ray: Vector,
    pub d: u64,
    pub asymptotic_generator: Vector,
    /// Coefficients `k` of the generators `k·r` on this ray.
    pub coefficient_generators: Vec<u64>,
    /// Gaps of the numerical semigroup `{k : k·a ∈ F}`.
    pub gaps: Vec<u64>,
    pub frobenius: i64,
    pub conductor: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    pub rays: [Vector; 2],
    pub faces: Vec<FaceSummary>,
    pub asymptotic_generators: [Vector; 2],
}

impl Structure {
    pub fn of(sg: &ToricSemigroup) -> Self {
        let faces = sg
            .faces()
            .iter()
            .map(|f| FaceSummary {
                index: f.index,
                ray: f.ray.vector(),
                d: f.d,
                asymptotic_generator: f.asymptotic_generator,
                coefficient_generators: f.coefficient_generators.clone(),
                gaps: f.numerical.gaps.clone(),
                frobenius: f.numerical.frobenius,
                conductor: f.numerical.conductor,
            })
            .collect();
        Self { rays: FaceIndex::BOTH.map(|j| sg.ray(j).vector()), faces, asymptotic_generators: [sg.a1(), sg.a2()] }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "budget-exhausted")]
    BudgetExhausted,
    #[serde(rename = "skipped: bound")]
    SkippedBound,
}

impl CheckStatus {
    /// Combines statuses: any failure dominates, then exhaustion, then skips.
    pub fn worst(self, other: Self) -> Self {
        use CheckStatus::*;
        let rank = |s| match s {
            Pass => 0,
            SkippedBound => 1,
            BudgetExhausted => 2,
            Fail => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de>"))]
pub struct Check<T> {
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl<T> Check<T> {
    fn new(status: CheckStatus, result: T) -> Self {
        Self { status, result: Some(result), note: None }
    }

    fn bare(status: CheckStatus, note: impl Into<String>) -> Self {
        Self { status, result: None, note: Some(note.into()) }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Turns an oracle error into a check outcome: exceeding the cell cap is a
/// skip, anything else a failure of the certificate.
fn from_error<T>(e: OracleError) -> Check<T> {
    match e {
        OracleError::BoundTooLarge { .. } => Check::bare(CheckStatus::SkippedBound, e.to_string()),
        _ => Check::bare(CheckStatus::Fail, e.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumsgpCheck {
    pub face: FaceIndex,
    pub reduced_generators: Vec<u64>,
    /// Upper end of the naive window `[0, conductor + max generator]`.
    pub window: u64,
    pub naive_gaps: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslatorCheck {
    pub targets: Vec<Vector>,
    pub z: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexCheck {
    pub element: Vector,
    pub face: FaceIndex,
    /// `(−1)^{j+1}·det(a_j, s)`.
    pub formula: i64,
    pub quotient_status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_bound: Option<u64>,
    pub complement_status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translate_count: Option<usize>,
    pub flagged_classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub face_semigroups: Check<Vec<NumsgpCheck>>,
    pub sf_quotient: Check<QuotientWitnessReport>,
    pub index_map: Check<Vec<IndexCheck>>,
    pub cone_witness: Check<ConeWitness>,
    pub translator: Check<TranslatorCheck>,
    pub bijection: Check<BijectionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub independence_failure: Option<Check<TranslateIdentityReport>>,
}

impl Checks {
    pub fn overall(&self) -> CheckStatus {
        let mut s = self
            .face_semigroups
            .status
            .worst(self.sf_quotient.status)
            .worst(self.index_map.status)
            .worst(self.cone_witness.status)
            .worst(self.translator.status)
            .worst(self.bijection.status);
        if let Some(c) = &self.independence_failure {
            s = s.worst(c.status);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub analysis_us: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification_us: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub instance: InstanceEcho,
    pub validation: Validation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<Structure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_theory: Option<KTheoryReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Checks>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub timing: Timing,
}

impl ReportDocument {
    /// CLI exit code: 2 for invalid input, 3 when an oracle contradicts the
    /// formula side, 4 when a check ran out of budget, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if !self.validation.valid {
            return 2;
        }
        match self.checks.as_ref().map(Checks::overall) {
            Some(CheckStatus::Fail) => 3,
            Some(CheckStatus::BudgetExhausted) => 4,
            _ => 0,
        }
    }

    /// The payload without timing, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        let mut doc = self.clone();
        doc.timing = Timing { analysis_us: 0, verification_us: None };
        doc
    }
}

/// Options for [`verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Starting window bound; quotient checks double it up to the cell cap.
    pub bound: u64,
    pub limits: Limits,
    /// Seed for sampling the elements used by the index and bijection checks.
    pub seed: u64,
    /// Elements sampled for the index check.
    pub index_samples: usize,
    /// Window bound for the bijection check.
    pub bijection_bound: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { bound: 200, limits: Limits::default(), seed: 0, index_samples: 3, bijection_bound: 100 }
    }
}

fn elapsed_us(start: Instant) -> u64 {
    start.elapsed().as_micros() as u64
}

/// Validation, structure and K-theory; no oracles.
pub fn analyze(instance: InstanceEcho) -> (ReportDocument, Option<ToricSemigroup>) {
    let start = Instant::now();
    let mut doc = ReportDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.into(),
        validation: Validation { valid: false, error: None },
        instance,
        structure: None,
        k_theory: None,
        checks: None,
        seed: None,
        timing: Timing { analysis_us: 0, verification_us: None },
    };
    let sg = match ToricSemigroup::new(doc.instance.generators.clone()) {
        Ok(sg) => sg,
        Err(e) => {
            doc.validation.error = Some((&e).into());
            doc.timing.analysis_us = elapsed_us(start);
            return (doc, None);
        }
    };
    match k_theory(&sg) {
        Ok(k) => {
            doc.validation.valid = true;
            doc.structure = Some(Structure::of(&sg));
            doc.k_theory = Some(k);
        }
        Err(e) => {
            doc.validation.error = Some(ValidationError { kind: "KTheory".into(), message: e.to_string() });
        }
    }
    doc.timing.analysis_us = elapsed_us(start);
    let sg = doc.validation.valid.then_some(sg);
    (doc, sg)
}

/// Analysis followed by every oracle check.
pub fn verify(instance: InstanceEcho, opts: &VerifyOptions) -> ReportDocument {
    let (mut doc, sg) = analyze(instance);
    let (Some(sg), Some(k)) = (sg, doc.k_theory.clone()) else {
        return doc;
    };
    let start = Instant::now();
    doc.seed = Some(opts.seed);
    doc.checks = Some(run_checks(&sg, &k, opts));
    doc.timing.verification_us = Some(elapsed_us(start));
    doc
}

pub fn run_checks(sg: &ToricSemigroup, k: &KTheoryReport, opts: &VerifyOptions) -> Checks {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let limits = &opts.limits;
    let witness = cone_witness(sg, limits);
    let independence_failure =
        is_independence_failure_instance(sg).then(|| match independence_failure_check(sg, opts.bound, limits) {
            Ok(r) => Check::new(if r.holds { CheckStatus::Pass } else { CheckStatus::Fail }, r),
            Err(e) => from_error(e),
        });
    Checks {
        face_semigroups: face_semigroup_check(sg),
        sf_quotient: sf_quotient_check(sg, k, opts),
        index_map: index_check(sg, witness.as_ref().ok(), opts, &mut rng),
        cone_witness: match witness {
            Ok(w) => Check::new(if w.verified { CheckStatus::Pass } else { CheckStatus::Fail }, w),
            Err(e) => from_error(e),
        },
        translator: translator_check(sg, limits),
        bijection: bijection_step(sg, opts, &mut rng),
        independence_failure,
    }
}

fn is_independence_failure_instance(sg: &ToricSemigroup) -> bool {
    let mut expected: Vec<Vector> = INDEPENDENCE_FAILURE_GENERATORS.iter().map(|(x, y)| Vector::new(*x, *y)).collect();
    expected.sort();
    sg.generators() == expected.as_slice()
}

/// `{0 ≤ k ≤ limit : k ∈ ⟨gens⟩}` by direct reachability.
pub fn naive_numerical_members(gens: &[u64], limit: u64) -> Vec<bool> {
    let mut reach = vec![false; limit as usize + 1];
    reach[0] = true;
    for k in 1..=limit as usize {
        reach[k] = gens.iter().any(|&g| g as usize <= k && reach[k - g as usize]);
    }
    reach
}

fn face_semigroup_check(sg: &ToricSemigroup) -> Check<Vec<NumsgpCheck>> {
    let mut status = CheckStatus::Pass;
    let rows = sg
        .faces()
        .iter()
        .map(|f| {
            let data = &f.numerical;
            let max_gen = data.reduced_generators.iter().copied().max().unwrap_or(1);
            let window = data.conductor + max_gen;
            let reach = naive_numerical_members(&data.reduced_generators, window);
            let gaps: Vec<u64> = (0..=window).filter(|k| !reach[*k as usize]).collect();
            let frobenius = gaps.last().map_or(-1, |g| *g as i64);
            let matches = gaps == data.gaps && frobenius == data.frobenius && (frobenius + 1) as u64 == data.conductor;
            if !matches {
                status = CheckStatus::Fail;
            }
            NumsgpCheck {
                face: f.index,
                reduced_generators: data.reduced_generators.clone(),
                window,
                naive_gaps: gaps.len(),
                matches,
            }
        })
        .collect();
    Check::new(status, rows)
}

/// Runs the quotient oracle, doubling the bound until every residue class is
/// hit and every sampled pair has a witness, or the window reaches the cell
/// cap.
fn adaptive_quotient(
    sg: &ToricSemigroup,
    sub: &[Vector],
    opts: &VerifyOptions,
) -> Result<QuotientWitnessReport, OracleError> {
    let cap = ConeFrame::of(sg).max_bound(&opts.limits);
    let mut bound = opts.bound.min(cap);
    loop {
        let search = QuotientSearch::new(bound, opts.limits.search_budget);
        let report = quotient_by_subsemigroup(sg, sub, search, &opts.limits)?;
        if report.status != WitnessStatus::BudgetExhausted || bound >= cap {
            return Ok(report);
        }
        bound = (bound * 2).min(cap);
    }
}

/// Classifies a quotient run; `cap` is the largest bound the window allows.
fn quotient_outcome(report: &QuotientWitnessReport, cap: u64) -> CheckStatus {
    match report.status {
        WitnessStatus::Verified => CheckStatus::Pass,
        WitnessStatus::Counterexample => CheckStatus::Fail,
        // still short of classes or witnesses when the window stopped growing
        WitnessStatus::BudgetExhausted if report.bound >= cap => CheckStatus::SkippedBound,
        WitnessStatus::BudgetExhausted => CheckStatus::BudgetExhausted,
    }
}

fn sf_quotient_check(sg: &ToricSemigroup, k: &KTheoryReport, opts: &VerifyOptions) -> Check<QuotientWitnessReport> {
    let report = match adaptive_quotient(sg, &sg.face_generators(), opts) {
        Ok(r) => r,
        Err(e) => return from_error(e),
    };
    let mut status = quotient_outcome(&report, ConeFrame::of(sg).max_bound(&opts.limits));
    let mut note = None;
    if report.order != k.det_m as u64 || report.lattice_group != k.sf_quotient {
        status = CheckStatus::Fail;
        note = Some(format!("lattice Z²/(F−F) = {} but cokernel(M) = {}", report.lattice_group, k.sf_quotient));
    } else if status == CheckStatus::Pass && report.observed_group.as_ref() != Some(&k.sf_quotient) {
        status = CheckStatus::Fail;
        note = Some("observed class group differs from cokernel(M)".into());
    }
    let check = Check::new(status, report);
    match note {
        Some(n) => check.with_note(n),
        None if status == CheckStatus::SkippedBound => {
            check.with_note("window cap reached before every class had a verified representative")
        }
        None => check,
    }
}

/// Members of `S` off both face lines, in increasing level.
fn off_face_members(sg: &ToricSemigroup, limits: &Limits) -> Result<Vec<Vector>, OracleError> {
    let frame = ConeFrame::of(sg);
    let level = sg.generators().iter().map(|g| frame.functional(*g)).max().unwrap_or(1) as u64;
    let cap = frame.max_bound(limits);
    let mut bound = (2 * level).min(cap);
    loop {
        let table = EnumerationTable::build(sg, bound, limits)?;
        let found: Vec<Vector> =
            table.members().iter().copied().filter(|p| sg.face_line_of(*p).is_none()).take(24).collect();
        if found.len() >= 24 || bound >= cap {
            return Ok(found);
        }
        bound = (bound * 2).min(cap);
    }
}

fn index_check(
    sg: &ToricSemigroup,
    witness: Option<&ConeWitness>,
    opts: &VerifyOptions,
    rng: &mut ChaCha8Rng,
) -> Check<Vec<IndexCheck>> {
    let pool = match off_face_members(sg, &opts.limits) {
        Ok(p) if !p.is_empty() => p,
        Ok(_) => return Check::bare(CheckStatus::SkippedBound, "no element off the faces in the window"),
        Err(e) => return from_error(e),
    };
    let samples: Vec<Vector> = pool.choose_multiple(rng, opts.index_samples).copied().collect();
    let mut status = CheckStatus::Pass;
    let mut rows = Vec::new();
    for s in samples {
        for j in FaceIndex::BOTH {
            let a = sg.asymptotic_generator(j);
            let formula = index_value(a, s, j);
            let expected = formula.unsigned_abs();

            let mut sub = sg.face(j).generators();
            sub.push(s);
            let (quotient_status, quotient_order, quotient_bound) = match adaptive_quotient(sg, &sub, opts) {
                Ok(r) => {
                    let mut st = quotient_outcome(&r, ConeFrame::of(sg).max_bound(&opts.limits));
                    if r.order != expected || (st == CheckStatus::Pass && r.observed_classes != expected) {
                        st = CheckStatus::Fail;
                    }
                    (st, Some(r.observed_classes), Some(r.bound))
                }
                Err(e) => (from_error::<()>(e).status, None, None),
            };

            let (complement_status, translate_count, flagged) = match witness {
                None => (CheckStatus::SkippedBound, None, 0),
                Some(w) => match complement_decomposition_with(sg, s, w, &opts.limits) {
                    Ok(d) if d.is_complete() => {
                        let count = d.translate_count(j);
                        let st = if count as u64 == expected { CheckStatus::Pass } else { CheckStatus::Fail };
                        (st, Some(count), 0)
                    }
                    Ok(d) => (CheckStatus::BudgetExhausted, None, d.flagged_classes.len()),
                    Err(e) => (from_error::<()>(e).status, None, 0),
                },
            };
            // An incomplete decomposition is not a verdict when the quotient
            // route already certified the count.
            let row_status = match (quotient_status, complement_status) {
                (CheckStatus::Pass, CheckStatus::BudgetExhausted | CheckStatus::SkippedBound) => CheckStatus::Pass,
                (q, c) => q.worst(c),
            };
            status = status.worst(row_status);
            rows.push(IndexCheck {
                element: s,
                face: j,
                formula,
                quotient_status,
                quotient_order,
                quotient_bound,
                complement_status,
                translate_count,
                flagged_classes: flagged,
            });
        }
    }
    Check::new(status, rows)
}

fn translator_check(sg: &ToricSemigroup, limits: &Limits) -> Check<TranslatorCheck> {
    // differences of generators: elements of S − S that are usually not in S
    let gens = sg.generators();
    let mut targets: Vec<Vector> = Vec::new();
    for g in gens {
        for h in gens {
            if g != h {
                targets.push(*g - *h);
            }
        }
    }
    targets.sort();
    targets.dedup();
    match find_translator(sg, &targets, limits) {
        Ok(z) => Check::new(CheckStatus::Pass, TranslatorCheck { targets, z }),
        Err(e) => from_error(e),
    }
}

fn bijection_step(sg: &ToricSemigroup, opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Check<BijectionReport> {
    let table = match EnumerationTable::build(sg, opts.bijection_bound, &opts.limits) {
        Ok(t) => t,
        Err(e) => return from_error(e),
    };
    // a nonzero member of the window, else the lowest generator
    let pool: Vec<Vector> = table.members().iter().copied().filter(|p| !p.is_zero()).collect();
    let x = match pool.choose(rng) {
        Some(x) => *x,
        None => *sg.generators().iter().min_by_key(|g| table.functional(**g)).expect("nonempty"),
    };
    match bijection_check(sg, x, opts.bijection_bound, &opts.limits) {
        Ok(r) => Check::new(if r.passed { CheckStatus::Pass } else { CheckStatus::Fail }, r),
        Err(e) => from_error(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn echo(gens: &[(i64, i64)]) -> InstanceEcho {
        InstanceEcho {
            label: None,
            generators: gens.iter().map(|(x, y)| Vector::new(*x, *y)).collect(),
            normalization: None,
        }
    }

    #[test]
    fn analyze_n2() {
        let (doc, _) = analyze(echo(&[(1, 0), (0, 1)]));
        assert_eq!(doc.exit_code(), 0);
        let k = doc.k_theory.unwrap();
        assert_eq!(k.k0.to_string(), "Z");
        assert_eq!(k.det_m, 1);
    }

    #[test]
    fn analyze_invalid() {
        let (doc, sg) = analyze(echo(&[(1, 0), (-1, 0)]));
        assert!(sg.is_none());
        assert_eq!(doc.exit_code(), 2);
        assert_eq!(doc.validation.error.unwrap().kind, "NotPointed");
    }

    #[test]
    fn verify_z4_cone() {
        let doc = verify(echo(&INDEPENDENCE_FAILURE_GENERATORS), &VerifyOptions::default());
        let checks = doc.checks.as_ref().unwrap();
        assert_eq!(checks.overall(), CheckStatus::Pass, "{checks:#?}");
        assert_eq!(checks.independence_failure.as_ref().unwrap().status, CheckStatus::Pass);
        let q = checks.sf_quotient.result.as_ref().unwrap();
        assert_eq!(q.observed_group.as_ref().unwrap().to_string(), "Z/4");
        assert_eq!(doc.exit_code(), 0);
    }

    #[test]
    fn verify_is_deterministic_and_round_trips() {
        let opts = VerifyOptions { seed: 7, ..VerifyOptions::default() };
        let a = verify(echo(&[(3, 0), (5, 0), (0, 2), (0, 3), (1, 1)]), &opts);
        let b = verify(echo(&[(3, 0), (5, 0), (0, 2), (0, 3), (1, 1)]), &opts);
        assert_eq!(a.without_timing(), b.without_timing());
        assert_eq!(a.checks.as_ref().unwrap().overall(), CheckStatus::Pass, "{:#?}", a.checks);
        let json = serde_json::to_string(&a).unwrap();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn status_order() {
        use CheckStatus::*;
        assert_eq!(Pass.worst(SkippedBound), SkippedBound);
        assert_eq!(BudgetExhausted.worst(SkippedBound), BudgetExhausted);
        assert_eq!(BudgetExhausted.worst(Fail), Fail);
        assert_eq!(serde_json::to_string(&SkippedBound).unwrap(), "\"skipped: bound\"");
    }
}
