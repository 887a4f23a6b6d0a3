//! Exhaustive checkers: the sign-representation predictor against the
//! wall-crossing engine, and the boxes-in-divisible-rows statistic of
//! `M̃_{r/s}(λ)` against that of `M̃'_{r/s}(λ^t)`.
//!
//! Sweeps never stop at the first counterexample; every case is reported, in
//! a fixed order, so reports are identical for any degree of parallelism.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::{farey_sequence, is_farey_term, Fraction};
use crate::mullineux::Mullineux;
use crate::partition::{enumerate_partitions, Partition};
use crate::sign::{is_prime, predict_interval, primes_up_to};
use crate::wallcross::{full_prime_trajectory, full_trajectory, Trajectory, WallState};

pub const DEFAULT_SIGN_BOUND: usize = 31;
pub const DEFAULT_BEZ_BOUND: usize = 8;
pub const MAX_CALIBRATION_N: usize = 7;

/// Whether the statistic on the `M̃` side is read on the partition itself
/// or on its transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Rows,
    Columns,
}

/// Whether `M̃_{r/s}` and `M̃'_{r/s}` compose the walls strictly below
/// `r/s` or also `r/s` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WallSet {
    Strict,
    Inclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Convention {
    pub side: Side,
    pub wallset: WallSet,
}

impl Convention {
    pub const fn new(side: Side, wallset: WallSet) -> Self {
        Convention { side, wallset }
    }

    /// Preference order used when several conventions pass.
    pub fn all() -> [Convention; 4] {
        [
            Convention::new(Side::Columns, WallSet::Strict),
            Convention::new(Side::Rows, WallSet::Strict),
            Convention::new(Side::Columns, WallSet::Inclusive),
            Convention::new(Side::Rows, WallSet::Inclusive),
        ]
    }
}

impl Default for Convention {
    fn default() -> Self {
        Convention::new(Side::Columns, WallSet::Strict)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Rows => "rows",
            Side::Columns => "columns",
        })
    }
}

impl fmt::Display for WallSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallSet::Strict => "strict",
            WallSet::Inclusive => "inclusive",
        })
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.side, self.wallset)
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rows" => Ok(Side::Rows),
            "columns" => Ok(Side::Columns),
            _ => Err(Error::parse(s, "expected rows or columns")),
        }
    }
}

impl FromStr for WallSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(WallSet::Strict),
            "inclusive" => Ok(WallSet::Inclusive),
            _ => Err(Error::parse(s, "expected strict or inclusive")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub case: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: String,
    pub scope: String,
    pub convention: Option<Convention>,
    pub cases: Vec<CaseOutcome>,
    pub notes: Vec<String>,
    /// Wall-clock time; not part of the serialized or printed report.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(kind: &str, scope: String, convention: Option<Convention>) -> Self {
        VerificationReport {
            kind: kind.to_owned(),
            scope,
            convention,
            cases: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseOutcome> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    pub fn first_counterexample(&self) -> Option<&CaseOutcome> {
        self.failures().next()
    }

    /// Concatenates several reports of the same kind.
    pub fn merge(kind: &str, scope: String, parts: Vec<VerificationReport>) -> Self {
        let convention = parts.first().and_then(|r| r.convention);
        let mut out = VerificationReport::new(kind, scope, convention);
        for part in parts {
            out.elapsed += part.elapsed;
            out.cases.extend(part.cases);
            out.notes.extend(part.notes);
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.scope)?;
        if let Some(conv) = self.convention {
            write!(f, " convention={conv}")?;
        }
        writeln!(f)?;
        let failed = self.failure_count();
        writeln!(
            f,
            "cases: {}  passed: {}  failed: {failed}",
            self.cases.len(),
            self.cases.len() - failed
        )?;
        for case in self.failures() {
            writeln!(f, "FAIL {}  {}", case.case, case.detail)?;
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        if self.passed() {
            writeln!(f, "PASS (all cases): {} cases", self.cases.len())
        } else {
            writeln!(f, "FAIL: {failed} of {} cases", self.cases.len())
        }
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Domain(format!("cannot start {jobs} workers: {e}")))
}

fn render_states(states: &[WallState]) -> String {
    let items: Vec<String> = states
        .iter()
        .map(|s| format!("{}:{}", s.wall, s.after))
        .collect();
    format!("[{}]", items.join(" "))
}

fn frac(num: usize, den: usize) -> Fraction {
    Fraction::reduced(num as u64, den as u64).expect("fraction in (0, 1]")
}

/// Compares the engine's change points for `(1^p)` inside every interval
/// `[m/p, (m+1)/p)` with the closed-form prediction.
pub fn verify_sign(engine: &Mullineux, p: usize, jobs: usize) -> Result<VerificationReport> {
    verify_sign_bounded(engine, p, DEFAULT_SIGN_BOUND, jobs)
}

pub fn verify_sign_bounded(
    engine: &Mullineux,
    p: usize,
    bound: usize,
    jobs: usize,
) -> Result<VerificationReport> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if p > bound {
        return Err(Error::Capacity {
            what: "sign sweep prime",
            value: p,
            bound,
        });
    }
    let started = std::time::Instant::now();
    let column = Partition::column(p);
    let trajectory = full_trajectory(engine, &column, p)?;
    let cases = pool(jobs)?.install(|| {
        (1..p)
            .into_par_iter()
            .map(|m| sign_interval_case(&trajectory, p, m))
            .collect::<Vec<_>>()
    });
    let mut report = VerificationReport::new("verify-sign", format!("p={p}"), None);
    report.cases = cases;
    report.elapsed = started.elapsed();
    Ok(report)
}

fn sign_interval_case(trajectory: &Trajectory, p: usize, m: usize) -> CaseOutcome {
    let (lo, hi) = (frac(m, p), frac(m + 1, p));
    let case = format!("m={m} [{lo}, {hi})");
    let column = Partition::column(p);
    let entering = trajectory.state_before(lo).cloned().unwrap_or_default();
    let window = Trajectory {
        n: p,
        start: entering.clone(),
        steps: trajectory.window(lo, hi).to_vec(),
    };
    let engine_changes = window.change_points();
    let outcome = |pass: bool, detail: String| CaseOutcome {
        case: case.clone(),
        pass,
        detail,
    };
    if entering != column {
        return outcome(
            false,
            format!("state entering {lo} is {entering}, not {column}"),
        );
    }
    match predict_interval(p, m) {
        Err(err) => outcome(false, format!("prediction failed: {err}")),
        Ok(pred) => {
            let predicted = pred.wall_states();
            if predicted == engine_changes {
                outcome(true, format!("{} change walls", predicted.len()))
            } else {
                outcome(
                    false,
                    format!(
                        "engine {} predictor {}",
                        render_states(&engine_changes),
                        render_states(&predicted)
                    ),
                )
            }
        }
    }
}

/// Runs [`verify_sign`] for every prime up to `bound`.
pub fn verify_sign_upto(
    engine: &Mullineux,
    bound: usize,
    jobs: usize,
) -> Result<VerificationReport> {
    let parts = primes_up_to(bound)
        .into_iter()
        .map(|p| verify_sign_bounded(engine, p, bound, jobs))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::merge(
        "verify-sign",
        format!("p<={bound}"),
        parts,
    ))
}

/// Restricts a statistic sweep to one starting partition and/or one wall.
#[derive(Clone, Debug, Default)]
pub struct BezScope {
    pub start: Option<Partition>,
    pub wall: Option<Fraction>,
}

/// Statistic values `(A, B)` for one `λ` at every wall of `F_n`.
fn bez_values(
    engine: &Mullineux,
    lambda: &Partition,
    n: usize,
    conv: Convention,
    only_wall: Option<Fraction>,
) -> Result<Vec<(Fraction, usize, usize)>> {
    let forward = full_trajectory(engine, lambda, n)?;
    let simple = full_prime_trajectory(&lambda.transpose(), n)?;
    let read = |t: &Trajectory, w: Fraction| -> Partition {
        match conv.wallset {
            WallSet::Strict => t.state_before(w),
            WallSet::Inclusive => t.state_after(w),
        }
        .expect("wall of F_n")
        .clone()
    };
    let mut out = Vec::new();
    for wall in farey_sequence(n as u64) {
        if only_wall.is_some_and(|w| w != wall) {
            continue;
        }
        let s = wall.denominator() as usize;
        let x = read(&forward, wall);
        let x = match conv.side {
            Side::Rows => x,
            Side::Columns => x.transpose(),
        };
        let y = read(&simple, wall);
        out.push((wall, x.stat_divisible(s), y.stat_divisible(s)));
    }
    Ok(out)
}

/// `(A, B)` for a single case.
pub fn bez_case(
    engine: &Mullineux,
    lambda: &Partition,
    n: usize,
    wall: Fraction,
    conv: Convention,
) -> Result<(usize, usize)> {
    if !is_farey_term(n as u64, wall) {
        return Err(Error::Domain(format!("{wall} is not a term of F_{n}")));
    }
    let values = bez_values(engine, lambda, n, conv, Some(wall))?;
    Ok((values[0].1, values[0].2))
}

/// For every `λ ⊢ n` and wall `r/s` of `F_n`, compares the boxes in rows
/// divisible by `s` of `M̃_{r/s}(λ)` (or its transpose) with those of
/// `M̃'_{r/s}(λ^t)`.
pub fn verify_bez(
    engine: &Mullineux,
    n: usize,
    conv: Convention,
    jobs: usize,
) -> Result<VerificationReport> {
    verify_bez_scoped(
        engine,
        n,
        conv,
        &BezScope::default(),
        DEFAULT_BEZ_BOUND,
        jobs,
    )
}

pub fn verify_bez_scoped(
    engine: &Mullineux,
    n: usize,
    conv: Convention,
    scope: &BezScope,
    bound: usize,
    jobs: usize,
) -> Result<VerificationReport> {
    let started = std::time::Instant::now();
    let starts = match &scope.start {
        Some(lambda) => {
            if lambda.size() != n {
                return Err(Error::Domain(format!("{lambda} is not a partition of {n}")));
            }
            vec![lambda.clone()]
        }
        None => {
            if n > bound {
                return Err(Error::Capacity {
                    what: "statistic sweep n",
                    value: n,
                    bound,
                });
            }
            enumerate_partitions(n)?
        }
    };
    if let Some(w) = scope.wall {
        if !is_farey_term(n as u64, w) {
            return Err(Error::Domain(format!("{w} is not a term of F_{n}")));
        }
    }
    let per_start = pool(jobs)?.install(|| {
        starts
            .par_iter()
            .map(|lambda| bez_values(engine, lambda, n, conv, scope.wall).map(|v| (lambda, v)))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut scope_text = format!("n={n}");
    if let Some(lambda) = &scope.start {
        scope_text.push_str(&format!(" lambda={lambda}"));
    }
    if let Some(w) = scope.wall {
        scope_text.push_str(&format!(" r/s={w}"));
    }
    let mut report = VerificationReport::new("verify-bez", scope_text, Some(conv));
    for (lambda, values) in per_start {
        for (wall, a, b) in values {
            report.cases.push(CaseOutcome {
                case: format!("n={n} lambda={lambda} r/s={wall}"),
                pass: a == b,
                detail: format!("A={a} B={b}"),
            });
        }
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

/// Full sweeps for every `n` in `1..=n_max`.
pub fn verify_bez_upto(
    engine: &Mullineux,
    n_max: usize,
    conv: Convention,
    bound: usize,
    jobs: usize,
) -> Result<VerificationReport> {
    let parts = (1..=n_max)
        .map(|n| verify_bez_scoped(engine, n, conv, &BezScope::default(), bound, jobs))
        .collect::<Result<Vec<_>>>()?;
    let mut out = VerificationReport::merge("verify-bez", format!("n<={n_max}"), parts);
    out.convention = Some(conv);
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConventionTrial {
    pub convention: Convention,
    /// `(n, cases, failures)` for `n = 1..=n_max`.
    pub per_n: Vec<(usize, usize, usize)>,
    /// Failures on the sign slice `λ = (1^p)`, `p` prime up to the slice
    /// bound, all walls.
    pub sign_slice_failures: usize,
    pub sign_slice_cases: usize,
}

impl ConventionTrial {
    pub fn passes(&self) -> bool {
        self.per_n.iter().all(|&(_, _, fails)| fails == 0)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Calibration {
    pub n_max: usize,
    pub sign_slice_bound: usize,
    pub trials: Vec<ConventionTrial>,
    /// The preferred passing convention, if any passes.
    pub chosen: Option<Convention>,
}

impl fmt::Display for Calibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "calibrate n<={} (sign slice p<={})",
            self.n_max, self.sign_slice_bound
        )?;
        for t in &self.trials {
            let per_n: Vec<String> = t
                .per_n
                .iter()
                .map(|(n, cases, fails)| format!("n={n}:{fails}/{cases}"))
                .collect();
            writeln!(
                f,
                "{:<18} {}  failures [{}]  sign slice {}/{}",
                t.convention.to_string(),
                if t.passes() { "PASS" } else { "FAIL" },
                per_n.join(" "),
                t.sign_slice_failures,
                t.sign_slice_cases
            )?;
        }
        match self.chosen {
            Some(c) => writeln!(f, "chosen: {c}"),
            None => writeln!(
                f,
                "chosen: none (all four conventions fail); default {} retained",
                Convention::default()
            ),
        }
    }
}

pub const DEFAULT_SIGN_SLICE_BOUND: usize = 29;

/// Runs the statistic sweep under all four conventions for `n ≤ n_max` and
/// picks a passing one, preferring `columns/strict`.
pub fn calibrate_convention(engine: &Mullineux, n_max: usize, jobs: usize) -> Result<Calibration> {
    if n_max > MAX_CALIBRATION_N {
        return Err(Error::Capacity {
            what: "calibration n",
            value: n_max,
            bound: MAX_CALIBRATION_N,
        });
    }
    let slice_primes = primes_up_to(DEFAULT_SIGN_SLICE_BOUND);
    let mut trials = Vec::new();
    for conv in Convention::all() {
        let mut per_n = Vec::new();
        for n in 1..=n_max {
            let r = verify_bez(engine, n, conv, jobs)?;
            per_n.push((n, r.cases.len(), r.failure_count()));
        }
        let (mut slice_cases, mut slice_failures) = (0, 0);
        for &p in &slice_primes {
            let scope = BezScope {
                start: Some(Partition::column(p)),
                wall: None,
            };
            let r = verify_bez_scoped(engine, p, conv, &scope, p, jobs)?;
            slice_cases += r.cases.len();
            slice_failures += r.failure_count();
        }
        trials.push(ConventionTrial {
            convention: conv,
            per_n,
            sign_slice_failures: slice_failures,
            sign_slice_cases: slice_cases,
        });
    }
    let chosen = trials.iter().find(|t| t.passes()).map(|t| t.convention);
    Ok(Calibration {
        n_max,
        sign_slice_bound: DEFAULT_SIGN_SLICE_BOUND,
        trials,
        chosen,
    })
}

/// Checks, wall by wall, whether `M̃_{r/s}(1^p) = (1^p)`. Read literally
/// this fails; the report records where.
pub fn closing_claim_diagnostic(engine: &Mullineux, p: usize) -> Result<VerificationReport> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let column = Partition::column(p);
    let t = full_trajectory(engine, &column, p)?;
    let mut report = VerificationReport::new("closing-claim", format!("p={p}"), None);
    for step in &t.steps {
        let before = t.state_before(step.wall).expect("own wall");
        report.cases.push(CaseOutcome {
            case: format!("r/s={}", step.wall),
            pass: *before == column,
            detail: format!("M~(1^{p}) = {before}"),
        });
    }
    let first = report
        .first_counterexample()
        .map(|c| format!("{} ({})", c.case, c.detail));
    report.notes.push(match first {
        Some(text) => format!("M~_r/s(1^{p}) = 1^{p} fails literally; first differing wall {text}"),
        None => format!("M~_r/s(1^{p}) = 1^{p} holds at every wall"),
    });
    Ok(report)
}
